#include "diffopt/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diffopt {

bool Box::contains(const Eigen::VectorXd& u) const {
  if (u.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] > lower[i] && u[i] < upper[i])) return false;
  }
  return true;
}

Box Box::cube(int n, double lo, double hi) {
  if (n < 0 || !(lo < hi)) throw std::invalid_argument("Box::cube: empty box");
  return Box{Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi)};
}

Box Box::product(const Box& a, const Box& b) {
  Box out;
  out.lower.resize(a.dim() + b.dim());
  out.upper.resize(a.dim() + b.dim());
  out.lower << a.lower, b.lower;
  out.upper << a.upper, b.upper;
  return out;
}

bool same_point(const Point& a, const Point& b, double tol) {
  const Eigen::Index n = std::max(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    if (tol == 0.0 ? ai != bi : std::abs(ai - bi) > tol) return false;
  }
  return true;
}

std::string to_string(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ')';
  return os.str();
}

}  // namespace diffopt
