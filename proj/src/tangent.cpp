#include "diffopt/tangent.hpp"

#include <algorithm>
#include <cmath>

namespace diffopt {

namespace {

Point padded_difference(const Point& a, const Point& b) {
  const Eigen::Index n = std::max(a.size(), b.size());
  Point out = Point::Zero(n);
  out.head(a.size()) += a;
  out.head(b.size()) -= b;
  return out;
}

}  // namespace

PathGerm PathGerm::constant(const Point& x) {
  PathGerm g;
  g.base = x;
  g.curve = [x](double) { return x; };
  g.velocity = Eigen::VectorXd::Zero(x.size());
  return g;
}

PathGerm PathGerm::line(const Point& x, const Eigen::VectorXd& direction,
                        std::optional<std::size_t> label) {
  PathGerm g;
  g.base = x;
  g.curve = [x, direction](double t) -> Point { return x + t * direction; };
  g.label = label;
  g.velocity = direction;
  return g;
}

TangentVector::TangentVector(Point base) : base_(std::move(base)) {}

TangentVector::TangentVector(const ConeElement& element) : base_(element.base()) {
  add(element.scale, element.germ);
}

TangentVector& TangentVector::add(double coefficient, const PathGerm& germ) {
  if (!same_point(germ.base, base_)) {
    throw BaseMismatch("germ based at " + to_string(germ.base) + " added to a vector at " +
                       to_string(base_));
  }
  if (!std::isfinite(coefficient)) throw NonFiniteError("non-finite tangent coefficient");
  if (coefficient == 0.0) return *this;
  if (!germ.label) {
    terms_.push_back({coefficient, germ});
    return *this;
  }
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const TangentTerm& t) {
    return !t.germ.label || *t.germ.label >= *germ.label;
  });
  if (it != terms_.end() && it->germ.label && *it->germ.label == *germ.label) {
    it->coefficient += coefficient;
    if (it->coefficient == 0.0) terms_.erase(it);
  } else {
    terms_.insert(it, {coefficient, germ});
  }
  return *this;
}

TangentVector& TangentVector::operator+=(const TangentVector& other) {
  if (!same_point(other.base_, base_)) {
    throw BaseMismatch("tangent vectors at different points");
  }
  for (const auto& t : other.terms_) add(t.coefficient, t.germ);
  return *this;
}

TangentVector& TangentVector::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

std::map<std::size_t, double> TangentVector::labeled_coefficients() const {
  std::map<std::size_t, double> out;
  for (const auto& t : terms_) {
    if (t.germ.label) out[*t.germ.label] += t.coefficient;
  }
  return out;
}

bool TangentVector::fully_labeled() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const TangentTerm& t) { return t.germ.label.has_value(); });
}

std::optional<ConeElement> TangentVector::as_cone_element() const {
  if (terms_.empty()) return ConeElement::zero(base_);
  if (terms_.size() == 1) return ConeElement{terms_.front().germ, terms_.front().coefficient};
  return std::nullopt;
}

TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }

TangentVector operator-(TangentVector a, const TangentVector& b) { return a += (-1.0) * b; }

TangentVector operator*(double c, TangentVector v) { return v *= c; }

TangentVector operator-(TangentVector v) { return v *= -1.0; }

double path_derivative(const PathGerm& germ, const ScalarField& f, double h) {
  if (!(h > 0.0) || h >= germ.delta / 2.0) {
    throw DomainError("path_derivative: step must satisfy 0 < h < delta/2");
  }
  const double fp = f(germ.curve(h));
  const double fm = f(germ.curve(-h));
  if (!std::isfinite(fp) || !std::isfinite(fm)) {
    throw NonFiniteError("path_derivative: function is not finite on the stencil");
  }
  return (fp - fm) / (2.0 * h);
}

bool paths_equivalent(const PathGerm& a, const PathGerm& b, const std::vector<ScalarField>& probes,
                      double tol, double h) {
  if (!same_point(a.base, b.base)) throw BaseMismatch("paths_equivalent: different bases");
  return std::all_of(probes.begin(), probes.end(), [&](const ScalarField& f) {
    return std::abs(path_derivative(a, f, h) - path_derivative(b, f, h)) <= tol;
  });
}

double tangent_apply(const TangentVector& v, const ScalarField& f, double h) {
  double sum = 0.0;
  for (const auto& t : v.terms()) sum += t.coefficient * path_derivative(t.germ, f, h);
  return sum;
}

ConeElement tangent_map(const PointMap& phi, const ConeElement& v) {
  PathGerm g;
  g.base = phi(v.germ.base);
  g.curve = [phi, curve = v.germ.curve](double t) { return phi(curve(t)); };
  g.delta = v.germ.delta;
  return {g, v.scale};
}

Eigen::VectorXd ambient_velocity(const PathGerm& germ) {
  if (germ.velocity) return *germ.velocity;
  const double h = std::min(1e-3, germ.delta / 4.0);
  // Five-point central stencil.
  const Point d1 = padded_difference(germ.curve(h), germ.curve(-h));
  const Point d2 = padded_difference(germ.curve(2.0 * h), germ.curve(-2.0 * h));
  const Eigen::Index n = std::max(d1.size(), d2.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  out.head(d1.size()) += 8.0 * d1;
  out.head(d2.size()) -= d2;
  return out / (12.0 * h);
}

Eigen::VectorXd ambient_velocity(const TangentVector& v) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.base().size());
  for (const auto& t : v.terms()) {
    const Eigen::VectorXd u = ambient_velocity(t.germ);
    if (u.size() > out.size()) out.conservativeResizeLike(Eigen::VectorXd::Zero(u.size()));
    out.head(u.size()) += t.coefficient * u;
  }
  return out;
}

std::vector<ScalarField> coordinate_probes(int n) {
  std::vector<ScalarField> out;
  for (int i = 0; i < n; ++i) {
    out.push_back([i](const Point& x) { return i < x.size() ? x[i] : 0.0; });
  }
  return out;
}

PlotReport check_germ(const Diffeology& d, const PathGerm& germ, const GridSpec& grid) {
  if (!same_point(germ.curve(0.0), germ.base)) {
    return PlotReport::reject(PlotFailure::kNotInCarrier, Eigen::VectorXd::Zero(1),
                              "curve(0) differs from the base point");
  }
  Parametrization p{Box::interval(-germ.delta, germ.delta),
                    [curve = germ.curve](const Eigen::VectorXd& u) { return curve(u[0]); }};
  return is_plot(d, p, grid);
}

}  // namespace diffopt
