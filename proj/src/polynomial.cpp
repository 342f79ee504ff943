#include "diffopt/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace diffopt {

namespace {

Eigen::Index degree_of(const Point& c) { return trim_polynomial(c).size() - 1; }

// Samples may carry trailing zeros beyond the detected degree.
Point padded(const Point& x, Eigen::Index n) {
  const Point trimmed = trim_polynomial(x);
  Point out = Point::Zero(n);
  out.head(trimmed.size()) = trimmed;
  return out;
}

}  // namespace

Point trim_polynomial(const Point& coefficients) {
  Eigen::Index n = coefficients.size();
  while (n > 0 && coefficients[n - 1] == 0.0) --n;
  return coefficients.head(n);
}

double poly_eval(const Point& coefficients, double y) {
  double acc = 0.0;
  for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k) acc = acc * y + coefficients[k];
  return acc;
}

const std::vector<double>& poly_probe_abscissae() {
  static const std::vector<double> kAbscissae{-2.0, -1.0, 0.0, 1.0, 2.0};
  return kAbscissae;
}

std::vector<ScalarField> poly_evaluation_probes() {
  std::vector<ScalarField> out;
  for (double c : poly_probe_abscissae()) {
    out.push_back([c](const Point& p) { return poly_eval(p, c); });
  }
  return out;
}

Point poly_tangent_from_path(const PathGerm& germ, int max_degree) {
  const double h = std::min(1e-3, germ.delta / 4.0);
  std::vector<double> window{-2.0 * h, -h, 0.0, h, 2.0 * h};
  for (int k = -15; k <= 15; ++k) window.push_back(germ.delta * k / 16.0);

  Eigen::Index degree = 0;
  for (double t : window) {
    const Point value = germ.curve(t);
    if (!value.allFinite()) throw NonFiniteError("polynomial path is not finite");
    degree = std::max(degree, degree_of(value));
  }
  if (degree > max_degree) {
    throw UnboundedDegree("path degree " + std::to_string(degree) + " exceeds " +
                          std::to_string(max_degree) + " on the sample window");
  }

  const Eigen::Index n = degree + 1;
  const Point fp1 = padded(germ.curve(h), n), fm1 = padded(germ.curve(-h), n);
  const Point fp2 = padded(germ.curve(2.0 * h), n), fm2 = padded(germ.curve(-2.0 * h), n);
  Point derivative = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);

  // Drop roundoff left on coefficients that do not move.
  const double scale = std::max({1.0, fp1.lpNorm<Eigen::Infinity>(),
                                 fm1.lpNorm<Eigen::Infinity>()});
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(derivative[k]) <= 1e-13 * scale / h) derivative[k] = 0.0;
  }
  return trim_polynomial(derivative);
}

double poly_eval_functional_derivative(const Point& v, double c) { return poly_eval(v, c); }

}  // namespace diffopt
