#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "diffopt/space.hpp"
#include "diffopt/tangent.hpp"

namespace diffopt {

// A pointwise bilinear form g_x on tangent vectors at x.
class Metric {
 public:
  using Form = std::function<double(const Point&, const TangentVector&, const TangentVector&)>;

  Metric(Form form, std::string name) : form_(std::move(form)), name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  double operator()(const Point& x, const TangentVector& a, const TangentVector& b) const {
    return form_(x, a, b);
  }

 private:
  Form form_;
  std::string name_;
};

// sum_{i,j} lambda_i mu_j <d_i, d_j> over canonical generator coefficients.
// On the star this is the star metric; on R^n the Euclidean product.
Metric frame_metric(std::shared_ptr<const FramedSpace> space);

double metric_eval(const Metric& g, const Point& x, const TangentVector& xi,
                   const TangentVector& chi);

// sqrt(g_x(v, v)).
double metric_norm(const Metric& g, const TangentVector& v);

struct GradientSolution {
  TangentVector vector;
  bool degenerate = false;  // Gram matrix singular; minimum-norm solution
  int rank = 0;
};

// Solves g_x(v, d_gamma) = d_gamma(f) over the canonical generators gamma at x
// in generator coordinates, with a minimum-norm fallback when the Gram matrix
// is singular (relative rank tolerance 1e-10).
GradientSolution gradient_solve(const Metric& g, const FramedSpace& space, const ScalarField& f,
                                const Point& x, double h = kDefaultPathStep);

struct MetricReport {
  double max_symmetry_residual = 0.0;
  bool symmetric = true;
  bool positive_on_cone = true;
  // Definiteness of the Gram matrix of the generators on their full formal
  // span; false at points where it is only semi-definite.
  bool definite_on_span = true;
  double max_smoothness_residual = 0.0;
  bool smooth = true;
  std::vector<std::string> notes;

  bool passed() const { return symmetric && positive_on_cone && smooth; }
};

// Checks symmetry on the sample vectors (coefficients on the active
// generators, truncated or zero-padded per point), positivity on every
// generator cone element, definiteness of the generator Gram matrix, and
// continuity of x -> g_x along the generator lines.
MetricReport check_metric(const Metric& g, const FramedSpace& space,
                          const std::vector<Point>& points,
                          const std::vector<std::vector<double>>& coefficient_samples,
                          double tol = 1e-12);

}  // namespace diffopt
