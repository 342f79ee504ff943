#pragma once

#include <string>
#include <vector>

#include "diffopt/connection.hpp"
#include "diffopt/diffeology.hpp"
#include "diffopt/riemannian.hpp"
#include "diffopt/space.hpp"

namespace diffopt {

struct CheckResult {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why);
};

// The origin plus `per_line` nonzero points on every generator line, with
// |lambda| <= radius.
std::vector<Point> star_sample_points(const StarSpace& star, int per_line, double radius = 3.0);

// n x n grid on [lo, hi]^2.
std::vector<Point> square_grid(int n, double lo, double hi);

// u -> u a for u < 0 and u b for u >= 0 on (-1, 1): continuous, lands in any
// star containing both lines, and has a kink at 0.
Parametrization line_switching_plot(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

// Covering (constants at every point are plots), smooth compatibility (each
// accepted plot stays a plot under a polynomial reparametrization), pullback
// consistency for subset diffeologies, and determinism of the reports.
CheckResult check_diffeology_axioms(const Diffeology& d, const std::vector<Point>& points,
                                    const std::vector<Parametrization>& plots,
                                    const GridSpec& grid = {});

// max over the canonical generators d at x of |g_x(grad, d) - d(f)|.
double gradient_identity_residual(const Metric& g, const FramedSpace& space,
                                  const TangentVector& grad, const ScalarField& f, const Point& x,
                                  double h = kDefaultPathStep);

struct LeviCivitaReport {
  ConnectionReport flat;
  double koszul_residual = 0.0;
  // Flat connection against its derivation-based formula.
  double uniqueness_residual = 0.0;
  ConnectionReport torsion_control;  // flat + (X1 Y2 - X2 Y1) e1
  ConnectionReport scaled_control;   // 2 * flat

  bool torsion_control_fails() const { return !torsion_control.axiom_holds(5); }
  bool scaled_control_fails() const { return !scaled_control.axiom_holds(3); }
  bool passed() const;
};

// Flat connection on R^2 with polynomial fields of degree <= 2 at the points
// of an n x n grid on [-1, 1]^2.
LeviCivitaReport levi_civita_suite(int grid_n = 5, const ConnectionCheckOptions& options = {});

}  // namespace diffopt
