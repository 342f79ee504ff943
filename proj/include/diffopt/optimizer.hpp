#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diffopt/retraction.hpp"
#include "diffopt/riemannian.hpp"
#include "diffopt/space.hpp"
#include "diffopt/star.hpp"

namespace diffopt {

struct ConstantStep {
  double t = 1.0;
};

struct ArmijoStep {
  double initial = 10.0;  // alpha-hat
  double sigma = 0.1;
  double rho = 0.5;
  int max_backtracks = 200;
};

// Closed-form minimization along the current generator line.
struct ExactLineStep {};

using StepStrategy = std::variant<ConstantStep, ArmijoStep, ExactLineStep>;

struct StoppingRule {
  double grad_norm_tol = 1e-6;
  double objective_tol = 1e-6;
  std::size_t max_iters = 1000;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LineSearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DescentConfig {
  StepStrategy step = ArmijoStep{};
  StoppingRule stop;
  double origin_snap = 1e-6;

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

enum class DescentStatus {
  kConvergedGrad,
  kConvergedObjective,
  kMaxIters,
  kUndefinedGradient,
  kLineSearchFailure,
};

std::string to_string(DescentStatus s);

struct IterateRow {
  std::size_t k = 0;
  Point x;   // after origin snapping
  double f = 0.0;
  std::vector<std::pair<std::size_t, double>> gradient;  // (generator, coefficient)
  double grad_norm_sq = std::numeric_limits<double>::quiet_NaN();
  double step = std::numeric_limits<double>::quiet_NaN();  // NaN on the final row
  // f at the accepted trial point R(x, -step * grad), as evaluated when the
  // step was accepted.
  double trial_objective = std::numeric_limits<double>::quiet_NaN();
};

struct IterateTrace {
  std::vector<IterateRow> rows;
  DescentStatus status = DescentStatus::kMaxIters;
  std::string message;

  std::size_t iterations() const { return rows.empty() ? 0 : rows.size() - 1; }
  const Point& final_point() const { return rows.back().x; }
};

struct DescentProblem {
  std::shared_ptr<const FramedSpace> space;
  ScalarField objective;
  std::function<TangentVector(const Point&)> gradient;
  Metric metric;
  Retraction retraction;
  // Step along -grad that minimizes f on the current line; empty if the
  // problem has no closed form.
  std::function<double(const Point&, const TangentVector&)> exact_step;
};

DescentProblem star_problem(const StarObjective& f,
                            StarRetractionSign sign = StarRetractionSign::kAlong);

// f(x) = |x|^2 on R^n with the Euclidean metric and R(x, v) = x + v.
DescentProblem euclidean_quadratic_problem(int n);

struct ArmijoResult {
  double step = 0.0;
  Point trial;
  double trial_objective = 0.0;
  int backtracks = 0;
};

// First alpha in {a, rho a, rho^2 a, ...} with
// f(R(x, -alpha grad)) <= f(x) - sigma alpha |grad|^2.
ArmijoResult armijo_step(const DescentProblem& problem, const Point& x, const TangentVector& grad,
                         const ArmijoStep& params);

// x_{k+1} = R(x_k, -t_k grad f(x_k)) until f <= objective_tol,
// |grad| <= grad_norm_tol, or k = max_iters. Undefined gradients and
// line-search failures end the trace with the matching status.
IterateTrace steepest_descent(const DescentProblem& problem, const Point& x0,
                              const DescentConfig& cfg);

}  // namespace diffopt
