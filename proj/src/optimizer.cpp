#include "diffopt/optimizer.hpp"

#include <cmath>
#include <sstream>

namespace diffopt {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

struct StepValidator {
  void operator()(const ConstantStep& s) const {
    require(std::isfinite(s.t) && s.t > 0.0, "constant step t must be > 0");
  }
  void operator()(const ArmijoStep& s) const {
    require(std::isfinite(s.initial) && s.initial > 0.0, "armijo alpha must be > 0");
    require(s.sigma > 0.0 && s.sigma < 1.0, "armijo sigma must lie in (0,1)");
    require(s.rho > 0.0 && s.rho < 1.0, "armijo rho must lie in (0,1)");
    require(s.max_backtracks >= 0, "armijo max_backtracks must be >= 0");
  }
  void operator()(const ExactLineStep&) const {}
};

}  // namespace

void DescentConfig::validate() const {
  std::visit(StepValidator{}, step);
  require(stop.max_iters >= 1, "max_iters must be >= 1");
  require(stop.grad_norm_tol >= 0.0, "grad_norm_tol must be >= 0");
  require(stop.objective_tol >= 0.0, "objective_tol must be >= 0");
  require(origin_snap >= 0.0, "origin_snap must be >= 0");
}

std::string to_string(DescentStatus s) {
  switch (s) {
    case DescentStatus::kConvergedGrad: return "converged-grad";
    case DescentStatus::kConvergedObjective: return "converged-f";
    case DescentStatus::kMaxIters: return "max-iters";
    case DescentStatus::kUndefinedGradient: return "undefined-gradient";
    case DescentStatus::kLineSearchFailure: return "line-search-failure";
  }
  return "unknown";
}

DescentProblem star_problem(const StarObjective& f, StarRetractionSign sign) {
  auto star = f.star_ptr();
  return DescentProblem{
      star,
      [f](const Point& x) { return star_objective(f, x); },
      [f](const Point& x) { return star_gradient(f, x); },
      frame_metric(star),
      star_weak_retraction(star, sign),
      [f](const Point& x, const TangentVector& g) { return star_exact_step(f, x, g); },
  };
}

DescentProblem euclidean_quadratic_problem(int n) {
  auto space = std::make_shared<const EuclideanSpace>(n);
  return DescentProblem{
      space,
      [](const Point& x) { return x.squaredNorm(); },
      [space](const Point& x) { return space->vector_at(x, 2.0 * x); },
      frame_metric(space),
      euclidean_retraction(space),
      [](const Point&, const TangentVector&) { return 0.5; },
  };
}

ArmijoResult armijo_step(const DescentProblem& problem, const Point& x, const TangentVector& grad,
                         const ArmijoStep& params) {
  const double fx = problem.objective(x);
  const double norm_sq = metric_eval(problem.metric, x, grad, grad);
  ArmijoResult out;
  double alpha = params.initial;
  for (int i = 0; i <= params.max_backtracks; ++i) {
    const Point trial = problem.retraction(x, -alpha * grad);
    const double ft = problem.objective(trial);
    if (ft <= fx - params.sigma * alpha * norm_sq) {
      out.step = alpha;
      out.trial = trial;
      out.trial_objective = ft;
      out.backtracks = i;
      return out;
    }
    alpha *= params.rho;
  }
  std::ostringstream os;
  os << "no sufficient decrease after " << params.max_backtracks << " backtracks at "
     << to_string(x);
  throw LineSearchFailure(os.str());
}

IterateTrace steepest_descent(const DescentProblem& problem, const Point& x0,
                              const DescentConfig& cfg) {
  cfg.validate();
  problem.space->require_member(x0);

  IterateTrace trace;
  Point x = x0;
  for (std::size_t k = 0;; ++k) {
    if (cfg.origin_snap > 0.0) x = problem.space->snap(x, cfg.origin_snap);
    IterateRow row;
    row.k = k;
    row.x = x;
    row.f = problem.objective(x);

    auto finish = [&](DescentStatus status, std::string message = {}) {
      trace.rows.push_back(std::move(row));
      trace.status = status;
      trace.message = std::move(message);
      return trace;
    };

    if (row.f <= cfg.stop.objective_tol) return finish(DescentStatus::kConvergedObjective);

    TangentVector grad(x);
    try {
      grad = problem.gradient(x);
    } catch (const UndefinedGradient& e) {
      return finish(DescentStatus::kUndefinedGradient, e.what());
    }
    for (const auto& [label, c] : grad.labeled_coefficients()) row.gradient.emplace_back(label, c);
    row.grad_norm_sq = metric_eval(problem.metric, x, grad, grad);
    if (std::sqrt(row.grad_norm_sq) <= cfg.stop.grad_norm_tol) {
      return finish(DescentStatus::kConvergedGrad);
    }
    if (k == cfg.stop.max_iters) return finish(DescentStatus::kMaxIters);

    Point next;
    try {
      if (const auto* armijo = std::get_if<ArmijoStep>(&cfg.step)) {
        const ArmijoResult r = armijo_step(problem, x, grad, *armijo);
        row.step = r.step;
        next = r.trial;
        row.trial_objective = r.trial_objective;
      } else {
        if (const auto* constant = std::get_if<ConstantStep>(&cfg.step)) {
          row.step = constant->t;
        } else {
          if (!problem.exact_step) throw ConfigError("exact line search is not available here");
          row.step = problem.exact_step(x, grad);
        }
        next = problem.retraction(x, -row.step * grad);
        row.trial_objective = problem.objective(next);
      }
    } catch (const LineSearchFailure& e) {
      return finish(DescentStatus::kLineSearchFailure, e.what());
    }
    trace.rows.push_back(std::move(row));
    x = std::move(next);
  }
}

}  // namespace diffopt
