// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "diffopt/polynomial.hpp"
#include "diffopt/reference_runs.hpp"
#include "diffopt/suites.hpp"

using namespace diffopt;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

DescentProblem golden() { return star_problem(StarObjective(reference_star(), reference_target())); }

Outcome constant_trace() {
  IterateTrace trace;
  const double dt =
      seconds([&] { trace = steepest_descent(golden(), reference_start(), constant_step_config()); });
  const auto cmp = compare_constant_trace(trace, 1e-12);
  return {cmp.passed && dt < 1.0, cmp.detail + ", " + num(dt) + " s"};
}

Outcome armijo_trace() {
  IterateTrace trace;
  const double dt =
      seconds([&] { trace = steepest_descent(golden(), reference_start(), armijo_config()); });
  const auto cmp = compare_armijo_trace(trace);

  DescentConfig precise = armijo_config();
  precise.stop.objective_tol = 1e-16;
  precise.stop.grad_norm_tol = 1e-16;
  precise.origin_snap = 1e-15;
  const auto hp = steepest_descent(golden(), reference_start(), precise);
  const bool hp_ok = hp.status == DescentStatus::kConvergedObjective && hp.iterations() >= 50 &&
                     hp.iterations() <= 60;
  return {cmp.passed && dt < 1.0 && hp_ok, cmp.detail + ", " + num(dt) + " s, high-precision " +
                                               std::to_string(hp.iterations()) + " iterations"};
}

Outcome gradient_identity() {
  const auto star = reference_star();
  const auto cross = std::make_shared<const CrossSpace>();
  const auto plane = std::make_shared<const EuclideanSpace>(2);
  const ScalarField smooth = [](const Point& p) {
    return p[0] * p[0] + 3.0 * p[1] - p[0] * p[1] + 0.25 * p[1] * p[1] * p[1];
  };
  const StarObjective target(star, reference_target());
  const ScalarField f_star = [&](const Point& x) { return star_objective(target, x); };

  struct Case {
    std::string name;
    std::shared_ptr<const FramedSpace> space;
    std::vector<Point> points;
  };
  const std::vector<Case> cases{{"star", star, star_sample_points(*star, 6)},
                                {"cross", cross, star_sample_points(*cross, 10)},
                                {"R^2", plane, square_grid(5, -2.0, 2.0)}};
  double worst = 0.0;
  std::ostringstream counts;
  bool enough = true;
  for (const auto& c : cases) {
    const Metric g = frame_metric(c.space);
    int used = 0;
    for (const auto& x : c.points) {
      // Dependent generators (the star origin) leave the system underdetermined.
      if (c.space->ambient_rank(x) < static_cast<int>(c.space->active_labels(x).size())) continue;
      const auto grad = gradient_solve(g, *c.space, smooth, x).vector;
      worst = std::max(worst, gradient_identity_residual(g, *c.space, grad, smooth, x));
      ++used;
    }
    enough = enough && used >= 20;
    counts << c.name << " " << used << " pts, ";
  }
  int star_used = 0;
  for (const auto& x : star_sample_points(*star, 6)) {
    if (x.isZero(0.0) || same_point(x, target.target())) continue;
    worst = std::max(worst, gradient_identity_residual(frame_metric(star), *star,
                                                       star_gradient(target, x), f_star, x));
    ++star_used;
  }
  enough = enough && star_used >= 20;
  counts << "star objective " << star_used << " pts";
  return {enough && worst <= 1e-6, "max residual " + num(worst) + "; " + counts.str()};
}

Outcome tangent_dimensions() {
  const auto star = reference_star();
  const CrossSpace cross;
  for (const auto& x : star_sample_points(*star, 5)) {
    if (tangent_dim(*star, x) != TangentDim::finite(x.isZero(0.0) ? star->size() : 1)) {
      return {false, "star at " + to_string(x)};
    }
  }
  for (const auto& x : star_sample_points(cross, 5)) {
    if (tangent_dim(cross, x) != TangentDim::finite(x.isZero(0.0) ? 2 : 1)) {
      return {false, "cross at " + to_string(x)};
    }
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 7);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(8), v = x, w = x;
    const int dx = deg(rng), dv = deg(rng), dw = deg(rng);
    for (int i = 0; i <= dx; ++i) x[i] = coef(rng);
    for (int i = 0; i <= dv; ++i) v[i] = coef(rng) / 4.0;
    for (int i = 0; i <= dw; ++i) w[i] = coef(rng);
    PathGerm germ;
    germ.base = x;
    germ.curve = [x, v, w](double t) -> Point { return x + t * v + t * t * w; };
    const Point got = poly_tangent_from_path(germ);
    const Point want = trim_polynomial(v);
    if (got.size() != want.size() || (got - want).cwiseAbs().maxCoeff() > 1e-9) {
      return {false, "polynomial round trip " + to_string(got) + " vs " + to_string(want)};
    }
  }
  return {true, "star, cross, 50 polynomial round trips with exact support"};
}

Outcome weak_retraction() {
  const auto star = reference_star();
  std::vector<double> scales;
  for (int i = 1; i <= 5; ++i) {
    scales.push_back(0.5 * i);
    scales.push_back(-0.5 * i);
  }
  const auto report = check_weak_retraction(star_weak_retraction(star), *star,
                                            star_sample_points(*star, 5), scales,
                                            coordinate_probes(2), 1e-6);
  return {report.passed() && report.max_first_order_residual <= 1e-6,
          std::to_string(report.checks) + " checks over " + std::to_string(star->size()) +
              " generators x " + std::to_string(scales.size()) + " scales, max residual " +
              num(report.max_first_order_residual)};
}

Outcome levi_civita() {
  ConnectionCheckOptions options;
  options.tol = 1e-5;
  const auto r = levi_civita_suite(5, options);
  const double worst = *std::max_element(r.flat.residual.begin(), r.flat.residual.end());
  return {r.passed() && worst <= 1e-5 && r.koszul_residual <= 1e-5,
          "25 points, axiom residual " + num(worst) + ", Koszul " + num(r.koszul_residual) +
              ", controls " +
              (r.torsion_control_fails() && r.scaled_control_fails() ? "rejected" : "accepted")};
}

std::vector<Parametrization> line_plots(const StarSpace& star) {
  std::vector<Parametrization> plots = star.diffeology().generators();
  for (std::size_t i = 0; i < star.size(); ++i) {
    const Eigen::Vector2d v = star.generator(i);
    plots.push_back({Box::interval(-1.0, 1.0), [v](const Eigen::VectorXd& u) -> Point {
                       return (u[0] * u[0] * u[0] - 2.0 * u[0]) * v;
                     }});
  }
  return plots;
}

Outcome diffeology_axioms() {
  const auto star = reference_star();
  const CrossSpace cross;
  std::vector<std::pair<std::string, CheckResult>> results{
      {"star", check_diffeology_axioms(star->diffeology(), star_sample_points(*star, 5),
                                       line_plots(*star))},
      {"cross", check_diffeology_axioms(cross.diffeology(), star_sample_points(cross, 5),
                                        line_plots(cross))}};
  for (int n = 1; n <= 3; ++n) {
    const Parametrization curved{Box::cube(n, -1.0, 1.0), [n](const Eigen::VectorXd& u) -> Point {
                                   Point y(n);
                                   for (int i = 0; i < n; ++i) y[i] = std::sin(u[i]) + u[(i + 1) % n] * u[i];
                                   return y;
                                 }};
    std::vector<Point> points;
    for (int k = 0; k < 5; ++k) points.push_back(Point::Constant(n, -2.0 + k));
    results.push_back({"R^" + std::to_string(n),
                       check_diffeology_axioms(standard_diffeology(n), points, {curved})});
  }
  for (const auto& [name, r] : results) {
    if (!r.passed) return {false, name + ": " + r.detail};
  }
  const auto kink = line_switching_plot(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
  for (const Diffeology* d : {&star->diffeology(), &cross.diffeology()}) {
    const auto r = is_plot(*d, kink);
    if (r.accepted || r.reason != PlotFailure::kNotLocallySmooth) {
      return {false, "line-switching parametrization accepted"};
    }
  }
  return {true, "star, cross, R^1..R^3; kink rejected"};
}

Outcome armijo_monotonicity() {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> count(2, 6);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi), mag(-5.0, 5.0);
  std::uniform_real_distribution<double> sigma(0.01, 0.5), rho(0.2, 0.8), alpha(0.5, 20.0);
  std::size_t steps = 0;
  for (int run = 0; run < 100; ++run) {
    std::vector<double> angles;
    const int k = count(rng);
    while (static_cast<int>(angles.size()) < k) {
      const double a = angle(rng);
      bool separated = true;
      for (double b : angles) {
        const double d = std::abs(a - b);
        separated = separated && std::min(d, std::numbers::pi - d) > 0.05;
      }
      if (separated) angles.push_back(a);
    }
    std::vector<Eigen::Vector2d> gens;
    for (double a : angles) gens.emplace_back(std::cos(a), std::sin(a));
    const auto star = std::make_shared<const StarSpace>(gens);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    const Point s = mag(rng) * star->generator(pick(rng));
    const Point x0 = mag(rng) * star->generator(pick(rng));

    DescentConfig cfg;
    const ArmijoStep params{alpha(rng), sigma(rng), rho(rng), 200};
    cfg.step = params;
    const auto trace = steepest_descent(star_problem(StarObjective(star, s)), x0, cfg);
    if (trace.status == DescentStatus::kLineSearchFailure) {
      return {false, "run " + std::to_string(run) + ": " + trace.message};
    }
    for (std::size_t i = 0; i + 1 < trace.rows.size(); ++i) {
      const auto& row = trace.rows[i];
      if (!(row.trial_objective <= row.f - params.sigma * row.step * row.grad_norm_sq)) {
        return {false, "run " + std::to_string(run) + " k=" + std::to_string(i) + " violates decrease"};
      }
      // The recorded objective of the next row is the value that was tested,
      // unless the iterate was snapped to the origin.
      const auto& next = trace.rows[i + 1];
      if (!next.x.isZero(0.0) && next.f != row.trial_objective) {
        return {false, "run " + std::to_string(run) + " k=" + std::to_string(i) + " drifted"};
      }
      ++steps;
    }
  }
  return {true, "100 runs, " + std::to_string(steps) + " accepted steps"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"constant-step golden trace", constant_trace},
      {"Armijo golden trace", armijo_trace},
      {"gradient defining identity", gradient_identity},
      {"tangent dimensions", tangent_dimensions},
      {"weak-retraction axioms", weak_retraction},
      {"Levi-Civita suite", levi_civita},
      {"diffeology axioms", diffeology_axioms},
      {"Armijo monotonicity", armijo_monotonicity},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    failures += !out.passed;
    std::printf("%s  %zu. %s  (%s)\n", out.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
