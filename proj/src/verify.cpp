#include <cmath>
#include <random>
#include <sstream>

#include "diffopt/experiment.hpp"
#include "diffopt/polynomial.hpp"
#include "diffopt/reference_runs.hpp"
#include "diffopt/suites.hpp"

namespace diffopt {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<Parametrization> star_like_plots(const StarSpace& star) {
  std::vector<Parametrization> plots = star.diffeology().generators();
  for (std::size_t i = 0; i < star.size(); ++i) {
    const Eigen::Vector2d v = star.generator(i);
    plots.push_back({Box::interval(-1.0, 1.0), [v](const Eigen::VectorXd& u) -> Point {
                       return (u[0] * u[0] * u[0] - 2.0 * u[0]) * v;
                     }});
  }
  return plots;
}

VerifyItem diffeology_item(int n) {
  VerifyItem item{"diffeology axioms (star, cross, R^2)", true, ""};
  const auto star = reference_star();
  const CrossSpace cross;
  const auto r_star =
      check_diffeology_axioms(star->diffeology(), star_sample_points(*star, n), star_like_plots(*star));
  const auto r_cross =
      check_diffeology_axioms(cross.diffeology(), star_sample_points(cross, n), star_like_plots(cross));
  const Parametrization curved{Box::cube(2, -1.0, 1.0), [](const Eigen::VectorXd& u) -> Point {
                                 return Eigen::Vector2d(u[0] * u[0] - u[1], std::sin(u[1]));
                               }};
  const auto r_plane = check_diffeology_axioms(standard_diffeology(2), square_grid(n, -2.0, 2.0),
                                               {curved});
  for (const auto* r : {&r_star, &r_cross, &r_plane}) {
    if (!r->passed) {
      item.passed = false;
      item.detail = r->detail;
      return item;
    }
  }
  const auto kink = line_switching_plot(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
  for (const Diffeology* d : {&star->diffeology(), &cross.diffeology()}) {
    const auto r = is_plot(*d, kink);
    if (r.accepted || r.reason != PlotFailure::kNotLocallySmooth) {
      item.passed = false;
      item.detail = "line-switching parametrization was not rejected as non-smooth";
      return item;
    }
  }
  item.detail = "covering, compatibility, pullback; kink rejected";
  return item;
}

VerifyItem tangent_item(int n) {
  VerifyItem item{"tangent dimensions", true, ""};
  const auto star = reference_star();
  const CrossSpace cross;
  for (const auto& x : star_sample_points(*star, n)) {
    const std::size_t want = x.isZero(0.0) ? star->size() : 1;
    if (tangent_dim(*star, x) != TangentDim::finite(want)) {
      item.passed = false;
      item.detail = "star at " + to_string(x) + ": " + to_string(tangent_dim(*star, x));
      return item;
    }
  }
  for (const auto& x : star_sample_points(cross, n)) {
    const std::size_t want = x.isZero(0.0) ? 2 : 1;
    if (tangent_dim(cross, x) != TangentDim::finite(want)) {
      item.passed = false;
      item.detail = "cross at " + to_string(x) + ": " + to_string(tangent_dim(cross, x));
      return item;
    }
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(deg(rng) + 1), v(deg(rng) + 1), w(deg(rng) + 1);
    for (auto* p : {&x, &v, &w}) {
      for (Eigen::Index i = 0; i < p->size(); ++i) (*p)[i] = coef(rng);
    }
    const Eigen::Index len = std::max({x.size(), v.size(), w.size()});
    auto pad = [len](const Eigen::VectorXd& a) {
      Eigen::VectorXd out = Eigen::VectorXd::Zero(len);
      out.head(a.size()) = a;
      return out;
    };
    PathGerm germ;
    germ.base = x;
    germ.curve = [x = pad(x), v = pad(v), w = pad(w)](double t) -> Point {
      return x + t * v + t * t * w;
    };
    const Point got = poly_tangent_from_path(germ);
    const Point want = trim_polynomial(v);
    if (got.size() != want.size() || (got - want).cwiseAbs().maxCoeff() > 1e-9) {
      item.passed = false;
      item.detail = "polynomial round trip: " + to_string(got) + " vs " + to_string(want);
      return item;
    }
  }
  item.detail = "star, cross, polynomial round trip";
  return item;
}

VerifyItem metric_item(int n) {
  VerifyItem item{"metric and gradient identity", true, ""};
  const std::vector<std::vector<double>> coefficients{
      {1, 0, 0, 0}, {0.5, -2, 1, 3}, {-1, 1, -1, 1}, {0, 2.5, 0, -0.5}};
  const auto star = reference_star();
  const auto cross = std::make_shared<const CrossSpace>();
  const auto plane = std::make_shared<const EuclideanSpace>(2);
  const std::vector<std::pair<std::shared_ptr<const FramedSpace>, std::vector<Point>>> cases{
      {star, star_sample_points(*star, n)},
      {cross, star_sample_points(*cross, n)},
      {plane, square_grid(n, -2.0, 2.0)}};
  const ScalarField smooth = [](const Point& p) {
    return p[0] * p[0] + 3.0 * p[1] - p[0] * p[1] + 0.25 * p[1] * p[1] * p[1];
  };
  double worst = 0.0;
  for (const auto& [space, points] : cases) {
    const Metric g = frame_metric(space);
    const MetricReport r = check_metric(g, *space, points, coefficients);
    if (!r.passed()) {
      item.passed = false;
      item.detail = "metric axioms fail on " + space->name();
      return item;
    }
    for (const auto& x : points) {
      // The generic route needs independent generators at x.
      if (space->ambient_rank(x) < static_cast<int>(space->active_labels(x).size())) continue;
      const auto grad = gradient_solve(g, *space, smooth, x);
      worst = std::max(worst, gradient_identity_residual(g, *space, grad.vector, smooth, x));
    }
  }
  const StarObjective f(star, reference_target());
  const Metric g = frame_metric(star);
  const ScalarField fs = [&f](const Point& x) { return star_objective(f, x); };
  for (const auto& x : star_sample_points(*star, n)) {
    if (x.isZero(0.0) || same_point(x, f.target())) continue;
    worst = std::max(worst, gradient_identity_residual(g, *star, star_gradient(f, x), fs, x));
  }
  item.passed = worst <= 1e-6;
  item.detail = "max gradient residual " + fmt(worst);
  return item;
}

VerifyItem retraction_item(const VerifyOptions& options) {
  VerifyItem item{"weak retraction axioms (star)", true, ""};
  const auto star = reference_star();
  const auto sign =
      options.flip_retraction_sign ? StarRetractionSign::kAgainst : StarRetractionSign::kAlong;
  const Retraction r = star_weak_retraction(star, sign);
  std::vector<double> scales;
  for (int i = 1; i <= 5; ++i) {
    scales.push_back(0.5 * i);
    scales.push_back(-0.5 * i);
  }
  const auto report = check_weak_retraction(r, *star, star_sample_points(*star, options.seed_grid),
                                            scales, coordinate_probes(2), 1e-6);
  item.passed = report.passed();
  item.detail = report.passed() ? "max residual " + fmt(report.max_first_order_residual)
                                : report.failures.front();
  return item;
}

VerifyItem connection_item(int n) {
  VerifyItem item{"Levi-Civita connection (flat R^2)", true, ""};
  const auto r = levi_civita_suite(n);
  item.passed = r.passed();
  double worst = *std::max_element(r.flat.residual.begin(), r.flat.residual.end());
  std::ostringstream os;
  os << "axiom residual " << worst << ", Koszul " << r.koszul_residual << ", controls "
     << (r.torsion_control_fails() && r.scaled_control_fails() ? "rejected" : "NOT rejected");
  item.detail = os.str();
  return item;
}

DescentProblem golden_problem(const VerifyOptions& options) {
  return star_problem(
      StarObjective(reference_star(), reference_target()),
      options.flip_retraction_sign ? StarRetractionSign::kAgainst : StarRetractionSign::kAlong);
}

VerifyItem golden_item(const std::string& name, DescentConfig cfg, const VerifyOptions& options,
                       GoldenComparison (*compare)(const IterateTrace&)) {
  cfg.origin_snap = options.origin_snap;
  const auto trace = steepest_descent(golden_problem(options), reference_start(), cfg);
  const auto cmp = compare(trace);
  return {name, cmp.passed, cmp.detail};
}

GoldenComparison compare_constant(const IterateTrace& t) { return compare_constant_trace(t); }

}  // namespace

std::vector<VerifyItem> verify_suite(const VerifyOptions& options) {
  const int n = std::max(1, options.seed_grid);
  std::vector<VerifyItem> items;
  auto guarded = [&items](const std::string& name, auto&& run) {
    try {
      items.push_back(run());
    } catch (const std::exception& e) {
      items.push_back({name, false, std::string("error: ") + e.what()});
    }
  };
  guarded("diffeology", [&] { return diffeology_item(n); });
  guarded("tangent", [&] { return tangent_item(n); });
  guarded("metric", [&] { return metric_item(n); });
  guarded("retraction", [&] { return retraction_item(options); });
  guarded("connection", [&] { return connection_item(n); });
  guarded("constant-step golden trace", [&] {
    return golden_item("constant-step golden trace", constant_step_config(), options,
                       compare_constant);
  });
  guarded("Armijo golden trace", [&] {
    return golden_item("Armijo golden trace", armijo_config(), options, compare_armijo_trace);
  });
  return items;
}

}  // namespace diffopt
