#include "diffopt/suites.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace diffopt {

void CheckResult::fail(const std::string& why) {
  if (passed) detail = why;
  passed = false;
}

std::vector<Point> star_sample_points(const StarSpace& star, int per_line, double radius) {
  std::vector<Point> out{Point::Zero(2)};
  for (std::size_t i = 0; i < star.size(); ++i) {
    for (int j = 0; j < per_line; ++j) {
      // Alternating signs, magnitudes spread over (0, radius].
      const double mag = radius * (j / 2 + 1) / ((per_line + 1) / 2);
      const double lambda = j % 2 == 0 ? mag : -mag;
      out.emplace_back(lambda * star.generator(i));
    }
  }
  return out;
}

std::vector<Point> square_grid(int n, double lo, double hi) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
      const double b = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * j / (n - 1);
      out.emplace_back(Eigen::Vector2d(a, b));
    }
  }
  return out;
}

Parametrization line_switching_plot(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return {Box::interval(-1.0, 1.0), [a, b](const Eigen::VectorXd& u) -> Point {
            return u[0] < 0.0 ? Point(u[0] * a) : Point(u[0] * b);
          }};
}

namespace {

// Polynomial self-map of (-1,1)^k into the given box.
Parametrization reparametrize(const Parametrization& p) {
  const int k = p.dim();
  const Eigen::VectorXd mid = 0.5 * (p.domain.lower + p.domain.upper);
  const Eigen::VectorXd half = 0.5 * (p.domain.upper - p.domain.lower);
  return p.compose(Box::cube(k, -1.0, 1.0), [mid, half](const Eigen::VectorXd& u) {
    Eigen::VectorXd w(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
      w[j] = mid[j] + 0.45 * half[j] * (u[j] + u[j] * u[j]);
    }
    return w;
  });
}

}  // namespace

CheckResult check_diffeology_axioms(const Diffeology& d, const std::vector<Point>& points,
                                    const std::vector<Parametrization>& plots,
                                    const GridSpec& grid) {
  CheckResult out;
  for (const auto& x : points) {
    for (int k : {1, 2}) {
      const auto r = is_plot(d, Parametrization::constant(Box::cube(k, -1.0, 1.0), x), grid);
      if (!r.accepted) out.fail("covering: constant plot at " + to_string(x) + " rejected");
    }
  }

  const bool subset = d.kind() == Diffeology::Kind::kSubset;
  const Diffeology ambient = standard_diffeology(std::max(1, d.ambient_dim()));
  for (std::size_t i = 0; i < plots.size(); ++i) {
    const auto& p = plots[i];
    const PlotReport r = is_plot(d, p, grid);
    if (!(r == is_plot(d, p, grid))) out.fail("determinism: plot " + std::to_string(i));
    if (r.accepted) {
      const auto c = is_plot(d, reparametrize(p), grid);
      if (!c.accepted) {
        out.fail("smooth compatibility: plot " + std::to_string(i) + " rejected after reparametrization (" +
                 to_string(c.reason) + ")");
      }
    }
    if (subset) {
      const auto samples = sample_grid(p.domain, grid.samples_per_axis);
      const bool lands = std::all_of(samples.begin(), samples.end(),
                                     [&](const Eigen::VectorXd& u) { return d.in_carrier(p.eval(u)); });
      const bool pulled = lands && is_plot(ambient, p, grid).accepted;
      if (pulled != r.accepted) {
        out.fail("pullback consistency: plot " + std::to_string(i) + " subset=" +
                 (r.accepted ? "plot" : "rejected") + " ambient=" + (pulled ? "plot" : "rejected"));
      }
    }
  }
  if (out.passed) {
    std::ostringstream os;
    os << points.size() << " points, " << plots.size() << " plots";
    out.detail = os.str();
  }
  return out;
}

double gradient_identity_residual(const Metric& g, const FramedSpace& space,
                                  const TangentVector& grad, const ScalarField& f, const Point& x,
                                  double h) {
  double worst = 0.0;
  for (const auto& germ : space.cone_generators(x)) {
    const TangentVector d(ConeElement{germ, 1.0});
    worst = std::max(worst, std::abs(metric_eval(g, x, grad, d) - path_derivative(germ, f, h)));
  }
  return worst;
}

bool LeviCivitaReport::passed() const {
  return flat.passed() && koszul_residual <= flat.tol && uniqueness_residual <= flat.tol &&
         torsion_control_fails() && scaled_control_fails();
}

LeviCivitaReport levi_civita_suite(int grid_n, const ConnectionCheckOptions& options) {
  auto space = std::make_shared<const EuclideanSpace>(2);
  const Metric g = frame_metric(space);
  const double h = options.h;

  auto field = [space](std::function<Eigen::Vector2d(double, double)> c) {
    return coordinate_field(space, [c](const Point& p) -> Eigen::VectorXd { return c(p[0], p[1]); });
  };
  const std::vector<VectorField> fields{
      field([](double, double) { return Eigen::Vector2d(1.0, 0.0); }),
      field([](double x, double y) { return Eigen::Vector2d(y, x); }),
      field([](double x, double y) { return Eigen::Vector2d(x * y, 1.0 - x * x); }),
      field([](double x, double y) { return Eigen::Vector2d(x * x, y * y - 0.5); }),
  };
  const std::vector<ScalarField> functions{
      [](const Point& p) { return p[0] + 2.0 * p[1]; },
      [](const Point& p) { return p[0] * p[1] + 1.0; },
      [](const Point& p) { return p[0] * p[0] - p[1]; },
  };
  const auto points = square_grid(grid_n, -1.0, 1.0);

  const Connection flat = flat_connection(space, h);
  const Connection by_derivations = flat_connection_by_derivations(space, h);
  const Connection torsion{[space, flat](const VectorField& x, const VectorField& y) -> VectorField {
    const VectorField base = flat(x, y);
    return {[space, base, x, y](const Point& p) {
      const Eigen::VectorXd a = space->to_ambient(x(p)), b = space->to_ambient(y(p));
      return base(p) + space->vector_at(p, Eigen::Vector2d(a[0] * b[1] - a[1] * b[0], 0.0));
    }};
  }};
  const Connection doubled{[flat](const VectorField& x, const VectorField& y) {
    return scale_field(2.0, flat(x, y));
  }};

  LeviCivitaReport report;
  report.flat = check_connection_axioms(flat, g, fields, functions, points, options);
  report.torsion_control = check_connection_axioms(torsion, g, fields, functions, points, options);
  report.scaled_control = check_connection_axioms(doubled, g, fields, functions, points, options);

  for (const auto& p : points) {
    for (const auto& x : fields) {
      for (const auto& y : fields) {
        report.uniqueness_residual =
            std::max(report.uniqueness_residual,
                     metric_norm(g, flat(x, y)(p) - by_derivations(x, y)(p)));
        for (const auto& z : fields) {
          const double lhs = 2.0 * metric_eval(g, p, flat(z, x)(p), y(p));
          report.koszul_residual =
              std::max(report.koszul_residual, std::abs(lhs - koszul_rhs(space, g, x, y, z, p, h)));
        }
      }
    }
  }
  return report;
}

}  // namespace diffopt
