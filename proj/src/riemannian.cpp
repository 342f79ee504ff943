#include "diffopt/riemannian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace diffopt {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kSmoothStep = 1e-4;
constexpr double kSmoothTol = 1e-5;

std::vector<double> fit(const std::vector<double>& c, std::size_t n) {
  std::vector<double> out(n, 0.0);
  std::copy_n(c.begin(), std::min(n, c.size()), out.begin());
  return out;
}

}  // namespace

Metric frame_metric(std::shared_ptr<const FramedSpace> space) {
  auto form = [space](const Point& x, const TangentVector& a, const TangentVector& b) {
    const auto ca = space->canonicalize(a).labeled_coefficients();
    const auto cb = space->canonicalize(b).labeled_coefficients();
    (void)x;
    const auto& d = space->directions();
    double sum = 0.0;
    for (const auto& [i, lambda] : ca) {
      for (const auto& [j, mu] : cb) sum += lambda * mu * d[i].dot(d[j]);
    }
    return sum;
  };
  return Metric(form, "frame metric on " + space->name());
}

double metric_eval(const Metric& g, const Point& x, const TangentVector& xi,
                   const TangentVector& chi) {
  if (!same_point(xi.base(), x) || !same_point(chi.base(), x)) {
    throw BaseMismatch("metric_eval: tangent vectors are not based at " + to_string(x));
  }
  return g(x, xi, chi);
}

double metric_norm(const Metric& g, const TangentVector& v) {
  return std::sqrt(std::max(0.0, metric_eval(g, v.base(), v, v)));
}

GradientSolution gradient_solve(const Metric& g, const FramedSpace& space, const ScalarField& f,
                                const Point& x, double h) {
  const auto generators = space.cone_generators(x);
  const auto k = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  std::vector<TangentVector> basis;
  for (const auto& germ : generators) basis.emplace_back(ConeElement{germ, 1.0});
  for (Eigen::Index a = 0; a < k; ++a) {
    rhs[a] = path_derivative(generators[static_cast<std::size_t>(a)], f, h);
    for (Eigen::Index b = 0; b < k; ++b) {
      gram(a, b) = metric_eval(g, x, basis[static_cast<std::size_t>(a)],
                               basis[static_cast<std::size_t>(b)]);
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  cod.setThreshold(kRankTol);
  const Eigen::VectorXd coefficients = cod.solve(rhs);

  GradientSolution out{TangentVector(x), false, static_cast<int>(cod.rank())};
  out.degenerate = out.rank < k;
  for (Eigen::Index a = 0; a < k; ++a) {
    out.vector.add(coefficients[a], generators[static_cast<std::size_t>(a)]);
  }
  return out;
}

MetricReport check_metric(const Metric& g, const FramedSpace& space,
                          const std::vector<Point>& points,
                          const std::vector<std::vector<double>>& coefficient_samples,
                          double tol) {
  MetricReport report;
  for (const auto& x : points) {
    space.require_member(x);
    const auto active = space.active_labels(x);
    const std::size_t k = active.size();

    for (const auto& a : coefficient_samples) {
      for (const auto& b : coefficient_samples) {
        const TangentVector xi = space.combination(x, fit(a, k));
        const TangentVector chi = space.combination(x, fit(b, k));
        const double r = std::abs(metric_eval(g, x, xi, chi) - metric_eval(g, x, chi, xi));
        report.max_symmetry_residual = std::max(report.max_symmetry_residual, r);
      }
    }

    Eigen::MatrixXd gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      const TangentVector di(ConeElement{space.generator_germ(x, active[i]), 1.0});
      for (double r : {1.0, -2.5}) {
        if (!(metric_eval(g, x, r * di, r * di) > 0.0)) report.positive_on_cone = false;
      }
      for (std::size_t j = 0; j < k; ++j) {
        const TangentVector dj(ConeElement{space.generator_germ(x, active[j]), 1.0});
        gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            metric_eval(g, x, di, dj);
      }
    }
    if (k > 0) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (gram + gram.transpose()));
      const double lo = eig.eigenvalues().minCoeff();
      const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
      if (!(lo > kRankTol * std::max(1.0, hi))) {
        report.definite_on_span = false;
        std::ostringstream os;
        os << "semi-definite for >" << space.ambient_rank(x) << " generators at " << to_string(x)
           << " (" << k << " generators)";
        report.notes.push_back(os.str());
      }
    }

    // Continuity of x -> g_x(d_a, d_a) along each generator line.
    for (std::size_t label : active) {
      const Eigen::VectorXd& d = space.directions()[label];
      std::array<double, 5> values{};
      bool defined = true;
      for (int s = -2; s <= 2 && defined; ++s) {
        const Point y = x + (s * kSmoothStep) * d;
        const auto there = space.active_labels(y);
        if (!space.contains(y) || !std::binary_search(there.begin(), there.end(), label)) {
          defined = false;
          break;
        }
        const TangentVector e(ConeElement{space.generator_germ(y, label), 1.0});
        values[static_cast<std::size_t>(s + 2)] = metric_eval(g, y, e, e);
      }
      if (!defined) continue;
      const double forward = (-3.0 * values[2] + 4.0 * values[3] - values[4]) / (2.0 * kSmoothStep);
      const double backward = (3.0 * values[2] - 4.0 * values[1] + values[0]) / (2.0 * kSmoothStep);
      const double r = std::abs(forward - backward);
      report.max_smoothness_residual = std::max(report.max_smoothness_residual, r);
      if (r > kSmoothTol * std::max({1.0, std::abs(forward), std::abs(backward)})) {
        report.smooth = false;
      }
    }
  }
  report.symmetric = report.max_symmetry_residual <= tol;
  return report;
}

}  // namespace diffopt
