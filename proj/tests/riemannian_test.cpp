#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "diffopt/reference_runs.hpp"
#include "diffopt/riemannian.hpp"
#include "diffopt/star.hpp"
#include "diffopt/suites.hpp"

namespace diffopt {
namespace {

const double kRoot2 = std::sqrt(2.0);

TangentVector unit(const FramedSpace& space, const Point& x, std::size_t label, double r = 1.0) {
  return TangentVector(ConeElement{space.generator_germ(x, label), r});
}

TEST(MetricEval, StarExamples) {
  const auto star = std::make_shared<const StarSpace>(StarSpace::normalized({{1, 0}, {0, 1}}));
  const Metric g = frame_metric(star);
  const Point o = Point::Zero(2);
  EXPECT_EQ(metric_eval(g, o, unit(*star, o, 0, 2.0), unit(*star, o, 1, 3.0)), 0.0);
  EXPECT_EQ(metric_eval(g, o, unit(*star, o, 1), unit(*star, o, 1)), 1.0);
  EXPECT_THROW(metric_eval(g, Eigen::Vector2d(1, 0), unit(*star, o, 0), unit(*star, o, 0)),
               BaseMismatch);
}

TEST(MetricEval, CrossIsEuclideanOnAxis) {
  const auto cross = std::make_shared<const CrossSpace>();
  const Point x = Eigen::Vector2d(1, 0);
  EXPECT_EQ(metric_eval(frame_metric(cross), x, unit(*cross, x, 0), unit(*cross, x, 0)), 1.0);
}

TEST(MetricEval, StarMetricUsesGeneratorInnerProducts) {
  const auto star = reference_star();
  const Metric g = frame_metric(star);
  const Point o = Point::Zero(2);
  // <v1, v3> = 1/sqrt2.
  EXPECT_NEAR(metric_eval(g, o, unit(*star, o, 0, 2.0), unit(*star, o, 2, -1.0)), -kRoot2, 1e-15);
}

TEST(GradientSolve, StarObjectiveCases) {
  const auto star = reference_star();
  const Metric g = frame_metric(star);
  const StarObjective off(star, reference_target());
  const ScalarField f = [&](const Point& x) { return star_objective(off, x); };

  const Point x = Eigen::Vector2d(0, 3);
  const auto sol = gradient_solve(g, *star, f, x);
  EXPECT_FALSE(sol.degenerate);
  ASSERT_EQ(sol.vector.labeled_coefficients().size(), 1u);
  EXPECT_NEAR(sol.vector.labeled_coefficients().at(1), 1.0, 1e-9);

  const Point w = star->generator(2);
  const StarObjective on(star, 4.0 * w);
  const Point x5 = 5.0 * w;
  const auto sol5 = gradient_solve(g, *star, [&](const Point& p) { return star_objective(on, p); }, x5);
  EXPECT_NEAR(sol5.vector.labeled_coefficients().at(2), 1.0, 1e-9);
}

TEST(GradientSolve, EuclideanSquaredNorm) {
  const auto plane = std::make_shared<const EuclideanSpace>(2);
  const auto sol = gradient_solve(frame_metric(plane), *plane,
                                  [](const Point& x) { return x.squaredNorm(); }, Eigen::Vector2d(1, 2));
  EXPECT_FALSE(sol.degenerate);
  EXPECT_LE((plane->to_ambient(sol.vector) - Eigen::Vector2d(2, 4)).norm(), 1e-8);
}

TEST(GradientSolve, DegenerateAtStarOrigin) {
  const auto star = reference_star();
  const auto sol = gradient_solve(frame_metric(star), *star,
                                  [](const Point& x) { return x[0] + 2 * x[1]; }, Point::Zero(2));
  EXPECT_TRUE(sol.degenerate);
  EXPECT_EQ(sol.rank, 2);
  // The minimum-norm solution still satisfies the defining identity.
  EXPECT_LE(gradient_identity_residual(frame_metric(star), *star, sol.vector,
                                       [](const Point& x) { return x[0] + 2 * x[1]; }, Point::Zero(2)),
            1e-8);
}

TEST(GradientSolve, ScalingCovariance) {
  const auto cross = std::make_shared<const CrossSpace>();
  const Metric g = frame_metric(cross);
  const ScalarField f = [](const Point& x) { return std::sin(x[0]) + x[1] * x[1] * x[1]; };
  for (const Point& x : {Point(Eigen::Vector2d(0, 0)), Point(Eigen::Vector2d(0.7, 0)),
                         Point(Eigen::Vector2d(0, -1.3))}) {
    const auto base = gradient_solve(g, *cross, f, x).vector;
    for (double c : {-2.0, 0.5, 3.0}) {
      const auto scaled =
          gradient_solve(g, *cross, [&](const Point& p) { return c * f(p); }, x).vector;
      EXPECT_LE(metric_norm(g, scaled - c * base), 1e-9);
    }
  }
}

TEST(StarGradient, UnitCoefficientsAwayFromOriginAndTarget) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(-4.0, 4.0);
  const auto star = reference_star();
  const Metric g = frame_metric(star);
  const StarObjective f(star, reference_target());
  for (int trial = 0; trial < 200; ++trial) {
    const Point x = lam(rng) * star->generator(trial % star->size());
    if (x.isZero(0.0) || same_point(x, f.target())) continue;
    const auto grad = star_gradient(f, x);
    EXPECT_NEAR(metric_eval(g, x, grad, grad), 1.0, 1e-9);
  }
}

TEST(CheckMetric, StarFlagsSemiDefiniteSpan) {
  const auto star = reference_star();
  const auto report =
      check_metric(frame_metric(star), *star, star_sample_points(*star, 4), {{1, 2, 3, 4}, {-1, 0, 2, 0.5}});
  EXPECT_TRUE(report.passed());
  EXPECT_FALSE(report.definite_on_span);
  ASSERT_FALSE(report.notes.empty());
  EXPECT_NE(report.notes.front().find("semi-definite for >2 generators"), std::string::npos);
}

TEST(CheckMetric, EuclideanPasses) {
  const auto plane = std::make_shared<const EuclideanSpace>(2);
  const auto report =
      check_metric(frame_metric(plane), *plane, square_grid(3, -1, 1), {{1, 0}, {0.3, -2}});
  EXPECT_TRUE(report.passed());
  EXPECT_TRUE(report.definite_on_span);
}

TEST(CheckMetric, AsymmetricFormFails) {
  const auto plane = std::make_shared<const EuclideanSpace>(2);
  const Metric skewed([plane](const Point&, const TangentVector& a, const TangentVector& b) {
    const Eigen::VectorXd u = plane->to_ambient(a), v = plane->to_ambient(b);
    return u.dot(v) + u[0] * v[1];
  }, "skewed");
  const auto report = check_metric(skewed, *plane, square_grid(2, -1, 1), {{1, 0}, {0, 1}});
  EXPECT_FALSE(report.symmetric);
  EXPECT_FALSE(report.passed());
}

}  // namespace
}  // namespace diffopt
