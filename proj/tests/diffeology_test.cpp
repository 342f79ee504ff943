#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "diffopt/diffeology.hpp"
#include "diffopt/space.hpp"
#include "diffopt/suites.hpp"

namespace diffopt {
namespace {

Diffeology cross_diffeology() {
  auto on_cross = [](const Point& x) { return std::abs(x[0] * x[1]) <= 1e-12; };
  std::vector<Parametrization> gens{
      {Box::interval(-4, 4), [](const Eigen::VectorXd& u) -> Point { return Eigen::Vector2d(u[0], 0); }},
      {Box::interval(-4, 4), [](const Eigen::VectorXd& u) -> Point { return Eigen::Vector2d(0, u[0]); }}};
  return make_subset_diffeology(2, on_cross, gens);
}

Parametrization curve(std::function<Point(double)> c, double lo = -1.0, double hi = 1.0) {
  return {Box::interval(lo, hi), [c](const Eigen::VectorXd& u) { return c(u[0]); }};
}

TEST(SubsetDiffeology, CrossGeneratorsAccepted) {
  const Diffeology d = cross_diffeology();
  EXPECT_EQ(d.kind(), Diffeology::Kind::kSubset);
  EXPECT_EQ(d.generators().size(), 2u);
  for (const auto& g : d.generators()) EXPECT_TRUE(is_plot(d, g).accepted);
}

TEST(SubsetDiffeology, StandardLineAcceptsSquare) {
  const Diffeology line = standard_diffeology(1);
  EXPECT_TRUE(is_plot(line, curve([](double u) { return Point::Constant(1, u * u); })).accepted);
}

TEST(SubsetDiffeology, GeneratorLeavingCarrierIsReported) {
  auto on_cross = [](const Point& x) { return std::abs(x[0] * x[1]) <= 1e-12; };
  const Parametrization diagonal{Box::interval(-2, 2), [](const Eigen::VectorXd& u) -> Point {
                                   return Eigen::Vector2d(u[0], u[0]);
                                 }};
  try {
    make_subset_diffeology(2, on_cross, {diagonal});
    FAIL() << "expected GeneratorOutsideCarrier";
  } catch (const GeneratorOutsideCarrier& e) {
    EXPECT_EQ(e.generator(), 0u);
    EXPECT_NE(e.sample()[0], 0.0);
  }
}

TEST(IsPlot, ConstantAtOriginAccepted) {
  const auto r = is_plot(cross_diffeology(),
                         Parametrization::constant(Box::interval(-1, 1), Point::Zero(2)));
  EXPECT_TRUE(r.accepted);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(IsPlot, HorizontalAxisAccepted) {
  EXPECT_TRUE(is_plot(cross_diffeology(),
                      curve([](double u) -> Point { return Eigen::Vector2d(u, 0); }))
                  .accepted);
}

TEST(IsPlot, KinkBetweenLinesRejectedAtZero) {
  const StarSpace star = StarSpace::normalized({{1, 0}, {0, 1}, {1, 1}});
  const auto r = is_plot(star.diffeology(),
                         line_switching_plot(star.generator(0), star.generator(2)));
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, PlotFailure::kNotLocallySmooth);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR((*r.witness)[0], 0.0, 1e-3);
}

TEST(IsPlot, FlatSwitchIsSmooth) {
  // Every derivative of exp(-1/u^2) vanishes at 0, so switching lines this
  // way is a plot of the cross.
  auto flat = [](double u) { return u == 0.0 ? 0.0 : std::exp(-1.0 / (u * u)); };
  const auto p = curve([flat](double u) -> Point {
    return u < 0 ? Eigen::Vector2d(flat(u), 0) : Eigen::Vector2d(0, flat(u));
  });
  EXPECT_TRUE(is_plot(cross_diffeology(), p).accepted);
}

TEST(IsPlot, OffCarrierRejectedWithWitness) {
  const auto r = is_plot(cross_diffeology(),
                         curve([](double u) -> Point { return Eigen::Vector2d(u, 1.0); }));
  ASSERT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, PlotFailure::kNotInCarrier);
  EXPECT_TRUE(r.witness.has_value());
}

TEST(IsPlot, AbsoluteValueRejectedOnLine) {
  const auto r = is_plot(standard_diffeology(1),
                         curve([](double u) { return Point::Constant(1, std::abs(u)); }));
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, PlotFailure::kNotLocallySmooth);
}

TEST(SmoothMap, InclusionOfCross) {
  const Diffeology cross = cross_diffeology();
  const auto r = check_smooth_map([](const Point& x) { return x; }, cross, standard_diffeology(2),
                                  cross.generators());
  EXPECT_TRUE(r.accepted);
}

TEST(SmoothMap, SwapOnCross) {
  const Diffeology cross = cross_diffeology();
  const auto r = check_smooth_map(
      [](const Point& x) -> Point { return Eigen::Vector2d(x[1], x[0]); }, cross, cross,
      cross.generators());
  EXPECT_TRUE(r.accepted);
}

TEST(SmoothMap, FoldOntoHorizontalAxis) {
  const Diffeology cross = cross_diffeology();
  const auto r = check_smooth_map(
      [](const Point& x) -> Point { return Eigen::Vector2d(x[0] + x[1], 0); }, cross, cross,
      {curve([](double u) -> Point { return Eigen::Vector2d(0, u); })});
  EXPECT_TRUE(r.accepted);
}

TEST(SmoothMap, ProbeThatIsNotAPlotIsReportedDistinctly) {
  const Diffeology cross = cross_diffeology();
  const auto r = check_smooth_map([](const Point& x) { return x; }, cross, cross,
                                  {curve([](double u) -> Point { return Eigen::Vector2d(u, u); })});
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, PlotFailure::kProbeNotPlot);
}

TEST(SumDiffeology, TagMustBeLocallyConstant) {
  const Diffeology sum = sum_diffeology({standard_diffeology(1), standard_diffeology(1)});
  const auto stay = curve([](double u) { return tagged_point(1, Point::Constant(1, u)); });
  EXPECT_TRUE(is_plot(sum, stay).accepted);
  const auto jump = curve([](double u) { return tagged_point(u < 0 ? 0 : 1, Point::Constant(1, u)); });
  const auto r = is_plot(sum, jump);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.reason, PlotFailure::kNoLocalFactorization);
  EXPECT_EQ(point_tag(tagged_point(3, Point::Zero(2))), 3u);
  EXPECT_EQ(untagged(tagged_point(3, Eigen::Vector2d(1, 2))), Eigen::VectorXd(Eigen::Vector2d(1, 2)));
}

TEST(PolynomialDiffeology, BoundedDegreeFamilies) {
  const Diffeology poly = polynomial_diffeology(8);
  const auto smooth = curve([](double u) -> Point { return Eigen::Vector3d(std::sin(u), 1.0, u * u); });
  EXPECT_TRUE(is_plot(poly, smooth).accepted);
  const auto too_high = curve([](double u) -> Point {
    Point p = Point::Zero(12);
    p[11] = 1.0 + u;
    return p;
  });
  EXPECT_FALSE(is_plot(poly, too_high).accepted);
}

TEST(FunctionalDiffeology, TranslationFamilyOnLine) {
  const Diffeology line = standard_diffeology(1);
  const ParametrizedFamily shift{Box::interval(-1, 1), [](const Eigen::VectorXd& u, const Point& x) {
                                   return Point(x.array() + u[0] * u[0]);
                                 }};
  EXPECT_TRUE(functional_plot_check(line, line, shift, {21, 1e-4, 1e-5}).accepted);
  const ParametrizedFamily kink{Box::interval(-1, 1), [](const Eigen::VectorXd& u, const Point& x) {
                                  return Point(x.array() + std::abs(u[0]));
                                }};
  EXPECT_FALSE(functional_plot_check(line, line, kink, {21, 1e-4, 1e-5}).accepted);
}

TEST(QuotientDiffeology, CircleThroughAngleLift) {
  // R -> R / 2 pi Z realized as the unit circle.
  const Diffeology line = standard_diffeology(1, 10.0);
  const PointMap projection = [](const Point& t) -> Point {
    return Eigen::Vector2d(std::cos(t[0]), std::sin(t[0]));
  };
  const auto loop = curve([](double u) -> Point { return Eigen::Vector2d(std::cos(3 * u), std::sin(3 * u)); });
  const auto lift = curve([](double u) { return Point::Constant(1, 3 * u); });
  EXPECT_TRUE(is_quotient_plot(line, projection, loop, lift).accepted);
  const auto wrong = curve([](double u) { return Point::Constant(1, 2 * u); });
  EXPECT_FALSE(is_quotient_plot(line, projection, loop, wrong).accepted);
}

TEST(DiffeologyProperties, CoveringCompatibilityPullbackOnCross) {
  const CrossSpace cross;
  std::vector<Parametrization> plots = cross.diffeology().generators();
  plots.push_back(curve([](double u) -> Point { return Eigen::Vector2d(0, u * u * u - u); }));
  plots.push_back(curve([](double u) -> Point { return Eigen::Vector2d(u, 0.5); }));  // off carrier
  const auto r = check_diffeology_axioms(cross.diffeology(), star_sample_points(cross, 6), plots);
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(DiffeologyProperties, RandomStarsSeeded) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Eigen::Vector2d> gens;
    for (int i = 0; i < 3; ++i) {
      const double a = angle(rng);
      gens.emplace_back(std::cos(a), std::sin(a));
    }
    const StarSpace star(gens);
    const auto r = check_diffeology_axioms(star.diffeology(), star_sample_points(star, 4),
                                           star.diffeology().generators(), {41, 1e-4, 1e-5});
    EXPECT_TRUE(r.passed) << r.detail;
  }
}

TEST(IsPlot, Deterministic) {
  const Diffeology cross = cross_diffeology();
  const auto p = curve([](double u) -> Point { return Eigen::Vector2d(u, u); });
  EXPECT_EQ(is_plot(cross, p), is_plot(cross, p));
}

}  // namespace
}  // namespace diffopt
