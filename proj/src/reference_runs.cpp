#include "diffopt/reference_runs.hpp"

#include <cmath>
#include <sstream>

namespace diffopt {

namespace {

constexpr double kHalfUlp6 = 0.5e-6 + 1e-12;
constexpr std::size_t kOriginRow = 12;

Point p2(double a, double b) { return Eigen::Vector2d(a, b); }

GoldenComparison mismatch(std::size_t k, const std::string& what) {
  std::ostringstream os;
  os << "diverges at k=" << k << ": " << what;
  return {false, k, os.str()};
}

}  // namespace

std::shared_ptr<const StarSpace> reference_star() {
  static const auto star = std::make_shared<const StarSpace>(StarSpace::normalized(
      {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 1),
       Eigen::Vector2d(-1, 1)}));
  return star;
}

Point reference_target() {
  const double c = 2.0 * std::sqrt(2.0);
  return p2(c, c);
}

Point reference_start() { return p2(0.0, 3.0); }

const std::vector<Point>& constant_step_reference() {
  static const std::vector<Point> rows = [] {
    const double r = 1.0 / std::sqrt(2.0);
    return std::vector<Point>{p2(0, 3),         p2(0, 2),         p2(0, 1),
                              p2(0, 0),         p2(r, r),         p2(2 * r, 2 * r),
                              p2(3 * r, 3 * r), p2(4 * r, 4 * r)};
  }();
  return rows;
}

const std::vector<std::array<double, 2>>& armijo_reference() {
  static const std::vector<std::array<double, 2>> rows{
      {0.0, 3.0},           {0.0, -2.0},          {0.0, 0.5},           {0.0, -0.125},
      {0.0, 0.03125},       {0.0, -0.007812},     {0.0, 0.001953},      {0.0, -0.000488},
      {0.0, 0.000122},      {0.0, -0.000031},     {0.0, 0.000008},      {0.0, -0.000002},
      {0.0, 0.0},           {3.535534, 3.535534}, {2.65165, 2.65165},   {2.872621, 2.872621},
      {2.817379, 2.817379}, {2.831189, 2.831189}, {2.827737, 2.827737}, {2.8286, 2.8286},
      {2.828384, 2.828384}, {2.828438, 2.828438}, {2.828424, 2.828424}, {2.828428, 2.828428},
  };
  return rows;
}

DescentConfig constant_step_config() {
  DescentConfig cfg;
  cfg.step = ConstantStep{1.0};
  return cfg;
}

DescentConfig armijo_config() {
  DescentConfig cfg;
  cfg.step = ArmijoStep{10.0, 0.1, 0.5, 200};
  return cfg;
}

GoldenComparison compare_constant_trace(const IterateTrace& trace, double tol) {
  const auto& ref = constant_step_reference();
  const std::size_t n = std::min(ref.size(), trace.rows.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double err = (trace.rows[k].x - ref[k]).cwiseAbs().maxCoeff();
    if (!(err <= tol)) {
      return mismatch(k, to_string(trace.rows[k].x) + " vs " + to_string(ref[k]));
    }
  }
  if (trace.rows.size() != ref.size()) {
    return mismatch(n, std::to_string(trace.rows.size()) + " rows, expected " +
                           std::to_string(ref.size()));
  }
  return {true, std::nullopt, std::to_string(ref.size()) + " rows match"};
}

GoldenComparison compare_armijo_trace(const IterateTrace& trace) {
  const auto& ref = armijo_reference();
  const std::size_t n = std::min(ref.size(), trace.rows.size());
  for (std::size_t k = 0; k < n; ++k) {
    const Point& x = trace.rows[k].x;
    const Point want = p2(ref[k][0], ref[k][1]);
    if (!((x - want).cwiseAbs().maxCoeff() <= kHalfUlp6)) {
      return mismatch(k, to_string(x) + " vs " + to_string(want));
    }
    if (k == kOriginRow && !x.isZero(0.0)) {
      return mismatch(k, to_string(x) + " is not exactly the origin");
    }
  }
  if (trace.rows.size() != ref.size()) {
    return mismatch(n, std::to_string(trace.rows.size()) + " rows, expected " +
                           std::to_string(ref.size()));
  }
  return {true, std::nullopt, std::to_string(ref.size()) + " rows match"};
}

}  // namespace diffopt
