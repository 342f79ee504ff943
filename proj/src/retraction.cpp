#include "diffopt/retraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diffopt {

Point star_retraction(const StarSpace& star, const Point& x, const ConeElement& xi,
                      StarRetractionSign sign) {
  star.require_member(x);
  if (!same_point(xi.base(), x)) throw BaseMismatch("star_retraction: cone element not at x");
  if (xi.is_zero()) return x;
  if (!xi.germ.label) {
    throw GeneratorMismatch("star_retraction: cone element carries no generator label");
  }
  const std::size_t label = *xi.germ.label;
  const Eigen::Vector2d v = star.generator(label);
  if (!x.isZero(0.0) && !on_line(x, v)) {
    throw GeneratorMismatch("star_retraction: " + to_string(x) + " is not on generator " +
                            std::to_string(label));
  }
  const double r = sign == StarRetractionSign::kAlong ? xi.scale : -xi.scale;
  return (x.dot(v) + r) * v;
}

Retraction star_weak_retraction(std::shared_ptr<const StarSpace> star, StarRetractionSign sign) {
  auto map = [star, sign](const Point& x, const TangentVector& v) {
    const auto cone = star->canonicalize(v).as_cone_element();
    if (!cone) {
      throw GeneratorMismatch("weak retraction is only defined on cone elements; got " +
                              std::to_string(v.terms().size()) + " generator terms");
    }
    return star_retraction(*star, x, *cone, sign);
  };
  return Retraction(map, sign == StarRetractionSign::kAlong ? "star" : "star (flipped sign)");
}

Retraction euclidean_retraction(std::shared_ptr<const EuclideanSpace> space) {
  auto map = [space](const Point& x, const TangentVector& v) -> Point {
    if (!same_point(v.base(), x)) throw BaseMismatch("euclidean_retraction: vector not at x");
    return x + space->to_ambient(v);
  };
  return Retraction(map, "euclidean");
}

namespace {

void check_vector(const Retraction& r, const TangentVector& xi,
                  const std::vector<ScalarField>& probes, double tol, double h,
                  RetractionReport& report) {
  const Point& x = xi.base();
  ++report.checks;
  try {
    if (!same_point(r(x, 0.0 * xi), x)) {
      report.centered = false;
      report.failures.push_back("R(x, 0) != x at " + to_string(x));
    }
    PathGerm along;
    along.base = x;
    along.curve = [&r, xi](double t) { return r(xi.base(), t * xi); };
    for (const auto& f : probes) {
      const double lhs = path_derivative(along, f, h);
      const double rhs = tangent_apply(xi, f, h);
      const double residual = std::abs(lhs - rhs);
      report.max_first_order_residual = std::max(report.max_first_order_residual, residual);
      if (residual > tol) {
        report.first_order = false;
        std::ostringstream os;
        os << "first-order mismatch " << residual << " at " << to_string(x);
        report.failures.push_back(os.str());
      }
    }
  } catch (const std::exception& e) {
    report.first_order = false;
    report.failures.push_back(std::string("evaluation failed at ") + to_string(x) + ": " +
                              e.what());
  }
}

}  // namespace

RetractionReport check_weak_retraction(const Retraction& r, const FramedSpace& space,
                                       const std::vector<Point>& points,
                                       const std::vector<double>& scales,
                                       const std::vector<ScalarField>& probes, double tol,
                                       double h) {
  RetractionReport report;
  for (const auto& x : points) {
    for (const auto& germ : space.cone_generators(x)) {
      for (double scale : scales) check_vector(r, TangentVector(ConeElement{germ, scale}), probes,
                                               tol, h, report);
    }
  }
  return report;
}

RetractionReport check_retraction(const Retraction& r, const std::vector<TangentVector>& vectors,
                                  const std::vector<ScalarField>& probes, double tol, double h) {
  RetractionReport report;
  for (const auto& v : vectors) check_vector(r, v, probes, tol, h, report);
  return report;
}

}  // namespace diffopt
