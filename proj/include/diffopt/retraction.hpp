#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "diffopt/space.hpp"
#include "diffopt/tangent.hpp"

namespace diffopt {

// Maps tangent vectors at x back into the space. A weak retraction is only
// defined on cone elements and rejects anything else.
class Retraction {
 public:
  using Map = std::function<Point(const Point&, const TangentVector&)>;

  Retraction(Map map, std::string name) : map_(std::move(map)), name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  Point operator()(const Point& x, const TangentVector& v) const { return map_(x, v); }

 private:
  Map map_;
  std::string name_;
};

class GeneratorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Orientation of the step along a generator line. kAlong (x + r v) is the
// convention under which descent reproduces the reference star iterates;
// kAgainst (x - r v) is kept as a negative control.
enum class StarRetractionSign { kAlong, kAgainst };

// R(x, r d_v) = (<x, v> + r) v, which equals x + r v for x on R * v and
// lands exactly on the line.
Point star_retraction(const StarSpace& star, const Point& x, const ConeElement& xi,
                      StarRetractionSign sign = StarRetractionSign::kAlong);

Retraction star_weak_retraction(std::shared_ptr<const StarSpace> star,
                                StarRetractionSign sign = StarRetractionSign::kAlong);

// R(x, v) = x + v on R^n.
Retraction euclidean_retraction(std::shared_ptr<const EuclideanSpace> space);

struct RetractionReport {
  bool centered = true;              // R(x, 0) == x exactly
  double max_first_order_residual = 0.0;
  bool first_order = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const { return centered && first_order; }
};

// Weak retraction axioms at every point, for every active generator and every
// scale r: (i) R(x, 0) = x; (ii) d/dt f(R(x, t r d_v)) at 0 equals (r d_v)(f)
// for each probe f, within tol.
RetractionReport check_weak_retraction(const Retraction& r, const FramedSpace& space,
                                       const std::vector<Point>& points,
                                       const std::vector<double>& scales,
                                       const std::vector<ScalarField>& probes, double tol = 1e-6,
                                       double h = kDefaultPathStep);

// Strong retraction axioms on arbitrary tangent vectors (linear combinations
// of generators). Evaluation failures count as axiom failures.
RetractionReport check_retraction(const Retraction& r, const std::vector<TangentVector>& vectors,
                                  const std::vector<ScalarField>& probes, double tol = 1e-6,
                                  double h = kDefaultPathStep);

}  // namespace diffopt
