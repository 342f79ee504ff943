#pragma once

#include <memory>

#include "diffopt/space.hpp"
#include "diffopt/tangent.hpp"

namespace diffopt {

// f_s(x) = |x - s| when x and s share a generator line (the origin lies on
// every line), |x| + |s| otherwise.
class StarObjective {
 public:
  StarObjective(std::shared_ptr<const StarSpace> star, const Point& target);

  const StarSpace& star() const { return *star_; }
  std::shared_ptr<const StarSpace> star_ptr() const { return star_; }
  const Point& target() const { return target_; }

  bool share_line(const Point& x) const;

 private:
  std::shared_ptr<const StarSpace> star_;
  Point target_;
};

double star_objective(const StarObjective& f, const Point& x);

// Closed-form diffeological gradient. For x = lambda v != 0 the coefficient
// on d_v is lambda/|x| (s off the line) or (lambda - mu)/|x - s| (s = mu v).
// At the origin it is -sign(mu) on d_w where s = mu w.
// Throws UndefinedGradient at x = s.
TangentVector star_gradient(const StarObjective& f, const Point& x);

// Exact line search along the current line: the step t > 0 for which
// x - t * grad reaches the minimizer of f on that line (s, or the origin).
double star_exact_step(const StarObjective& f, const Point& x, const TangentVector& grad);

}  // namespace diffopt
