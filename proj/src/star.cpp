#include "diffopt/star.hpp"

#include <cmath>

namespace diffopt {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

bool is_origin(const Point& x) { return x.isZero(0.0); }

}  // namespace

StarObjective::StarObjective(std::shared_ptr<const StarSpace> star, const Point& target)
    : star_(std::move(star)), target_(target) {
  if (!star_) throw std::invalid_argument("StarObjective: no star");
  star_->require_member(target_);
}

bool StarObjective::share_line(const Point& x) const {
  if (is_origin(x) || is_origin(target_)) return true;
  for (std::size_t i = 0; i < star_->size(); ++i) {
    const Eigen::Vector2d v = star_->generator(i);
    if (on_line(x, v) && on_line(target_, v)) return true;
  }
  return false;
}

double star_objective(const StarObjective& f, const Point& x) {
  f.star().require_member(x);
  if (f.share_line(x)) return (x - f.target()).norm();
  return x.norm() + f.target().norm();
}

TangentVector star_gradient(const StarObjective& f, const Point& x) {
  const StarSpace& star = f.star();
  star.require_member(x);
  const Point& s = f.target();
  if (x == s) throw UndefinedGradient("star gradient is undefined at the target " + to_string(s));

  TangentVector grad(x);
  if (is_origin(x)) {
    const std::size_t w = *star.line_of(s);
    const double mu = s.dot(star.generator(w));
    grad.add(-sign(mu), star.generator_germ(x, w));
    return grad;
  }

  const std::size_t v = *star.line_of(x);
  const Eigen::Vector2d dir = star.generator(v);
  const double lambda = x.dot(dir);
  double coefficient;
  if (!is_origin(s) && on_line(s, dir)) {
    const double mu = s.dot(dir);
    coefficient = (lambda - mu) / (x - s).norm();
  } else {
    coefficient = lambda / x.norm();
  }
  grad.add(coefficient, star.generator_germ(x, v));
  return grad;
}

double star_exact_step(const StarObjective& f, const Point& x, const TangentVector& grad) {
  const auto cone = grad.as_cone_element();
  if (!cone || cone->is_zero() || !cone->germ.label) {
    throw std::invalid_argument("exact step needs a nonzero labeled cone element");
  }
  const Eigen::Vector2d dir = f.star().generator(*cone->germ.label);
  const double c = cone->scale;
  const double lambda = x.dot(dir);
  const Point& s = f.target();
  // Minimizer on R * dir: the target if it lies there, the origin otherwise.
  const double goal = (on_line(s, dir) ? s.dot(dir) : 0.0);
  return (lambda - goal) / c;
}

}  // namespace diffopt
