#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "diffopt/diffeology.hpp"
#include "diffopt/types.hpp"

namespace diffopt {

inline constexpr double kDefaultPathStep = 1e-6;

// A path centered at `base`, defined on (-delta, delta).
//
// Generator lines of the framed spaces carry a `label` (the generator index)
// and their exact ambient `velocity`; germs built by hand usually have
// neither, and their velocity is then estimated by finite differences.
struct PathGerm {
  Point base;
  std::function<Point(double)> curve;
  double delta = 1.0;
  std::optional<std::size_t> label;
  std::optional<Eigen::VectorXd> velocity;

  Point operator()(double t) const { return curve(t); }

  // The constant path at x, whose path derivative is zero for every function.
  static PathGerm constant(const Point& x);
  // t -> x + t * direction.
  static PathGerm line(const Point& x, const Eigen::VectorXd& direction,
                       std::optional<std::size_t> label = std::nullopt);
};

// r * d_alpha. A zero scale is the zero element of the cone.
struct ConeElement {
  PathGerm germ;
  double scale = 1.0;

  const Point& base() const { return germ.base; }
  bool is_zero() const { return scale == 0.0; }
  static ConeElement zero(const Point& x) { return {PathGerm::constant(x), 0.0}; }
};

struct TangentTerm {
  double coefficient;
  PathGerm germ;
};

// Finite formal linear combination of path derivatives at a common base.
// Terms with a generator label are merged per label and kept sorted; zero
// coefficients are dropped.
class TangentVector {
 public:
  explicit TangentVector(Point base);
  TangentVector(const ConeElement& element);  // NOLINT: a cone element is a tangent vector

  const Point& base() const { return base_; }
  const std::vector<TangentTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TangentVector& add(double coefficient, const PathGerm& germ);
  TangentVector& operator+=(const TangentVector& other);
  TangentVector& operator*=(double c);

  // label -> coefficient over the labeled terms.
  std::map<std::size_t, double> labeled_coefficients() const;
  bool fully_labeled() const;
  // The single term of a cone element, if this vector is one (or zero).
  std::optional<ConeElement> as_cone_element() const;

 private:
  Point base_;
  std::vector<TangentTerm> terms_;
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator*(double c, TangentVector v);
TangentVector operator-(TangentVector v);

// (f(curve(h)) - f(curve(-h))) / (2h).
double path_derivative(const PathGerm& germ, const ScalarField& f, double h = kDefaultPathStep);

bool paths_equivalent(const PathGerm& a, const PathGerm& b, const std::vector<ScalarField>& probes,
                      double tol = 1e-6, double h = kDefaultPathStep);

double tangent_apply(const TangentVector& v, const ScalarField& f, double h = kDefaultPathStep);

// d_alpha -> d_{phi o alpha}.
ConeElement tangent_map(const PointMap& phi, const ConeElement& v);

// Ambient velocity of the curve at 0 (exact when the germ records it).
Eigen::VectorXd ambient_velocity(const PathGerm& germ);
// Sum of coefficient * velocity over the terms.
Eigen::VectorXd ambient_velocity(const TangentVector& v);

// x -> x_i for i < n.
std::vector<ScalarField> coordinate_probes(int n);

// Germ invariants: curve(0) equals the base exactly and the curve is a plot of
// `d` on (-delta, delta).
PlotReport check_germ(const Diffeology& d, const PathGerm& germ, const GridSpec& grid = {});

}  // namespace diffopt
