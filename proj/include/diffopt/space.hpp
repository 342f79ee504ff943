#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffopt/diffeology.hpp"
#include "diffopt/tangent.hpp"
#include "diffopt/types.hpp"

namespace diffopt {

// Dimension of a tangent space in its canonical representation.
struct TangentDim {
  std::size_t value = 0;
  bool countably_infinite = false;

  static TangentDim finite(std::size_t n) { return {n, false}; }
  static TangentDim infinite() { return {0, true}; }
  bool operator==(const TangentDim&) const = default;
};

std::string to_string(const TangentDim& d);

class Space {
 public:
  virtual ~Space() = default;

  virtual std::string name() const = 0;
  virtual bool contains(const Point& x) const = 0;
  virtual const Diffeology& diffeology() const = 0;
  // Throws UnsupportedSpace unless the space has a canonical tangent model.
  virtual TangentDim tangent_dim(const Point& x) const;
  // Replaces points within `eps` of a singular point by that point.
  virtual Point snap(const Point& x, double /*eps*/) const { return x; }

  void require_member(const Point& x) const;
};

// A space whose tangent cone at every point is spanned by straight-line germs
// t -> x + t d_i along a fixed, finite list of ambient directions d_i. The
// label of a generator germ is the index i.
class FramedSpace : public Space {
 public:
  int ambient_dim() const { return ambient_dim_; }
  const std::vector<Eigen::VectorXd>& directions() const { return directions_; }
  const Diffeology& diffeology() const override { return diffeology_; }

  // Generator labels whose germs are defined at x (sorted).
  virtual std::vector<std::size_t> active_labels(const Point& x) const = 0;

  PathGerm generator_germ(const Point& x, std::size_t label) const;
  std::vector<PathGerm> cone_generators(const Point& x) const;

  // Rewrites every term on canonical generator germs, projecting unlabeled
  // germs by their ambient velocity. Throws MembershipError when a velocity
  // is not along an active generator.
  TangentVector canonicalize(const TangentVector& v) const;

  // Tangent vector with the given coefficients on the active generators.
  TangentVector combination(const Point& x, const std::vector<double>& coefficients) const;
  // Ambient image sum_i c_i d_i of a tangent vector.
  Eigen::VectorXd to_ambient(const TangentVector& v) const;

  TangentDim tangent_dim(const Point& x) const override;
  // Rank of the active directions in the ambient space.
  int ambient_rank(const Point& x) const;

 protected:
  FramedSpace(std::vector<Eigen::VectorXd> directions, Diffeology diffeology);

  // label -> coefficient decomposition of an ambient velocity at x.
  virtual std::vector<std::pair<std::size_t, double>> decompose(const Point& x,
                                                                const Eigen::VectorXd& u) const;

 private:
  int ambient_dim_;
  std::vector<Eigen::VectorXd> directions_;
  Diffeology diffeology_;
};

class EuclideanSpace final : public FramedSpace {
 public:
  explicit EuclideanSpace(int n);

  std::string name() const override;
  bool contains(const Point& x) const override;
  std::vector<std::size_t> active_labels(const Point& x) const override;

  TangentVector vector_at(const Point& x, const Eigen::VectorXd& components) const;

 protected:
  std::vector<std::pair<std::size_t, double>> decompose(const Point& x,
                                                        const Eigen::VectorXd& u) const override;
};

// Relative collinearity tolerance for lines through the origin.
inline constexpr double kCollinearTol = 1e-12;

// x lies on R * v (x = 0 lies on every line).
bool on_line(const Eigen::Vector2d& x, const Eigen::Vector2d& v);

// Union of the lines R * v_i through the origin of R^2, with the subset
// diffeology generated by the inclusions r -> r v_i.
class StarSpace : public FramedSpace {
 public:
  // Generators must be unit vectors, pairwise distinct.
  explicit StarSpace(const std::vector<Eigen::Vector2d>& generators);
  // Normalizes the generators first.
  static StarSpace normalized(const std::vector<Eigen::Vector2d>& generators);

  std::string name() const override;
  bool contains(const Point& x) const override;
  std::vector<std::size_t> active_labels(const Point& x) const override;
  Point snap(const Point& x, double eps) const override;

  std::size_t size() const { return directions().size(); }
  Eigen::Vector2d generator(std::size_t i) const { return directions().at(i); }
  // First generator whose line contains x, or nullopt; any generator for x = 0.
  std::optional<std::size_t> line_of(const Point& x) const;

 protected:
  StarSpace(const std::vector<Eigen::Vector2d>& generators, Diffeology diffeology);
};

// The cross xy = 0, which is the star on the two coordinate axes. Away from
// the origin the tangent space is R along the axis; at the origin it is R^2.
class CrossSpace final : public StarSpace {
 public:
  CrossSpace();

  std::string name() const override;
  bool contains(const Point& x) const override;
  std::vector<std::size_t> active_labels(const Point& x) const override;
};

std::vector<Eigen::VectorXd> cross_tangent(const CrossSpace& cross, const Point& x);

// Real polynomials in one variable, stored as coefficient sequences.
class PolySpace final : public Space {
 public:
  explicit PolySpace(int max_plot_degree = 64);

  std::string name() const override { return "polynomials"; }
  bool contains(const Point& x) const override;
  const Diffeology& diffeology() const override { return diffeology_; }
  TangentDim tangent_dim(const Point& x) const override;

 private:
  Diffeology diffeology_;
};

// An arbitrary diffeology without a canonical tangent model.
class GenericSpace final : public Space {
 public:
  GenericSpace(Diffeology d, std::string name);

  std::string name() const override { return name_; }
  bool contains(const Point& x) const override { return diffeology_.in_carrier(x); }
  const Diffeology& diffeology() const override { return diffeology_; }

 private:
  Diffeology diffeology_;
  std::string name_;
};

TangentDim tangent_dim(const Space& space, const Point& x);
int ambient_rank(const FramedSpace& space, const Point& x);

}  // namespace diffopt
