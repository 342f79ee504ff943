#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffopt/types.hpp"

namespace diffopt {

// Sampling resolution used by every plot check. Plots are refuted, never
// certified: an accepted report means "accepted at this resolution".
struct GridSpec {
  int samples_per_axis = 101;
  double fd_step = 1e-4;
  double tolerance = 1e-5;
};

// A sampled map from an open box into a space.
struct Parametrization {
  Box domain;
  std::function<Point(const Eigen::VectorXd&)> eval;

  int dim() const { return domain.dim(); }

  static Parametrization constant(const Box& domain, const Point& value);
  // Precomposition p o phi, with phi mapping `domain` into p.domain.
  Parametrization compose(const Box& domain,
                          std::function<Eigen::VectorXd(const Eigen::VectorXd&)> phi) const;
  // Postcomposition f o p.
  Parametrization then(PointMap f) const;
};

enum class PlotFailure {
  kNone,
  kNotInCarrier,
  kNotLocallySmooth,
  kNoLocalFactorization,
  kProbeNotPlot,
};

std::string to_string(PlotFailure reason);

struct PlotReport {
  bool accepted = true;
  std::optional<Eigen::VectorXd> witness;
  PlotFailure reason = PlotFailure::kNone;
  std::string detail;

  static PlotReport accept() { return {}; }
  static PlotReport reject(PlotFailure reason, Eigen::VectorXd witness, std::string detail = {});

  bool operator==(const PlotReport& other) const;
};

using Membership = std::function<bool(const Point&)>;

// A diffeological space given by its carrier and a generating family, with a
// decision procedure for plots at finite resolution.
//
//  - kSubset: plots are parametrizations into R^ambient_dim that land in the
//    carrier and are smooth into the ambient space.
//  - kSum: points are tagged [tag, coordinates...]; plots are locally constant
//    in the tag and locally plots of the tagged part.
//  - kPolynomial: points are coefficient sequences; plots have locally bounded
//    degree and are smooth coefficientwise (M_n is identified with R^(n+1)).
class Diffeology {
 public:
  enum class Kind { kSubset, kSum, kPolynomial };

  Kind kind() const { return kind_; }
  int ambient_dim() const { return ambient_dim_; }
  bool in_carrier(const Point& x) const;
  const std::vector<Parametrization>& generators() const { return generators_; }
  const std::vector<Diffeology>& parts() const;
  int max_degree() const { return max_degree_; }

  friend Diffeology make_subset_diffeology(int, Membership, std::vector<Parametrization>,
                                           const GridSpec&);
  friend Diffeology sum_diffeology(std::vector<Diffeology>);
  friend Diffeology polynomial_diffeology(int, std::vector<Parametrization>);

 private:
  Diffeology() = default;

  Kind kind_ = Kind::kSubset;
  int ambient_dim_ = 0;
  Membership membership_;
  std::vector<Parametrization> generators_;
  std::shared_ptr<const std::vector<Diffeology>> parts_;
  int max_degree_ = 0;
};

// Thrown when a generator leaves the membership set.
class GeneratorOutsideCarrier : public std::invalid_argument {
 public:
  GeneratorOutsideCarrier(std::size_t generator, Eigen::VectorXd sample);
  std::size_t generator() const { return generator_; }
  const Eigen::VectorXd& sample() const { return sample_; }

 private:
  std::size_t generator_;
  Eigen::VectorXd sample_;
};

Diffeology make_subset_diffeology(int ambient_dim, Membership membership,
                                  std::vector<Parametrization> generators,
                                  const GridSpec& grid = {});

// Standard diffeology of R^n, generated by the identity on (-radius, radius)^n.
Diffeology standard_diffeology(int n, double radius = 4.0);

Diffeology sum_diffeology(std::vector<Diffeology> parts);

Diffeology polynomial_diffeology(int max_degree = 64,
                                 std::vector<Parametrization> generators = {});

Point tagged_point(std::size_t tag, const Point& x);
std::size_t point_tag(const Point& p);
Point untagged(const Point& p);

// Sample points of `domain` (strictly interior, uniform per axis).
std::vector<Eigen::VectorXd> sample_grid(const Box& domain, int samples_per_axis);

PlotReport is_plot(const Diffeology& d, const Parametrization& p, const GridSpec& grid = {});

PlotReport check_smooth_map(const PointMap& f, const Diffeology& dx, const Diffeology& dy,
                            const std::vector<Parametrization>& probes,
                            const GridSpec& grid = {});

// u -> P(u) as a family of maps X -> Y; P(u)(x) = eval(u, x).
struct ParametrizedFamily {
  Box parameters;
  std::function<Point(const Eigen::VectorXd&, const Point&)> eval;
};

// Functional diffeology criterion: for every generator q of dx the joint map
// (u, w) -> P(u)(q(w)) must be a plot of dy on the product box.
PlotReport functional_plot_check(const Diffeology& dx, const Diffeology& dy,
                                 const ParametrizedFamily& family, const GridSpec& grid = {});

// Quotient plots through a user-supplied lift: p is a plot of X/~ at the
// sampled resolution when `lift` is a plot of dx and projection o lift = p.
PlotReport is_quotient_plot(const Diffeology& dx, const PointMap& projection,
                            const Parametrization& p, const Parametrization& lift,
                            const GridSpec& grid = {});

}  // namespace diffopt
