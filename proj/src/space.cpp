#include "diffopt/space.hpp"

#include <algorithm>
#include <cmath>

namespace diffopt {

namespace {

constexpr double kGeneratorRadius = 4.0;
constexpr double kDirectionMatchTol = 1e-9;

Diffeology line_union_diffeology(const std::vector<Eigen::Vector2d>& generators,
                                 Membership membership) {
  std::vector<Parametrization> lines;
  for (const auto& v : generators) {
    lines.push_back({Box::interval(-kGeneratorRadius, kGeneratorRadius),
                     [v](const Eigen::VectorXd& u) -> Point { return u[0] * v; }});
  }
  return make_subset_diffeology(2, std::move(membership), std::move(lines));
}

std::vector<Eigen::VectorXd> to_dynamic(const std::vector<Eigen::Vector2d>& vs) {
  return {vs.begin(), vs.end()};
}

void validate_generators(const std::vector<Eigen::Vector2d>& generators) {
  if (generators.empty()) throw std::invalid_argument("star needs at least one generator");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (!generators[i].allFinite() || std::abs(generators[i].norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("star generator " + std::to_string(i) + " is not a unit vector");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((generators[i] - generators[j]).norm() <= 1e-12) {
        throw std::invalid_argument("star generators " + std::to_string(j) + " and " +
                                    std::to_string(i) + " coincide");
      }
    }
  }
}

}  // namespace

std::string to_string(const TangentDim& d) {
  return d.countably_infinite ? "countably-infinite" : std::to_string(d.value);
}

TangentDim Space::tangent_dim(const Point&) const {
  throw UnsupportedSpace("no canonical tangent model for space '" + name() + "'");
}

void Space::require_member(const Point& x) const {
  if (!contains(x)) throw MembershipError(to_string(x) + " is not a point of " + name());
}

// --- FramedSpace ------------------------------------------------------------

FramedSpace::FramedSpace(std::vector<Eigen::VectorXd> directions, Diffeology diffeology)
    : ambient_dim_(static_cast<int>(directions.empty() ? 0 : directions.front().size())),
      directions_(std::move(directions)),
      diffeology_(std::move(diffeology)) {}

PathGerm FramedSpace::generator_germ(const Point& x, std::size_t label) const {
  const auto active = active_labels(x);
  if (!std::binary_search(active.begin(), active.end(), label)) {
    throw MembershipError("generator " + std::to_string(label) + " does not pass through " +
                          to_string(x));
  }
  return PathGerm::line(x, directions_.at(label), label);
}

std::vector<PathGerm> FramedSpace::cone_generators(const Point& x) const {
  require_member(x);
  std::vector<PathGerm> out;
  for (std::size_t label : active_labels(x)) out.push_back(PathGerm::line(x, directions_[label], label));
  return out;
}

std::vector<std::pair<std::size_t, double>> FramedSpace::decompose(const Point& x,
                                                                   const Eigen::VectorXd& u) const {
  const double scale = std::max(1.0, u.norm());
  for (std::size_t label : active_labels(x)) {
    const Eigen::VectorXd& d = directions_[label];
    const double c = u.dot(d);
    if ((u - c * d).norm() <= kDirectionMatchTol * scale) return {{label, c}};
  }
  throw MembershipError("velocity " + to_string(u) + " is not in the tangent cone at " +
                        to_string(x));
}

TangentVector FramedSpace::canonicalize(const TangentVector& v) const {
  TangentVector out(v.base());
  for (const auto& t : v.terms()) {
    if (t.germ.label) {
      out.add(t.coefficient, generator_germ(v.base(), *t.germ.label));
      continue;
    }
    const Eigen::VectorXd u = ambient_velocity(t.germ);
    if (u.size() != ambient_dim_) throw MembershipError("germ velocity has wrong dimension");
    if (u.norm() <= 1e-12) continue;  // constant germ: the zero element
    for (const auto& [label, c] : decompose(v.base(), u)) {
      out.add(t.coefficient * c, generator_germ(v.base(), label));
    }
  }
  return out;
}

TangentVector FramedSpace::combination(const Point& x,
                                       const std::vector<double>& coefficients) const {
  const auto active = active_labels(x);
  if (coefficients.size() != active.size()) {
    throw std::invalid_argument("expected one coefficient per active generator");
  }
  TangentVector v(x);
  for (std::size_t i = 0; i < active.size(); ++i) {
    v.add(coefficients[i], PathGerm::line(x, directions_[active[i]], active[i]));
  }
  return v;
}

Eigen::VectorXd FramedSpace::to_ambient(const TangentVector& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ambient_dim_);
  for (const auto& [label, c] : canonicalize(v).labeled_coefficients()) {
    out += c * directions_[label];
  }
  return out;
}

TangentDim FramedSpace::tangent_dim(const Point& x) const {
  require_member(x);
  return TangentDim::finite(active_labels(x).size());
}

int FramedSpace::ambient_rank(const Point& x) const {
  require_member(x);
  const auto active = active_labels(x);
  if (active.empty()) return 0;
  Eigen::MatrixXd m(ambient_dim_, static_cast<Eigen::Index>(active.size()));
  for (std::size_t i = 0; i < active.size(); ++i) {
    m.col(static_cast<Eigen::Index>(i)) = directions_[active[i]];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

// --- EuclideanSpace ---------------------------------------------------------

namespace {

std::vector<Eigen::VectorXd> unit_basis(int n) {
  if (n < 1) throw std::invalid_argument("Euclidean dimension must be positive");
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < n; ++i) out.push_back(Eigen::VectorXd::Unit(n, i));
  return out;
}

}  // namespace

EuclideanSpace::EuclideanSpace(int n) : FramedSpace(unit_basis(n), standard_diffeology(n)) {}

std::string EuclideanSpace::name() const { return "R^" + std::to_string(ambient_dim()); }

bool EuclideanSpace::contains(const Point& x) const {
  return x.size() == ambient_dim() && x.allFinite();
}

std::vector<std::size_t> EuclideanSpace::active_labels(const Point&) const {
  std::vector<std::size_t> out(static_cast<std::size_t>(ambient_dim()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

TangentVector EuclideanSpace::vector_at(const Point& x, const Eigen::VectorXd& components) const {
  if (components.size() != ambient_dim()) throw std::invalid_argument("wrong component count");
  TangentVector v(x);
  for (Eigen::Index i = 0; i < components.size(); ++i) {
    v.add(components[i], PathGerm::line(x, directions()[static_cast<std::size_t>(i)],
                                        static_cast<std::size_t>(i)));
  }
  return v;
}

std::vector<std::pair<std::size_t, double>> EuclideanSpace::decompose(
    const Point&, const Eigen::VectorXd& u) const {
  std::vector<std::pair<std::size_t, double>> out;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0) out.emplace_back(static_cast<std::size_t>(i), u[i]);
  }
  return out;
}

// --- StarSpace --------------------------------------------------------------

bool on_line(const Eigen::Vector2d& x, const Eigen::Vector2d& v) {
  return std::abs(x[0] * v[1] - x[1] * v[0]) <= kCollinearTol * x.norm();
}

StarSpace::StarSpace(const std::vector<Eigen::Vector2d>& generators)
    : StarSpace(generators, [&] {
        validate_generators(generators);
        return line_union_diffeology(generators, [generators](const Point& x) {
          return std::any_of(generators.begin(), generators.end(),
                             [&](const Eigen::Vector2d& v) { return on_line(x, v); });
        });
      }()) {}

StarSpace::StarSpace(const std::vector<Eigen::Vector2d>& generators, Diffeology diffeology)
    : FramedSpace(to_dynamic(generators), std::move(diffeology)) {
  validate_generators(generators);
}

StarSpace StarSpace::normalized(const std::vector<Eigen::Vector2d>& generators) {
  std::vector<Eigen::Vector2d> unit;
  for (const auto& v : generators) {
    if (!(v.norm() > 0.0) || !v.allFinite()) {
      throw std::invalid_argument("star generator must be a nonzero finite vector");
    }
    unit.push_back(v.normalized());
  }
  return StarSpace(unit);
}

std::string StarSpace::name() const { return "star(" + std::to_string(size()) + ")"; }

bool StarSpace::contains(const Point& x) const {
  return x.size() == 2 && x.allFinite() && line_of(x).has_value();
}

std::optional<std::size_t> StarSpace::line_of(const Point& x) const {
  if (x.size() != 2) return std::nullopt;
  for (std::size_t i = 0; i < size(); ++i) {
    if (on_line(x, directions()[i])) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> StarSpace::active_labels(const Point& x) const {
  std::vector<std::size_t> out;
  if (x.size() == 2 && x.isZero(0.0)) {
    for (std::size_t i = 0; i < size(); ++i) out.push_back(i);
  } else if (auto i = line_of(x)) {
    out.push_back(*i);
  }
  return out;
}

Point StarSpace::snap(const Point& x, double eps) const {
  if (x.size() == 2 && x.norm() <= eps) return Point::Zero(2);
  return x;
}

// --- CrossSpace -------------------------------------------------------------

namespace {

bool on_cross(const Point& x) {
  return x.size() == 2 && x.allFinite() && std::abs(x[0] * x[1]) <= 1e-12;
}

const std::vector<Eigen::Vector2d>& axes() {
  static const std::vector<Eigen::Vector2d> kAxes{Eigen::Vector2d(1.0, 0.0),
                                                  Eigen::Vector2d(0.0, 1.0)};
  return kAxes;
}

}  // namespace

CrossSpace::CrossSpace() : StarSpace(axes(), line_union_diffeology(axes(), on_cross)) {}

std::string CrossSpace::name() const { return "cross"; }

bool CrossSpace::contains(const Point& x) const { return on_cross(x); }

std::vector<std::size_t> CrossSpace::active_labels(const Point& x) const {
  if (!on_cross(x)) return {};
  if (x.isZero(0.0)) return {0, 1};
  return {std::abs(x[0]) >= std::abs(x[1]) ? std::size_t{0} : std::size_t{1}};
}

std::vector<Eigen::VectorXd> cross_tangent(const CrossSpace& cross, const Point& x) {
  cross.require_member(x);
  std::vector<Eigen::VectorXd> out;
  for (std::size_t label : cross.active_labels(x)) out.push_back(cross.directions()[label]);
  return out;
}

// --- PolySpace / GenericSpace -----------------------------------------------

PolySpace::PolySpace(int max_plot_degree) : diffeology_(polynomial_diffeology(max_plot_degree)) {}

bool PolySpace::contains(const Point& x) const { return x.allFinite(); }

TangentDim PolySpace::tangent_dim(const Point& x) const {
  require_member(x);
  return TangentDim::infinite();
}

GenericSpace::GenericSpace(Diffeology d, std::string name)
    : diffeology_(std::move(d)), name_(std::move(name)) {}

TangentDim tangent_dim(const Space& space, const Point& x) { return space.tangent_dim(x); }

int ambient_rank(const FramedSpace& space, const Point& x) { return space.ambient_rank(x); }

}  // namespace diffopt
