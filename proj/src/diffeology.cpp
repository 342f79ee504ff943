#include "diffopt/diffeology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace diffopt {

namespace {

constexpr std::size_t kMaxSamples = 4'000'000;

// Values of p at u and at u +- h e_axis, u +- 2h e_axis.
struct Stencil {
  Point center;
  std::array<Point, 4> offsets;  // -2h, -h, +h, +2h
};

Point pad(const Point& x, Eigen::Index n) {
  Point out = Point::Zero(n);
  out.head(x.size()) = x;
  return out;
}

Eigen::Index polynomial_degree(const Point& c) {
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) {
    if (c[i] != 0.0) return i;
  }
  return 0;
}

// One-sided second-order derivative estimates from both sides must agree.
std::optional<std::string> derivative_mismatch(const Stencil& s, double h, double tol) {
  Eigen::Index n = s.center.size();
  for (const auto& o : s.offsets) n = std::max(n, o.size());
  const Point p0 = pad(s.center, n);
  const Point m2 = pad(s.offsets[0], n), m1 = pad(s.offsets[1], n);
  const Point p1 = pad(s.offsets[2], n), p2 = pad(s.offsets[3], n);
  const Eigen::VectorXd forward = (-3.0 * p0 + 4.0 * p1 - p2) / (2.0 * h);
  const Eigen::VectorXd backward = (3.0 * p0 - 4.0 * m1 + m2) / (2.0 * h);
  if (!forward.allFinite() || !backward.allFinite()) return "non-finite difference quotient";
  const double scale = std::max({1.0, forward.lpNorm<Eigen::Infinity>(),
                                 backward.lpNorm<Eigen::Infinity>()});
  const double mismatch = (forward - backward).lpNorm<Eigen::Infinity>();
  if (mismatch > tol * scale) {
    std::ostringstream os;
    os << "one-sided derivatives differ by " << mismatch;
    return os.str();
  }
  return std::nullopt;
}

struct LocalFailure {
  PlotFailure reason;
  std::string detail;
};

std::optional<LocalFailure> local_check(const Diffeology& d, const Stencil& s, double h,
                                        double tol) {
  switch (d.kind()) {
    case Diffeology::Kind::kSubset: {
      if (s.center.size() != d.ambient_dim()) {
        return LocalFailure{PlotFailure::kNotInCarrier, "wrong ambient dimension"};
      }
      if (auto m = derivative_mismatch(s, h, tol)) {
        return LocalFailure{PlotFailure::kNotLocallySmooth, *m};
      }
      return std::nullopt;
    }
    case Diffeology::Kind::kSum: {
      const std::size_t tag = point_tag(s.center);
      for (const auto& o : s.offsets) {
        if (o.size() == 0 || o[0] != s.center[0]) {
          return LocalFailure{PlotFailure::kNoLocalFactorization, "tag not locally constant"};
        }
      }
      Stencil inner{untagged(s.center), {}};
      for (std::size_t i = 0; i < 4; ++i) inner.offsets[i] = untagged(s.offsets[i]);
      return local_check(d.parts().at(tag), inner, h, tol);
    }
    case Diffeology::Kind::kPolynomial: {
      Eigen::Index degree = polynomial_degree(s.center);
      for (const auto& o : s.offsets) degree = std::max(degree, polynomial_degree(o));
      if (degree > d.max_degree()) {
        return LocalFailure{PlotFailure::kNoLocalFactorization,
                            "degree not locally bounded by " + std::to_string(d.max_degree())};
      }
      if (auto m = derivative_mismatch(s, h, tol)) {
        return LocalFailure{PlotFailure::kNotLocallySmooth, *m};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Parametrization Parametrization::constant(const Box& domain, const Point& value) {
  return {domain, [value](const Eigen::VectorXd&) { return value; }};
}

Parametrization Parametrization::compose(
    const Box& new_domain, std::function<Eigen::VectorXd(const Eigen::VectorXd&)> phi) const {
  auto inner = eval;
  return {new_domain, [inner, phi = std::move(phi)](const Eigen::VectorXd& u) {
            return inner(phi(u));
          }};
}

Parametrization Parametrization::then(PointMap f) const {
  auto inner = eval;
  return {domain, [inner, f = std::move(f)](const Eigen::VectorXd& u) { return f(inner(u)); }};
}

std::string to_string(PlotFailure reason) {
  switch (reason) {
    case PlotFailure::kNone:
      return "none";
    case PlotFailure::kNotInCarrier:
      return "not-in-carrier";
    case PlotFailure::kNotLocallySmooth:
      return "not-locally-smooth";
    case PlotFailure::kNoLocalFactorization:
      return "no-local-factorization";
    case PlotFailure::kProbeNotPlot:
      return "probe-not-plot";
  }
  return "unknown";
}

PlotReport PlotReport::reject(PlotFailure reason, Eigen::VectorXd witness, std::string detail) {
  PlotReport r;
  r.accepted = false;
  r.reason = reason;
  r.witness = std::move(witness);
  r.detail = std::move(detail);
  return r;
}

bool PlotReport::operator==(const PlotReport& other) const {
  if (accepted != other.accepted || reason != other.reason || detail != other.detail) {
    return false;
  }
  if (witness.has_value() != other.witness.has_value()) return false;
  return !witness || *witness == *other.witness;
}

const std::vector<Diffeology>& Diffeology::parts() const {
  static const std::vector<Diffeology> kNoParts;
  return parts_ ? *parts_ : kNoParts;
}

bool Diffeology::in_carrier(const Point& x) const {
  switch (kind_) {
    case Kind::kSubset:
      return x.size() == ambient_dim_ && x.allFinite() && membership_(x);
    case Kind::kSum: {
      if (x.size() < 1 || !(x[0] >= 0.0) || x[0] != std::floor(x[0])) return false;
      const auto tag = static_cast<std::size_t>(x[0]);
      return tag < parts_->size() && (*parts_)[tag].in_carrier(untagged(x));
    }
    case Kind::kPolynomial:
      return x.allFinite();
  }
  return false;
}

GeneratorOutsideCarrier::GeneratorOutsideCarrier(std::size_t generator, Eigen::VectorXd sample)
    : std::invalid_argument("generator " + std::to_string(generator) +
                            " leaves the carrier at u = " + to_string(sample)),
      generator_(generator),
      sample_(std::move(sample)) {}

Diffeology make_subset_diffeology(int ambient_dim, Membership membership,
                                  std::vector<Parametrization> generators,
                                  const GridSpec& grid) {
  if (ambient_dim < 1) throw std::invalid_argument("ambient dimension must be positive");
  Diffeology d;
  d.kind_ = Diffeology::Kind::kSubset;
  d.ambient_dim_ = ambient_dim;
  d.membership_ = std::move(membership);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (const auto& u : sample_grid(generators[i].domain, grid.samples_per_axis)) {
      if (!d.in_carrier(generators[i].eval(u))) throw GeneratorOutsideCarrier(i, u);
    }
  }
  d.generators_ = std::move(generators);
  return d;
}

Diffeology standard_diffeology(int n, double radius) {
  Parametrization identity{Box::cube(n, -radius, radius),
                           [](const Eigen::VectorXd& u) -> Point { return u; }};
  return make_subset_diffeology(n, [](const Point&) { return true; }, {identity});
}

Diffeology sum_diffeology(std::vector<Diffeology> parts) {
  if (parts.empty()) throw std::invalid_argument("sum_diffeology: no parts");
  Diffeology d;
  d.kind_ = Diffeology::Kind::kSum;
  for (std::size_t tag = 0; tag < parts.size(); ++tag) {
    for (const auto& g : parts[tag].generators()) {
      auto inner = g.eval;
      d.generators_.push_back({g.domain, [inner, tag](const Eigen::VectorXd& u) {
                                 return tagged_point(tag, inner(u));
                               }});
    }
  }
  d.parts_ = std::make_shared<const std::vector<Diffeology>>(std::move(parts));
  return d;
}

Diffeology polynomial_diffeology(int max_degree, std::vector<Parametrization> generators) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be nonnegative");
  Diffeology d;
  d.kind_ = Diffeology::Kind::kPolynomial;
  d.max_degree_ = max_degree;
  d.generators_ = std::move(generators);
  return d;
}

Point tagged_point(std::size_t tag, const Point& x) {
  Point out(x.size() + 1);
  out[0] = static_cast<double>(tag);
  out.tail(x.size()) = x;
  return out;
}

std::size_t point_tag(const Point& p) {
  if (p.size() < 1 || !(p[0] >= 0.0)) throw std::invalid_argument("point carries no tag");
  return static_cast<std::size_t>(p[0]);
}

Point untagged(const Point& p) {
  if (p.size() < 1) throw std::invalid_argument("point carries no tag");
  return p.tail(p.size() - 1);
}

std::vector<Eigen::VectorXd> sample_grid(const Box& domain, int samples_per_axis) {
  if (samples_per_axis < 1) throw std::invalid_argument("samples_per_axis must be positive");
  const int n = domain.dim();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(samples_per_axis);
    if (total > kMaxSamples) throw std::invalid_argument("sample grid too large");
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(total);
  std::vector<int> index(static_cast<std::size_t>(n), 0);
  const double denom = samples_per_axis + 1.0;
  for (std::size_t s = 0; s < total; ++s) {
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
      const double frac = (index[static_cast<std::size_t>(i)] + 1.0) / denom;
      u[i] = domain.lower[i] + (domain.upper[i] - domain.lower[i]) * frac;
    }
    out.push_back(std::move(u));
    for (int i = n - 1; i >= 0; --i) {
      if (++index[static_cast<std::size_t>(i)] < samples_per_axis) break;
      index[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

PlotReport is_plot(const Diffeology& d, const Parametrization& p, const GridSpec& grid) {
  const auto samples = sample_grid(p.domain, grid.samples_per_axis);
  std::vector<Point> values;
  values.reserve(samples.size());
  for (const auto& u : samples) {
    Point v = p.eval(u);
    if (!d.in_carrier(v)) {
      return PlotReport::reject(PlotFailure::kNotInCarrier, u, "value " + to_string(v));
    }
    values.push_back(std::move(v));
  }

  // Covering axiom: constant parametrizations are plots.
  const bool constant = std::all_of(values.begin(), values.end(),
                                    [&](const Point& v) { return same_point(v, values.front()); });
  if (constant) return PlotReport::accept();

  const double h = grid.fd_step;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& u = samples[s];
    for (int axis = 0; axis < p.dim(); ++axis) {
      Stencil st{values[s], {}};
      const std::array<double, 4> shifts{-2.0 * h, -h, h, 2.0 * h};
      bool inside = true;
      for (std::size_t k = 0; k < 4 && inside; ++k) {
        Eigen::VectorXd w = u;
        w[axis] += shifts[k];
        if (!p.domain.contains(w)) {
          inside = false;
          break;
        }
        st.offsets[k] = p.eval(w);
      }
      if (!inside) continue;
      if (auto failure = local_check(d, st, h, grid.tolerance)) {
        return PlotReport::reject(failure->reason, u, failure->detail);
      }
    }
  }
  return PlotReport::accept();
}

PlotReport check_smooth_map(const PointMap& f, const Diffeology& dx, const Diffeology& dy,
                            const std::vector<Parametrization>& probes, const GridSpec& grid) {
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const PlotReport source = is_plot(dx, probes[i], grid);
    if (!source.accepted) {
      return PlotReport::reject(PlotFailure::kProbeNotPlot,
                                source.witness.value_or(Eigen::VectorXd{}),
                                "probe " + std::to_string(i) + " is not a plot of the source (" +
                                    to_string(source.reason) + ")");
    }
    PlotReport image = is_plot(dy, probes[i].then(f), grid);
    if (!image.accepted) return image;
  }
  return PlotReport::accept();
}

PlotReport functional_plot_check(const Diffeology& dx, const Diffeology& dy,
                                 const ParametrizedFamily& family, const GridSpec& grid) {
  const int m = family.parameters.dim();
  for (const auto& q : dx.generators()) {
    const int k = q.dim();
    Parametrization joint{Box::product(family.parameters, q.domain),
                          [&family, q, m, k](const Eigen::VectorXd& z) {
                            return family.eval(z.head(m), q.eval(z.tail(k)));
                          }};
    PlotReport r = is_plot(dy, joint, grid);
    if (!r.accepted) return r;
  }
  return PlotReport::accept();
}

PlotReport is_quotient_plot(const Diffeology& dx, const PointMap& projection,
                            const Parametrization& p, const Parametrization& lift,
                            const GridSpec& grid) {
  PlotReport r = is_plot(dx, lift, grid);
  if (!r.accepted) return r;
  for (const auto& u : sample_grid(p.domain, grid.samples_per_axis)) {
    if (!same_point(projection(lift.eval(u)), p.eval(u), 1e-12)) {
      return PlotReport::reject(PlotFailure::kNoLocalFactorization, u,
                                "lift does not project onto the parametrization");
    }
  }
  return PlotReport::accept();
}

}  // namespace diffopt
