#include "diffopt/connection.hpp"

#include <algorithm>
#include <cmath>

namespace diffopt {

namespace {

double vector_residual(const Metric& g, const TangentVector& a, const TangentVector& b) {
  return metric_norm(g, a - b);
}

ScalarField pairing(const Metric& g, const VectorField& x, const VectorField& y) {
  return [g, x, y](const Point& q) { return metric_eval(g, q, x(q), y(q)); };
}

}  // namespace

VectorField coordinate_field(std::shared_ptr<const EuclideanSpace> space,
                             std::function<Eigen::VectorXd(const Point&)> components) {
  return {[space, components](const Point& x) { return space->vector_at(x, components(x)); }};
}

VectorField scale_field(const ScalarField& f, const VectorField& x) {
  return {[f, x](const Point& p) { return f(p) * x(p); }};
}

VectorField scale_field(double a, const VectorField& x) {
  return {[a, x](const Point& p) { return a * x(p); }};
}

VectorField add_fields(const VectorField& x, const VectorField& y) {
  return {[x, y](const Point& p) { return x(p) + y(p); }};
}

ScalarField apply_field(const VectorField& x, const ScalarField& f, double h) {
  return [x, f, h](const Point& q) { return tangent_apply(x(q), f, h); };
}

VectorField lie_bracket(std::shared_ptr<const EuclideanSpace> space, const VectorField& x,
                        const VectorField& y, double h) {
  return {[space, x, y, h](const Point& p) {
    const int n = space->ambient_dim();
    const auto coords = coordinate_probes(n);
    const TangentVector xp = x(p), yp = y(p);
    Eigen::VectorXd c(n);
    for (int j = 0; j < n; ++j) {
      const auto& xj = coords[static_cast<std::size_t>(j)];
      c[j] = tangent_apply(xp, apply_field(y, xj, h), h) -
             tangent_apply(yp, apply_field(x, xj, h), h);
    }
    return space->vector_at(p, c);
  }};
}

Connection flat_connection(std::shared_ptr<const EuclideanSpace> space, double h) {
  return {[space, h](const VectorField& x, const VectorField& y) -> VectorField {
    return {[space, h, x, y](const Point& p) {
      const Eigen::VectorXd dir = space->to_ambient(x(p));
      const Point fwd = p + h * dir, bwd = p - h * dir;
      const Eigen::VectorXd dy =
          (space->to_ambient(y(fwd)) - space->to_ambient(y(bwd))) / (2.0 * h);
      return space->vector_at(p, dy);
    }};
  }};
}

Connection flat_connection_by_derivations(std::shared_ptr<const EuclideanSpace> space, double h) {
  return {[space, h](const VectorField& x, const VectorField& y) -> VectorField {
    return {[space, h, x, y](const Point& p) {
      const int n = space->ambient_dim();
      const auto coords = coordinate_probes(n);
      const TangentVector xp = x(p);
      Eigen::VectorXd c(n);
      for (int j = 0; j < n; ++j) {
        c[j] = tangent_apply(xp, apply_field(y, coords[static_cast<std::size_t>(j)], h), h);
      }
      return space->vector_at(p, c);
    }};
  }};
}

bool ConnectionReport::passed() const {
  return std::all_of(residual.begin(), residual.end(), [this](double r) { return r <= tol; });
}

ConnectionReport check_connection_axioms(const Connection& nabla, const Metric& g,
                                         const std::vector<VectorField>& fields,
                                         const std::vector<ScalarField>& functions,
                                         const std::vector<Point>& points,
                                         const ConnectionCheckOptions& options) {
  ConnectionReport report;
  report.tol = options.tol;
  auto& res = report.residual;
  const double h = options.h;
  const std::size_t nf = functions.size();
  constexpr double a = 2.0, b = -0.5;

  for (const auto& p : points) {
    for (const auto& X : fields) {
      for (const auto& Y : fields) {
        const TangentVector nabla_xy = nabla(X, Y)(p);

        for (std::size_t i = 0; i < nf; ++i) {
          const ScalarField& f = functions[i];
          // (iii)
          res[2] = std::max(res[2], vector_residual(g, nabla(scale_field(f, X), Y)(p),
                                                    f(p) * nabla_xy));
          // (iv)
          const TangentVector leibniz = tangent_apply(X(p), f, h) * Y(p) + f(p) * nabla_xy;
          res[3] = std::max(res[3], vector_residual(g, nabla(X, scale_field(f, Y))(p), leibniz));
          // (vi)
          const TangentVector torsion_free = nabla_xy - nabla(Y, X)(p);
          const double lhs = tangent_apply(torsion_free, f, h);
          const double rhs = tangent_apply(X(p), apply_field(Y, f, h), h) -
                             tangent_apply(Y(p), apply_field(X, f, h), h);
          res[5] = std::max(res[5], std::abs(lhs - rhs));
        }

        for (const auto& Z : fields) {
          // (i)
          for (std::size_t i = 0; i < nf; ++i) {
            const ScalarField& f1 = functions[i];
            const ScalarField& f2 = functions[(i + 1) % nf];
            const VectorField combo = add_fields(scale_field(f1, X), scale_field(f2, Y));
            const TangentVector rhs = f1(p) * nabla(X, Z)(p) + f2(p) * nabla(Y, Z)(p);
            res[0] = std::max(res[0], vector_residual(g, nabla(combo, Z)(p), rhs));
          }
          // (ii)
          const VectorField combo = add_fields(scale_field(a, Y), scale_field(b, Z));
          res[1] = std::max(res[1], vector_residual(g, nabla(X, combo)(p),
                                                    a * nabla_xy + b * nabla(X, Z)(p)));
          // (v)
          const double lhs = tangent_apply(Z(p), pairing(g, X, Y), h);
          const double rhs = metric_eval(g, p, nabla(Z, X)(p), Y(p)) +
                             metric_eval(g, p, X(p), nabla(Z, Y)(p));
          res[4] = std::max(res[4], std::abs(lhs - rhs));
        }
      }
    }
  }
  return report;
}

double koszul_rhs(std::shared_ptr<const EuclideanSpace> space, const Metric& g,
                  const VectorField& x, const VectorField& y, const VectorField& z,
                  const Point& p, double h) {
  const TangentVector xp = x(p), yp = y(p), zp = z(p);
  double out = tangent_apply(zp, pairing(g, x, y), h) + tangent_apply(xp, pairing(g, y, z), h) -
               tangent_apply(yp, pairing(g, z, x), h);
  out += metric_eval(g, p, lie_bracket(space, z, x, h)(p), yp);
  out -= metric_eval(g, p, xp, lie_bracket(space, z, y, h)(p));
  out -= metric_eval(g, p, zp, lie_bracket(space, x, y, h)(p));
  return out;
}

}  // namespace diffopt
