#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "diffopt/riemannian.hpp"
#include "diffopt/space.hpp"

namespace diffopt {

// x -> tangent vector at x.
struct VectorField {
  std::function<TangentVector(const Point&)> assign;

  TangentVector operator()(const Point& x) const { return assign(x); }
};

// (X, Y) -> nabla_X Y.
struct Connection {
  std::function<VectorField(const VectorField&, const VectorField&)> apply;

  VectorField operator()(const VectorField& x, const VectorField& y) const { return apply(x, y); }
};

// Vector field on R^n from its component functions.
VectorField coordinate_field(std::shared_ptr<const EuclideanSpace> space,
                             std::function<Eigen::VectorXd(const Point&)> components);

VectorField scale_field(const ScalarField& f, const VectorField& x);
VectorField scale_field(double a, const VectorField& x);
VectorField add_fields(const VectorField& x, const VectorField& y);

// q -> X(q)(f).
ScalarField apply_field(const VectorField& x, const ScalarField& f, double h);

// [X, Y] from the composition of derivations: its j-th component is
// X(Y(x_j)) - Y(X(x_j)).
VectorField lie_bracket(std::shared_ptr<const EuclideanSpace> space, const VectorField& x,
                        const VectorField& y, double h = 1e-4);

// Flat connection of R^n: directional derivative of the components of Y
// along X(p), by central differences.
Connection flat_connection(std::shared_ptr<const EuclideanSpace> space, double h = 1e-4);

// Flat connection computed as nabla_X Y = sum_j X(Y(x_j)) e_j, i.e. through
// path derivatives of the coordinate functions instead of component shifts.
Connection flat_connection_by_derivations(std::shared_ptr<const EuclideanSpace> space,
                                          double h = 1e-4);

struct ConnectionCheckOptions {
  double tol = 1e-5;
  double h = 1e-4;
};

struct ConnectionReport {
  // Maximum residual of each axiom (i)..(vi), in the metric norm for the
  // vector-valued identities.
  std::array<double, 6> residual{};
  double tol = 0.0;

  bool axiom_holds(int i) const { return residual.at(static_cast<std::size_t>(i)) <= tol; }
  bool passed() const;
};

// Residual maxima of the six connection axioms over all sampled field and
// function combinations. Metric compatibility (v) is checked in its standard
// form Z(g(X, Y)) = g(nabla_Z X, Y) + g(X, nabla_Z Y).
ConnectionReport check_connection_axioms(const Connection& nabla, const Metric& g,
                                         const std::vector<VectorField>& fields,
                                         const std::vector<ScalarField>& functions,
                                         const std::vector<Point>& points,
                                         const ConnectionCheckOptions& options = {});

// Right-hand side of the Koszul identity for 2 g(nabla_Z X, Y):
//   Z g(X,Y) + X g(Y,Z) - Y g(Z,X) + g([Z,X],Y) - g(X,[Z,Y]) - g(Z,[X,Y]).
double koszul_rhs(std::shared_ptr<const EuclideanSpace> space, const Metric& g,
                  const VectorField& x, const VectorField& y, const VectorField& z,
                  const Point& p, double h = 1e-4);

}  // namespace diffopt
