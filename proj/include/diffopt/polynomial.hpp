#pragma once

#include <vector>

#include "diffopt/tangent.hpp"
#include "diffopt/types.hpp"

namespace diffopt {

// Polynomials are coefficient vectors (a_0, a_1, ...) with trailing zeros
// trimmed; the zero polynomial is the empty vector.
Point trim_polynomial(const Point& coefficients);

// Horner evaluation of sum_k a_k y^k.
double poly_eval(const Point& coefficients, double y);

// Abscissae of the evaluation functionals p -> p(c) used as probes.
const std::vector<double>& poly_probe_abscissae();
std::vector<ScalarField> poly_evaluation_probes();

class UnboundedDegree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Coefficientwise derivative at t = 0 of a polynomial-valued path; the result
// is finitely supported and trimmed. Throws UnboundedDegree when the degree
// over the sample window exceeds `max_degree`.
Point poly_tangent_from_path(const PathGerm& germ, int max_degree = 64);

// sum_k v_k c^k: the path derivative of p -> p(c) along any path with
// tangent v.
double poly_eval_functional_derivative(const Point& v, double c);

}  // namespace diffopt
