#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace diffopt {

// Points of every shipped space are coordinate vectors: ambient coordinates
// for subsets of R^n, coefficient sequences (a_0, a_1, ...) for polynomials,
// and [tag, coordinates...] for points of a sum diffeology.
using Point = Eigen::VectorXd;
using ScalarField = std::function<double(const Point&)>;
using PointMap = std::function<Point(const Point&)>;

// Open axis-aligned box in R^n.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Eigen::VectorXd& u) const;

  static Box cube(int n, double lo, double hi);
  static Box interval(double lo, double hi) { return cube(1, lo, hi); }
  // Cartesian product, axes of `a` first.
  static Box product(const Box& a, const Box& b);
};

// Exact (tol = 0) or approximate equality; the shorter vector is padded with
// zeros so that polynomials with different storage lengths compare equal.
bool same_point(const Point& a, const Point& b, double tol = 0.0);

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MembershipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedSpace : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when the gradient oracle is asked for a gradient at a point where it
// is not defined (x = s for the star objective, or x = s = 0).
class UndefinedGradient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(const Point& x);

}  // namespace diffopt
