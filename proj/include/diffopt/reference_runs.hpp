#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diffopt/optimizer.hpp"
#include "diffopt/space.hpp"

namespace diffopt {

// The four-line star with v1 = (1,0), v2 = (0,1), v3 = (1,1)/sqrt2 and
// v4 = (-1,1)/sqrt2, target s = 2 sqrt2 (1,1) and start x0 = (0,3).
std::shared_ptr<const StarSpace> reference_star();
Point reference_target();
Point reference_start();

// Exact iterates of the constant-step run with t = 1.
const std::vector<Point>& constant_step_reference();
// Reference Armijo iterates (alpha 10, sigma 0.1, rho 0.5), 6 decimals.
const std::vector<std::array<double, 2>>& armijo_reference();

DescentConfig constant_step_config();
DescentConfig armijo_config();

struct GoldenComparison {
  bool passed = true;
  std::optional<std::size_t> first_mismatch;
  std::string detail;
};

// Coordinates within `tol` of the exact iterates, same number of rows.
GoldenComparison compare_constant_trace(const IterateTrace& trace, double tol = 1e-12);

// Every reference entry must be a valid 6-decimal rounding of the computed
// coordinate (|x - table| <= 5e-7), the row count must match, and x12 must be
// exactly the origin.
GoldenComparison compare_armijo_trace(const IterateTrace& trace);

}  // namespace diffopt
