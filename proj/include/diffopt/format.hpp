#pragma once

#include <string>

namespace diffopt {

// Decimal rendering with `decimals` fractional digits, rounded half away
// from zero on the shortest round-trip decimal of v. Trailing zeros are
// dropped ("-2.0", "0.03125", "2.8286"); negative zero prints unsigned.
std::string format_rounded(double v, int decimals);

// The value printed by format_rounded, parsed back.
double round_half_away(double v, int decimals);

}  // namespace diffopt
