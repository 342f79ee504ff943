#include "diffopt/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace diffopt {

std::string format_rounded(double v, int decimals) {
  if (decimals < 0 || decimals > 17) throw std::invalid_argument("decimals must lie in [0,17]");
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";

  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(v), std::chars_format::fixed);
  if (res.ec != std::errc()) throw std::runtime_error("format_rounded: conversion failed");
  const std::string text(buf, res.ptr);

  const auto dot = text.find('.');
  std::string whole = text.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);

  const auto d = static_cast<std::size_t>(decimals);
  if (frac.size() > d) {
    const bool up = frac[d] >= '5';
    frac.resize(d);
    if (up) {
      std::string digits = whole + frac;
      int i = static_cast<int>(digits.size()) - 1;
      for (; i >= 0 && digits[static_cast<std::size_t>(i)] == '9'; --i) {
        digits[static_cast<std::size_t>(i)] = '0';
      }
      if (i < 0) {
        digits.insert(digits.begin(), '1');
      } else {
        ++digits[static_cast<std::size_t>(i)];
      }
      whole = digits.substr(0, digits.size() - d);
      frac = digits.substr(digits.size() - d);
    }
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (frac.empty() && decimals > 0) frac = "0";

  std::string out = whole;
  if (!frac.empty()) out += "." + frac;
  const bool zero = out.find_first_not_of("0.") == std::string::npos;
  return (v < 0 && !zero) ? "-" + out : out;
}

double round_half_away(double v, int decimals) { return std::stod(format_rounded(v, decimals)); }

}  // namespace diffopt
