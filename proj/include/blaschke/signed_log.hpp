// Sign + log-magnitude representation for values that leave the double range.

#pragma once

#include <cmath>
#include <limits>

namespace blaschke {

struct SignedLog {
  int sign = 0;  // -1, 0, +1
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLog from_value(double v) {
    if (v == 0.0 || !std::isfinite(v)) return {v == 0.0 ? 0 : (v > 0 ? 1 : -1), v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::fabs(v))};
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }

  /// May underflow to a signed zero or overflow to infinity.
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  SignedLog operator*(const SignedLog& o) const { return {sign * o.sign, log_abs + o.log_abs}; }
};

}  // namespace blaschke
