#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace mbrlab {

// Error caused by bad user input (arguments, config values, malformed files).
// The CLI maps this to exit code 2; everything else is an internal error (1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compensated (Kahan) summation. Used wherever a probability vector has to
// sum to 1 within 1e-12 regardless of its length.
inline double kahan_sum(std::span<const double> values) {
  double sum = 0.0, carry = 0.0;
  for (double v : values) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

inline void require(bool cond, const std::string& message) {
  if (!cond) throw InputError(message);
}

}  // namespace mbrlab
