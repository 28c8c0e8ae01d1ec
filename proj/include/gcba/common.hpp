#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace gcba {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Tolerance for piecewise-linear comparisons (radians).
inline constexpr double kTau = 1e-9;

/// Malformed input or a violated precondition. Maps to CLI exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity contradicts a proven identity (e.g. the two antipodal
/// distance formulas disagree). Maps to CLI exit status 2.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Clamp to [-1, 1] before an inverse cosine.
inline double clamp_unit(double c) { return c < -1.0 ? -1.0 : (c > 1.0 ? 1.0 : c); }

}  // namespace gcba
