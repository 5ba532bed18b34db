#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace ucboost {

/// Values within this distance outside [0,1] are clamped instead of rejected.
inline constexpr double kUnitSlack = 1e-12;

/// Divergence codomain: a finite real or +infinity.
using ExtendedReal = double;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A real number in [0,1]: empirical means, candidate upper bounds, true arm means.
class UnitScalar {
 public:
  constexpr UnitScalar() = default;

  // Implicit on purpose: call sites read as evaluate(spec, 0.1, 0.3).
  UnitScalar(double value) : value_(checked(value)) {}  // NOLINT

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }  // NOLINT

 private:
  static double checked(double v) {
    if (!(v >= -kUnitSlack && v <= 1.0 + kUnitSlack)) {
      throw std::invalid_argument("value " + std::to_string(v) + " outside [0,1]");
    }
    if (v <= 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
  }

  double value_ = 0.0;
};

}  // namespace ucboost
