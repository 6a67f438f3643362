#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blindpol {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterTurn = std::numbers::pi / 4.0;

/// Plane angle in radians, always canonical in [0, 2*pi).
class Angle {
public:
  constexpr Angle() = default;

  /// Canonical representative of `radians` modulo 2*pi. Non-finite input is
  /// rejected.
  static Angle from_radians(double radians) {
    if (!std::isfinite(radians)) {
      throw std::invalid_argument("Angle::from_radians: non-finite input");
    }
    double r = std::fmod(radians, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;  // the shift above can land exactly on 2*pi
    return Angle(r);
  }

  constexpr double radians() const { return radians_; }

  Angle operator+(Angle other) const { return from_radians(radians_ + other.radians_); }
  Angle operator-(Angle other) const { return from_radians(radians_ - other.radians_); }
  Angle negated() const { return from_radians(-radians_); }

  friend constexpr bool operator==(Angle, Angle) = default;

private:
  constexpr explicit Angle(double canonical) : radians_(canonical) {}

  double radians_ = 0.0;
};

inline Angle canonicalize(double radians) { return Angle::from_radians(radians); }

/// Distance between a and b modulo `period`, in [0, period/2].
inline double circular_distance(double a, double b, double period) {
  double d = std::fabs(std::fmod(a - b, period));
  return std::min(d, period - d);
}

}  // namespace blindpol
