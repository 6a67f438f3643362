#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "blindpol/angle.hpp"

namespace testutil {

/// Circular closeness modulo a full turn (canonical angles wrap at 2*pi, so
/// plain absolute differences are wrong near the seam).
inline bool angle_close(blindpol::Angle actual, double expected_radians, double tol = 1e-9) {
  return blindpol::circular_distance(actual.radians(), expected_radians, blindpol::kTwoPi) <= tol;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                              static_cast<double>(j) / b.size()));
  }
  return d;
}

/// Critical value for the two-sample KS test at significance alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace testutil
