#pragma once

#include <cmath>

#include "blindpol/angle.hpp"
#include "blindpol/bit.hpp"
#include "blindpol/rng.hpp"

namespace blindpol {

/// Born probabilities within this distance of 0 or 1 count as deterministic.
/// Deterministic outcomes consume no randomness, so protocol measurements
/// stay exact under floating-point drift.
inline constexpr double kDeterministicTolerance = 1e-9;

/// Angular tolerance for measurement equivalence (angles compared mod pi).
inline constexpr double kEquivalenceTolerance = 1e-9;

/// Linearly polarized single-photon state cos(a)|0> - sin(a)|1>.
/// The angle is the complete description; the state space here is one real
/// parameter. Angles a and a+pi describe the same physical state (global
/// phase -1).
struct PolarizationState {
  Angle a;
};

/// |0>
inline PolarizationState computational_zero() { return {Angle{}}; }

/// The angle-pi/2 representative of |1> (equal to -|1> up to global phase).
inline PolarizationState computational_one() { return {canonicalize(kPi / 2)}; }

/// Measurement basis with vectors at beta and beta + pi/2.
/// Outcome label 0 is assigned to the beta vector.
struct MeasurementBasis {
  Angle beta;
};

/// Rotates the polarization plane; rotation angles add and commute.
inline PolarizationState rotate(PolarizationState psi, Angle delta) { return {psi.a + delta}; }

inline PolarizationState rotate(PolarizationState psi, double delta_radians) {
  return {canonicalize(psi.a.radians() + delta_radians)};
}

/// Exchanges |0> and |1> up to global phase, realized as the pi/2 rotation.
/// Because it is a rotation it commutes with every other rotation.
inline PolarizationState flip(PolarizationState psi) { return rotate(psi, kPi / 2); }

/// The other reading of a polarization flip: swap the two amplitudes,
/// cos(a)|0> - sin(a)|1>  ->  -sin(a)|0> + cos(a)|1>, i.e. a -> -a - pi/2.
/// Also exchanges |0> and |1>, but does not commute with rotations. Kept as
/// a negative control for the flip-semantics regression tests.
inline PolarizationState flip_by_reflection(PolarizationState psi) {
  return {canonicalize(-psi.a.radians() - kPi / 2)};
}

/// True when the two states are physically indistinguishable: angles agree
/// modulo pi.
inline bool measurement_equivalent(PolarizationState x, PolarizationState y,
                                   double tolerance = kEquivalenceTolerance) {
  return circular_distance(x.a.radians(), y.a.radians(), kPi) <= tolerance;
}

/// Born probability of outcome 0: cos^2(a - beta).
inline double born_probability(PolarizationState psi, MeasurementBasis basis) {
  const double c = std::cos(psi.a.radians() - basis.beta.radians());
  return c * c;
}

/// True when a measurement of psi in `basis` has a deterministic outcome.
inline bool deterministic_in(PolarizationState psi, MeasurementBasis basis) {
  const double p0 = born_probability(psi, basis);
  return p0 >= 1.0 - kDeterministicTolerance || p0 <= kDeterministicTolerance;
}

struct MeasurementResult {
  Bit outcome;
  PolarizationState post;  // the basis vector matching the outcome
};

/// Projective measurement. Consumes one draw from `rand` only when the
/// outcome is genuinely probabilistic.
inline MeasurementResult measure(PolarizationState psi, MeasurementBasis basis,
                                 RandomStream& rand) {
  const double p0 = born_probability(psi, basis);
  Bit outcome;
  if (p0 >= 1.0 - kDeterministicTolerance) {
    outcome = Bit(false);
  } else if (p0 <= kDeterministicTolerance) {
    outcome = Bit(true);
  } else {
    outcome = Bit(!(rand.next_unit() < p0));
  }
  PolarizationState post{outcome.as_bool() ? basis.beta + canonicalize(kPi / 2) : basis.beta};
  return {outcome, post};
}

}  // namespace blindpol
