#pragma once

#include "blindpol/messages.hpp"
#include "blindpol/rng.hpp"

namespace blindpol {

/// Signed quarter turn (-1)^bit * pi/4: bit 0 maps to +pi/4, bit 1 to -pi/4.
/// This is both the key encoding and the shuffle/replay rotation unit.
inline double signed_quarter_turn(Bit bit) { return bit.as_bool() ? -kQuarterTurn : kQuarterTurn; }

/// Basis in which protocol-1 key bits are read: vectors at +pi/4 and -pi/4,
/// outcome 0 on the +pi/4 vector (the encoding of key bit 0).
inline MeasurementBasis p1_decode_basis() { return {canonicalize(kQuarterTurn)}; }

struct P1AliceState {
  Angle secret_rotation;  // never appears in any message in the clear
  Bit key;
};

struct P1BobState {
  Angle secret_rotation;  // never appears in any message in the clear
};

/// Leg 1: |0> rotated by Alice's secret angle.
inline Pulse p1_alice_prepare(const P1AliceState& alice, RoundId id) {
  return {id, PulseSlot::single, rotate(computational_zero(), alice.secret_rotation)};
}

/// Bob's blind rotation before returning the pulse on leg 2.
inline Pulse p1_bob_rotate(const P1BobState& bob, Pulse pulse) {
  pulse.state = rotate(pulse.state, bob.secret_rotation);
  return pulse;
}

/// Alice undoes her own rotation and encodes the key bit as a +-pi/4 offset.
inline Pulse p1_alice_encode(const P1AliceState& alice, Pulse pulse) {
  pulse.state = rotate(pulse.state, alice.secret_rotation.negated());
  pulse.state = rotate(pulse.state, signed_quarter_turn(alice.key));
  return pulse;
}

/// Bob undoes his rotation and reads the key bit. Honest rounds land exactly
/// on a basis vector, so no randomness is consumed.
inline Bit p1_bob_decode(const P1BobState& bob, Pulse pulse, RandomStream& rand) {
  PolarizationState psi = rotate(pulse.state, bob.secret_rotation.negated());
  return measure(psi, p1_decode_basis(), rand).outcome;
}

}  // namespace blindpol
