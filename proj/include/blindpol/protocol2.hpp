#pragma once

#include <utility>

#include "blindpol/messages.hpp"
#include "blindpol/protocol1.hpp"

namespace blindpol {

/// Shuffle offset for the pulse at `slot_index` (0 = first, 1 = second):
/// (-1)^s * pi/4 on the first pulse, the opposite sign on the second.
inline double shuffle_quarter_turn(Bit shuffle, int slot_index) {
  return signed_quarter_turn(shuffle ^ Bit(slot_index != 0));
}

/// Measurement orientation for the prekey bit l. Under the convention that
/// blocking factor 0 forwards the first pulse, the labeling that satisfies
/// l = s ^ k ^ b in every honest round puts outcome 0 on the pi/2 vector.
/// Fixed here once; the exhaustive round enumeration asserts it.
inline MeasurementBasis p2_prekey_basis() { return {canonicalize(kPi / 2)}; }

struct P2AliceState {
  Angle secret_rotation_first;
  Angle secret_rotation_second;
  Bit key;
  Bit blocking;  // 0 forwards the first pulse, 1 the second
};

struct P2BobState {
  Angle secret_rotation;
  Bit shuffle;  // drawn uniformly per round
};

/// Leg 1: two pulses at Alice's two independent secret angles.
inline std::pair<Pulse, Pulse> p2_alice_prepare(const P2AliceState& alice, RoundId id) {
  Pulse first{id, PulseSlot::first, rotate(computational_zero(), alice.secret_rotation_first)};
  Pulse second{id, PulseSlot::second, rotate(computational_zero(), alice.secret_rotation_second)};
  return {first, second};
}

/// Bob rotates both pulses by phi plus opposite quarter turns selected by his
/// shuffling parameter; wire order is preserved.
inline std::pair<Pulse, Pulse> p2_bob_shuffle(const P2BobState& bob, Pulse first, Pulse second) {
  first.state = rotate(first.state, bob.secret_rotation.radians() + shuffle_quarter_turn(bob.shuffle, 0));
  second.state = rotate(second.state, bob.secret_rotation.radians() + shuffle_quarter_turn(bob.shuffle, 1));
  return {first, second};
}

/// Alice undoes her rotations and encodes the key on both pulses, then
/// forwards exactly one of them, selected by the blocking factor. The
/// survivor is re-timed into the single slot; its original position stays
/// private until the announcement.
inline Pulse p2_alice_encode_block(const P2AliceState& alice, Pulse first, Pulse second) {
  first.state = rotate(first.state,
                       -alice.secret_rotation_first.radians() + signed_quarter_turn(alice.key));
  second.state = rotate(second.state,
                        -alice.secret_rotation_second.radians() + signed_quarter_turn(alice.key));
  Pulse out = alice.blocking.as_bool() ? second : first;
  out.slot = PulseSlot::single;
  return out;
}

/// Bob undoes phi and reads the prekey bit l. Honest rounds are exact: the
/// state lands on a basis vector and no randomness is consumed.
inline Bit p2_bob_measure(const P2BobState& bob, Pulse pulse, RandomStream& rand) {
  PolarizationState psi = rotate(pulse.state, bob.secret_rotation.negated());
  return measure(psi, p2_prekey_basis(), rand).outcome;
}

/// Key recovery after the announcement: k = s ^ b ^ l.
inline Bit p2_bob_decode(Bit shuffle, Bit blocking, Bit prekey) {
  return shuffle ^ blocking ^ prekey;
}

}  // namespace blindpol
