#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blindpol/messages.hpp"
#include "blindpol/protocol1.hpp"
#include "blindpol/protocol2.hpp"

namespace blindpol {

/// Result of the final-leg tap. An absent pulse aborts the round.
struct Leg3Tap {
  std::optional<Pulse> delivered;
  std::optional<Bit> guess;
};

/// Per-round adversary contract. Strategies see messages only: pulses in
/// flight and the public announcement. Party secrets are never passed in.
/// A strategy may store pulses between hooks within its round. The base
/// class is the passive wiretap; every hook forwards unchanged.
class EveStrategy {
public:
  virtual ~EveStrategy() = default;

  /// Pulses Alice sent toward Bob; returns what Bob receives.
  virtual std::vector<Pulse> tap_leg1(std::vector<Pulse> pulses, RandomStream& rand) {
    (void)rand;
    return pulses;
  }

  /// Pulses Bob sent back toward Alice; returns what Alice receives.
  virtual std::vector<Pulse> tap_leg2(std::vector<Pulse> pulses) { return pulses; }

  /// The final pulse Alice sent toward Bob; returns what Bob receives, plus
  /// an optional key guess.
  virtual Leg3Tap tap_leg3(Pulse pulse, RandomStream& rand) {
    (void)rand;
    return {pulse, std::nullopt};
  }

  /// Protocol-2 public announcement of the blocking factor.
  virtual std::optional<Bit> on_announcement(const Announcement& announcement) {
    (void)announcement;
    return std::nullopt;
  }
};

/// Transparent tap: rounds run exactly as with no strategy installed.
class PassiveStrategy final : public EveStrategy {};

/// How the protocol-1 attack realizes "flip the polarization". `rotation`
/// (a pi/2 rotation) commutes with Bob's unknown rotation and makes the
/// attack exact. `reflection` swaps the amplitudes instead; it is the
/// negative control that breaks the attack for generic secret angles.
enum class FlipMode { rotation, reflection };

/// Impersonation attack on protocol 1. Eve plays Bob toward Alice using
/// Alice's own stored pulse, plays Alice toward Bob using a probe pulse she
/// prepared in |0> or |1>, reads the key bit off Alice's exactly-aligned
/// encoding on the final leg, and replays it onto Bob's returned probe.
/// Every measurement involved is deterministic, so Bob decodes the true key
/// bit in every round and no error is ever induced.
class ImpersonationP1 final : public EveStrategy {
public:
  explicit ImpersonationP1(FlipMode flip_mode = FlipMode::rotation,
                           std::optional<Bit> forced_probe_bit = std::nullopt)
      : flip_mode_(flip_mode), forced_probe_bit_(forced_probe_bit) {}

  std::vector<Pulse> tap_leg1(std::vector<Pulse> pulses, RandomStream& rand) override {
    if (pulses.size() != 1) throw std::logic_error("ImpersonationP1: expected one leg-1 pulse");
    stored_alice_pulse_ = pulses[0];  // returned to Alice untouched on leg 2
    probe_bit_ = forced_probe_bit_ ? *forced_probe_bit_ : rand.next_bit();
    Pulse probe = pulses[0];
    probe.state = probe_bit_->as_bool() ? computational_one() : computational_zero();
    return {probe};
  }

  std::vector<Pulse> tap_leg2(std::vector<Pulse> pulses) override {
    if (pulses.size() != 1 || !stored_alice_pulse_) {
      throw std::logic_error("ImpersonationP1: leg-2 tap out of order");
    }
    stored_bob_pulse_ = pulses[0];  // the probe, now carrying Bob's rotation
    return {*stored_alice_pulse_};
  }

  Leg3Tap tap_leg3(Pulse pulse, RandomStream& rand) override {
    if (!stored_bob_pulse_ || !probe_bit_) {
      throw std::logic_error("ImpersonationP1: leg-3 tap out of order");
    }
    if (!deterministic_in(pulse.state, p1_decode_basis())) {
      throw std::logic_error("ImpersonationP1: encoded pulse not aligned with the +-pi/4 basis");
    }
    const Bit key = measure(pulse.state, p1_decode_basis(), rand).outcome;  // exact read
    Pulse replay = *stored_bob_pulse_;
    if (probe_bit_->as_bool()) {
      replay.state =
          flip_mode_ == FlipMode::rotation ? flip(replay.state) : flip_by_reflection(replay.state);
    }
    replay.state = rotate(replay.state, signed_quarter_turn(key));
    replay.id = pulse.id;
    replay.slot = pulse.slot;
    return {replay, key};
  }

private:
  FlipMode flip_mode_;
  std::optional<Bit> forced_probe_bit_;
  std::optional<Bit> probe_bit_;
  std::optional<Pulse> stored_alice_pulse_;
  std::optional<Pulse> stored_bob_pulse_;
};

/// Which stored pulse the protocol-2 attack replays on leg 3 and how its
/// quarter turn is signed. {0, false} means: first stored pulse, rotated by
/// (-1)^{l'} * pi/4 where l' is Eve's prekey measurement. That combination
/// is the one consistent with the blocking and labeling conventions fixed
/// in protocol2.hpp; others exist as negative controls for the enumeration.
struct E2Selection {
  int pulse_index = 0;
  bool invert_sign = false;
};

/// Impersonation attack on protocol 2. Eve substitutes her own pulse pair
/// toward Bob, undoes her own rotations on what Bob returns (leaving pure
/// phi +- pi/4 states in store), continues the session with Alice under her
/// own shuffling parameter fixed to 0, and measures Alice's surviving pulse
/// in the computational basis. That outcome equals k ^ b, which both selects
/// the exact replay rotation for Bob and, combined with the public
/// announcement of b, yields the key with certainty.
class ImpersonationP2 final : public EveStrategy {
public:
  explicit ImpersonationP2(E2Selection selection = {},
                           std::optional<std::pair<Angle, Angle>> forced_rotations = std::nullopt)
      : selection_(selection), forced_rotations_(forced_rotations) {
    if (selection_.pulse_index != 0 && selection_.pulse_index != 1) {
      throw std::invalid_argument("ImpersonationP2: pulse_index must be 0 or 1");
    }
  }

  std::vector<Pulse> tap_leg1(std::vector<Pulse> pulses, RandomStream& rand) override {
    if (pulses.size() != 2) throw std::logic_error("ImpersonationP2: expected two leg-1 pulses");
    stored_alice_pulses_ = {pulses[0], pulses[1]};  // set E1
    injected_rotations_ = forced_rotations_
                              ? *forced_rotations_
                              : std::pair<Angle, Angle>{canonicalize(kTwoPi * rand.next_unit()),
                                                        canonicalize(kTwoPi * rand.next_unit())};
    Pulse first = pulses[0];
    Pulse second = pulses[1];
    first.state = rotate(computational_zero(), injected_rotations_->first);
    second.state = rotate(computational_zero(), injected_rotations_->second);
    return {first, second};
  }

  std::vector<Pulse> tap_leg2(std::vector<Pulse> pulses) override {
    if (pulses.size() != 2 || !stored_alice_pulses_ || !injected_rotations_) {
      throw std::logic_error("ImpersonationP2: leg-2 tap out of order");
    }
    // Set E2: Bob's pulses with Eve's own rotations removed. Their angles
    // are phi plus opposite quarter turns, independent of what Eve injected.
    Pulse e2_first = pulses[0];
    Pulse e2_second = pulses[1];
    e2_first.state = rotate(e2_first.state, injected_rotations_->first.negated());
    e2_second.state = rotate(e2_second.state, injected_rotations_->second.negated());
    derotated_bob_pulses_ = {e2_first, e2_second};

    // Continue the session with Alice under Eve's shuffling parameter,
    // fixed to 0: quarter turns (+pi/4, -pi/4) on her stored set E1.
    Pulse to_alice_first = stored_alice_pulses_->first;
    Pulse to_alice_second = stored_alice_pulses_->second;
    to_alice_first.state = rotate(to_alice_first.state, shuffle_quarter_turn(Bit(false), 0));
    to_alice_second.state = rotate(to_alice_second.state, shuffle_quarter_turn(Bit(false), 1));
    return {to_alice_first, to_alice_second};
  }

  Leg3Tap tap_leg3(Pulse pulse, RandomStream& rand) override {
    if (!derotated_bob_pulses_) throw std::logic_error("ImpersonationP2: leg-3 tap out of order");
    if (!deterministic_in(pulse.state, p2_prekey_basis())) {
      throw std::logic_error("ImpersonationP2: leg-3 pulse not aligned with the computational basis");
    }
    prekey_measurement_ = measure(pulse.state, p2_prekey_basis(), rand).outcome;  // l' = k ^ b

    Pulse replay = selection_.pulse_index == 0 ? derotated_bob_pulses_->first
                                               : derotated_bob_pulses_->second;
    const Bit sign = selection_.invert_sign ? prekey_measurement_->flipped() : *prekey_measurement_;
    replay.state = rotate(replay.state, signed_quarter_turn(sign));
    replay.id = pulse.id;
    replay.slot = pulse.slot;
    return {replay, std::nullopt};
  }

  std::optional<Bit> on_announcement(const Announcement& announcement) override {
    if (!prekey_measurement_) throw std::logic_error("ImpersonationP2: announcement before leg 3");
    return announcement.b ^ *prekey_measurement_;  // k = b ^ (k ^ b)
  }

private:
  E2Selection selection_;
  std::optional<std::pair<Angle, Angle>> forced_rotations_;
  std::optional<std::pair<Angle, Angle>> injected_rotations_;
  std::optional<std::pair<Pulse, Pulse>> stored_alice_pulses_;
  std::optional<std::pair<Pulse, Pulse>> derotated_bob_pulses_;
  std::optional<Bit> prekey_measurement_;
};

/// Basis the baseline interceptor measures in on the final leg.
enum class InterceptBasis { computational, random };

/// Intercept-resend baseline on protocol 1's final leg: measure the encoded
/// pulse, forward the collapsed state, record the (unusable) outcome as the
/// guess. The collapse erases the +-pi/4 alignment for generic secret
/// angles, so this attack is detectable.
class InterceptResendStrategy final : public EveStrategy {
public:
  explicit InterceptResendStrategy(InterceptBasis basis = InterceptBasis::computational)
      : basis_(basis) {}

  Leg3Tap tap_leg3(Pulse pulse, RandomStream& rand) override {
    const MeasurementBasis basis{basis_ == InterceptBasis::computational
                                     ? Angle{}
                                     : canonicalize(kTwoPi * rand.next_unit())};
    const MeasurementResult m = measure(pulse.state, basis, rand);
    pulse.state = m.post;
    return {pulse, m.outcome};
  }

private:
  InterceptBasis basis_;
};

enum class StrategyKind { none, impersonation, intercept_resend };

/// Build-time strategy knobs. Defaults reproduce the attacks exactly; the
/// variants exist for negative controls and exhaustive enumeration.
struct StrategyOptions {
  FlipMode p1_flip = FlipMode::rotation;
  E2Selection e2_selection{};
  InterceptBasis intercept_basis = InterceptBasis::computational;
  std::optional<Bit> forced_probe_bit;
  std::optional<std::pair<Angle, Angle>> forced_eve_rotations;
};

/// One strategy instance per round. Returns null for `none`.
inline std::unique_ptr<EveStrategy> make_strategy(StrategyKind kind, int protocol,
                                                  const StrategyOptions& options = {}) {
  switch (kind) {
    case StrategyKind::none:
      return nullptr;
    case StrategyKind::impersonation:
      if (protocol == 1) {
        return std::make_unique<ImpersonationP1>(options.p1_flip, options.forced_probe_bit);
      }
      return std::make_unique<ImpersonationP2>(options.e2_selection, options.forced_eve_rotations);
    case StrategyKind::intercept_resend:
      if (protocol != 1) {
        throw std::invalid_argument("intercept-resend applies to protocol 1 only");
      }
      return std::make_unique<InterceptResendStrategy>(options.intercept_basis);
  }
  throw std::invalid_argument("make_strategy: unknown strategy kind");
}

inline StrategyKind strategy_kind_from_name(const std::string& name) {
  if (name == "none") return StrategyKind::none;
  if (name == "impersonation") return StrategyKind::impersonation;
  if (name == "intercept-resend") return StrategyKind::intercept_resend;
  throw std::invalid_argument("unknown strategy: " + name);
}

inline const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::none: return "none";
    case StrategyKind::impersonation: return "impersonation";
    case StrategyKind::intercept_resend: return "intercept-resend";
  }
  return "unknown";
}

}  // namespace blindpol
