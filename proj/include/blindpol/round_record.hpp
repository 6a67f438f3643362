#pragma once

#include <cstdint>
#include <optional>

#include "blindpol/angle.hpp"
#include "blindpol/bit.hpp"

namespace blindpol {

/// Everything one protocol round produced. Fields outside the protocol's own
/// parameter set (theta2/s/b/l for protocol 1) stay default-valued.
struct RoundRecord {
  std::uint64_t round = 0;
  int protocol = 1;
  bool aborted = false;     // a tap dropped a pulse; excluded from all rates
  bool eve_active = false;  // a strategy instance was installed

  Bit k_alice;
  Bit k_bob;       // defined for every completed round
  Angle theta1;    // Alice's secret angle (first of two for protocol 2)
  Angle theta2;
  Angle phi;       // Bob's secret angle
  Bit s;           // shuffling parameter (protocol 2)
  Bit b;           // blocking factor (protocol 2)
  Bit l;           // prekey bit (protocol 2)
  std::optional<Bit> eve_guess;

  std::uint64_t measurement_draws = 0;  // randomness consumed by Bob's final measurement
};

}  // namespace blindpol
