#pragma once

#include <cstdint>

#include "blindpol/bit.hpp"
#include "blindpol/polarization.hpp"

namespace blindpol {

/// Position of a pulse within its round. Protocol 2 sends a first/second
/// pair on legs 1 and 2; the surviving leg-3 pulse is re-timed to `single`
/// so that its original position is not observable on the channel.
enum class PulseSlot { single, first, second };

using RoundId = std::uint64_t;

/// A single-photon pulse in flight. This struct is the entire quantum
/// message: channel observers see nothing else.
struct Pulse {
  RoundId id = 0;  // stable across all legs of a round
  PulseSlot slot = PulseSlot::single;
  PolarizationState state;
};

/// Public classical announcement closing a protocol-2 round.
struct Announcement {
  Bit b;  // blocking factor
  RoundId id = 0;
};

}  // namespace blindpol
