#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "blindpol/angle.hpp"
#include "blindpol/bit.hpp"

namespace blindpol {

/// Stream roles. Each actor draws from its own stream so that nobody's
/// draws can perturb anybody else's sequence.
enum class Role : std::uint64_t { alice = 1, bob = 2, eve = 3, measurement = 4 };

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic uniform stream with a draw counter. Doubles come from the
/// top 53 engine bits, so sequences do not depend on the standard library's
/// distribution implementations.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double next_unit() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  Bit next_bit() {
    ++draws_;
    return Bit((engine_() >> 63) != 0);
  }

  /// Uniform integer in {0, ..., bound-1}.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::next_below: bound is zero");
    ++draws_;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

  std::uint64_t draw_count() const { return draws_; }

private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

/// Stream family keyed by (master seed, round index, role). The same triple
/// yields the same sequence regardless of execution order or thread
/// schedule.
class RngDiscipline {
public:
  explicit RngDiscipline(std::uint64_t master_seed) : master_(master_seed) {}

  RandomStream stream(std::uint64_t round, Role role) const {
    std::uint64_t h = detail::splitmix64(master_);
    h = detail::splitmix64(h ^ detail::splitmix64(round + 1));
    h = detail::splitmix64(h ^ detail::splitmix64(static_cast<std::uint64_t>(role) << 32));
    return RandomStream(h);
  }

  std::uint64_t master_seed() const { return master_; }

private:
  std::uint64_t master_;
};

enum class AngleMode { continuous, grid };

/// Angle draw policy: continuous uniform over [0, 2*pi), or one of
/// `grid_points` values j*pi/K spanning [0, pi). The grid spans a half turn
/// because states differing by pi are measurement-equivalent, so K points
/// already cover every behavior class.
struct AngleSource {
  AngleMode mode = AngleMode::continuous;
  int grid_points = 8;

  Angle draw(RandomStream& rand) const {
    if (mode == AngleMode::continuous) return canonicalize(kTwoPi * rand.next_unit());
    return canonicalize(kPi / grid_points *
                        static_cast<double>(rand.next_below(static_cast<std::uint64_t>(grid_points))));
  }

  std::vector<Angle> grid_values() const {
    std::vector<Angle> values;
    values.reserve(static_cast<std::size_t>(grid_points));
    for (int j = 0; j < grid_points; ++j) values.push_back(canonicalize(kPi * j / grid_points));
    return values;
  }
};

}  // namespace blindpol
