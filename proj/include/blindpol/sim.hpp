#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "blindpol/adversary.hpp"
#include "blindpol/analysis.hpp"
#include "blindpol/round_record.hpp"

namespace blindpol {

/// Convention metadata echoed into every report so downstream consumers can
/// interpret the bit identities without reading the code.
struct Conventions {
  std::string b0_transmits = "first";          // blocking factor 0 forwards the first pulse
  std::string prekey_zero_vector = "pi/2";     // outcome l = 0 labels the pi/2 basis vector
  int e2_pulse_index = 0;                      // leg-3 replay uses the first stored pulse
  std::string e2_rotation = "(-1)^l' * pi/4";  // signed by Eve's prekey measurement
};

struct SimConfig {
  int protocol = 1;
  StrategyKind strategy = StrategyKind::none;
  std::uint64_t rounds = 1;
  std::uint64_t seed = 0;
  AngleSource angles{};
  double detection_threshold = 0.05;
  unsigned threads = 1;  // execution detail, not part of the report echo
  StrategyOptions strategy_options{};
  std::string report_path;      // empty: no JSON file
  std::string rounds_csv_path;  // empty: no per-round dump

  void validate() const {
    if (protocol != 1 && protocol != 2) throw std::invalid_argument("protocol must be 1 or 2");
    if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
    if (angles.mode == AngleMode::grid && angles.grid_points < 2) {
      throw std::invalid_argument("grid angle mode needs at least 2 points");
    }
    if (!(detection_threshold > 0.0 && detection_threshold < 1.0)) {
      throw std::invalid_argument("detection threshold outside (0,1)");
    }
    if (strategy == StrategyKind::intercept_resend && protocol != 1) {
      throw std::invalid_argument("intercept-resend applies to protocol 1 only");
    }
  }
};

/// Inputs of one round with every party random choice resolved.
struct RoundParams {
  Angle theta1;  // Alice's secret angle (the only one used in protocol 1)
  Angle theta2;
  Angle phi;     // Bob's secret angle
  Bit k;         // key bit
  Bit s;         // shuffling parameter (protocol 2)
  Bit b;         // blocking factor (protocol 2)
};

/// Fixed draw order: Alice theta1 [theta2] k [b]; Bob phi [s].
inline RoundParams draw_round_params(int protocol, const AngleSource& angles,
                                     RandomStream& alice, RandomStream& bob) {
  RoundParams p;
  p.theta1 = angles.draw(alice);
  if (protocol == 2) p.theta2 = angles.draw(alice);
  p.k = alice.next_bit();
  if (protocol == 2) p.b = alice.next_bit();
  p.phi = angles.draw(bob);
  if (protocol == 2) p.s = bob.next_bit();
  return p;
}

/// Runs one round leg by leg through the tapped channel. `strategy` may be
/// null (no wiretap installed). A tap that drops pulses aborts the round;
/// the record is flagged rather than an error thrown.
inline RoundRecord execute_round(int protocol, std::uint64_t round_index, const RoundParams& params,
                                 EveStrategy* strategy, RandomStream& eve,
                                 RandomStream& measurement) {
  RoundRecord rec;
  rec.round = round_index;
  rec.protocol = protocol;
  rec.eve_active = strategy != nullptr;
  rec.k_alice = params.k;
  rec.theta1 = params.theta1;
  rec.theta2 = params.theta2;
  rec.phi = params.phi;

  const std::uint64_t draws_before = measurement.draw_count();
  const auto finish = [&]() -> RoundRecord& {
    rec.measurement_draws = measurement.draw_count() - draws_before;
    return rec;
  };

  if (protocol == 1) {
    const P1AliceState alice{params.theta1, params.k};
    const P1BobState bob{params.phi};

    std::vector<Pulse> leg1{p1_alice_prepare(alice, round_index)};
    if (strategy) leg1 = strategy->tap_leg1(std::move(leg1), eve);
    if (leg1.size() != 1) {
      rec.aborted = true;
      return finish();
    }

    std::vector<Pulse> leg2{p1_bob_rotate(bob, leg1[0])};
    if (strategy) leg2 = strategy->tap_leg2(std::move(leg2));
    if (leg2.size() != 1) {
      rec.aborted = true;
      return finish();
    }

    Pulse final_pulse = p1_alice_encode(alice, leg2[0]);
    if (strategy) {
      Leg3Tap tap = strategy->tap_leg3(final_pulse, eve);
      rec.eve_guess = tap.guess;
      if (!tap.delivered) {
        rec.aborted = true;
        return finish();
      }
      final_pulse = *tap.delivered;
    }
    rec.k_bob = p1_bob_decode(bob, final_pulse, measurement);
    return finish();
  }

  const P2AliceState alice{params.theta1, params.theta2, params.k, params.b};
  const P2BobState bob{params.phi, params.s};
  rec.s = params.s;
  rec.b = params.b;

  auto [prepared_first, prepared_second] = p2_alice_prepare(alice, round_index);
  std::vector<Pulse> leg1{prepared_first, prepared_second};
  if (strategy) leg1 = strategy->tap_leg1(std::move(leg1), eve);
  if (leg1.size() != 2) {
    rec.aborted = true;
    return finish();
  }

  auto [shuffled_first, shuffled_second] = p2_bob_shuffle(bob, leg1[0], leg1[1]);
  std::vector<Pulse> leg2{shuffled_first, shuffled_second};
  if (strategy) leg2 = strategy->tap_leg2(std::move(leg2));
  if (leg2.size() != 2) {
    rec.aborted = true;
    return finish();
  }

  Pulse final_pulse = p2_alice_encode_block(alice, leg2[0], leg2[1]);
  if (strategy) {
    Leg3Tap tap = strategy->tap_leg3(final_pulse, eve);
    rec.eve_guess = tap.guess;
    if (!tap.delivered) {
      rec.aborted = true;
      return finish();
    }
    final_pulse = *tap.delivered;
  }
  rec.l = p2_bob_measure(bob, final_pulse, measurement);

  // Public announcement closes the round; Eve's guess is evaluated after it.
  if (strategy) {
    const std::optional<Bit> guess = strategy->on_announcement({params.b, round_index});
    if (guess) rec.eve_guess = guess;
  }
  rec.k_bob = p2_bob_decode(params.s, params.b, rec.l);
  return finish();
}

inline RoundRecord run_round(const SimConfig& config, std::uint64_t round_index) {
  const RngDiscipline rng(config.seed);
  RandomStream alice = rng.stream(round_index, Role::alice);
  RandomStream bob = rng.stream(round_index, Role::bob);
  RandomStream eve = rng.stream(round_index, Role::eve);
  RandomStream measurement = rng.stream(round_index, Role::measurement);
  const RoundParams params = draw_round_params(config.protocol, config.angles, alice, bob);
  const std::unique_ptr<EveStrategy> strategy =
      make_strategy(config.strategy, config.protocol, config.strategy_options);
  return execute_round(config.protocol, round_index, params, strategy.get(), eve, measurement);
}

/// Executes all rounds. Rounds are independent; with several threads they
/// are partitioned into contiguous blocks writing disjoint slots, so the
/// record vector is identical for every thread count.
inline std::vector<RoundRecord> run_rounds(const SimConfig& config) {
  config.validate();
  std::vector<RoundRecord> records(config.rounds);
  const unsigned threads = std::max(1u, config.threads);
  if (threads == 1 || config.rounds < 2 * threads) {
    for (std::uint64_t i = 0; i < config.rounds; ++i) records[i] = run_round(config, i);
    return records;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::uint64_t block = (config.rounds + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * block;
    const std::uint64_t end = std::min(config.rounds, begin + block);
    if (begin >= end) break;
    workers.emplace_back([&config, &records, begin, end]() {
      for (std::uint64_t i = begin; i < end; ++i) records[i] = run_round(config, i);
    });
  }
  for (std::thread& w : workers) w.join();
  return records;
}

struct SimReport {
  SimConfig config;
  std::uint64_t rounds = 0;
  std::uint64_t aborted = 0;
  double qber = 0.0;
  std::optional<double> eve_accuracy;
  double mi_ab = 0.0;
  std::optional<double> mi_ae;
  bool detected = false;
  Conventions conventions{};
};

/// Aggregates records into a report. Aggregation depends only on the record
/// contents, never on execution order.
inline SimReport summarize(const SimConfig& config, std::span<const RoundRecord> records) {
  SimReport report;
  report.config = config;
  report.rounds = records.size();
  for (const RoundRecord& r : records) {
    if (r.aborted) ++report.aborted;
  }
  report.qber = qber(records);
  report.mi_ab = mutual_information(confusion_alice_bob(records));
  const ConfusionMatrix2 alice_eve = confusion_alice_eve(records);
  if (alice_eve.total() > 0) {
    report.eve_accuracy = eve_accuracy(records);
    report.mi_ae = mutual_information(alice_eve);
  }
  report.detected = detection_verdict(report.qber, config.detection_threshold).detected;
  return report;
}

inline SimReport run(const SimConfig& config) {
  const std::vector<RoundRecord> records = run_rounds(config);
  return summarize(config, records);
}

/// One failed combination of the exhaustive enumeration.
struct EnumerationFailure {
  RoundParams params;
  std::optional<Bit> probe_bit;                            // protocol-1 attack dimension
  std::optional<std::pair<Angle, Angle>> eve_rotations;    // protocol-2 attack dimension
  std::string reason;
};

struct VerdictTable {
  std::uint64_t cases = 0;
  std::vector<EnumerationFailure> failures;

  bool all_pass() const { return failures.empty(); }
};

namespace detail {

inline std::string check_enumerated_record(const RoundRecord& rec, bool attack) {
  if (rec.aborted) return "round aborted";
  if (rec.measurement_draws != 0) return "final measurement consumed randomness";
  if (rec.protocol == 2 && !(rec.l == (rec.s ^ rec.k_alice ^ rec.b))) {
    return "prekey identity l = s^k^b violated";
  }
  if (!(rec.k_bob == rec.k_alice)) return "key mismatch between Alice and Bob";
  if (attack) {
    if (!rec.eve_guess) return "eve produced no guess";
    if (!(*rec.eve_guess == rec.k_alice)) return "eve guess incorrect";
  }
  return {};
}

}  // namespace detail

/// Iterates every binary parameter against every grid angle and checks the
/// protocol identities: honest rounds must satisfy l = s^k^b and decode the
/// key exactly; impersonation rounds must additionally give Eve the key.
/// Failing combinations are returned, never silently dropped.
inline VerdictTable enumerate_exhaustive(int protocol, StrategyKind kind, int grid_points,
                                         const StrategyOptions& base_options = {}) {
  if (protocol != 1 && protocol != 2) throw std::invalid_argument("protocol must be 1 or 2");
  if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (kind == StrategyKind::intercept_resend) {
    throw std::invalid_argument("enumerate_exhaustive: exact identities require none or impersonation");
  }

  const AngleSource grid{AngleMode::grid, grid_points};
  const std::vector<Angle> values = grid.grid_values();
  const bool attack = kind == StrategyKind::impersonation;
  VerdictTable table;

  const auto check = [&](const RoundParams& params, std::optional<Bit> probe,
                         std::optional<std::pair<Angle, Angle>> rotations) {
    StrategyOptions options = base_options;
    options.forced_probe_bit = probe;
    options.forced_eve_rotations = rotations;
    const std::unique_ptr<EveStrategy> strategy = make_strategy(kind, protocol, options);
    RandomStream eve(0);
    RandomStream measurement(0);
    const RoundRecord rec =
        execute_round(protocol, table.cases, params, strategy.get(), eve, measurement);
    ++table.cases;
    std::string reason = detail::check_enumerated_record(rec, attack);
    if (!reason.empty()) table.failures.push_back({params, probe, rotations, std::move(reason)});
  };

  if (protocol == 1) {
    for (const Angle theta : values) {
      for (const Angle phi : values) {
        for (int k = 0; k < 2; ++k) {
          RoundParams params;
          params.theta1 = theta;
          params.phi = phi;
          params.k = Bit(k != 0);
          if (!attack) {
            check(params, std::nullopt, std::nullopt);
            continue;
          }
          for (int p = 0; p < 2; ++p) check(params, Bit(p != 0), std::nullopt);
        }
      }
    }
    return table;
  }

  for (const Angle theta1 : values) {
    for (const Angle theta2 : values) {
      for (const Angle phi : values) {
        for (int bits = 0; bits < 8; ++bits) {
          RoundParams params;
          params.theta1 = theta1;
          params.theta2 = theta2;
          params.phi = phi;
          params.s = Bit((bits & 1) != 0);
          params.k = Bit((bits & 2) != 0);
          params.b = Bit((bits & 4) != 0);
          if (!attack) {
            check(params, std::nullopt, std::nullopt);
            continue;
          }
          for (const Angle rot1 : values) {
            for (const Angle rot2 : values) {
              check(params, std::nullopt, std::pair<Angle, Angle>{rot1, rot2});
            }
          }
        }
      }
    }
  }
  return table;
}

}  // namespace blindpol
