#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "blindpol/bit.hpp"
#include "blindpol/round_record.hpp"

namespace blindpol {

/// Joint counts between two bit sequences.
struct ConfusionMatrix2 {
  std::uint64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;

  void add(Bit x, Bit y) {
    if (x.as_bool()) {
      y.as_bool() ? ++n11 : ++n10;
    } else {
      y.as_bool() ? ++n01 : ++n00;
    }
  }

  std::uint64_t total() const { return n00 + n01 + n10 + n11; }
};

inline ConfusionMatrix2 confusion_alice_bob(std::span<const RoundRecord> records) {
  ConfusionMatrix2 m;
  for (const RoundRecord& r : records) {
    if (!r.aborted) m.add(r.k_alice, r.k_bob);
  }
  return m;
}

inline ConfusionMatrix2 confusion_alice_eve(std::span<const RoundRecord> records) {
  ConfusionMatrix2 m;
  for (const RoundRecord& r : records) {
    if (!r.aborted && r.eve_guess) m.add(r.k_alice, *r.eve_guess);
  }
  return m;
}

/// Fraction of completed rounds where Bob's key bit differs from Alice's.
inline double qber(std::span<const RoundRecord> records) {
  std::uint64_t completed = 0;
  std::uint64_t errors = 0;
  for (const RoundRecord& r : records) {
    if (r.aborted) continue;
    ++completed;
    if (!(r.k_bob == r.k_alice)) ++errors;
  }
  if (completed == 0) throw std::invalid_argument("qber: no completed rounds");
  return static_cast<double>(errors) / static_cast<double>(completed);
}

/// Fraction of guessed rounds where Eve's guess equals Alice's key bit.
inline double eve_accuracy(std::span<const RoundRecord> records) {
  std::uint64_t guessed = 0;
  std::uint64_t correct = 0;
  for (const RoundRecord& r : records) {
    if (r.aborted || !r.eve_guess) continue;
    ++guessed;
    if (*r.eve_guess == r.k_alice) ++correct;
  }
  if (guessed == 0) throw std::invalid_argument("eve_accuracy: no guesses recorded");
  return static_cast<double>(correct) / static_cast<double>(guessed);
}

/// Binary entropy in bits: H(p) = -p log2 p - (1-p) log2 (1-p).
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Plug-in mutual information in bits over the joint counts, with the
/// 0 log 0 = 0 convention. Clamped into [0, 1] against rounding.
inline double mutual_information(const ConfusionMatrix2& m) {
  if (m.total() == 0) throw std::invalid_argument("mutual_information: empty counts");
  const double total = static_cast<double>(m.total());
  const double joint[2][2] = {
      {static_cast<double>(m.n00) / total, static_cast<double>(m.n01) / total},
      {static_cast<double>(m.n10) / total, static_cast<double>(m.n11) / total}};
  const double px[2] = {joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
  const double py[2] = {joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};
  double info = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      if (joint[x][y] > 0.0) info += joint[x][y] * std::log2(joint[x][y] / (px[x] * py[y]));
    }
  }
  return std::clamp(info, 0.0, 1.0);
}

struct DetectionVerdict {
  double qber = 0.0;
  double threshold = 0.0;
  bool detected = false;  // strictly above threshold
};

inline DetectionVerdict detection_verdict(double qber_estimate, double threshold = 0.05) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("detection threshold outside (0,1)");
  }
  return {qber_estimate, threshold, qber_estimate > threshold};
}

}  // namespace blindpol
