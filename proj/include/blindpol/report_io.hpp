#pragma once

#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "blindpol/sim.hpp"

namespace blindpol {

inline std::string angle_mode_name(const AngleSource& angles) {
  if (angles.mode == AngleMode::continuous) return "continuous";
  return "grid:" + std::to_string(angles.grid_points);
}

inline AngleSource parse_angle_mode(const std::string& text) {
  if (text == "continuous") return {};
  if (text.rfind("grid:", 0) == 0) {
    int points = 0;
    try {
      points = std::stoi(text.substr(5));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --angles value: " + text);
    }
    if (points < 2) throw std::invalid_argument("grid angle mode needs at least 2 points");
    return {AngleMode::grid, points};
  }
  throw std::invalid_argument("bad --angles value: " + text + " (expected continuous or grid:K)");
}

/// Report JSON with fixed field names. Numbers keep full precision; the
/// serialization is deterministic so identical runs produce identical bytes.
inline nlohmann::ordered_json report_to_json(const SimReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {
      {"protocol", report.config.protocol},
      {"attack", strategy_name(report.config.strategy)},
      {"rounds", report.config.rounds},
      {"seed", report.config.seed},
      {"angles", angle_mode_name(report.config.angles)},
      {"threshold", report.config.detection_threshold},
  };
  j["rounds"] = report.rounds;
  j["aborted"] = report.aborted;
  j["qber"] = report.qber;
  if (report.eve_accuracy) {
    j["eve_accuracy"] = *report.eve_accuracy;
  } else {
    j["eve_accuracy"] = nullptr;
  }
  j["mi_ab"] = report.mi_ab;
  if (report.mi_ae) {
    j["mi_ae"] = *report.mi_ae;
  } else {
    j["mi_ae"] = nullptr;
  }
  j["detected"] = report.detected;
  j["conventions"] = {
      {"b0_transmits", report.conventions.b0_transmits},
      {"prekey_zero_vector", report.conventions.prekey_zero_vector},
      {"e2_pulse_index", report.conventions.e2_pulse_index},
      {"e2_rotation", report.conventions.e2_rotation},
  };
  return j;
}

inline void write_report_json(const SimReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report path: " + path);
  out << report_to_json(report).dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("failed writing report: " + path);
}

/// Per-round dump. Cells that do not apply (s/b/l for protocol 1, k_bob and
/// l for aborted rounds, absent guesses) are left empty.
inline std::string rounds_csv(std::span<const RoundRecord> records) {
  std::ostringstream out;
  out << "round,k_alice,k_bob,s,b,l,eve_guess\n";
  for (const RoundRecord& r : records) {
    out << r.round << ',' << r.k_alice.value() << ',';
    if (!r.aborted) out << r.k_bob.value();
    out << ',';
    if (r.protocol == 2) out << r.s.value();
    out << ',';
    if (r.protocol == 2) out << r.b.value();
    out << ',';
    if (r.protocol == 2 && !r.aborted) out << r.l.value();
    out << ',';
    if (r.eve_guess) out << r.eve_guess->value();
    out << '\n';
  }
  return out.str();
}

inline void write_rounds_csv(std::span<const RoundRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open csv path: " + path);
  out << rounds_csv(records);
  out.flush();
  if (!out) throw std::runtime_error("failed writing csv: " + path);
}

/// Human-readable one-liner; rates rounded to 6 decimals.
inline std::string summary_line(const SimReport& report) {
  char buffer[320];
  char accuracy[32] = "n/a";
  char info_ae[32] = "n/a";
  if (report.eve_accuracy) std::snprintf(accuracy, sizeof accuracy, "%.6f", *report.eve_accuracy);
  if (report.mi_ae) std::snprintf(info_ae, sizeof info_ae, "%.6f", *report.mi_ae);
  std::snprintf(buffer, sizeof buffer,
                "protocol=%d attack=%s rounds=%llu aborted=%llu qber=%.6f eve_accuracy=%s "
                "mi_ab=%.6f mi_ae=%s detected=%s",
                report.config.protocol, strategy_name(report.config.strategy),
                static_cast<unsigned long long>(report.rounds),
                static_cast<unsigned long long>(report.aborted), report.qber, accuracy,
                report.mi_ab, info_ae, report.detected ? "true" : "false");
  return buffer;
}

}  // namespace blindpol
