// Acceptance suite: every claim the laboratory exists to demonstrate, run
// end to end at fixed seeds and tolerances. Prints one line per criterion
// and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "blindpol/report_io.hpp"
#include "blindpol/sim.hpp"

using namespace blindpol;

namespace {

struct Check {
  std::string label;
  std::function<bool(std::string&)> body;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion1_honest_p1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();

  SimConfig config;
  config.protocol = 1;
  config.rounds = 100000;
  config.seed = 1001;
  const SimReport sampled = run(config);

  const VerdictTable grid = enumerate_exhaustive(1, StrategyKind::none, 8);  // pi/8 spacing

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "qber=%g over %llu rounds + %llu grid cases in %.2fs",
                sampled.qber, (unsigned long long)sampled.rounds,
                (unsigned long long)grid.cases, seconds);
  detail = buf;
  return sampled.qber == 0.0 && grid.all_pass() && grid.cases == 128 && seconds < 5.0;
}

bool criterion2_honest_p2(std::string& detail) {
  const VerdictTable grid = enumerate_exhaustive(2, StrategyKind::none, 4);
  detail = std::to_string(grid.cases) + " (s,k,b) x grid combinations, " +
           std::to_string(grid.failures.size()) + " failures";
  return grid.all_pass() && grid.cases == 8 * 4 * 4 * 4;
}

bool criterion3_impersonation_p1(std::string& detail) {
  const VerdictTable grid = enumerate_exhaustive(1, StrategyKind::impersonation, 16);

  SimConfig config;
  config.protocol = 1;
  config.strategy = StrategyKind::impersonation;
  config.rounds = 100000;
  config.seed = 1003;
  const SimReport sampled = run(config);

  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu grid cases pass, sampled qber=%g eve_accuracy=%g",
                (unsigned long long)grid.cases, sampled.qber,
                sampled.eve_accuracy.value_or(-1.0));
  detail = buf;
  return grid.all_pass() && sampled.qber == 0.0 && sampled.eve_accuracy &&
         *sampled.eve_accuracy == 1.0;
}

bool criterion4_impersonation_p2(std::string& detail) {
  // exhaustive bits x 1000 random angle draws
  RandomStream angles(1004);
  for (int draw = 0; draw < 1000; ++draw) {
    RoundParams params;
    params.theta1 = canonicalize(kTwoPi * angles.next_unit());
    params.theta2 = canonicalize(kTwoPi * angles.next_unit());
    params.phi = canonicalize(kTwoPi * angles.next_unit());
    StrategyOptions options;
    options.forced_eve_rotations = {{canonicalize(kTwoPi * angles.next_unit()),
                                     canonicalize(kTwoPi * angles.next_unit())}};
    for (int bits = 0; bits < 8; ++bits) {
      params.s = Bit((bits & 1) != 0);
      params.k = Bit((bits & 2) != 0);
      params.b = Bit((bits & 4) != 0);
      auto strategy = make_strategy(StrategyKind::impersonation, 2, options);
      RandomStream eve(0);
      RandomStream measurement(0);
      const RoundRecord rec = execute_round(2, 0, params, strategy.get(), eve, measurement);
      const bool ok = !rec.aborted && rec.l == (params.s ^ params.k ^ params.b) &&
                      rec.k_bob == params.k && rec.eve_guess && *rec.eve_guess == params.k &&
                      rec.measurement_draws == 0;
      if (!ok) {
        detail = "identity failed at draw " + std::to_string(draw);
        return false;
      }
    }
  }

  SimConfig config;
  config.protocol = 2;
  config.strategy = StrategyKind::impersonation;
  config.rounds = 100000;
  config.seed = 1004;
  config.detection_threshold = 0.05;
  const SimReport sampled = run(config);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "8000 exhaustive-bit rounds pass, sampled qber=%g eve_accuracy=%g detected=%s",
                sampled.qber, sampled.eve_accuracy.value_or(-1.0),
                sampled.detected ? "true" : "false");
  detail = buf;
  return sampled.qber == 0.0 && sampled.eve_accuracy && *sampled.eve_accuracy == 1.0 &&
         !sampled.detected;
}

bool criterion5_flip_negative_control(std::string& detail) {
  SimConfig config;
  config.protocol = 1;
  config.strategy = StrategyKind::impersonation;
  config.strategy_options.p1_flip = FlipMode::reflection;
  config.rounds = 10000;
  config.seed = 1005;
  const SimReport report = run(config);
  char buf[96];
  std::snprintf(buf, sizeof buf, "reflection-flip qber=%.4f (needs > 0.1)", report.qber);
  detail = buf;
  return report.qber > 0.1;
}

bool criterion6_intercept_resend(std::string& detail) {
  SimConfig config;
  config.protocol = 1;
  config.strategy = StrategyKind::intercept_resend;
  config.rounds = 100000;
  config.seed = 1006;
  const SimReport report = run(config);
  char buf[96];
  std::snprintf(buf, sizeof buf, "qber=%.6f (analytic 0.25 +- 0.005) detected=%s", report.qber,
                report.detected ? "true" : "false");
  detail = buf;
  return report.qber >= 0.245 && report.qber <= 0.255 && report.detected;
}

bool criterion7_born_calibration(std::string& detail) {
  RandomStream rand(1007);
  const PolarizationState psi = rotate(computational_zero(), kPi / 6);
  const int trials = 100000;
  int zeros = 0;
  for (int i = 0; i < trials; ++i) {
    if (!measure(psi, MeasurementBasis{}, rand).outcome.as_bool()) ++zeros;
  }
  const double freq = static_cast<double>(zeros) / trials;
  char buf[96];
  std::snprintf(buf, sizeof buf, "outcome-0 frequency %.5f (expect 0.75 +- 0.006)", freq);
  detail = buf;
  return std::fabs(freq - 0.75) <= 0.006;
}

bool criterion8_mutual_information(std::string& detail) {
  // balanced impersonation rounds: the adversary's information is exactly
  // one bit for both protocols
  std::vector<RoundRecord> p1_records;
  const AngleSource grid{AngleMode::grid, 8};
  for (const Angle theta : grid.grid_values()) {
    for (const Angle phi : grid.grid_values()) {
      for (int k = 0; k < 2; ++k) {
        for (int p = 0; p < 2; ++p) {
          RoundParams params;
          params.theta1 = theta;
          params.phi = phi;
          params.k = Bit(k != 0);
          StrategyOptions options;
          options.forced_probe_bit = Bit(p != 0);
          auto strategy = make_strategy(StrategyKind::impersonation, 1, options);
          RandomStream eve(0);
          RandomStream measurement(0);
          p1_records.push_back(execute_round(1, 0, params, strategy.get(), eve, measurement));
        }
      }
    }
  }
  const double mi_p1 = mutual_information(confusion_alice_eve(p1_records));

  std::vector<RoundRecord> p2_records;
  RandomStream angles(1008);
  for (int draw = 0; draw < 500; ++draw) {
    RoundParams params;
    params.theta1 = canonicalize(kTwoPi * angles.next_unit());
    params.theta2 = canonicalize(kTwoPi * angles.next_unit());
    params.phi = canonicalize(kTwoPi * angles.next_unit());
    StrategyOptions options;
    options.forced_eve_rotations = {{canonicalize(kTwoPi * angles.next_unit()),
                                     canonicalize(kTwoPi * angles.next_unit())}};
    for (int bits = 0; bits < 8; ++bits) {
      params.s = Bit((bits & 1) != 0);
      params.k = Bit((bits & 2) != 0);
      params.b = Bit((bits & 4) != 0);
      auto strategy = make_strategy(StrategyKind::impersonation, 2, options);
      RandomStream eve(0);
      RandomStream measurement(0);
      p2_records.push_back(execute_round(2, 0, params, strategy.get(), eve, measurement));
    }
  }
  const double mi_p2 = mutual_information(confusion_alice_eve(p2_records));

  // plug-in estimator against analytic 1 - H(p) on simulated binary
  // symmetric channels
  bool bsc_ok = true;
  double worst = 0.0;
  RandomStream rand(8001);
  for (const double p : {0.1, 0.25}) {
    ConfusionMatrix2 m;
    for (int i = 0; i < 100000; ++i) {
      const Bit x = rand.next_bit();
      const Bit y = rand.next_unit() < p ? x.flipped() : x;
      m.add(x, y);
    }
    const double err = std::fabs(mutual_information(m) - (1.0 - binary_entropy(p)));
    worst = std::max(worst, err);
    bsc_ok = bsc_ok && err < 0.01;
  }

  char buf[160];
  std::snprintf(buf, sizeof buf, "I(A;E): p1=%.17g p2=%.17g; BSC worst error %.4f", mi_p1,
                mi_p2, worst);
  detail = buf;
  return mi_p1 == 1.0 && mi_p2 == 1.0 && bsc_ok;
}

bool criterion9_reproducibility(std::string& detail) {
  SimConfig config;
  config.protocol = 2;
  config.strategy = StrategyKind::impersonation;
  config.rounds = 20000;
  config.seed = 1009;

  const auto dir = std::filesystem::temp_directory_path();
  const auto path_a = dir / "blindpol_accept_a.json";
  const auto path_b = dir / "blindpol_accept_b.json";
  const auto path_c = dir / "blindpol_accept_c.json";

  config.threads = 1;
  write_report_json(run(config), path_a.string());
  write_report_json(run(config), path_b.string());
  config.threads = 8;
  write_report_json(run(config), path_c.string());

  const std::string a = read_file(path_a);
  const std::string b = read_file(path_b);
  const std::string c = read_file(path_c);
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
  std::filesystem::remove(path_c);

  detail = "report bytes: rerun " + std::string(a == b ? "identical" : "DIFFER") +
           ", 8 threads " + std::string(a == c ? "identical" : "DIFFER");
  return !a.empty() && a == b && a == c;
}

}  // namespace

int main() {
  const std::vector<Check> checks = {
      {"1. honest protocol 1: zero QBER over 10^5 rounds and the pi/8 grid, under 5s",
       criterion1_honest_p1},
      {"2. honest protocol 2: l = s^k^b and k = s^b^l on the full exhaustive grid",
       criterion2_honest_p2},
      {"3. impersonation on protocol 1: zero QBER, eve accuracy 1.0, exhaustively and sampled",
       criterion3_impersonation_p1},
      {"4. impersonation on protocol 2: zero QBER, eve accuracy 1.0, undetected at 0.05",
       criterion4_impersonation_p2},
      {"5. reflection-flip negative control: attack QBER exceeds 0.1 at 10^4 rounds",
       criterion5_flip_negative_control},
      {"6. intercept-resend baseline: QBER 0.25 +- 0.005 at 10^5 rounds, detected",
       criterion6_intercept_resend},
      {"7. born calibration: pi/6 state reads 0 with frequency 0.75 +- 0.006 at 10^5",
       criterion7_born_calibration},
      {"8. information: I(A;E) exactly 1 under impersonation; plug-in within 0.01 of 1-H(p)",
       criterion8_mutual_information},
      {"9. reproducibility: byte-identical reports across reruns and thread counts {1,8}",
       criterion9_reproducibility},
  };

  int failures = 0;
  for (const Check& check : checks) {
    std::string info;
    bool ok = false;
    try {
      ok = check.body(info);
    } catch (const std::exception& e) {
      info = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", check.label.c_str());
    if (!info.empty()) std::printf("       %s\n", info.c_str());
  }
  std::printf("%zu/%zu acceptance criteria passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
