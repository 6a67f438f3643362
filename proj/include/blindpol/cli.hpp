#pragma once

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blindpol/report_io.hpp"
#include "blindpol/sim.hpp"

namespace blindpol {

struct CliUsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliHelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliInvocation {
  enum class Command { run, enumerate, selftest };

  Command command = Command::run;
  SimConfig config{};
  int grid_points = 8;  // enumerate only
};

/// Parses an argv-style vector (program name first). Throws CliUsageError on
/// invalid input and CliHelpRequested carrying the help text.
inline CliInvocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Blind-rotation QKD protocol laboratory"};
  app.require_subcommand(1);

  CliInvocation invocation;
  int protocol = 1;
  std::string attack = "none";
  std::uint64_t rounds = 100000;
  std::uint64_t seed = 0;
  std::string angles = "continuous";
  double threshold = 0.05;
  unsigned threads = 1;
  std::string out_path;
  std::string csv_path;

  CLI::App* run_cmd = app.add_subcommand("run", "Run rounds and emit a report");
  run_cmd->add_option("--protocol", protocol, "Protocol variant (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  run_cmd->add_option("--attack", attack, "Eavesdropping strategy")
      ->check(CLI::IsMember({"none", "impersonation", "intercept-resend"}))
      ->capture_default_str();
  run_cmd->add_option("--rounds", rounds, "Number of rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  run_cmd->add_option("--angles", angles, "Angle source: continuous or grid:K")
      ->capture_default_str();
  run_cmd->add_option("--threshold", threshold, "QBER detection threshold, in (0,1)")
      ->capture_default_str();
  run_cmd->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--out", out_path, "JSON report path");
  run_cmd->add_option("--rounds-csv", csv_path, "Per-round CSV dump path");

  int enum_protocol = 1;
  std::string enum_attack = "none";
  int enum_grid = 8;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "Check the protocol identities over an exhaustive grid");
  enum_cmd->add_option("--protocol", enum_protocol, "Protocol variant (1 or 2)")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  enum_cmd->add_option("--attack", enum_attack, "Strategy to enumerate")
      ->check(CLI::IsMember({"none", "impersonation"}))
      ->capture_default_str();
  enum_cmd->add_option("--grid", enum_grid, "Grid points per angle (values j*pi/K)")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();

  app.add_subcommand("selftest", "Run the built-in oracle and correctness suites");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    throw CliHelpRequested(sub->help());
  } catch (const CLI::ParseError& e) {
    throw CliUsageError(std::string("usage error: ") + e.what());
  }

  try {
    if (run_cmd->parsed()) {
      invocation.command = CliInvocation::Command::run;
      invocation.config.protocol = protocol;
      invocation.config.strategy = strategy_kind_from_name(attack);
      invocation.config.rounds = rounds;
      invocation.config.seed = seed;
      invocation.config.angles = parse_angle_mode(angles);
      invocation.config.detection_threshold = threshold;
      invocation.config.threads = threads;
      invocation.config.report_path = out_path;
      invocation.config.rounds_csv_path = csv_path;
      invocation.config.validate();
    } else if (enum_cmd->parsed()) {
      invocation.command = CliInvocation::Command::enumerate;
      invocation.config.protocol = enum_protocol;
      invocation.config.strategy = strategy_kind_from_name(enum_attack);
      invocation.grid_points = enum_grid;
    } else {
      invocation.command = CliInvocation::Command::selftest;
    }
  } catch (const std::invalid_argument& e) {
    throw CliUsageError(std::string("usage error: ") + e.what());
  }
  return invocation;
}

namespace detail {

inline bool report_check(std::ostream& out, const std::string& label, bool ok) {
  out << (ok ? "[PASS] " : "[FAIL] ") << label << '\n';
  return ok;
}

}  // namespace detail

inline int cli_run(const CliInvocation& invocation, std::ostream& out) {
  const std::vector<RoundRecord> records = run_rounds(invocation.config);
  const SimReport report = summarize(invocation.config, records);
  out << summary_line(report) << '\n';
  if (!invocation.config.report_path.empty()) {
    write_report_json(report, invocation.config.report_path);
  }
  if (!invocation.config.rounds_csv_path.empty()) {
    write_rounds_csv(records, invocation.config.rounds_csv_path);
  }
  return 0;
}

inline int cli_enumerate(const CliInvocation& invocation, std::ostream& out) {
  const VerdictTable table = enumerate_exhaustive(
      invocation.config.protocol, invocation.config.strategy, invocation.grid_points);
  out << "checked " << table.cases << " combinations, " << table.failures.size()
      << " failures\n";
  std::size_t shown = 0;
  for (const EnumerationFailure& f : table.failures) {
    if (shown++ == 20) {
      out << "  ... (" << table.failures.size() - 20 << " more)\n";
      break;
    }
    out << "  s=" << f.params.s.value() << " k=" << f.params.k.value()
        << " b=" << f.params.b.value() << " theta1=" << f.params.theta1.radians()
        << " theta2=" << f.params.theta2.radians() << " phi=" << f.params.phi.radians() << ": "
        << f.reason << '\n';
  }
  return table.all_pass() ? 0 : 1;
}

inline int cli_selftest(std::ostream& out) {
  bool ok = true;
  const auto enumeration = [&](const std::string& label, int protocol, StrategyKind kind,
                               int grid) {
    const VerdictTable table = enumerate_exhaustive(protocol, kind, grid);
    ok &= detail::report_check(
        out, label + " (" + std::to_string(table.cases) + " combinations)", table.all_pass());
  };
  enumeration("protocol 1 honest grid", 1, StrategyKind::none, 8);
  enumeration("protocol 2 honest grid", 2, StrategyKind::none, 4);
  enumeration("protocol 1 impersonation grid", 1, StrategyKind::impersonation, 8);
  enumeration("protocol 2 impersonation grid", 2, StrategyKind::impersonation, 4);

  const auto sampled = [&](const std::string& label, SimConfig config, auto predicate) {
    const SimReport report = run(config);
    ok &= detail::report_check(out, label, predicate(report));
  };
  SimConfig config;
  config.rounds = 20000;
  config.seed = 0x5e1f7e57;

  config.protocol = 1;
  config.strategy = StrategyKind::none;
  sampled("protocol 1 honest sampled rounds", config,
          [](const SimReport& r) { return r.qber == 0.0 && !r.detected; });
  config.protocol = 2;
  sampled("protocol 2 honest sampled rounds", config,
          [](const SimReport& r) { return r.qber == 0.0 && !r.detected; });
  config.protocol = 1;
  config.strategy = StrategyKind::impersonation;
  sampled("protocol 1 impersonation sampled rounds", config, [](const SimReport& r) {
    return r.qber == 0.0 && r.eve_accuracy && *r.eve_accuracy == 1.0 && !r.detected;
  });
  config.protocol = 2;
  sampled("protocol 2 impersonation sampled rounds", config, [](const SimReport& r) {
    return r.qber == 0.0 && r.eve_accuracy && *r.eve_accuracy == 1.0 && !r.detected;
  });
  config.protocol = 1;
  config.strategy = StrategyKind::intercept_resend;
  sampled("intercept-resend baseline detected", config, [](const SimReport& r) {
    return r.qber > 0.23 && r.qber < 0.27 && r.detected;
  });

  out << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  return ok ? 0 : 1;
}

inline int run_cli(int argc, char** argv) {
  CliInvocation invocation;
  try {
    invocation = parse_args(std::vector<std::string>(argv, argv + argc));
  } catch (const CliHelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const CliUsageError& usage) {
    std::cerr << usage.what() << '\n';
    return 2;
  }
  try {
    switch (invocation.command) {
      case CliInvocation::Command::run:
        return cli_run(invocation, std::cout);
      case CliInvocation::Command::enumerate:
        return cli_enumerate(invocation, std::cout);
      case CliInvocation::Command::selftest:
        return cli_selftest(std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace blindpol
