#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blindpol/cli.hpp"

using namespace blindpol;

namespace {

CliInvocation parse(std::initializer_list<const char*> args) {
  std::vector<std::string> argv{"blindpol"};
  argv.insert(argv.end(), args.begin(), args.end());
  return parse_args(argv);
}

}  // namespace

TEST_CASE("run subcommand parses the full flag set") {
  const CliInvocation inv = parse({"run", "--protocol", "2", "--attack", "impersonation",
                                   "--rounds", "100000", "--seed", "42", "--out", "report.json"});
  CHECK(inv.command == CliInvocation::Command::run);
  CHECK(inv.config.protocol == 2);
  CHECK(inv.config.strategy == StrategyKind::impersonation);
  CHECK(inv.config.rounds == 100000);
  CHECK(inv.config.seed == 42);
  CHECK(inv.config.angles.mode == AngleMode::continuous);
  CHECK(inv.config.detection_threshold == 0.05);
  CHECK(inv.config.report_path == "report.json");
}

TEST_CASE("angle mode flag accepts continuous and grid:K") {
  CHECK(parse({"run", "--angles", "continuous"}).config.angles.mode == AngleMode::continuous);
  const CliInvocation grid = parse({"run", "--angles", "grid:4"});
  CHECK(grid.config.angles.mode == AngleMode::grid);
  CHECK(grid.config.angles.grid_points == 4);
  CHECK_THROWS_AS(parse({"run", "--angles", "grid:1"}), CliUsageError);
  CHECK_THROWS_AS(parse({"run", "--angles", "spiral"}), CliUsageError);
}

TEST_CASE("invalid values produce usage errors naming the flag") {
  try {
    parse({"run", "--protocol", "3"});
    FAIL("expected a usage error");
  } catch (const CliUsageError& e) {
    CHECK(std::string(e.what()).find("--protocol") != std::string::npos);
  }
  CHECK_THROWS_AS(parse({"run", "--rounds", "0"}), CliUsageError);
  CHECK_THROWS_AS(parse({"run", "--attack", "cloning"}), CliUsageError);
  CHECK_THROWS_AS(parse({"run", "--protocol", "2", "--attack", "intercept-resend"}),
                  CliUsageError);
  CHECK_THROWS_AS(parse({"run", "--threshold", "1.5"}), CliUsageError);
}

TEST_CASE("unknown flags are rejected") {
  CHECK_THROWS_AS(parse({"run", "--bogus", "1"}), CliUsageError);
  CHECK_THROWS_AS(parse({"frobnicate"}), CliUsageError);
  CHECK_THROWS_AS(parse({}), CliUsageError);  // a subcommand is required
}

TEST_CASE("enumerate subcommand selects the exhaustive oracle") {
  const CliInvocation inv = parse({"enumerate", "--protocol", "2", "--grid", "4"});
  CHECK(inv.command == CliInvocation::Command::enumerate);
  CHECK(inv.config.protocol == 2);
  CHECK(inv.config.strategy == StrategyKind::none);
  CHECK(inv.grid_points == 4);
  CHECK_THROWS_AS(parse({"enumerate", "--attack", "intercept-resend"}), CliUsageError);
}

TEST_CASE("selftest subcommand parses") {
  CHECK(parse({"selftest"}).command == CliInvocation::Command::selftest);
}

TEST_CASE("help is reported as help, not as an error") {
  std::vector<std::string> argv{"blindpol", "--help"};
  CHECK_THROWS_AS(parse_args(argv), CliHelpRequested);
}

TEST_CASE("cli run writes the report it prints") {
  CliInvocation inv = parse({"run", "--protocol", "2", "--attack", "impersonation", "--rounds",
                             "500", "--seed", "6"});
  const auto path = std::filesystem::temp_directory_path() / "blindpol_cli_test.json";
  inv.config.report_path = path.string();
  std::ostringstream sink;
  CHECK(cli_run(inv, sink) == 0);
  CHECK(sink.str().find("qber=0.000000") != std::string::npos);
  CHECK(sink.str().find("eve_accuracy=1.000000") != std::string::npos);
  const nlohmann::json parsed = nlohmann::json::parse(std::ifstream(path));
  CHECK(parsed["qber"].get<double>() == 0.0);
  CHECK(parsed["detected"].get<bool>() == false);
  std::filesystem::remove(path);
}
