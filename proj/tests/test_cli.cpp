#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "golden_cases.hpp"
#include "helpers.hpp"

using golden::CliResult;
using golden::run_cli;

TEST_CASE("golden outputs are byte-identical") {
  bool update = std::getenv("WITTKIT_UPDATE_GOLDEN") != nullptr;
  for (const auto& gc : golden::cases()) {
    CAPTURE(gc.name);
    CliResult res = run_cli(gc.args);
    REQUIRE(res.exit_code == 0);
    if (update) {
      std::ofstream out(golden::path(gc.name), std::ios::binary);
      out << res.output;
      continue;
    }
    std::string expected;
    bool have_golden = golden::read_file(golden::path(gc.name), expected);
    REQUIRE_MESSAGE(have_golden, "missing golden file");
    CHECK(res.output == expected);
  }
}

TEST_CASE("identical invocations give identical bytes") {
  for (const auto& gc : golden::cases()) {
    CliResult a = run_cli(gc.args);
    CliResult b = run_cli(gc.args);
    CHECK(a.output == b.output);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("printed values reparse to equal values") {
  using namespace wittkit;
  for (const auto& gc : golden::cases()) {
    if (gc.args[0] != "add" && gc.args[0] != "mul" && gc.args[0] != "inv" &&
        gc.args[0] != "teich" && gc.args[0] != "f")
      continue;
    CliResult res = run_cli(gc.args);
    std::string line = res.output.substr(0, res.output.find('\n'));
    unsigned vars = gc.name == "add_basic" ? 0 : 1;
    auto ctx = PolyRingCtx::make(CoeffRing::fp(2), vars);
    WittVector parsed = WittVector::parse(line, ctx);
    CHECK(parsed.str() == line);
  }
}

TEST_CASE("exit codes and error names") {
  CliResult usage = run_cli({"frobnicate"}, true);
  CHECK(usage.exit_code == 2);

  CliResult missing = run_cli({"add", "--p", "2", "wv[1]", "wv[1]"}, true);
  CHECK(missing.exit_code == 2);  // --len is required

  CliResult domain = run_cli({"inv", "--p", "2", "--len", "2", "--vars", "1", "wv[T1;0]"}, true);
  CHECK(domain.exit_code == 1);
  CHECK(domain.output.find("NotAUnit") != std::string::npos);

  CliResult parse_err = run_cli({"add", "--p", "2", "--len", "2", "wv[T9;0]", "wv[1;0]"}, true);
  CHECK(parse_err.exit_code == 2);
  CHECK(parse_err.output.find("ParseError") != std::string::npos);

  CliResult check_run = run_cli({"check", "hensel", "--seed", "7", "--cases", "2"});
  CHECK(check_run.exit_code == 0);
  CHECK(check_run.output.find("hensel: 2/2 ok") != std::string::npos);
}
