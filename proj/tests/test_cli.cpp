#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relprime/cli.hpp"

using namespace relprime;
using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Spawns the installed binary through the shell to confirm that process
// exit codes match what the in-process entry point returns.
int spawn_cli(const std::string& args, std::string* stdout_text = nullptr) {
  const std::string cmd = std::string(RELPRIME_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) text.append(buf, got);
  const int status = pclose(pipe);
  if (stdout_text) *stdout_text = text;
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("family metadata is complete") {
  CHECK(cli::family_names().size() == 18);
  CHECK(cli::family_params("phi") == std::vector<std::string>{"l", "m", "n"});
  CHECK(cli::family_params("psi-k") ==
        std::vector<std::string>{"m1", "l2", "m2", "k", "n"});
  CHECK(cli::family_takes_base("superset-f"));
  CHECK(!cli::family_takes_base("phi"));
  CHECK(cli::family_takes_meet("meet-phi-k"));
  CHECK(!cli::family_takes_meet("superset-phi"));
  CHECK_THROWS_AS(cli::family_params("nope"), std::invalid_argument);
}

TEST_CASE("eval prints bare counts in plain format") {
  auto r = run_cli({"eval", "phi", "--l", "1", "--m", "3", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");

  r = run_cli({"eval", "phi-k", "--l", "1", "--m", "4", "--k", "2", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");

  r = run_cli({"eval", "f", "--l", "4", "--m", "6"});
  CHECK(r.out == "3\n");

  r = run_cli({"eval", "psi", "--m1", "2", "--l2", "4", "--m2", "5", "--n", "2"});
  CHECK(r.out == "6\n");

  r = run_cli({"eval", "phi-union", "--m1", "2", "--l2", "4", "--m2", "4",
               "--n", "6"});
  CHECK(r.out == "4\n");

  r = run_cli({"eval", "eps", "--l", "2", "--m", "3", "--n", "4"});
  CHECK(r.out == "2\n");

  r = run_cli({"eval", "superset-phi", "--base", "4", "--l", "2", "--m", "6",
               "--n", "2"});
  CHECK(r.out == "12\n");

  r = run_cli({"eval", "superset-f", "--base", "3", "--l", "2", "--m", "6"});
  CHECK(r.out == "14\n");

  r = run_cli({"eval", "meet-f-k", "--meet", "1,2", "--l", "1", "--m", "2",
               "--k", "2"});
  CHECK(r.out == "1\n");
}

TEST_CASE("meet evaluation honours --mode") {
  auto r = run_cli({"eval", "meet-phi", "--meet", "2,3", "--l", "2", "--m", "4",
                    "--n", "2"});
  CHECK(r.out == "4\n");
  r = run_cli({"eval", "meet-phi", "--meet", "2,3", "--l", "2", "--m", "4",
               "--n", "2", "--mode", "paper-literal"});
  CHECK(r.out == "8\n");
  r = run_cli({"eval", "meet-phi", "--meet", "2,3", "--l", "2", "--m", "4",
               "--n", "2", "--mode", "bogus"});
  CHECK(r.code == 2);
}

TEST_CASE("eval json carries parameters and a decimal count string") {
  auto r = run_cli({"eval", "phi", "--l", "1", "--m", "3", "--n", "3",
                    "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"family\":\"phi\",\"l\":1,\"m\":3,\"n\":3,\"count\":\"6\"}\n");

  r = run_cli({"eval", "meet-phi", "--meet", "3,2", "--l", "2", "--m", "4",
               "--n", "2", "--format", "json"});
  const json doc = json::parse(r.out);
  CHECK(doc["family"] == "meet-phi");
  CHECK(doc["meet"] == json::array({2, 3}));
  CHECK(doc["mode"] == "inclusion-exclusion");
  CHECK(doc["count"] == "4");

  // Counts stay exact far beyond 64 bits.
  r = run_cli({"eval", "phi", "--l", "1", "--m", "200", "--n", "1",
               "--format", "json"});
  const json big = json::parse(r.out);
  CHECK(big["count"] ==
        "1606938044258990275541962092341162602522202993782792835301375");
}

TEST_CASE("eval csv emits a header and one row") {
  auto r = run_cli({"eval", "phi", "--l", "1", "--m", "3", "--n", "3",
                    "--format", "csv"});
  CHECK(r.out == "family,l,m,n,count\nphi,1,3,3,6\n");

  r = run_cli({"eval", "superset-phi", "--base", "4", "--l", "2", "--m", "6",
               "--n", "2", "--format", "csv"});
  CHECK(r.out == "family,l,m,n,base,count\nsuperset-phi,2,6,2,4,12\n");

  r = run_cli({"eval", "meet-phi", "--meet", "2,3", "--l", "2", "--m", "4",
               "--n", "2", "--format", "csv"});
  CHECK(r.out ==
        "family,l,m,n,meet,mode,count\nmeet-phi,2,4,2,2;3,inclusion-exclusion,4\n");
}

TEST_CASE("verbose eval explains the divisor sum") {
  auto r = run_cli({"eval", "phi", "--l", "2", "--m", "4", "--n", "6",
                    "--verbose"});
  CHECK(r.code == 0);
  // Four divisors of 6, then the count on the last line.
  CHECK(r.out.find("d=1") != std::string::npos);
  CHECK(r.out.find("d=6") != std::string::npos);
  CHECK(r.out.rfind("3\n") == r.out.size() - 2);

  r = run_cli({"eval", "phi", "--l", "1", "--m", "3", "--n", "1", "--verbose"});
  CHECK(r.out.find("raw sum 8") != std::string::npos);
  CHECK(r.out.rfind("7\n") == r.out.size() - 2);

  r = run_cli({"eval", "phi", "--l", "1", "--m", "3", "--n", "1", "--verbose",
               "--format", "json"});
  const json doc = json::parse(r.out);
  CHECK(doc["raw_sum"] == "8");
  CHECK(doc["count"] == "7");
  CHECK(doc["terms"].is_array());
}

TEST_CASE("table walks ranges and skips invalid tuples") {
  auto r = run_cli({"table", "phi", "--l", "1", "--m", "1..5", "--n", "6",
                    "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "l,m,n,count\n"
        "1,1,6,1\n"
        "1,2,6,2\n"
        "1,3,6,5\n"
        "1,4,6,11\n"
        "1,5,6,27\n");

  r = run_cli({"table", "phi", "--l", "1..3", "--m", "2", "--n", "2"});
  CHECK(r.code == 0);
  // l = 3 > m = 2 is silently skipped; {1} and {1,2} are the two sets at l=1.
  CHECK(r.out ==
        "l=1 m=2 n=2 count=2\n"
        "l=2 m=2 n=2 count=0\n");

  r = run_cli({"table", "phi", "--l", "1", "--m", "3", "--n", "3", "--format",
               "json"});
  CHECK(r.out == "[{\"l\":1,\"m\":3,\"n\":3,\"count\":\"6\"}]\n");
}

TEST_CASE("table enforces the row cap and rejects empty grids") {
  auto r = run_cli({"table", "phi", "--l", "1..1000", "--m", "1..1000", "--n",
                    "1..10", "--max-rows", "100"});
  CHECK(r.code == 2);
  CHECK(r.err.find("row cap") != std::string::npos);

  // Every tuple violates l <= m, so nothing can be emitted.
  r = run_cli({"table", "phi", "--l", "5..6", "--m", "1..2", "--n", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("no valid parameter combination") != std::string::npos);

  r = run_cli({"table", "phi", "--m", "1..4", "--n", "6"});
  CHECK(r.code == 2);  // --l missing
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"eval"}).code == 2);
  CHECK(run_cli({"eval", "nope", "--l", "1", "--m", "2", "--n", "3"}).code == 2);
  CHECK(run_cli({"eval", "phi", "--l", "1", "--m", "2"}).code == 2);
  CHECK(run_cli({"eval", "phi", "--l", "3", "--m", "2", "--n", "1"}).code == 2);
  CHECK(run_cli({"eval", "phi", "--l", "1", "--m", "2", "--n", "0"}).code == 2);
  CHECK(run_cli({"eval", "phi", "--l", "1", "--m", "2", "--n", "3",
                 "--format", "yaml"}).code == 2);
  CHECK(run_cli({"eval", "superset-f", "--base", "0", "--l", "1", "--m", "3"})
            .code == 2);
  CHECK(run_cli({"eval", "superset-f", "--base", "2,x", "--l", "1", "--m", "3"})
            .code == 2);
  CHECK(run_cli({"eval", "superset-f", "--base", "9", "--l", "1", "--m", "3"})
            .code == 2);
  CHECK(run_cli({"eval", "phi", "--l", "1..3", "--m", "3", "--n", "3"}).code ==
        2);  // ranges only make sense for table

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("meet-f-k") != std::string::npos);
}

TEST_CASE("check agrees with enumeration and reports cleanly") {
  auto r = run_cli({"check", "phi", "f-k", "--max-m", "6", "--max-n", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check phi:") != std::string::npos);
  CHECK(r.out.find("mismatches 0") != std::string::npos);
  CHECK(r.out.find("check result: 0 mismatches") != std::string::npos);
  CHECK(r.err.find("check elapsed:") != std::string::npos);

  r = run_cli({"check", "all", "--max-m", "5", "--max-n", "6", "--samples",
               "10", "--format", "csv"});
  CHECK(r.code == 0);
  // Header plus one zero-mismatch row per family.
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "family,cases,mismatches");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.rfind(',') + 1) == "0");
    ++rows;
  }
  CHECK(rows == cli::family_names().size());

  CHECK(run_cli({"check", "nope"}).code == 2);
}

TEST_CASE("check flags the over-counting of the literal meet sum") {
  auto r = run_cli({"check", "meet-phi", "meet-f", "--mode", "paper-literal",
                    "--max-m", "6", "--max-n", "8", "--samples", "40"});
  CHECK(r.code == 1);
  CHECK(r.out.find("mismatch") != std::string::npos);
  CHECK(r.out.find("counts it") != std::string::npos);  // multiplicity note

  r = run_cli({"check", "meet-phi", "meet-f", "--max-m", "6", "--max-n", "8",
               "--samples", "40"});
  CHECK(r.code == 0);
}

TEST_CASE("check output is reproducible for a fixed seed") {
  const std::vector<std::string> args = {"check",   "superset-phi", "meet-f",
                                         "--seed",  "7",            "--samples",
                                         "25",      "--max-m",      "6",
                                         "--max-n", "8"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto c = run_cli({"check", "superset-phi", "meet-f", "--seed", "8",
                          "--samples", "25", "--max-m", "6", "--max-n", "8"});
  CHECK(c.code == 0);
  // A different seed draws different sample points, so the grid line differs.
  CHECK(a.out != c.out);
}

TEST_CASE("bench reports both legs and their agreement") {
  auto r = run_cli({"bench", "phi", "--l", "1", "--m", "12", "--n", "30",
                    "--reps", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bench phi") != std::string::npos);
  CHECK(r.out.find("closed-form") != std::string::npos);
  CHECK(r.out.find("oracle") != std::string::npos);
  CHECK(r.out.find("match") != std::string::npos);

  r = run_cli({"bench", "phi", "--l", "1", "--m", "100", "--n", "30", "--reps",
               "2", "--format", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["oracle_feasible"] == false);
  CHECK(doc["count"].is_string());
  CHECK(doc["closed_form_seconds"].is_number());
}

TEST_CASE("the installed binary maps outcomes to exit codes") {
  std::string text;
  CHECK(spawn_cli("eval phi --l 1 --m 3 --n 3", &text) == 0);
  CHECK(text == "6\n");
  CHECK(spawn_cli("eval phi --l 0 --m 3 --n 3") == 2);
  CHECK(spawn_cli("check meet-f --mode paper-literal --max-m 5 --max-n 6 "
                  "--samples 20") == 1);
}
