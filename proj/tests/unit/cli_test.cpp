#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

using namespace hypermon::testing;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result cli(const std::string& args, const std::string& input = "") {
  std::string command = std::string(HYPERMON_CLI) + " " + args + " 2>/dev/null";
  if (!input.empty()) command = "printf '%s\\n' '" + input + "' | " + command;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe);
  Result r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

const std::string kToll = "--program " + programPath("Toll.ml") + " --method fee";

}  // namespace

TEST_CASE("monitor exits 2 on BOTTOM and reports the violating line") {
  const auto r = cli("monitor " + kToll + " --property ddm --strategy eager --traces " + tracePath("toll_raw.csv"));
  CHECK(r.status == 2);
  CHECK(r.out.find("line 2: verdict=BOTTOM [witness: i=1, x=20, y=2]") != std::string::npos);
  CHECK(r.out.find("line 1: verdict=UNKNOWN") != std::string::npos);
}

TEST_CASE("monitor exits 0 on empty input") {
  const auto r = cli("monitor " + kToll + " --traces " + tracePath("empty.csv"));
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict=UNKNOWN") != std::string::npos);
}

TEST_CASE("monitor reads standard input") {
  const auto r = cli("monitor " + kToll + " --traces - < " + tracePath("toll_distributed.csv"));
  CHECK(r.status == 0);
}

TEST_CASE("machine-readable output is reproducible") {
  for (const char* format : {"csv", "json-lines"}) {
    const std::string args = "monitor " + kToll + " --format " + format + " --traces " + tracePath("toll_raw.csv");
    const auto a = cli(args);
    const auto b = cli(args);
    CHECK(a.status == 2);
    CHECK(a.out == b.out);
  }
  const auto j = cli("monitor " + kToll + " --format json-lines --traces " + tracePath("toll_raw.csv"));
  CHECK(j.out.find(R"("line":2,"verdict":"BOTTOM","witness":{"position":1,"x":["20"],"y":["2"]})") !=
        std::string::npos);
}

TEST_CASE("classify prints the verdict") {
  const auto r = cli("classify --ap a --pred 'a@1 <-> !a@2'");
  CHECK(r.status == 0);
  CHECK(r.out.find("verdict: NON_MONITORABLE") != std::string::npos);
  const auto s = cli("classify --ap a --pred 'a@1 <-> a@2'");
  CHECK(s.out.find("evidence: REFLEXIVE") != std::string::npos);
  CHECK(cli("classify --ap a --pred 'b@1'").status == 1);
}

TEST_CASE("errors exit 1") {
  CHECK(cli("monitor " + kToll + " --traces /nonexistent/traces.csv").status == 1);
  CHECK(cli("monitor --program /nonexistent/P.ml --traces -").status == 1);
  CHECK(cli("monitor " + kToll + " --bogus-flag").status == 1);
  CHECK(cli("").status == 1);
  // Arity mismatch between the method and the CSV.
  CHECK(cli("monitor " + kToll + " --traces -", "1, 2, 3").status == 1);
  CHECK(cli("monitor " + kToll + " --backend smt --solver /nonexistent/solver --traces " + tracePath("toll_raw.csv"))
            .status == 1);
  CHECK(cli("--help").status == 0);
}

TEST_CASE("strict mode makes inconsistent traces fatal") {
  CHECK(cli("monitor " + kToll + " --traces -", "20, 22, 1, 1, 771").status == 0);
  CHECK(cli("monitor " + kToll + " --strict --traces -", "20, 22, 1, 1, 771").status == 1);
}

TEST_CASE("gen is deterministic in its seed") {
  const std::string args = "gen " + kToll + " --kind K2 --count 20 --seed 7";
  const auto a = cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == cli(args).out);
  std::size_t lines = 0;
  for (char c : a.out) lines += c == '\n';
  CHECK(lines == 20);
}

TEST_CASE("symexec dumps and validates") {
  const auto r = cli("symexec --program " + programPath("Div.ml") + " --use-invariants --domain x=0..50 "
                     "--domain y=1..9 --validate 500");
  CHECK(r.status == 0);
  CHECK(r.out.find("disagreements=0") != std::string::npos);
  CHECK(cli("symexec --program " + programPath("Toll.ml") + " --method rate --format smt").out.find("QF_LIA") !=
        std::string::npos);
  CHECK(cli("symexec --program " + programPath("Div.ml") + " --domain q=0..1").status == 1);
}

TEST_CASE("bench emits a verdict table") {
  const auto r = cli("bench --target T2=" + programPath("Toll2.ml") +
                     ":fee --instances 2 --traces 20 --format csv --no-timings --backend brute");
  CHECK(r.status == 0);
  CHECK(r.out.find("T2,K2,lazy,UNKNOWN") != std::string::npos);
}
