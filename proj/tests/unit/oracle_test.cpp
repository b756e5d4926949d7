#include "hypermon/harness.hpp"
#include "hypermon/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace hypermon;
using namespace hypermon::testing;

namespace {

const Domains kRateDomains{Interval::closed(0, 23), Interval::closed(1, 8)};

std::shared_ptr<Oracle> makeOracle(std::shared_ptr<const lang::Program> p, const std::string& method,
                                   Backend backend, sym::SymexecConfig cfg = {}) {
  auto c = std::make_shared<const sym::Characterization>(sym::symexecMethod(*p, method, cfg));
  OracleConfig oc;
  oc.backend = backend;
  return std::make_shared<Oracle>(p, c, oc);
}

bool smtAvailable() {
  static const bool ok = smt::available();
  return ok;
}

}  // namespace

TEST_CASE("solver exchange") {
  if (!smtAvailable()) {
    MESSAGE("no SMT solver on this machine; exchange checks skipped");
    return;
  }
  CHECK(smt::check("(assert (distinct 1 1))\n(check-sat)\n") == smt::SatResult::Unsat);
  CHECK(smt::check("(declare-const a Int)\n(assert (distinct a a))\n(check-sat)\n") == smt::SatResult::Unsat);
  CHECK(smt::check("(declare-const a Int)\n(assert (> a 3))\n(check-sat)\n") == smt::SatResult::Sat);
}

TEST_CASE("solver failures are distinguished from unknown") {
  smt::SolverConfig missing;
  missing.command = "/nonexistent/solver-binary";
  CHECK_THROWS_AS(smt::check("(check-sat)\n", missing), SolverError);
  CHECK_FALSE(smt::available(missing));

  smt::SolverConfig garbage;
  garbage.command = "echo hello";
  CHECK_THROWS_AS(smt::check("(check-sat)\n", garbage), SolverError);

  smt::SolverConfig slow;
  slow.command = "sleep 5";
  slow.timeout = std::chrono::milliseconds(200);
  CHECK(smt::check("(check-sat)\n", slow) == smt::SatResult::Unknown);

  smt::SolverConfig canned;
  canned.command = "cat > /dev/null; echo unsat";
  CHECK(smt::check("(check-sat)\n", canned) == smt::SatResult::Unsat);
}

TEST_CASE("queries pick the arithmetic logic") {
  const auto toll = loadShared("Toll.ml");
  const auto rate = sym::symexecMethod(*toll, "rate");
  const auto q = smt::buildQuery(rate, 1, 10, 20);
  CHECK(q.script.find("QF_LIA") != std::string::npos);
  CHECK_FALSE(q.havocOutput);
  CHECK(q.script.find("(check-sat)") != std::string::npos);

  const auto nl = parseShared("class N { int f(int a, int b, int c) { return a * b * c; } }");
  const auto c = sym::symexecMethod(*nl, "f");
  CHECK(smt::buildQuery(c, 1, 1, 2).script.find("QF_NIA") != std::string::npos);

  const auto div = loadShared("Div.ml");
  sym::SymexecConfig cut;
  cut.unrollDepth = 2;
  CHECK(smt::buildQuery(sym::symexecMethod(*div, "posDiv", cut), 1, 1, 2).havocOutput);
}

TEST_CASE("brute-force distinguishability") {
  const auto first = parseShared(kFirstSource);
  const Domains fd{Interval::closed(0, 3), Interval::closed(0, 4)};
  CHECK_FALSE(bruteCheck(*first, "f", 2, 2, 4, fd));
  CHECK(bruteCheck(*first, "f", 1, 2, 3, fd));

  const auto toys = loadShared("Toys.ml");
  const Domains sq{Interval::closed(0, 3), Interval::closed(0, 3)};
  CHECK(bruteCheck(*toys, "add", 1, 1, 2, sq));

  const auto toll = loadShared("Toll.ml");
  CHECK_FALSE(bruteCheck(*toll, "rate", 2, 3, 4, kRateDomains));
  CHECK_FALSE(bruteCheck(*toll, "rate", 1, 10, 11, kRateDomains));
  CHECK(bruteCheck(*toll, "rate", 1, 10, 20, kRateDomains));
  const Domains fee{Interval::closed(0, 23), Interval::closed(0, 23), Interval::closed(0, 23), Interval::closed(1, 8)};
  CHECK_FALSE(bruteCheck(*toll, "fee", 1, 20, 2, fee));

  CHECK_THROWS_AS(bruteCheck(*toll, "rate", 1, 10, 20, {Interval::closed(0, 23), Interval::unbounded()}), DomainError);
  CHECK_THROWS_AS(bruteCheck(*toll, "fee", 1, 20, 2, fee, 100), DomainError);
}

TEST_CASE("oracle answers the toll collapsing pairs on every backend") {
  const auto toll = loadShared("Toll.ml");
  const auto first = parseShared(kFirstSource);
  std::vector<Backend> backends{Backend::Auto, Backend::Brute, Backend::Symbolic};
  if (smtAvailable()) backends.push_back(Backend::Smt);
  for (Backend b : backends) {
    CAPTURE(toString(b));
    auto fee = makeOracle(toll, "fee", b);
    CHECK(fee->query(1, 20, 2).value == Verdict3::Bottom);
    CHECK(fee->query(1, 20, 12).value == Verdict3::Top);
    auto f = makeOracle(first, "f", b);
    CHECK(f->query(2, 2, 4).value == Verdict3::Bottom);
    auto rate = makeOracle(toll, "rate", b);
    CHECK(rate->query(1, 10, 11).value == Verdict3::Bottom);
    CHECK(rate->query(1, 10, 20).value == Verdict3::Top);
  }
}

TEST_CASE("equal values answer UNKNOWN without a backend call") {
  const auto toll = loadShared("Toll.ml");
  auto o = makeOracle(toll, "rate", Backend::Brute);
  const auto r = o->query(1, 5, 5);
  CHECK(r.value == Verdict3::Unknown);
  CHECK(o->backendCalls() == 0);
}

TEST_CASE("oracle is symmetric and cached") {
  const auto toll = loadShared("Toll.ml");
  auto o = makeOracle(toll, "rate", Backend::Brute);
  const auto a = o->query(1, 3, 12);
  const auto b = o->query(1, 12, 3);
  CHECK(a.value == b.value);
  CHECK(b.source == OracleSource::Cache);
  CHECK(o->backendCalls() == 1);
  CHECK(o->cacheHits() == 1);
  CHECK(o->query(1, 3, 12).value == a.value);
}

TEST_CASE("graph-backed brute force matches interpreter brute force") {
  const auto toll = loadShared("Toll.ml");
  auto c = std::make_shared<const sym::Characterization>(sym::symexecMethod(*toll, "rate"));
  auto graph = std::make_shared<const FunctionGraph>(enumerateGraph(*toll, "rate", kRateDomains));
  OracleConfig oc;
  oc.backend = Backend::Brute;
  Oracle plain(toll, c, oc), tabled(toll, c, oc, graph);
  for (int x = 0; x < 24; ++x)
    for (int y = x + 1; y < 24; ++y) CHECK(plain.query(1, x, y).value == tabled.query(1, x, y).value);
}

TEST_CASE("inexact characterizations never yield TOP and BOTTOM stays sound") {
  const auto div = loadShared("Div.ml");
  const Domains box{Interval::closed(0, 12), Interval::closed(1, 4)};
  sym::SymexecConfig cfg;
  cfg.unrollDepth = 2;
  cfg.domains = box;
  std::vector<Backend> backends{Backend::Symbolic};
  if (smtAvailable()) backends.push_back(Backend::Smt);
  for (Backend b : backends) {
    CAPTURE(toString(b));
    auto o = makeOracle(div, "posDiv", b, cfg);
    CHECK_FALSE(o->characterization().exact);
    for (std::size_t i = 1; i <= 2; ++i)
      for (int x = 0; x <= 4; ++x)
        for (int y = x + 1; y <= 4; ++y) {
          if (i == 2 && x == 0) continue;
          const auto r = o->query(i, x, y);
          CHECK(r.value != Verdict3::Top);
          if (r.value == Verdict3::Bottom) CHECK_FALSE(bruteCheck(*div, "posDiv", i, x, y, box));
        }
  }
}

TEST_CASE("solver launch failures surface as diagnostics") {
  const auto toll = loadShared("Toll.ml");
  auto c = std::make_shared<const sym::Characterization>(sym::symexecMethod(*toll, "rate"));
  OracleConfig oc;
  oc.backend = Backend::Smt;
  oc.solver.command = "/nonexistent/solver-binary";
  Oracle o(toll, c, oc);
  const auto r = o.query(1, 3, 12);
  CHECK(r.value == Verdict3::Unknown);
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("backend names round-trip") {
  for (Backend b : {Backend::Auto, Backend::Brute, Backend::Symbolic, Backend::Smt})
    CHECK(parseBackend(toString(b)) == b);
  CHECK_FALSE(parseBackend("z3"));
}
