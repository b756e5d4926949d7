#include "hypermon/domain.hpp"
#include "hypermon/harness.hpp"
#include "hypermon/monitor.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

using namespace hypermon;
using namespace hypermon::testing;

namespace {

struct Run {
  Verdict3 final = Verdict3::Unknown;
  int firstBottom = 0;  // 1-based line, 0 if never
  std::vector<Verdict3> perLine;
  std::optional<Witness> witness;
};

std::shared_ptr<Oracle> bruteOracle(const std::shared_ptr<const lang::Program>& p, const std::string& method) {
  auto c = std::make_shared<const sym::Characterization>(sym::symexecMethod(*p, method));
  OracleConfig oc;
  oc.backend = Backend::Brute;
  return std::make_shared<Oracle>(p, c, oc);
}

Run monitorPairs(const std::shared_ptr<const lang::Program>& p, const std::string& method, Property property,
                 Strategy strategy, const std::vector<IoPair>& pairs, std::shared_ptr<Oracle> oracle = nullptr) {
  MonitorConfig cfg;
  cfg.property = property;
  cfg.strategy = strategy;
  if (property == Property::Ddm && !oracle) oracle = bruteOracle(p, method);
  Monitor m(p, method, cfg, oracle);
  Run run;
  int line = 0;
  for (const auto& u : pairs) {
    const auto r = m.ingest(u, ++line);
    run.perLine.push_back(r.verdict);
    if (r.verdict == Verdict3::Bottom && !run.firstBottom) {
      run.firstBottom = line;
      run.witness = r.witness;
    }
  }
  run.final = m.verdict();
  return run;
}

std::vector<IoPair> readTraces(const std::string& file, std::size_t arity) {
  std::ifstream in(tracePath(file));
  REQUIRE(in);
  std::vector<IoPair> out;
  for (auto& l : ingestStream(in, arity)) out.push_back(l.pair);
  return out;
}

// Direct transcription of the DDM formula over a finite trace set.
bool referencePhiDm(const std::vector<IoPair>& u, std::size_t n) {
  for (const auto& a : u)
    for (const auto& b : u)
      for (std::size_t i = 0; i < n; ++i) {
        if (a.inputs[i] == b.inputs[i]) continue;
        bool found = false;
        for (const auto& v : u)
          for (const auto& w : u) {
            if (found) break;
            if (v.inputs[i] != a.inputs[i] || w.inputs[i] != b.inputs[i]) continue;
            bool rest = true;
            for (std::size_t k = 0; k < n; ++k)
              if (k != i && v.inputs[k] != w.inputs[k]) rest = false;
            if (rest && v.output != w.output) found = true;
          }
        if (!found) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("consistency against the program") {
  const auto toll = loadShared("Toll.ml");
  CHECK(checkConsistency(*toll, "fee", io({20, 22, 1, 1}, 770)));
  std::string why;
  CHECK_FALSE(checkConsistency(*toll, "fee", io({20, 22, 1, 1}, 771), &why));
  CHECK_FALSE(why.empty());
  const auto toys = loadShared("Toys.ml");
  CHECK_FALSE(checkConsistency(*toys, "add", io({1, 1}, 3)));
}

TEST_CASE("raw toll traces violate DDM on the second line") {
  const auto toll = loadShared("Toll.ml");
  const auto run = monitorPairs(toll, "fee", Property::Ddm, Strategy::Eager, readTraces("toll_raw.csv", 4));
  CHECK(run.firstBottom == 2);
  REQUIRE(run.witness);
  CHECK(run.witness->position == 1);
  CHECK(run.witness->x == ints({20}));
  CHECK(run.witness->y == ints({2}));
  CHECK(run.witness->str() == "i=1, x=20, y=2");
  CHECK(run.final == Verdict3::Bottom);
}

TEST_CASE("distributed-minimized toll traces are accepted under DDM") {
  const auto toll = loadShared("Toll.ml");
  for (Strategy s : {Strategy::Eager, Strategy::Lazy}) {
    const auto run = monitorPairs(toll, "fee", Property::Ddm, s, readTraces("toll_distributed.csv", 4));
    CHECK(run.firstBottom == 0);
    CHECK(run.final == Verdict3::Unknown);
  }
  const auto mdm = monitorPairs(toll, "fee", Property::Mdm, Strategy::Lazy, readTraces("toll_distributed.csv", 4));
  CHECK(mdm.firstBottom == 6);
}

TEST_CASE("monolithic-minimized toll traces are accepted under lazy MDM") {
  const auto toll = loadShared("Toll.ml");
  const auto run = monitorPairs(toll, "fee", Property::Mdm, Strategy::Lazy, readTraces("toll_monolithic.csv", 4));
  CHECK(run.firstBottom == 0);
  CHECK(run.final == Verdict3::Unknown);
}

TEST_CASE("projection function: strategy and property matrix") {
  const auto f = parseShared(kFirstSource);
  const std::vector<IoPair> traces{io({1, 2}, 1), io({3, 4}, 3)};
  CHECK(monitorPairs(f, "f", Property::Ddm, Strategy::Eager, traces).final == Verdict3::Bottom);
  CHECK(monitorPairs(f, "f", Property::Ddm, Strategy::Lazy, traces).final == Verdict3::Unknown);
  CHECK(monitorPairs(f, "f", Property::Mdm, Strategy::Eager, traces).final == Verdict3::Bottom);
  CHECK(monitorPairs(f, "f", Property::Mdm, Strategy::Lazy, traces).final == Verdict3::Unknown);
  CHECK(monitorPairs(f, "f", Property::Ddm, Strategy::Eager, {io({1, 2}, 1)}).final == Verdict3::Unknown);
}

TEST_CASE("inconsistent traces keep UNKNOWN or abort in strict mode") {
  const auto toys = loadShared("Toys.ml");
  auto oracle = bruteOracle(toys, "first");
  MonitorConfig cfg;
  Monitor lenient(toys, "first", cfg, oracle);
  auto r = lenient.ingest(io({1, 1}, 3), 1);
  CHECK(r.inconsistent);
  CHECK(lenient.verdict() == Verdict3::Unknown);
  lenient.ingest(io({1, 2}, 1), 2);
  lenient.ingest(io({1, 3}, 1), 3);
  CHECK(lenient.verdict() == Verdict3::Unknown);
  CHECK(lenient.inconsistentCount() == 1);

  cfg.strict = true;
  Monitor strict(toys, "first", cfg, oracle);
  CHECK_THROWS_AS(strict.ingest(io({1, 1}, 3), 1), InconsistentTrace);
}

TEST_CASE("duplicates are reported and ignored") {
  const auto toys = loadShared("Toys.ml");
  Monitor m(toys, "add", {}, bruteOracle(toys, "add"));
  CHECK_FALSE(m.ingest(io({1, 2}, 3), 1).duplicate);
  CHECK(m.ingest(io({1, 2}, 3), 2).duplicate);
  CHECK(m.observation().size() == 1);
}

TEST_CASE("DDM requires an oracle") {
  const auto toys = loadShared("Toys.ml");
  CHECK_THROWS(Monitor(toys, "add", {}, nullptr));
}

TEST_CASE("phi_dm examples") {
  CHECK(evalPhiDm(std::vector<IoPair>{io({1, 1}, 3)}, 2));
  CHECK_FALSE(evalPhiDm(std::vector<IoPair>{io({1, 2}, 3), io({2, 1}, 3)}, 2));
  CHECK(evalPhiDm(std::vector<IoPair>{}, 2));
}

TEST_CASE("phi_dm agrees with a direct transcription on all subsets of small universes") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> val(0, 2), out(0, 1);
  std::vector<std::vector<IoPair>> universes{{io({1, 2}, 3), io({2, 1}, 3), io({1, 1}, 2), io({2, 2}, 4)},
                                             {io({0, 0}, 0), io({0, 1}, 1), io({1, 0}, 1), io({1, 1}, 1)}};
  while (universes.size() < 60) {
    std::vector<IoPair> u;
    while (u.size() < 4) {
      IoPair t{ints({val(rng), val(rng)}), Integer(out(rng))};
      if (std::none_of(u.begin(), u.end(), [&](const IoPair& o) { return o.inputs == t.inputs; })) u.push_back(t);
    }
    universes.push_back(u);
  }
  for (const auto& u : universes)
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<IoPair> subset;
      for (unsigned k = 0; k < 4; ++k)
        if (mask >> k & 1U) subset.push_back(u[k]);
      CHECK(evalPhiDm(subset, 2) == referencePhiDm(subset, 2));
    }
}

TEST_CASE("perfect monitor on finite systems") {
  const auto toys = loadShared("Toys.ml");
  const Domains sq{Interval::closed(0, 3), Interval::closed(0, 3)};
  const auto add = enumerateGraph(*toys, "add", sq);
  Observation collapsed;
  collapsed.insert(io({1, 2}, 3));
  collapsed.insert(io({2, 1}, 3));
  // Brute force over all 2^14 extensions: {1,2}^2 repairs the observation.
  CHECK(perfectMonitorFinite(collapsed, add) == Verdict3::Unknown);

  const auto first = enumerateGraph(*toys, "first", sq);
  Observation ignored;
  ignored.insert(io({1, 2}, 1));
  ignored.insert(io({1, 3}, 1));
  CHECK(perfectMonitorFinite(ignored, first) == Verdict3::Bottom);

  const auto max = enumerateGraph(*toys, "max", sq);
  CHECK(perfectMonitorFinite(Observation{}, max) == Verdict3::Unknown);

  const auto unary = parseShared("class U {\n //@ domain a in [0, 2];\n int id(int a) { return a; }\n}");
  const auto id = enumerateGraph(*unary, "id", {Interval::closed(0, 2)});
  CHECK(id.size() == 3);
  CHECK(perfectMonitorFinite(Observation{}, id) == Verdict3::Top);

  Observation bad;
  bad.insert(io({1, 1}, 3));
  CHECK_THROWS_AS(perfectMonitorFinite(bad, add), ContractError);
}

TEST_CASE("verdicts never go TOP, BOTTOM is permanent, lazy implies eager") {
  const auto toys = loadShared("Toys.ml");
  std::mt19937_64 rng(99);
  for (const char* method : {"first", "add", "max", "parity", "vote"}) {
    const auto domains = lang::inputDomain(toys->method(method));
    const auto graph = enumerateGraph(*toys, method, domains);
    auto oracle = bruteOracle(toys, method);
    for (int round = 0; round < 20; ++round) {
      std::vector<IoPair> traces;
      const auto all = graph.entries();
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int k = 0; k < 6; ++k) traces.push_back(all[pick(rng)]);
      for (Property prop : {Property::Ddm, Property::Mdm}) {
        const auto eager = monitorPairs(toys, method, prop, Strategy::Eager, traces, oracle);
        const auto lazy = monitorPairs(toys, method, prop, Strategy::Lazy, traces, oracle);
        for (const auto& run : {eager, lazy}) {
          bool seenBottom = false;
          for (Verdict3 v : run.perLine) {
            CHECK(v != Verdict3::Top);
            if (seenBottom) CHECK(v == Verdict3::Bottom);
            seenBottom |= v == Verdict3::Bottom;
          }
        }
        if (lazy.final == Verdict3::Bottom) CHECK(eager.final == Verdict3::Bottom);
      }
    }
  }
}

TEST_CASE("names round-trip") {
  CHECK(parseProperty("ddm") == Property::Ddm);
  CHECK(parseProperty("mdm") == Property::Mdm);
  CHECK(parseStrategy("eager") == Strategy::Eager);
  CHECK(parseStrategy("lazy") == Strategy::Lazy);
  CHECK_FALSE(parseProperty("DDMX"));
}
