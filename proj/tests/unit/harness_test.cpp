#include "hypermon/domain.hpp"
#include "hypermon/harness.hpp"
#include "hypermon/interpreter.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hypermon;
using namespace hypermon::testing;

namespace {

const Domains kRate{Interval::closed(0, 23), Interval::closed(1, 8)};

std::vector<Integer> range(long lo, long hi) {
  std::vector<Integer> out;
  for (long v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

std::vector<Integer> night() {
  auto out = range(0, 8);
  auto late = range(18, 23);
  out.insert(out.end(), late.begin(), late.end());
  return out;
}

FunctionGraph graphOf(const char* file, const std::string& method) {
  const auto p = loadShared(file);
  return enumerateGraph(*p, method, lang::inputDomain(p->method(method)));
}

}  // namespace

TEST_CASE("function graphs cover the domain box") {
  const auto toll = loadShared("Toll.ml");
  const auto g = enumerateGraph(*toll, "rate", kRate);
  CHECK(g.size() == 192);
  std::set<Integer> outs;
  for (const auto& e : g.entries()) {
    outs.insert(e.output);
    CHECK(e.output == lang::evalMethod(*toll, "rate", e.inputs));
  }
  CHECK(outs == std::set<Integer>{56, 70, 72, 90});
  CHECK(g.index(ints({0, 2})) == 1);
  CHECK(g.tuple(9) == ints({1, 2}));
  CHECK_FALSE(g.at(ints({24, 1})));

  const auto proj = parseShared("class G { int g(int x, int y) { return x; } }");
  const auto pg = enumerateGraph(*proj, "g", {Interval::closed(0, 1), Interval::closed(0, 1)});
  CHECK(pg.entries() == std::vector<IoPair>{io({0, 0}, 0), io({0, 1}, 0), io({1, 0}, 1), io({1, 1}, 1)});

  CHECK_THROWS_AS(enumerateGraph(*toll, "rate", {Interval::closed(0, 23), Interval::unbounded()}), DomainError);
  CHECK_THROWS_AS(enumerateGraph(*toll, "rate", kRate, 100), DomainError);
}

TEST_CASE("requires-rejected tuples have no entry") {
  const auto div = loadShared("Div.ml");
  const auto g = enumerateGraph(*div, "posDiv", {Interval::closed(0, 3), Interval::closed(0, 2)});
  CHECK(g.boxSize() == 12);
  CHECK(g.size() == 8);
  CHECK_FALSE(g.at(ints({2, 0})));
}

TEST_CASE("position kernels") {
  const auto toll = loadShared("Toll.ml");
  const auto g = enumerateGraph(*toll, "rate", kRate);
  CHECK(positionKernel(g, 1) == std::vector<std::vector<Integer>>{night(), range(9, 17)});
  CHECK(positionKernel(g, 2) == std::vector<std::vector<Integer>>{range(1, 2), range(3, 8)});

  const auto proj = parseShared("class G { int g(int x, int y) { return x; } }");
  const auto pg = enumerateGraph(*proj, "g", {Interval::closed(0, 3), Interval::closed(0, 3)});
  CHECK(positionKernel(pg, 2).size() == 1);
  CHECK(positionKernel(pg, 1).size() == 4);

  const auto fee = graphOf("Toll.ml", "fee");
  CHECK(positionKernel(fee, 1) == std::vector<std::vector<Integer>>{night(), range(9, 17)});
  const auto fee2 = graphOf("Toll2.ml", "fee");
  CHECK(positionKernel(fee2, 2) == std::vector<std::vector<Integer>>{night(), range(9, 17)});
  CHECK(positionKernel(fee2, 3) == std::vector<std::vector<Integer>>{range(1, 2), range(3, 8)});

  const auto parity = graphOf("Toys.ml", "parity");
  CHECK(positionKernel(parity, 1) == std::vector<std::vector<Integer>>{ints({0, 2, 4}), ints({1, 3, 5})});
  const auto vote = graphOf("Toys.ml", "vote");
  CHECK(positionKernel(vote, 1) == std::vector<std::vector<Integer>>{ints({0}), ints({1, 2})});
  CHECK(positionKernel(vote, 2) == std::vector<std::vector<Integer>>{ints({0, 1}), ints({2})});
}

TEST_CASE("DDM decision by brute force") {
  CHECK(isDdm(graphOf("Toys.ml", "max")));
  CHECK(isDdm(graphOf("Toys.ml", "add")));
  CHECK_FALSE(isDdm(graphOf("Toys.ml", "first")));
  CHECK_FALSE(isDdm(graphOf("Toys.ml", "parity")));
  CHECK_FALSE(isDdm(graphOf("Toll.ml", "fee")));
}

TEST_CASE("minimizers preserve behaviour and are idempotent") {
  for (auto [file, method] : std::vector<std::pair<const char*, const char*>>{
           {"Toys.ml", "first"}, {"Toys.ml", "add"}, {"Toys.ml", "max"}, {"Toys.ml", "parity"},
           {"Toys.ml", "vote"}, {"Toll.ml", "rate"}, {"Toll2.ml", "fee"}}) {
    CAPTURE(method);
    const auto g = graphOf(file, method);
    for (MinimizerKind kind : {MinimizerKind::Distributed, MinimizerKind::Monolithic}) {
      const Preprocessor p = buildMinimizer(g, kind);
      for (const auto& e : g.entries()) {
        const auto once = p.apply(e.inputs);
        CHECK(g.at(once) == e.output);
        CHECK(p.apply(once) == once);
      }
    }
  }
}

TEST_CASE("minimizer representatives are class minima") {
  const auto fee = graphOf("Toll.ml", "fee");
  const Preprocessor d = buildMinimizer(fee, MinimizerKind::Distributed);
  for (long h = 0; h < 24; ++h) CHECK(d.component(1, Integer(h)) == ((h >= 9 && h <= 17) ? 9 : 0));
  CHECK(d.component(4, Integer(5)) == 3);

  const auto add = graphOf("Toys.ml", "add");
  const Preprocessor m = buildMinimizer(add, MinimizerKind::Monolithic);
  CHECK(m.apply(ints({3, 1})) == ints({1, 3}));
  CHECK(m.apply(ints({2, 2})) == ints({1, 3}));
  CHECK(m.apply(ints({0, 2})) == ints({0, 2}));

  const auto id = enumerateGraph(*parseShared("class I { int id(int a) { return a; } }"), "id",
                                 {Interval::closed(0, 5)});
  const Preprocessor mi = buildMinimizer(id, MinimizerKind::Monolithic);
  for (long a = 0; a <= 5; ++a) CHECK(mi.apply(ints({a})) == ints({a}));
}

TEST_CASE("trace generation") {
  const auto fee = graphOf("Toll.ml", "fee");
  const auto k1 = genTraces(fee, TraceKind::K1, 100, 4);
  const auto k2 = genTraces(fee, TraceKind::K2, 100, 4);
  const auto k3 = genTraces(fee, TraceKind::K3, 100, 4);
  CHECK(k1.size() == 100);
  CHECK(k2.size() == 100);
  for (const auto& t : k2)
    for (std::size_t i = 0; i < 3; ++i) CHECK((t.inputs[i] == 0 || t.inputs[i] == 9));
  std::multiset<Integer> o1, o3;
  for (std::size_t k = 0; k < 100; ++k) {
    o1.insert(k1[k].output);
    o3.insert(k3[k].output);
    CHECK(fee.at(k1[k].inputs) == k1[k].output);
  }
  CHECK(o1 == o3);
  CHECK(genTraces(fee, TraceKind::K1, 100, 4) == k1);
  CHECK(genTraces(fee, TraceKind::K1, 100, 5) != k1);
}

TEST_CASE("monolithic-minimized traces never collide under lazy MDM") {
  const auto toll = loadShared("Toll.ml");
  const auto fee = graphOf("Toll.ml", "fee");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MonitorConfig cfg;
    cfg.property = Property::Mdm;
    cfg.strategy = Strategy::Lazy;
    Monitor m(toll, "fee", cfg);
    for (const auto& t : genTraces(fee, TraceKind::K3, 100, seed)) m.ingest(t);
    CHECK(m.verdict() == Verdict3::Unknown);
  }
}

TEST_CASE("non-DDM functions are caught once a collapsing pair is observed") {
  const auto toys = loadShared("Toys.ml");
  for (const char* method : {"first", "parity", "vote"}) {
    CAPTURE(method);
    const auto g = graphOf("Toys.ml", method);
    REQUIRE_FALSE(isDdm(g));
    auto c = std::make_shared<const sym::Characterization>(sym::symexecMethod(*toys, method));
    OracleConfig oc;
    oc.backend = Backend::Brute;
    auto oracle = std::make_shared<Oracle>(toys, c, oc);
    for (std::size_t i = 1; i <= g.arity(); ++i)
      for (const auto& cls : positionKernel(g, i)) {
        if (cls.size() < 2) continue;
        std::vector<Integer> a = g.tuple(0), b = a;
        a[i - 1] = cls[0];
        b[i - 1] = cls[1];
        Monitor m(toys, method, {}, oracle);
        m.ingest({a, *g.at(a)});
        m.ingest({b, *g.at(b)});
        CHECK(m.verdict() == Verdict3::Bottom);
      }
  }
}

TEST_CASE("benchmark table") {
  BenchmarkOptions opts;
  opts.instances = 3;
  opts.traces = 30;
  opts.oracle.backend = Backend::Brute;
  const auto table = runBenchmark({{"T2", loadShared("Toll2.ml"), "fee"}}, opts);
  CHECK(table.cells.size() == 6);
  const auto* cell = table.find("T2", TraceKind::K2, Strategy::Lazy);
  REQUIRE(cell);
  CHECK(cell->verdicts.size() == 3);
  CHECK(cell->majority() == Verdict3::Unknown);
  CHECK(table.csv().find("T2,K1") != std::string::npos);
  CHECK(table.text().find("T2") != std::string::npos);

  BenchmarkCell tie{"x", TraceKind::K1, Strategy::Eager, {Verdict3::Bottom, Verdict3::Unknown}, {1.0, 3.0}, {}};
  CHECK(tie.majority() == Verdict3::Bottom);
  CHECK(tie.mean() == doctest::Approx(2.0));
  CHECK(tie.count(Verdict3::Unknown) == 1);
}
