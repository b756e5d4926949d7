#include "hypermon/hypertheory.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace hypermon;
using namespace hypermon::hyper;

namespace {

const std::vector<std::string> kA{"a"};

// Random formula kept both as source text and as an independent evaluator.
struct RandomFormula {
  std::string text;
  std::function<bool(Letter, Letter)> eval;
};

RandomFormula randomFormula(std::mt19937_64& rng, std::size_t atoms, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  const int kind = pick(rng);
  if (kind == 0) {
    const int a = std::uniform_int_distribution<int>(0, static_cast<int>(atoms) - 1)(rng);
    const int t = std::uniform_int_distribution<int>(1, 2)(rng);
    return {"p" + std::to_string(a) + "@" + std::to_string(t),
            [a, t](Letter v, Letter w) { return (((t == 1 ? v : w) >> a) & 1U) != 0; }};
  }
  if (kind == 1) {
    const bool b = std::uniform_int_distribution<int>(0, 5)(rng) == 0;
    if (b) return {"true", [](Letter, Letter) { return true; }};
    return randomFormula(rng, atoms, 0);
  }
  if (kind == 2) {
    auto f = randomFormula(rng, atoms, depth - 1);
    return {"!(" + f.text + ")", [g = f.eval](Letter v, Letter w) { return !g(v, w); }};
  }
  auto l = randomFormula(rng, atoms, depth - 1);
  auto r = randomFormula(rng, atoms, depth - 1);
  static const char* ops[] = {"&&", "||", "->", "<->", "&", "|"};
  const std::string o = ops[std::uniform_int_distribution<int>(0, 5)(rng)];
  auto le = l.eval, re = r.eval;
  std::function<bool(Letter, Letter)> e;
  if (o == "&&" || o == "&")
    e = [le, re](Letter v, Letter w) { return le(v, w) && re(v, w); };
  else if (o == "||" || o == "|")
    e = [le, re](Letter v, Letter w) { return le(v, w) || re(v, w); };
  else if (o == "->")
    e = [le, re](Letter v, Letter w) { return !le(v, w) || re(v, w); };
  else
    e = [le, re](Letter v, Letter w) { return le(v, w) == re(v, w); };
  return {"(" + l.text + ") " + o + " (" + r.text + ")", e};
}

}  // namespace

TEST_CASE("predicate parsing and evaluation") {
  const auto neg = StatePredicate::parse("a@1 <-> !a@2", kA);
  CHECK(neg.eval(1, 0));
  CHECK_FALSE(neg.eval(1, 1));
  const auto agree = StatePredicate::parse("a@1 <-> a@2", kA);
  CHECK(agree.eval(0, 0));
  CHECK_THROWS_AS(StatePredicate::parse("b@1", kA), ParseError);
  CHECK_THROWS_AS(StatePredicate::parse("a@3", kA), ParseError);
  CHECK_THROWS_AS(StatePredicate::parse("a", kA), ParseError);
  CHECK_THROWS_AS(StatePredicate::parse("(a@1", kA), ParseError);
  CHECK_THROWS_AS(StatePredicate::parse("a@1 a@2", kA), ParseError);
  CHECK_THROWS_AS(StatePredicate::parse("true", {}), ConfigError);
  CHECK_THROWS_AS(StatePredicate::parse("true", {"a", "a"}), ConfigError);

  const auto p = StatePredicate::parse("a@1 -> b@2 -> false", {"a", "b"});
  CHECK(p.eval(0b00, 0b11));
  CHECK_FALSE(p.eval(0b01, 0b10));
  CHECK(p.eval(0b01, 0b00));
  CHECK(p.str() == "(a@1 -> (b@2 -> false))");
  CHECK(formatLetter(0b11, {"a", "b"}) == "{a, b}");
  CHECK(formatLetter(0, {"a", "b"}) == "{}");
}

TEST_CASE("reflexivity and seriality of the two single-atom predicates") {
  const auto neg = StatePredicate::parse("a@1 <-> !a@2", kA);
  CHECK_FALSE(isReflexive(neg));
  CHECK(isSerial(neg));
  const auto agree = StatePredicate::parse("a@1 <-> a@2", kA);
  CHECK(isReflexive(agree));
  CHECK(isSerial(agree));
  const auto never = StatePredicate::parse("false", kA);
  CHECK_FALSE(isReflexive(never));
  CHECK_FALSE(isSerial(never));
}

TEST_CASE("classification with evidence") {
  const auto neg = classify(StatePredicate::parse("a@1 <-> !a@2", kA));
  CHECK(neg.classification == Monitorability::NonMonitorable);
  CHECK(neg.evidence == Evidence::None);

  const auto agree = classify(StatePredicate::parse("a@1 <-> a@2", kA));
  CHECK(agree.classification == Monitorability::Monitorable);
  CHECK(agree.evidence == Evidence::Reflexive);

  const auto never = classify(StatePredicate::parse("false", kA));
  CHECK(never.classification == Monitorability::Monitorable);
  CHECK(never.evidence == Evidence::NonSerial);
  REQUIRE(never.falsifying);
  CHECK(*never.falsifying == 0);
}

TEST_CASE("violating extension appends the falsifying letter") {
  const auto never = StatePredicate::parse("false", kA);
  CHECK(violatingExtension(never, {FiniteTrace{}}) == std::vector<FiniteTrace>{{0}});
  CHECK(violatingExtension(never, {}) == std::vector<FiniteTrace>{{0}});
  CHECK(violatingExtension(never, {FiniteTrace{1}}) == std::vector<FiniteTrace>{{1, 0}});
  CHECK_THROWS_AS(violatingExtension(StatePredicate::parse("a@1 <-> !a@2", kA), {}), ContractError);
}

TEST_CASE("atom bound is enforced") {
  std::vector<std::string> many;
  for (int k = 0; k < 21; ++k) many.push_back("x" + std::to_string(k));
  const auto f = StatePredicate::parse("x0@1", many);
  CHECK_THROWS_WITH_AS(isReflexive(f), doctest::Contains("20"), ConfigError);
  CHECK_THROWS_AS(classify(f), ConfigError);
}

TEST_CASE("classification agrees with definitional enumeration on random predicates") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<std::string> atoms;
    for (std::size_t k = 0; k < n; ++k) atoms.push_back("p" + std::to_string(k));
    const auto rf = randomFormula(rng, n, 4);
    const auto f = StatePredicate::parse(rf.text, atoms);
    const Letter letters = Letter{1} << n;
    bool reflexive = true, serial = true;
    for (Letter v = 0; v < letters; ++v) {
      reflexive &= rf.eval(v, v);
      bool any = false;
      for (Letter w = 0; w < letters; ++w) {
        CHECK(f.eval(v, w) == rf.eval(v, w));
        any |= rf.eval(v, w);
      }
      serial &= any;
    }
    const auto verdict = classify(f);
    CAPTURE(rf.text);
    CHECK(verdict.reflexive == reflexive);
    CHECK(verdict.serial == serial);
    CHECK((verdict.classification == Monitorability::NonMonitorable) == (!reflexive && serial));
    if (verdict.evidence == Evidence::NonSerial) {
      REQUIRE(verdict.falsifying);
      for (Letter w = 0; w < letters; ++w) CHECK_FALSE(rf.eval(*verdict.falsifying, w));
      const auto ext = violatingExtension(f, {FiniteTrace{0, 1}});
      CHECK(ext.front().back() == *verdict.falsifying);
    }
    if (reflexive) {
      // Pairing every trace with itself satisfies F at every step.
      for (int t = 0; t < 5; ++t) {
        FiniteTrace trace;
        for (int k = 0; k < 6; ++k) trace.push_back(std::uniform_int_distribution<Letter>(0, letters - 1)(rng));
        for (Letter v : trace) CHECK(f.eval(v, v));
      }
    }
  }
}
