#include "hypermon/domain.hpp"
#include "hypermon/interpreter.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace hypermon;
using namespace hypermon::testing;
using lang::evalMethod;

namespace {

Integer run(const lang::Program& p, const std::string& method, std::initializer_list<long> args) {
  return evalMethod(p, method, ints(args));
}

}  // namespace

TEST_CASE("toll program parses with its three methods") {
  const auto p = loadShared("Toll.ml");
  CHECK(p->className == "Toll");
  REQUIRE(p->methods.size() == 3);
  CHECK(p->find("rate"));
  CHECK(p->find("max"));
  REQUIRE(p->find("fee"));
  CHECK(p->method("fee").arity() == 4);
}

TEST_CASE("posDiv carries its requires clause and loop invariant") {
  const auto p = loadShared("Div.ml");
  const auto& m = p->method("posDiv");
  CHECK(m.preconditions.size() == 1);
  CHECK(m.postconditions.size() == 1);
}

TEST_CASE("malformed and ill-formed programs are rejected") {
  CHECK_THROWS_AS(lang::parseProgram("int f( { "), ParseError);
  CHECK_THROWS_AS(lang::parseProgram("class C { int f(int x) { return g(x); } }"), ParseError);
  CHECK_THROWS_AS(lang::parseProgram("class C { int f(int x) { return y; } }"), ParseError);
  CHECK_THROWS_AS(lang::parseProgram("class C { int f(int x) { if (x > 0) { return 1; } } }"), ParseError);
  CHECK_THROWS_AS(lang::parseProgram("class C {\n int f(int x) { return g(x); }\n int g(int x) { return f(x); }\n}"),
                  ParseError);
  CHECK_THROWS_AS(lang::parseProgram("class C { int f(int x) { return f(x); } }"), ParseError);
}

TEST_CASE("evaluation of the toll examples") {
  const auto p = loadShared("Toll.ml");
  CHECK(run(*p, "rate", {10, 1}) == 90);
  CHECK(run(*p, "fee", {20, 22, 1, 1}) == 770);
  CHECK(run(*p, "fee", {2, 2, 3, 5}) == 616);
  CHECK(run(*p, "fee", {9, 10, 10, 4}) == 792);
  CHECK(run(*p, "fee", {10, 11, 14, 1}) == 990);
}

TEST_CASE("rate ranges over exactly four outputs") {
  const auto p = loadShared("Toll.ml");
  std::set<Integer> outputs;
  for (long h = 0; h <= 23; ++h)
    for (long q = 1; q <= 8; ++q) outputs.insert(run(*p, "rate", {h, q}));
  CHECK(outputs == std::set<Integer>{56, 70, 72, 90});
}

TEST_CASE("posDiv divides and satisfies its postcondition") {
  const auto p = loadShared("Div.ml");
  CHECK(run(*p, "posDiv", {7, 2}) == 3);
  lang::EvalOptions checked;
  checked.checkContracts = true;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> xs(0, 500), ys(1, 40);
  for (int k = 0; k < 300; ++k) {
    const auto args = ints({xs(rng), ys(rng)});
    const Integer q = evalMethod(*p, "posDiv", args, checked);
    CHECK(q * args[1] <= args[0]);
    CHECK(q * args[1] < args[0] + args[1]);
  }
  CHECK_THROWS_AS(run(*p, "posDiv", {7, 0}), EvalError);
}

TEST_CASE("arithmetic truncates, is unbounded, and traps on zero divisors") {
  const auto p = parseShared(R"(class A {
    int quot(int a, int b) { return a / b; }
    int rem(int a, int b) { return a % b; }
    int sq(int a) { return a * a; }
    int spin(int a) { while (true) { a = a + 1; } return a; }
  })");
  CHECK(run(*p, "quot", {-7, 2}) == -3);
  CHECK(run(*p, "quot", {7, -2}) == -3);
  CHECK(run(*p, "rem", {-7, 2}) == -1);
  CHECK(run(*p, "rem", {7, -2}) == 1);
  CHECK(run(*p, "sq", {3'000'000'000L}) == Integer("9000000000000000000"));
  try {
    run(*p, "quot", {1, 0});
    FAIL("expected an error");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::DivisionByZero);
  }
  lang::EvalOptions small;
  small.fuel = 1000;
  try {
    evalMethod(*p, "spin", ints({0}), small);
    FAIL("expected divergence");
  } catch (const EvalError& e) {
    CHECK(e.kind() == EvalError::Kind::Divergence);
  }
}

TEST_CASE("evaluation is deterministic") {
  const auto p = loadShared("Toll.ml");
  for (long h = 0; h < 24; h += 5) CHECK(run(*p, "fee", {h, 3, 20, 2}) == run(*p, "fee", {h, 3, 20, 2}));
}

TEST_CASE("input domains come from annotations and requires clauses") {
  const auto div = loadShared("Div.ml");
  const Domains d = lang::inputDomain(div->method("posDiv"));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == Interval{Integer(0), std::nullopt});
  CHECK(d[1] == Interval{Integer(1), std::nullopt});

  const auto toll = loadShared("Toll.ml");
  const Domains f = lang::inputDomain(toll->method("fee"));
  CHECK(f == Domains{Interval::closed(0, 23), Interval::closed(0, 23), Interval::closed(0, 23), Interval::closed(1, 8)});

  const auto bare = parseShared("class B { int id(int a) { return a; } }");
  const Domains u = lang::inputDomain(bare->method("id"));
  REQUIRE(u.size() == 1);
  CHECK_FALSE(u[0].lo);
  CHECK_FALSE(u[0].hi);

  const Domains o = lang::withOverrides(toll->method("fee"), f, {{"p", Interval::closed(1, 2)}});
  CHECK(o[3] == Interval::closed(1, 2));
  CHECK_THROWS_AS(lang::withOverrides(toll->method("fee"), f, {{"q", Interval::closed(1, 2)}}), DomainError);
}

TEST_CASE("precondition check") {
  const auto p = loadShared("Div.ml");
  const auto& m = p->method("posDiv");
  CHECK(lang::satisfiesPreconditions(*p, m, ints({4, 2})));
  CHECK_FALSE(lang::satisfiesPreconditions(*p, m, ints({-1, 2})));
  CHECK_FALSE(lang::satisfiesPreconditions(*p, m, ints({4, 0})));
}
