#pragma once

// Symbolic integer/boolean terms produced by symbolic execution.
//
// Terms are immutable and share subterms through shared_ptr. The smart
// constructors fold constants and normalise comparisons to Lt/Le/Eq/Ne.

#include "hypermon/integer.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hypermon::sym {

enum class Op { Int, Bool, Sym, Add, Sub, Mul, Div, Mod, Neg, Lt, Le, Eq, Ne, And, Or, Not };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Op op;
  Integer value;     // Op::Int
  bool truth = false;  // Op::Bool
  int symbol = -1;   // Op::Sym
  std::vector<TermPtr> args;

  bool isBool() const;
  bool isConst() const { return op == Op::Int || op == Op::Bool; }
};

struct Symbol {
  enum class Kind { Input, Havoc };
  std::string name;
  Kind kind;
  int position = -1;  // 0-based parameter index for inputs
};

// Smart constructors.
TermPtr intConst(const Integer& v);
TermPtr boolConst(bool b);
TermPtr symbol(int id);
TermPtr add(TermPtr a, TermPtr b);
TermPtr sub(TermPtr a, TermPtr b);
TermPtr mul(TermPtr a, TermPtr b);
TermPtr div(TermPtr a, TermPtr b);  // truncating
TermPtr mod(TermPtr a, TermPtr b);  // remainder of truncating division
TermPtr neg(TermPtr a);
TermPtr lt(TermPtr a, TermPtr b);
TermPtr le(TermPtr a, TermPtr b);
TermPtr gt(TermPtr a, TermPtr b);
TermPtr ge(TermPtr a, TermPtr b);
TermPtr eq(TermPtr a, TermPtr b);
TermPtr ne(TermPtr a, TermPtr b);
TermPtr conj(TermPtr a, TermPtr b);
TermPtr disj(TermPtr a, TermPtr b);
TermPtr negate(TermPtr a);
TermPtr conjAll(const std::vector<TermPtr>& terms);

bool isTrue(const TermPtr& t);
bool isFalse(const TermPtr& t);

/// Partial assignment of symbol values, indexed by symbol id.
using Assignment = std::vector<std::optional<Integer>>;

/// Replaces assigned symbols by constants and re-folds.
TermPtr substitute(const TermPtr& t, const Assignment& values);

class UndefinedValue : public std::exception {
 public:
  const char* what() const noexcept override { return "division by zero in symbolic term"; }
};

/// Evaluates a ground term (all symbols assigned); booleans come back as 0/1.
/// Throws UndefinedValue on a zero divisor; And/Or short-circuit.
Integer evaluate(const TermPtr& t, const Assignment& values);

/// Symbols occurring in `t`, appended to `out` (deduplicated, sorted).
void collectSymbols(const TermPtr& t, std::vector<int>& out);

/// Splits nested conjunctions into their conjuncts.
void flattenConjunction(const TermPtr& t, std::vector<TermPtr>& out);

/// Σ coeff[s]·s + constant.
struct LinearForm {
  std::map<int, Integer> coeffs;
  Integer constant;
};

/// Linear form of an integer term, if it is linear (no symbol products, no
/// division/remainder by a non-constant or of a non-constant).
std::optional<LinearForm> linearize(const TermPtr& t);

/// True if any multiplication/division/remainder involves two non-constants.
bool isNonlinear(const TermPtr& t);

/// Human-readable infix rendering.
std::string toString(const TermPtr& t, const std::vector<Symbol>& symbols);

/// SMT-LIB v2 rendering. `name` maps a symbol id to its SMT identifier.
/// Truncating division/remainder are expanded over the Euclidean div.
std::string toSmt(const TermPtr& t, const std::function<std::string(int)>& name);

}  // namespace hypermon::sym
