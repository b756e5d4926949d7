#pragma once

#include "hypermon/ast.hpp"

#include <cstdint>
#include <span>

namespace hypermon::lang {

struct EvalOptions {
  /// Statement/iteration budget; exhausting it raises a Divergence error.
  std::uint64_t fuel = 10'000'000;
  /// Check `requires` clauses of the entry method and of every callee.
  bool checkPreconditions = true;
  /// Additionally check `ensures` clauses and loop invariants at run time.
  bool checkContracts = false;
};

/// Concrete big-step evaluation with unbounded integers. Division and
/// remainder truncate toward zero; a zero divisor is an EvalError.
Integer evalMethod(const Program& program, const MethodDef& method, std::span<const Integer> args,
                   const EvalOptions& options = {});
Integer evalMethod(const Program& program, const std::string& method, std::span<const Integer> args,
                   const EvalOptions& options = {});

/// True iff all `requires` clauses of `method` hold for `args`. Evaluation
/// errors inside a clause count as not satisfied.
bool satisfiesPreconditions(const Program& program, const MethodDef& method, std::span<const Integer> args);

/// Evaluates a boolean expression over a frame of slot values (used for
/// annotations, e.g. ensures clauses with `result` bound to `\result`).
bool evalPredicate(const Program& program, const Expr& expr, std::span<const Integer> frame,
                   const Integer* result = nullptr);

}  // namespace hypermon::lang
