#pragma once

// Symbolic execution of mini-language methods into input/output
// characterizations: a list of (path condition, output) pairs over the input
// symbols and fresh havoc symbols introduced for loops.

#include "hypermon/ast.hpp"
#include "hypermon/term.hpp"

#include <cstdint>

namespace hypermon::sym {

struct SymexecConfig {
  /// Iterations explored per loop before the path is cut off. Loops with an
  /// invariant are summarized instead when `useInvariants` is set.
  int unrollDepth = 8;
  bool useInvariants = false;
  std::size_t maxPaths = 4096;
  /// Inputs sampled to decide whether summarized paths pin the output.
  int determinacySamples = 64;
  std::uint64_t seed = 1;
  /// Input domains to use instead of the method's declared ones (empty: derive).
  Domains domains;
};

struct PathFormula {
  TermPtr condition;
  TermPtr output;  // null: HAVOC, the output is unconstrained
  bool summarized = false;

  bool havoc() const { return !output; }
};

struct Characterization {
  std::string method;
  std::vector<Symbol> symbols;
  std::vector<int> inputSymbols;  // symbol id per parameter
  std::vector<PathFormula> paths;
  Domains domains;
  /// Every path agrees with the method on every input it covers.
  bool exact = true;
  bool cutoffHit = false;
  bool summarized = false;

  std::size_t arity() const { return inputSymbols.size(); }
  bool linear() const;
};

/// Copy of `method` with every call replaced by an inlined copy of the callee
/// body. Callee locals are relocated to fresh slots named `callee#k.local`.
lang::MethodDef inlineCalls(const lang::Program& program, const std::string& method);

/// Characterization of `method` over its input domain.
///
/// Loops are summarized by their invariant (havoc of the assigned variables,
/// then assume invariant and negated guard) when `useInvariants` is set and
/// the loop is annotated; otherwise they are unrolled `unrollDepth` times and
/// paths still inside the loop end with a HAVOC output. The result is exact
/// unless a cutoff was reached or a summarized path fails the sampled
/// determinacy check.
Characterization symexecMethod(const lang::Program& program, const std::string& method,
                               const SymexecConfig& config = {});

struct ValidationIssue {
  enum class Kind { Overlap, Gap, Disagreement, Undecided };
  Kind kind;
  std::vector<Integer> input;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::size_t samples = 0;
  /// Samples covered by a HAVOC path, where agreement is not checkable.
  std::size_t havocHits = 0;

  bool ok() const { return issues.empty(); }
  std::size_t count(ValidationIssue::Kind kind) const;
};

/// Checks disjointness, exhaustiveness and agreement with the interpreter on
/// `samples` random points of `box` (defaults to the characterization's
/// domains, which must then be finite). Inputs violating the requires clause
/// are skipped.
ValidationReport validateCharacterization(const Characterization& c, const lang::Program& program,
                                          std::size_t samples, std::uint64_t seed, const Domains& box = {});

/// One line per path: `[k] condition => output`.
std::string dumpText(const Characterization& c);
/// SMT-LIB declarations plus one define-fun per path condition and output.
std::string dumpSmt(const Characterization& c);

}  // namespace hypermon::sym
