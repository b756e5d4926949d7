#pragma once

// Small finite-domain solver for path conditions whose inputs are already
// concrete. Remaining symbols (loop havocs, unassigned inputs) are bounded by
// linear bound propagation and then enumerated.

#include "hypermon/interval.hpp"
#include "hypermon/term.hpp"

#include <map>

namespace hypermon::sym {

using BoundMap = std::map<int, Interval>;

/// Tightens `bounds` using the linear atoms (Lt/Le/Eq, single-variable Ne) of
/// `constraints`. Returns false when a constraint is refuted.
bool propagateBounds(const std::vector<TermPtr>& constraints, BoundMap& bounds, int rounds = 8);

enum class SolveStatus { Unsat, Sat, Unknown };

struct OutputSet {
  SolveStatus status = SolveStatus::Unknown;
  /// Distinct output values found, at most `limit`.
  std::vector<Integer> values;
  /// The output is HAVOC (null term) and some model exists.
  bool unconstrained = false;
  /// The search finished without running out of budget or bounds.
  bool exhaustive = false;
};

/// Models of `constraints` projected onto `output` (null for HAVOC). Stops as
/// soon as `limit` distinct values are found. `budget` caps enumeration leaves.
OutputSet enumerateOutputs(const std::vector<TermPtr>& constraints, const TermPtr& output, std::size_t limit = 2,
                           std::size_t budget = 100'000, const BoundMap& bounds = {});

/// Integer floor/ceiling of a / b for b != 0.
Integer floorDiv(const Integer& a, const Integer& b);
Integer ceilDiv(const Integer& a, const Integer& b);

}  // namespace hypermon::sym
