#pragma once

#include "hypermon/ast.hpp"

namespace hypermon::lang {

/// Per-parameter input ranges of `method`.
///
/// Declared `//@ domain` ranges are intersected with the interval
/// constraints of the `requires` clauses (conjunctions of comparisons between
/// one parameter and a constant). Positions without any bound come back
/// unbounded. A requires clause that does not decompose into such intervals
/// raises DomainError unless every parameter already has a declared range,
/// in which case it only acts as a filter on the box.
Domains inputDomain(const MethodDef& method);

/// Replaces the ranges of positions listed in `overrides` (name → range).
Domains withOverrides(const MethodDef& method, Domains domains,
                      const std::vector<std::pair<std::string, Interval>>& overrides);

}  // namespace hypermon::lang
