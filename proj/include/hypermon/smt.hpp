#pragma once

// SMT-LIB v2 exchange with an external solver process.

#include "hypermon/symexec.hpp"

#include <chrono>
#include <string>

namespace hypermon::smt {

enum class SatResult { Sat, Unsat, Unknown };

std::string_view toString(SatResult r);

struct SolverConfig {
  /// Shell command reading a script on standard input, e.g. `z3 -in`.
  std::string command = defaultCommand();
  std::chrono::milliseconds timeout{5000};

  /// HYPERMON_SOLVER if set, otherwise `z3 -in`.
  static std::string defaultCommand();
};

/// Runs one check-sat exchange. A timeout yields Unknown; a solver that
/// cannot be launched, exits abnormally or answers garbage raises SolverError.
SatResult check(const std::string& script, const SolverConfig& config = {});

/// True if the configured solver answers a trivial query.
bool available(const SolverConfig& config = {});

struct Query {
  std::string script;
  /// Some path has a HAVOC output, so a sat answer proves nothing.
  bool havocOutput = false;
};

/// Script asking whether two copies of `c` that share every input except
/// position `i` (1-based), fixed to `x` and `y`, can produce distinct
/// outputs. Havoc symbols are renamed apart per copy.
Query buildQuery(const sym::Characterization& c, std::size_t i, const Integer& x, const Integer& y);

}  // namespace hypermon::smt
