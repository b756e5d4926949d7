#pragma once

// I/O-pair traces, observations and three-valued verdicts.
//
// A trace is a single execution of the monitored method: its input tuple and
// the returned value. Traces are read from CSV, one per line:
//
//     i1, i2, ..., in, out
//
// Fields are base-10 signed integers with optional surrounding blanks. Blank
// lines and lines starting with '#' are skipped (an extension for test
// corpora; plain trace files never contain them).

#include "hypermon/integer.hpp"
#include "hypermon/interval.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hypermon {

struct IoPair {
  std::vector<Integer> inputs;
  Integer output;

  std::size_t arity() const { return inputs.size(); }
  /// 1-based projection onto input position `i`.
  const Integer& proj(std::size_t i) const { return inputs.at(i - 1); }

  friend bool operator==(const IoPair&, const IoPair&) = default;
  friend bool operator<(const IoPair& a, const IoPair& b) {
    if (a.inputs != b.inputs) return a.inputs < b.inputs;
    return a.output < b.output;
  }
};

/// Canonical single-line rendering: fields joined by ", ".
std::string serialize(const IoPair& pair);
std::string formatTuple(const std::vector<Integer>& tuple);

/// Finite duplicate-free set of traces. Iteration follows insertion order.
class Observation {
 public:
  Observation() = default;

  /// Returns false (and leaves the set unchanged) when `pair` is already present.
  bool insert(const IoPair& pair);
  bool contains(const IoPair& pair) const { return index_.count(pair) != 0; }

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<IoPair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// Set equality, ignoring insertion order.
  friend bool operator==(const Observation& a, const Observation& b) {
    return a.index_ == b.index_;
  }

 private:
  std::vector<IoPair> pairs_;
  std::set<IoPair> index_;
};

enum class Verdict3 { Top, Bottom, Unknown };

std::string_view toString(Verdict3 v);
std::optional<Verdict3> parseVerdict(std::string_view text);

/// Parses `line` into a trace with `arity` inputs. `lineNumber` is used in errors.
IoPair parseCsvLine(std::string_view line, std::size_t arity, int lineNumber = 1);

struct TraceLine {
  int lineNumber = 0;
  IoPair pair;
};

struct TraceDiagnostic {
  int lineNumber = 0;
  std::string message;
};

/// Incremental reader over a line-oriented trace source (file or stdin).
///
/// In strict mode malformed lines throw FormatError; otherwise they are
/// recorded as diagnostics and skipped. When domains are supplied, inputs
/// outside them are reported the same way.
class TraceReader {
 public:
  TraceReader(std::istream& in, std::size_t arity, bool strict = true,
              Domains domains = {});

  std::optional<TraceLine> next();
  const std::vector<TraceDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::istream& in_;
  std::size_t arity_;
  bool strict_;
  Domains domains_;
  int lineNumber_ = 0;
  std::vector<TraceDiagnostic> diagnostics_;
};

/// Reads every trace of `in` (see TraceReader for the error policy).
std::vector<TraceLine> ingestStream(std::istream& in, std::size_t arity, bool strict = true);

void writeCsv(std::ostream& out, const std::vector<IoPair>& pairs);

}  // namespace hypermon
