#pragma once

// Finite-domain ground truth: complete function tables, per-position
// kernels, minimizers, trace generation and the verdict-table runner.

#include "hypermon/ast.hpp"
#include "hypermon/monitor.hpp"
#include "hypermon/trace.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace hypermon {

/// The graph of a method over a finite domain box. Tuples are indexed in
/// mixed radix with the last position varying fastest; tuples rejected by
/// the requires clause have no entry.
class FunctionGraph {
 public:
  FunctionGraph(std::string method, Domains domains);

  const std::string& method() const { return method_; }
  const Domains& domains() const { return domains_; }
  std::size_t arity() const { return domains_.size(); }
  /// Number of tuples in the box, including rejected ones.
  std::size_t boxSize() const { return outputs_.size(); }
  /// Number of entries (tuples accepted by the requires clause).
  std::size_t size() const { return defined_; }

  std::size_t index(const std::vector<Integer>& tuple) const;
  std::vector<Integer> tuple(std::size_t index) const;
  bool inBox(const std::vector<Integer>& tuple) const;

  const std::optional<Integer>& at(std::size_t index) const { return outputs_[index]; }
  /// Output for `tuple`, or nothing outside the box or the requires clause.
  std::optional<Integer> at(const std::vector<Integer>& tuple) const;
  void set(std::size_t index, Integer output);

  std::vector<IoPair> entries() const;

 private:
  std::string method_;
  Domains domains_;
  std::vector<std::size_t> sizes_;
  std::vector<std::optional<Integer>> outputs_;
  std::size_t defined_ = 0;
};

/// Evaluates `method` on every tuple of `domains` (finite; product within
/// `bound`, else DomainError).
FunctionGraph enumerateGraph(const lang::Program& program, const std::string& method, const Domains& domains,
                             std::uint64_t bound = 10'000'000);

/// Classes of position `i` (1-based) values that no completion of the other
/// inputs tells apart. Each class is sorted; classes are ordered by minimum.
std::vector<std::vector<Integer>> positionKernel(const FunctionGraph& graph, std::size_t i);

/// True iff every position kernel consists of singletons.
bool isDdm(const FunctionGraph& graph);

enum class MinimizerKind { Monolithic, Distributed };

/// Maps each input to the minimum representative of its class: per position
/// for Distributed, per output (lexicographic) for Monolithic.
class Preprocessor {
 public:
  Preprocessor(const FunctionGraph& graph, MinimizerKind kind);

  MinimizerKind kind() const { return kind_; }
  std::vector<Integer> apply(const std::vector<Integer>& tuple) const;
  /// Representative of `value` at position `i` (Distributed only).
  const Integer& component(std::size_t i, const Integer& value) const;

 private:
  const FunctionGraph* graph_;
  MinimizerKind kind_;
  std::vector<std::map<Integer, Integer>> positions_;
  std::map<Integer, std::size_t> byOutput_;  // output -> representative index
};

Preprocessor buildMinimizer(const FunctionGraph& graph, MinimizerKind kind);

enum class TraceKind { K1, K2, K3 };
std::string_view toString(TraceKind k);
std::optional<TraceKind> parseTraceKind(std::string_view text);

/// `count` traces: K1 uniform over the graph's entries, K2/K3 the same K1
/// inputs mapped through the distributed/monolithic minimizer. Deterministic
/// in (seed, method).
std::vector<IoPair> genTraces(const FunctionGraph& graph, TraceKind kind, std::size_t count, std::uint64_t seed);

struct BenchmarkProgram {
  std::string label;
  std::shared_ptr<const lang::Program> program;
  std::string method;
};

struct BenchmarkCell {
  std::string label;
  TraceKind kind;
  Strategy strategy;
  std::vector<Verdict3> verdicts;  // one per instance
  std::vector<double> seconds;
  std::vector<std::optional<Witness>> witnesses;

  std::size_t count(Verdict3 v) const;
  /// Most frequent verdict (BOTTOM on ties).
  Verdict3 majority() const;
  double mean() const;
  double stddev() const;
};

struct BenchmarkOptions {
  std::vector<TraceKind> kinds{TraceKind::K1, TraceKind::K2, TraceKind::K3};
  std::vector<Strategy> strategies{Strategy::Eager, Strategy::Lazy};
  std::size_t instances = 10;
  std::size_t traces = 100;
  std::uint64_t seed = 1;
  OracleConfig oracle;
};

struct BenchmarkTable {
  std::vector<BenchmarkCell> cells;

  const BenchmarkCell* find(const std::string& label, TraceKind kind, Strategy strategy) const;
  /// One row per (program, kind); columns strategy x {verdict, mean s, stddev}.
  std::string text() const;
  /// Timing columns are omitted when `timings` is false (for golden diffs).
  std::string csv(bool timings = true) const;
};

/// Trace-generation seed of benchmark instance `instance`.
std::uint64_t instanceSeed(std::uint64_t seed, std::size_t instance);

/// DDM monitoring of generated traces; a fresh oracle per instance.
BenchmarkTable runBenchmark(const std::vector<BenchmarkProgram>& programs, const BenchmarkOptions& options);

}  // namespace hypermon
