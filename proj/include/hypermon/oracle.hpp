#pragma once

// Three-valued decision of whether two values at one input position can be
// told apart by the method's output: is there a completion z of the other
// inputs with f(z[i := x]) != f(z[i := y])?

#include "hypermon/ast.hpp"
#include "hypermon/smt.hpp"
#include "hypermon/symexec.hpp"
#include "hypermon/trace.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hypermon {

class FunctionGraph;

enum class Backend { Auto, Brute, Symbolic, Smt };
std::string_view toString(Backend b);
std::optional<Backend> parseBackend(std::string_view text);

enum class OracleSource { None, Brute, Symbolic, Smt, Cache };
std::string_view toString(OracleSource s);

struct OracleResult {
  Verdict3 value = Verdict3::Unknown;
  OracleSource source = OracleSource::None;
  /// A TOP answer was downgraded because the characterization is inexact.
  bool exactnessUsed = false;
  std::string diagnostic;
};

struct OracleConfig {
  Backend backend = Backend::Auto;
  /// Largest completion space the brute-force and symbolic backends enumerate.
  std::uint64_t bruteBound = 10'000'000;
  smt::SolverConfig solver;
};

/// Exhaustive check over the completions z of position `i` (1-based) drawn
/// from `domains`. Completions rejected by the requires clause are skipped.
/// Throws DomainError for unbounded domains or a product above `bound`.
bool bruteCheck(const lang::Program& program, const std::string& method, std::size_t i, const Integer& x,
                const Integer& y, const Domains& domains, std::uint64_t bound = 10'000'000);

/// Same decision answered from the characterization alone, enumerating z and
/// solving each path condition for its havoc symbols. Unknown when the
/// enumeration cannot be completed.
smt::SatResult enumerateDistinction(const sym::Characterization& c, std::size_t i, const Integer& x,
                                    const Integer& y, std::uint64_t bound = 10'000'000);

class Oracle {
 public:
  /// `graph`, when given, must be the complete graph over `c.domains` and
  /// replaces interpreter calls in the brute-force backend.
  Oracle(std::shared_ptr<const lang::Program> program, std::shared_ptr<const sym::Characterization> c,
         OracleConfig config = {}, std::shared_ptr<const FunctionGraph> graph = nullptr);

  /// N_i(x, y). Equal values answer UNKNOWN without consulting a backend.
  /// Results are cached under (i, min(x, y), max(x, y)). Thread-safe.
  OracleResult query(std::size_t i, const Integer& x, const Integer& y);

  const sym::Characterization& characterization() const { return *char_; }
  const OracleConfig& config() const { return config_; }
  std::size_t queries() const { return queries_; }
  std::size_t backendCalls() const { return backendCalls_; }
  std::size_t cacheHits() const { return cacheHits_; }

 private:
  OracleResult compute(std::size_t i, const Integer& x, const Integer& y);
  OracleResult viaBrute(std::size_t i, const Integer& x, const Integer& y);
  OracleResult viaSymbolic(std::size_t i, const Integer& x, const Integer& y);
  OracleResult viaSmt(std::size_t i, const Integer& x, const Integer& y);
  OracleResult finish(bool distinguishable, OracleSource source) const;

  std::shared_ptr<const lang::Program> program_;
  std::shared_ptr<const sym::Characterization> char_;
  OracleConfig config_;
  std::shared_ptr<const FunctionGraph> graph_;

  std::mutex mutex_;
  std::map<std::tuple<std::size_t, Integer, Integer>, OracleResult> cache_;
  std::atomic<std::size_t> queries_{0};
  std::atomic<std::size_t> backendCalls_{0};
  std::atomic<std::size_t> cacheHits_{0};
};

}  // namespace hypermon
