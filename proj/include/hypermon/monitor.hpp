#pragma once

// Gray-box monitoring of distributed (DDM) and monolithic (MDM) data
// minimality over a growing set of observed traces.

#include "hypermon/ast.hpp"
#include "hypermon/oracle.hpp"
#include "hypermon/trace.hpp"

#include <memory>
#include <optional>
#include <set>

namespace hypermon {

class FunctionGraph;

enum class Property { Ddm, Mdm };
enum class Strategy { Eager, Lazy };
std::string_view toString(Property p);
std::string_view toString(Strategy s);
std::optional<Property> parseProperty(std::string_view text);
std::optional<Strategy> parseStrategy(std::string_view text);

/// Why the monitor reported BOTTOM. DDM witnesses name a position and two
/// values; MDM witnesses name two input tuples with equal outputs.
struct Witness {
  std::size_t position = 0;  // 0 for MDM
  std::vector<Integer> x;
  std::vector<Integer> y;

  std::string str() const;
};

struct LineReport {
  int line = 0;
  Verdict3 verdict = Verdict3::Unknown;
  std::optional<Witness> witness;  // set on the line that first reports BOTTOM
  bool duplicate = false;
  bool inconsistent = false;
  std::string diagnostic;

  /// `line <n>: verdict=<V> [witness: ...]`
  std::string str() const;
};

struct MonitorConfig {
  Property property = Property::Ddm;
  Strategy strategy = Strategy::Eager;
  /// Inconsistent traces raise an error instead of a diagnostic.
  bool strict = false;
  /// Largest synthesized cross product for MDM/EAGER before falling back to LAZY.
  std::uint64_t eagerBound = 1'000'000;
};

/// Raised in strict mode when a trace disagrees with the program.
class InconsistentTrace : public Error {
 public:
  using Error::Error;
};

/// True iff running `method` on the trace's inputs returns its output.
/// Evaluation errors count as inconsistent and are described in `why`.
bool checkConsistency(const lang::Program& program, const std::string& method, const IoPair& u,
                      std::string* why = nullptr);

class Monitor {
 public:
  /// `oracle` is required for DDM and unused for MDM.
  Monitor(std::shared_ptr<const lang::Program> program, std::string method, MonitorConfig config,
          std::shared_ptr<Oracle> oracle = nullptr);

  /// Adds one trace and re-evaluates incrementally; only pairs involving the
  /// new trace are examined. BOTTOM is permanent.
  LineReport ingest(const IoPair& u, int line = 0);

  Verdict3 verdict() const;
  const std::optional<Witness>& witness() const { return witness_; }
  const Observation& observation() const { return observation_; }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  const MonitorConfig& config() const { return config_; }
  std::size_t inconsistentCount() const { return inconsistent_; }
  const Oracle* oracle() const { return oracle_.get(); }

 private:
  std::optional<Witness> checkDdm(const IoPair& u);
  std::optional<Witness> checkMdm(const IoPair& u);
  std::optional<Witness> checkMdmEager(const IoPair& u);
  std::optional<Witness> askOracle(std::size_t i, const Integer& older, const Integer& newer);

  std::shared_ptr<const lang::Program> program_;
  std::string method_;
  MonitorConfig config_;
  std::shared_ptr<Oracle> oracle_;

  Observation observation_;
  std::vector<IoPair> consistent_;
  std::size_t inconsistent_ = 0;
  bool violated_ = false;
  bool reportedBottom_ = false;
  std::optional<Witness> witness_;
  std::vector<std::string> diagnostics_;

  // Per position: observed values in first-seen order, and checked pairs.
  std::vector<std::vector<Integer>> values_;
  std::vector<std::set<std::pair<Integer, Integer>>> checked_;
  // MDM: first input tuple seen per output, over observed or synthesized tuples.
  std::map<Integer, std::vector<Integer>> byOutput_;
  bool eagerFallback_ = false;
};

/// Truth of the DDM hyperproperty on the finite trace set `u`, quantifying
/// over `u` only: for each position i and traces differing at i there must
/// be two traces agreeing with them at i, agreeing with each other
/// elsewhere, and having different outputs.
bool evalPhiDm(const std::vector<IoPair>& u, std::size_t arity);
bool evalPhiDm(const Observation& u, std::size_t arity);

/// Exact verdict over the finite system: BOTTOM iff no subset of the graph
/// containing `u` satisfies DDM, TOP iff every such subset does. Refuses
/// traces not in the graph (ContractError).
Verdict3 perfectMonitorFinite(const Observation& u, const FunctionGraph& graph);

}  // namespace hypermon
