#include "hypermon/monitor.hpp"

#include "hypermon/harness.hpp"
#include "hypermon/interpreter.hpp"

#include <algorithm>
#include <set>

namespace hypermon {

std::string_view toString(Property p) { return p == Property::Ddm ? "ddm" : "mdm"; }
std::string_view toString(Strategy s) { return s == Strategy::Eager ? "eager" : "lazy"; }

std::optional<Property> parseProperty(std::string_view text) {
  if (text == "ddm" || text == "DDM") return Property::Ddm;
  if (text == "mdm" || text == "MDM") return Property::Mdm;
  return std::nullopt;
}

std::optional<Strategy> parseStrategy(std::string_view text) {
  if (text == "eager" || text == "EAGER") return Strategy::Eager;
  if (text == "lazy" || text == "LAZY") return Strategy::Lazy;
  return std::nullopt;
}

std::string Witness::str() const {
  if (position > 0) return "i=" + std::to_string(position) + ", x=" + x.front().str() + ", y=" + y.front().str();
  return "x=" + formatTuple(x) + ", y=" + formatTuple(y);
}

std::string LineReport::str() const {
  std::string out = "line " + std::to_string(line) + ": verdict=" + std::string(toString(verdict));
  if (witness) out += " [witness: " + witness->str() + "]";
  return out;
}

bool checkConsistency(const lang::Program& program, const std::string& method, const IoPair& u, std::string* why) {
  try {
    const Integer actual = lang::evalMethod(program, method, u.inputs);
    if (actual == u.output) return true;
    if (why) *why = method + formatTuple(u.inputs) + " returns " + actual.str() + ", trace says " + u.output.str();
  } catch (const EvalError& e) {
    if (why) *why = method + formatTuple(u.inputs) + " fails: " + e.what();
  }
  return false;
}

Monitor::Monitor(std::shared_ptr<const lang::Program> program, std::string method, MonitorConfig config,
                 std::shared_ptr<Oracle> oracle)
    : program_(std::move(program)), method_(std::move(method)), config_(config), oracle_(std::move(oracle)) {
  const std::size_t n = program_->method(method_).arity();
  if (config_.property == Property::Ddm && !oracle_) throw ConfigError("DDM monitoring needs an oracle");
  values_.resize(n);
  checked_.resize(n);
}

Verdict3 Monitor::verdict() const {
  if (reportedBottom_ || (violated_ && inconsistent_ == 0)) return Verdict3::Bottom;
  return Verdict3::Unknown;
}

LineReport Monitor::ingest(const IoPair& u, int line) {
  const std::size_t n = values_.size();
  if (u.arity() != n)
    throw FormatError("trace has " + std::to_string(u.arity()) + " inputs, '" + method_ + "' expects " +
                          std::to_string(n),
                      line);
  LineReport report;
  report.line = line;
  if (!observation_.insert(u)) {
    report.duplicate = true;
  } else {
    std::string why;
    if (!checkConsistency(*program_, method_, u, &why)) {
      if (config_.strict) throw InconsistentTrace("line " + std::to_string(line) + ": inconsistent trace: " + why);
      ++inconsistent_;
      report.inconsistent = true;
      report.diagnostic = "inconsistent trace: " + why;
      diagnostics_.push_back("line " + std::to_string(line) + ": " + report.diagnostic);
    } else {
      if (!violated_) {
        auto w = config_.property == Property::Ddm ? checkDdm(u) : checkMdm(u);
        if (w) {
          violated_ = true;
          witness_ = std::move(w);
        }
      }
      consistent_.push_back(u);
    }
  }
  report.verdict = verdict();
  if (report.verdict == Verdict3::Bottom && !reportedBottom_) {
    reportedBottom_ = true;
    report.witness = witness_;
  }
  return report;
}

std::optional<Witness> Monitor::askOracle(std::size_t i, const Integer& older, const Integer& newer) {
  if (older == newer) return std::nullopt;
  auto key = older < newer ? std::make_pair(older, newer) : std::make_pair(newer, older);
  if (!checked_[i - 1].insert(std::move(key)).second) return std::nullopt;
  const OracleResult r = oracle_->query(i, older, newer);
  if (r.source == OracleSource::None && !r.diagnostic.empty()) {
    const std::string d = "oracle (i=" + std::to_string(i) + ", x=" + older.str() + ", y=" + newer.str() +
                          "): " + r.diagnostic;
    if (diagnostics_.size() < 100) diagnostics_.push_back(d);
  }
  if (r.value != Verdict3::Bottom) return std::nullopt;
  return Witness{i, {older}, {newer}};
}

std::optional<Witness> Monitor::checkDdm(const IoPair& u) {
  for (std::size_t i = 1; i <= values_.size(); ++i) {
    const Integer& v = u.proj(i);
    if (config_.strategy == Strategy::Eager) {
      auto& seen = values_[i - 1];
      if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
      for (const auto& w : seen)
        if (auto found = askOracle(i, w, v)) return found;
      seen.push_back(v);
    } else {
      for (const auto& older : consistent_) {
        if (older.output != u.output) continue;
        if (auto found = askOracle(i, older.proj(i), v)) return found;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> Monitor::checkMdm(const IoPair& u) {
  if (config_.strategy == Strategy::Eager && !eagerFallback_) {
    Integer product = 1;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      const auto& seen = values_[k];
      const bool fresh = std::find(seen.begin(), seen.end(), u.inputs[k]) == seen.end();
      product *= seen.size() + (fresh ? 1 : 0);
    }
    if (product <= config_.eagerBound) return checkMdmEager(u);
    eagerFallback_ = true;
    diagnostics_.push_back("eager cross product exceeds " + std::to_string(config_.eagerBound) +
                           " tuples; continuing with lazy MDM checks");
  }
  auto [it, inserted] = byOutput_.emplace(u.output, u.inputs);
  if (!inserted && it->second != u.inputs) return Witness{0, it->second, u.inputs};
  return std::nullopt;
}

std::optional<Witness> Monitor::checkMdmEager(const IoPair& u) {
  const std::size_t n = values_.size();
  // Old values per position, then extend with the new trace's values.
  std::vector<std::size_t> oldCount(n);
  std::vector<bool> fresh(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& seen = values_[k];
    oldCount[k] = seen.size();
    fresh[k] = std::find(seen.begin(), seen.end(), u.inputs[k]) == seen.end();
    if (fresh[k]) seen.push_back(u.inputs[k]);
  }
  const lang::MethodDef& m = program_->method(method_);
  // Tuples with at least one new component: the first new component sits at
  // position k, earlier fresh positions keep old values only.
  for (std::size_t k = 0; k < n; ++k) {
    if (!fresh[k]) continue;
    std::vector<std::size_t> lo(n, 0), hi(n);
    for (std::size_t j = 0; j < n; ++j) hi[j] = values_[j].size();
    lo[k] = oldCount[k];
    for (std::size_t j = 0; j < k; ++j)
      if (fresh[j]) hi[j] = oldCount[j];
    bool emptyRange = false;
    for (std::size_t j = 0; j < n; ++j) emptyRange = emptyRange || lo[j] >= hi[j];
    if (emptyRange) continue;
    std::vector<std::size_t> idx = lo;
    while (true) {
      std::vector<Integer> tuple(n);
      for (std::size_t j = 0; j < n; ++j) tuple[j] = values_[j][idx[j]];
      std::optional<Integer> out;
      if (tuple == u.inputs) {
        out = u.output;
      } else if (lang::satisfiesPreconditions(*program_, m, tuple)) {
        try {
          out = lang::evalMethod(*program_, m, tuple);
        } catch (const EvalError&) {
        }
      }
      if (out) {
        auto [it, inserted] = byOutput_.emplace(*out, tuple);
        if (!inserted && it->second != tuple) return Witness{0, it->second, tuple};
      }
      bool advanced = false;
      for (std::size_t j = n; j > 0 && !advanced;) {
        --j;
        if (++idx[j] < hi[j])
          advanced = true;
        else
          idx[j] = lo[j];
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

bool evalPhiDm(const std::vector<IoPair>& u, std::size_t arity) {
  for (std::size_t i = 1; i <= arity; ++i) {
    // Distinguished value pairs: two traces agreeing off position i with
    // different outputs.
    std::set<std::pair<Integer, Integer>> distinguished;
    for (std::size_t a = 0; a < u.size(); ++a) {
      for (std::size_t b = 0; b < u.size(); ++b) {
        if (u[a].output == u[b].output) continue;
        bool almost = true;
        for (std::size_t k = 1; k <= arity && almost; ++k)
          if (k != i && u[a].proj(k) != u[b].proj(k)) almost = false;
        if (almost) distinguished.emplace(u[a].proj(i), u[b].proj(i));
      }
    }
    for (const auto& p : u)
      for (const auto& q : u)
        if (p.proj(i) != q.proj(i) && !distinguished.count({p.proj(i), q.proj(i)})) return false;
  }
  return true;
}

bool evalPhiDm(const Observation& u, std::size_t arity) { return evalPhiDm(u.pairs(), arity); }

namespace {

/// Search for a value-set box S containing the observed values whose
/// restricted graph satisfies DDM. The restricted graph of S satisfies DDM iff
/// every pair of values of S at every position is told apart inside S.
class ExtensionSearch {
 public:
  explicit ExtensionSearch(const FunctionGraph& graph) : g_(graph) {
    for (const auto& d : g_.domains()) width_.push_back(d.size().convert_to<std::size_t>());
  }

  bool satisfiable(std::vector<std::vector<bool>> s) { return search(std::move(s)); }

  std::vector<bool> members(std::size_t k, const Integer& v) const {
    std::vector<bool> out(width_[k]);
    out[index(k, v)] = true;
    return out;
  }
  std::size_t index(std::size_t k, const Integer& v) const {
    return Integer(v - *g_.domains()[k].lo).convert_to<std::size_t>();
  }
  Integer value(std::size_t k, std::size_t idx) const { return *g_.domains()[k].lo + idx; }

 private:
  /// Calls visit(tuple) over the product of `allowed` with position i fixed.
  template <typename Visit>
  bool anyCompletion(const std::vector<std::vector<bool>>& allowed, std::size_t i, Visit&& visit) const {
    const std::size_t n = width_.size();
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      while (idx[k] < width_[k] && !allowed[k][idx[k]]) ++idx[k];
      if (idx[k] == width_[k]) return false;
    }
    while (true) {
      if (visit(idx)) return true;
      std::size_t k = n;
      bool advanced = false;
      while (k > 0) {
        --k;
        if (k == i) continue;
        std::size_t next = idx[k] + 1;
        while (next < width_[k] && !allowed[k][next]) ++next;
        if (next < width_[k]) {
          idx[k] = next;
          advanced = true;
          break;
        }
        idx[k] = 0;
        while (!allowed[k][idx[k]]) ++idx[k];
      }
      if (!advanced) return false;
    }
  }

  std::optional<Integer> out(std::vector<std::size_t> idx, std::size_t i, std::size_t vi) const {
    idx[i] = vi;
    std::vector<Integer> t(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) t[k] = value(k, idx[k]);
    return g_.at(t);
  }

  bool differs(const std::vector<std::size_t>& idx, std::size_t i, std::size_t a, std::size_t b) const {
    const auto oa = out(idx, i, a);
    const auto ob = out(idx, i, b);
    return oa && ob && *oa != *ob;
  }

  bool search(std::vector<std::vector<bool>> s) {
    if (!visited_.insert(s).second) return false;
    if (++nodes_ > 200'000) throw Error("perfect monitor: extension search budget exhausted");
    const std::size_t n = width_.size();
    std::vector<std::vector<bool>> full(n);
    for (std::size_t k = 0; k < n; ++k) full[k].assign(width_[k], true);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < width_[i]; ++a) {
        if (!s[i][a]) continue;
        for (std::size_t b = a + 1; b < width_[i]; ++b) {
          if (!s[i][b]) continue;
          if (anyCompletion(s, i, [&](const std::vector<std::size_t>& z) { return differs(z, i, a, b); }))
            continue;
          // Unmet requirement: extend S by some completion that tells a and b apart.
          bool found = false;
          anyCompletion(full, i, [&](const std::vector<std::size_t>& z) {
            if (!differs(z, i, a, b)) return false;
            auto next = s;
            for (std::size_t k = 0; k < n; ++k)
              if (k != i) next[k][z[k]] = true;
            found = search(std::move(next));
            return found;
          });
          return found;
        }
      }
    }
    return true;
  }

  const FunctionGraph& g_;
  std::vector<std::size_t> width_;
  std::set<std::vector<std::vector<bool>>> visited_;
  std::size_t nodes_ = 0;
};

}  // namespace

Verdict3 perfectMonitorFinite(const Observation& u, const FunctionGraph& graph) {
  const std::size_t n = graph.arity();
  for (const auto& t : u) {
    if (t.arity() != n) throw ContractError("trace arity does not match the function graph");
    const auto out = graph.at(t.inputs);
    if (!out || *out != t.output)
      throw ContractError("trace " + serialize(t) + " is not a behaviour of '" + graph.method() + "'");
  }
  ExtensionSearch search(graph);
  std::vector<std::vector<bool>> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k].assign(graph.domains()[k].size().convert_to<std::size_t>(), false);
  for (const auto& t : u)
    for (std::size_t k = 0; k < n; ++k) s[k][search.index(k, t.inputs[k])] = true;
  if (!search.satisfiable(s)) return Verdict3::Bottom;

  // A violating extension exists iff one exists with at most two extra traces:
  // the two traces of an untold pair carry the violation on their own.
  const std::vector<IoPair> entries = graph.entries();
  std::vector<IoPair> w = u.pairs();
  if (!evalPhiDm(w, n)) return Verdict3::Unknown;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a; b < entries.size(); ++b) {
      std::vector<IoPair> ext = w;
      if (!u.contains(entries[a])) ext.push_back(entries[a]);
      if (b != a && !u.contains(entries[b])) ext.push_back(entries[b]);
      if (!evalPhiDm(ext, n)) return Verdict3::Unknown;
    }
  }
  return Verdict3::Top;
}

}  // namespace hypermon
