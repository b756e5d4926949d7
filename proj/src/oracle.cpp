#include "hypermon/oracle.hpp"

#include "hypermon/harness.hpp"
#include "hypermon/interpreter.hpp"
#include "hypermon/solve.hpp"

namespace hypermon {

std::string_view toString(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Brute: return "brute";
    case Backend::Symbolic: return "symbolic";
    case Backend::Smt: return "smt";
  }
  return "auto";
}

std::optional<Backend> parseBackend(std::string_view text) {
  if (text == "auto") return Backend::Auto;
  if (text == "brute") return Backend::Brute;
  if (text == "symbolic") return Backend::Symbolic;
  if (text == "smt") return Backend::Smt;
  return std::nullopt;
}

std::string_view toString(OracleSource s) {
  switch (s) {
    case OracleSource::None: return "none";
    case OracleSource::Brute: return "brute";
    case OracleSource::Symbolic: return "symbolic";
    case OracleSource::Smt: return "smt";
    case OracleSource::Cache: return "cache";
  }
  return "none";
}

namespace {

/// Checks that the completions of position `i` form a finite space within `bound`.
void requireEnumerable(const Domains& domains, std::size_t i, std::uint64_t bound) {
  for (std::size_t k = 0; k < domains.size(); ++k)
    if (k + 1 != i && !domains[k].finite())
      throw DomainError("position " + std::to_string(k + 1) + " has an unbounded domain " + domains[k].str());
  if (productSize(domains, static_cast<int>(i) - 1) > bound)
    throw DomainError("completion space of position " + std::to_string(i) + " exceeds the bound of " +
                      std::to_string(bound));
}

/// Calls `visit(z)` for every tuple of `domains` with position `i` set to
/// `fill`; stops early when `visit` returns true. Returns whether it stopped.
template <typename Visit>
bool forEachCompletion(const Domains& domains, std::size_t i, const Integer& fill, Visit&& visit) {
  std::vector<std::size_t> free;
  std::vector<Integer> z(domains.size());
  for (std::size_t k = 0; k < domains.size(); ++k) {
    if (k + 1 == i) {
      z[k] = fill;
      continue;
    }
    if (domains[k].empty()) return false;
    z[k] = *domains[k].lo;
    free.push_back(k);
  }
  while (true) {
    if (visit(z)) return true;
    std::size_t j = free.size();
    while (true) {
      if (j == 0) return false;
      const std::size_t k = free[--j];
      if (z[k] < *domains[k].hi) {
        ++z[k];
        break;
      }
      z[k] = *domains[k].lo;
    }
  }
}

}  // namespace

bool bruteCheck(const lang::Program& program, const std::string& method, std::size_t i, const Integer& x,
                const Integer& y, const Domains& domains, std::uint64_t bound) {
  const lang::MethodDef& m = program.method(method);
  if (i < 1 || i > m.arity()) throw std::out_of_range("position out of range");
  if (domains.size() != m.arity()) throw DomainError("domain count does not match the arity of '" + method + "'");
  requireEnumerable(domains, i, bound);
  return forEachCompletion(domains, i, x, [&](std::vector<Integer>& z) {
    std::vector<Integer> other = z;
    other[i - 1] = y;
    if (!lang::satisfiesPreconditions(program, m, z) || !lang::satisfiesPreconditions(program, m, other))
      return false;
    return lang::evalMethod(program, m, z) != lang::evalMethod(program, m, other);
  });
}

namespace {

/// Outputs the characterization allows at the fully concrete input `z`.
struct CopyOutputs {
  bool covered = false;   // some path condition holds
  bool unknown = false;   // a path could not be decided
  bool several = false;   // more than one output is possible
  std::optional<Integer> value;
};

CopyOutputs outputsAt(const sym::Characterization& c, const std::vector<Integer>& z) {
  sym::Assignment a(c.symbols.size());
  for (std::size_t k = 0; k < z.size(); ++k) a[c.inputSymbols[k]] = z[k];
  CopyOutputs out;
  for (const auto& p : c.paths) {
    const sym::TermPtr cond = sym::substitute(p.condition, a);
    if (sym::isFalse(cond)) continue;
    const sym::TermPtr value = p.output ? sym::substitute(p.output, a) : nullptr;
    sym::OutputSet o = sym::enumerateOutputs({cond}, value, 2);
    if (o.status == sym::SolveStatus::Unknown) {
      out.unknown = true;
      continue;
    }
    if (o.status == sym::SolveStatus::Unsat) continue;
    out.covered = true;
    if (o.unconstrained || o.values.size() > 1) {
      out.several = true;
      continue;
    }
    if (!o.exhaustive) out.unknown = true;
    if (out.value && *out.value != o.values.front()) out.several = true;
    out.value = o.values.front();
  }
  return out;
}

}  // namespace

smt::SatResult enumerateDistinction(const sym::Characterization& c, std::size_t i, const Integer& x,
                                    const Integer& y, std::uint64_t bound) {
  if (i < 1 || i > c.arity()) throw std::out_of_range("position out of range");
  requireEnumerable(c.domains, i, bound);
  bool unknown = false;
  const bool found = forEachCompletion(c.domains, i, x, [&](std::vector<Integer>& z) {
    std::vector<Integer> other = z;
    other[i - 1] = y;
    const CopyOutputs a = outputsAt(c, z);
    const CopyOutputs b = outputsAt(c, other);
    if ((a.covered && a.several) || (b.covered && b.several)) {
      // Two outputs are possible for one copy while the other has at least one.
      if (a.covered && b.covered) return true;
    }
    if (a.unknown || b.unknown) {
      unknown = true;
      return false;
    }
    if (!a.covered || !b.covered) return false;
    return *a.value != *b.value;
  });
  if (found) return smt::SatResult::Sat;
  return unknown ? smt::SatResult::Unknown : smt::SatResult::Unsat;
}

Oracle::Oracle(std::shared_ptr<const lang::Program> program, std::shared_ptr<const sym::Characterization> c,
               OracleConfig config, std::shared_ptr<const FunctionGraph> graph)
    : program_(std::move(program)), char_(std::move(c)), config_(std::move(config)), graph_(std::move(graph)) {}

OracleResult Oracle::query(std::size_t i, const Integer& x, const Integer& y) {
  ++queries_;
  if (i < 1 || i > char_->arity()) throw std::out_of_range("position " + std::to_string(i) + " out of range");
  if (x == y) return {Verdict3::Unknown, OracleSource::None, false, "equal values"};
  auto key = std::make_tuple(i, x < y ? x : y, x < y ? y : x);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++cacheHits_;
      OracleResult hit = it->second;
      hit.source = OracleSource::Cache;
      return hit;
    }
  }
  OracleResult r = compute(i, std::get<1>(key), std::get<2>(key));
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(std::move(key), r);
  return r;
}

OracleResult Oracle::finish(bool distinguishable, OracleSource source) const {
  if (!distinguishable) return {Verdict3::Bottom, source, false, {}};
  if (char_->exact) return {Verdict3::Top, source, false, {}};
  return {Verdict3::Unknown, source, true, "distinguishing completion found, but the characterization is inexact"};
}

OracleResult Oracle::compute(std::size_t i, const Integer& x, const Integer& y) {
  switch (config_.backend) {
    case Backend::Brute: return viaBrute(i, x, y);
    case Backend::Symbolic: return viaSymbolic(i, x, y);
    case Backend::Smt: return viaSmt(i, x, y);
    case Backend::Auto: break;
  }
  std::string why;
  try {
    requireEnumerable(char_->domains, i, config_.bruteBound);
    return viaBrute(i, x, y);
  } catch (const DomainError& e) {
    why = e.what();
  }
  OracleResult r = viaSmt(i, x, y);
  if (r.source == OracleSource::None) r.diagnostic = "brute force refused (" + why + "); " + r.diagnostic;
  return r;
}

OracleResult Oracle::viaBrute(std::size_t i, const Integer& x, const Integer& y) {
  try {
    ++backendCalls_;
    const Domains& d = char_->domains;
    if (graph_ && d[i - 1].contains(x) && d[i - 1].contains(y) && graph_->domains() == d) {
      const bool differs = forEachCompletion(d, i, x, [&](std::vector<Integer>& z) {
        const auto a = graph_->at(z);
        z[i - 1] = y;
        const auto b = graph_->at(z);
        z[i - 1] = x;
        return a && b && *a != *b;
      });
      return finish(differs, OracleSource::Brute);
    }
    return finish(bruteCheck(*program_, char_->method, i, x, y, d, config_.bruteBound), OracleSource::Brute);
  } catch (const Error& e) {
    return {Verdict3::Unknown, OracleSource::None, false, std::string("brute force: ") + e.what()};
  }
}

OracleResult Oracle::viaSymbolic(std::size_t i, const Integer& x, const Integer& y) {
  try {
    ++backendCalls_;
    switch (enumerateDistinction(*char_, i, x, y, config_.bruteBound)) {
      case smt::SatResult::Sat: return finish(true, OracleSource::Symbolic);
      case smt::SatResult::Unsat: return finish(false, OracleSource::Symbolic);
      case smt::SatResult::Unknown: break;
    }
    return {Verdict3::Unknown, OracleSource::Symbolic, false, "symbolic enumeration incomplete"};
  } catch (const Error& e) {
    return {Verdict3::Unknown, OracleSource::None, false, std::string("symbolic: ") + e.what()};
  }
}

OracleResult Oracle::viaSmt(std::size_t i, const Integer& x, const Integer& y) {
  try {
    ++backendCalls_;
    const smt::Query q = smt::buildQuery(*char_, i, x, y);
    switch (smt::check(q.script, config_.solver)) {
      case smt::SatResult::Sat: {
        OracleResult r = finish(true, OracleSource::Smt);
        if (q.havocOutput && r.value == Verdict3::Top) r = {Verdict3::Unknown, OracleSource::Smt, true, {}};
        return r;
      }
      case smt::SatResult::Unsat: return finish(false, OracleSource::Smt);
      case smt::SatResult::Unknown: break;
    }
    return {Verdict3::Unknown, OracleSource::Smt, false, "solver answered unknown or timed out"};
  } catch (const SolverError& e) {
    return {Verdict3::Unknown, OracleSource::None, false, std::string("solver: ") + e.what()};
  }
}

}  // namespace hypermon
