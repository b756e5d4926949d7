#include "hypermon/solve.hpp"

#include <algorithm>

namespace hypermon::sym {

Integer floorDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer ceilDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) q += 1;
  return q;
}

namespace {

/// `form <= 0` or `form == 0` (or `form != 0`).
struct Atom {
  enum class Rel { Le, Eq, Ne } rel;
  LinearForm form;
};

std::optional<Atom> toAtom(const TermPtr& t) {
  Atom::Rel rel;
  switch (t->op) {
    case Op::Lt:
    case Op::Le: rel = Atom::Rel::Le; break;
    case Op::Eq: rel = Atom::Rel::Eq; break;
    case Op::Ne: rel = Atom::Rel::Ne; break;
    default: return std::nullopt;
  }
  auto l = linearize(t->args[0]);
  auto r = linearize(t->args[1]);
  if (!l || !r) return std::nullopt;
  for (const auto& [s, c] : r->coeffs) {
    Integer& slot = l->coeffs[s];
    slot -= c;
    if (slot == 0) l->coeffs.erase(s);
  }
  l->constant -= r->constant;
  if (t->op == Op::Lt) l->constant += 1;
  return Atom{rel, std::move(*l)};
}

/// Tightens bounds from `form <= 0`. Returns false on an empty bound.
bool tightenLe(const LinearForm& form, BoundMap& bounds, bool& changed) {
  for (const auto& [v, cv] : form.coeffs) {
    Integer minRest = form.constant;
    bool known = true;
    for (const auto& [k, ck] : form.coeffs) {
      if (k == v) continue;
      const auto it = bounds.find(k);
      if (it == bounds.end()) { known = false; break; }
      const auto& bound = ck > 0 ? it->second.lo : it->second.hi;
      if (!bound) { known = false; break; }
      minRest += ck * *bound;
    }
    if (!known) continue;
    // cv * v <= -minRest
    Interval& range = bounds[v];
    if (cv > 0) {
      Integer hi = floorDiv(-minRest, cv);
      if (!range.hi || hi < *range.hi) { range.hi = hi; changed = true; }
    } else {
      Integer lo = ceilDiv(-minRest, cv);
      if (!range.lo || lo > *range.lo) { range.lo = lo; changed = true; }
    }
    if (range.empty()) return false;
  }
  return true;
}

LinearForm negated(const LinearForm& form) {
  LinearForm out;
  for (const auto& [s, c] : form.coeffs) out.coeffs[s] = -c;
  out.constant = -form.constant;
  return out;
}

}  // namespace

bool propagateBounds(const std::vector<TermPtr>& constraints, BoundMap& bounds, int rounds) {
  std::vector<Atom> atoms;
  for (const auto& c : constraints) {
    if (isFalse(c)) return false;
    std::vector<TermPtr> parts;
    flattenConjunction(c, parts);
    for (const auto& p : parts) {
      if (isFalse(p)) return false;
      if (auto a = toAtom(p)) {
        if (a->form.coeffs.empty()) {
          const Integer& k = a->form.constant;
          const bool holds = a->rel == Atom::Rel::Le ? k <= 0 : a->rel == Atom::Rel::Eq ? k == 0 : k != 0;
          if (!holds) return false;
          continue;
        }
        atoms.push_back(std::move(*a));
      }
    }
  }
  for (int round = 0; round < rounds; ++round) {
    bool changed = false;
    for (const auto& atom : atoms) {
      if (atom.rel == Atom::Rel::Ne) {
        if (atom.form.coeffs.size() != 1) continue;
        const auto& [v, c] = *atom.form.coeffs.begin();
        if (atom.form.constant % c != 0) continue;
        const Integer value = -atom.form.constant / c;
        Interval& range = bounds[v];
        if (range.lo && *range.lo == value) { range.lo = value + 1; changed = true; }
        if (range.hi && *range.hi == value) { range.hi = value - 1; changed = true; }
        if (range.empty()) return false;
        continue;
      }
      if (!tightenLe(atom.form, bounds, changed)) return false;
      if (atom.rel == Atom::Rel::Eq && !tightenLe(negated(atom.form), bounds, changed)) return false;
    }
    if (!changed) break;
  }
  return true;
}

namespace {

class Enumerator {
 public:
  Enumerator(const TermPtr& output, std::size_t limit, std::size_t budget)
      : output_(output), limit_(limit), budget_(budget) {}

  OutputSet run(const std::vector<TermPtr>& constraints, const BoundMap& bounds) {
    Assignment none;
    complete_ = true;
    search(constraints, bounds, none);
    OutputSet out;
    out.values = std::move(values_);
    out.unconstrained = sat_ && !output_;
    out.exhaustive = complete_;
    out.status = sat_ ? SolveStatus::Sat : (complete_ ? SolveStatus::Unsat : SolveStatus::Unknown);
    return out;
  }

 private:
  bool done() const { return output_ ? values_.size() >= limit_ : sat_; }

  void record(const Integer& v) {
    sat_ = true;
    if (std::find(values_.begin(), values_.end(), v) == values_.end()) values_.push_back(v);
  }

  void search(const std::vector<TermPtr>& constraints, BoundMap bounds, const Assignment& assignment) {
    if (done()) return;
    if (leaves_++ >= budget_) {
      complete_ = false;
      return;
    }
    std::vector<TermPtr> open;
    for (const auto& c : constraints) {
      TermPtr t = assignment.empty() ? c : substitute(c, assignment);
      if (isTrue(t)) continue;
      if (isFalse(t)) return;
      std::vector<int> syms;
      collectSymbols(t, syms);
      if (syms.empty()) {
        try {
          if (evaluate(t, {}) == 0) return;
        } catch (const UndefinedValue&) {
          return;
        }
        continue;
      }
      open.push_back(std::move(t));
    }
    if (!propagateBounds(open, bounds)) return;

    if (open.empty()) {
      finish(assignment, bounds);
      return;
    }

    std::vector<int> syms;
    for (const auto& t : open) collectSymbols(t, syms);
    int pick = -1;
    Integer width;
    for (int s : syms) {
      auto it = bounds.find(s);
      if (it == bounds.end() || !it->second.finite()) continue;
      Integer w = it->second.size();
      if (pick < 0 || w < width) {
        pick = s;
        width = w;
      }
    }
    if (pick < 0) {
      complete_ = false;
      return;
    }
    const Interval range = bounds[pick];
    for (Integer v = *range.lo; v <= *range.hi; ++v) {
      if (done()) return;
      Assignment next = assignment;
      if (static_cast<int>(next.size()) <= pick) next.resize(pick + 1);
      next[pick] = v;
      BoundMap nb = bounds;
      nb[pick] = Interval::closed(v, v);
      search(open, std::move(nb), next);
      if (!complete_ && leaves_ >= budget_) return;
    }
  }

  /// All constraints hold; read off the output under the remaining freedom.
  void finish(const Assignment& assignment, const BoundMap& bounds) {
    if (!output_) {
      sat_ = true;
      return;
    }
    TermPtr out = assignment.empty() ? output_ : substitute(output_, assignment);
    std::vector<int> syms;
    collectSymbols(out, syms);
    if (syms.empty()) {
      try {
        record(evaluate(out, {}));
      } catch (const UndefinedValue&) {
      }
      return;
    }
    // Free symbols that no constraint mentions: probe two valuations.
    for (int probe = 0; probe < 2 && !done(); ++probe) {
      Assignment a = assignment;
      for (int s : syms) {
        if (static_cast<int>(a.size()) <= s) a.resize(s + 1);
        auto it = bounds.find(s);
        Integer base = (it != bounds.end() && it->second.lo) ? *it->second.lo : Integer(0);
        const bool bump = probe == 1 && s == syms.front() &&
                          !(it != bounds.end() && it->second.hi && *it->second.hi == base);
        a[s] = bump ? base + 1 : base;
      }
      try {
        record(evaluate(out, a));
      } catch (const UndefinedValue&) {
      }
    }
  }

  TermPtr output_;
  std::size_t limit_;
  std::size_t budget_;
  std::size_t leaves_ = 0;
  bool sat_ = false;
  bool complete_ = true;
  std::vector<Integer> values_;
};

}  // namespace

OutputSet enumerateOutputs(const std::vector<TermPtr>& constraints, const TermPtr& output, std::size_t limit,
                           std::size_t budget, const BoundMap& bounds) {
  Enumerator e(output, std::max<std::size_t>(limit, 1), budget);
  return e.run(constraints, bounds);
}

}  // namespace hypermon::sym
