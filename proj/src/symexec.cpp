#include "hypermon/symexec.hpp"

#include "hypermon/domain.hpp"
#include "hypermon/interpreter.hpp"
#include "hypermon/random.hpp"
#include "hypermon/solve.hpp"

#include <functional>
#include <sstream>

namespace hypermon::sym {

using namespace hypermon::lang;

bool Characterization::linear() const {
  for (const auto& p : paths) {
    if (isNonlinear(p.condition)) return false;
    if (p.output && isNonlinear(p.output)) return false;
  }
  return true;
}

std::size_t ValidationReport::count(ValidationIssue::Kind kind) const {
  std::size_t n = 0;
  for (const auto& issue : issues) n += issue.kind == kind;
  return n;
}

// ---------------------------------------------------------------------------
// Inlining

namespace {

class Inliner {
 public:
  Inliner(const Program& program, MethodDef& out) : program_(program), out_(out) {}

  ExprPtr expr(const ExprPtr& e, int offset, const std::string& prefix) {
    if (!e) return nullptr;
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            return makeExpr(VarRef{prefix + n.name, n.slot + offset}, e->loc);
          } else if constexpr (std::is_same_v<T, Unary>) {
            return makeExpr(Unary{n.op, expr(n.operand, offset, prefix)}, e->loc);
          } else if constexpr (std::is_same_v<T, Binary>) {
            return makeExpr(Binary{n.op, expr(n.lhs, offset, prefix), expr(n.rhs, offset, prefix)}, e->loc);
          } else if constexpr (std::is_same_v<T, Call>) {
            return inlineCall(n, offset, prefix, e->loc);
          } else if constexpr (std::is_same_v<T, InlinedCall>) {
            throw Error("inlineCalls: input already inlined");
          } else {
            return e;
          }
        },
        e->node);
  }

  StmtPtr stmt(const StmtPtr& s, int offset, const std::string& prefix) {
    if (!s) return nullptr;
    return std::visit(
        [&](const auto& n) -> StmtPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            return makeStmt(DeclStmt{prefix + n.name, n.slot + offset, expr(n.init, offset, prefix)}, s->loc);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            return makeStmt(AssignStmt{prefix + n.name, n.slot + offset, expr(n.value, offset, prefix)}, s->loc);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            return makeStmt(IfStmt{expr(n.cond, offset, prefix), stmt(n.then, offset, prefix),
                                   stmt(n.otherwise, offset, prefix)},
                            s->loc);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            WhileStmt w;
            w.loopId = nextLoop_++;
            w.cond = expr(n.cond, offset, prefix);
            w.annotation.invariant = expr(n.annotation.invariant, offset, prefix);
            w.annotation.variant = expr(n.annotation.variant, offset, prefix);
            w.body = stmt(n.body, offset, prefix);
            w.update = stmt(n.update, offset, prefix);
            for (int slot : n.assignedSlots) w.assignedSlots.push_back(slot + offset);
            return makeStmt(std::move(w), s->loc);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            BlockStmt b;
            for (const auto& inner : n.stmts) b.stmts.push_back(stmt(inner, offset, prefix));
            return makeStmt(std::move(b), s->loc);
          } else {
            return makeStmt(ReturnStmt{expr(n.value, offset, prefix)}, s->loc);
          }
        },
        s->node);
  }

 private:
  ExprPtr inlineCall(const Call& call, int offset, const std::string& prefix, SourceLoc loc) {
    const MethodDef& callee = program_.methods.at(call.target);
    InlinedCall out;
    out.callee = callee.name;
    for (const auto& a : call.args) out.args.push_back(expr(a, offset, prefix));

    const std::string calleePrefix = callee.name + "#" + std::to_string(++instances_[callee.name]) + ".";
    const int base = out_.frameSize;
    out_.frameSize += callee.frameSize;
    for (const auto& name : callee.slotNames) out_.slotNames.push_back(calleePrefix + name);
    out_.slotNames.resize(out_.frameSize);

    for (const auto& p : callee.params) out.paramSlots.push_back(p.slot + base);
    for (const auto& pre : callee.preconditions) out.preconditions.push_back(expr(pre, base, calleePrefix));
    out.body = stmt(callee.body, base, calleePrefix);
    return makeExpr(std::move(out), loc);
  }

  const Program& program_;
  MethodDef& out_;
  std::map<std::string, int> instances_;
  int nextLoop_ = 0;
};

bool containsReturn(const Stmt& s) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ReturnStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          return containsReturn(*n.then) || (n.otherwise && containsReturn(*n.otherwise));
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return containsReturn(*n.body) || (n.update && containsReturn(*n.update));
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          for (const auto& inner : n.stmts)
            if (containsReturn(*inner)) return true;
          return false;
        } else {
          return false;
        }
      },
      s.node);
}

bool containsCall(const Expr& e) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Unary>) {
          return containsCall(*n.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return containsCall(*n.lhs) || containsCall(*n.rhs);
        } else {
          return std::is_same_v<T, Call> || std::is_same_v<T, InlinedCall>;
        }
      },
      e.node);
}

}  // namespace

MethodDef inlineCalls(const Program& program, const std::string& method) {
  const MethodDef& original = program.method(method);
  MethodDef out = original;
  out.slotNames.resize(out.frameSize);
  Inliner inliner(program, out);
  out.body = inliner.stmt(original.body, 0, "");
  for (auto& pre : out.preconditions) pre = inliner.expr(pre, 0, "");
  for (auto& post : out.postconditions) post = inliner.expr(post, 0, "");
  return out;
}

// ---------------------------------------------------------------------------
// Execution

namespace {

struct State {
  std::vector<TermPtr> vars;
  std::vector<TermPtr> pc;
  bool summarized = false;
};

using ValueCont = std::function<void(State, TermPtr)>;

struct StmtConts {
  std::function<void(State)> normal;
  ValueCont ret;
};

Interval sampleRange(const Interval& d) {
  if (d.finite()) return d;
  if (d.lo) return Interval::closed(*d.lo, *d.lo + 64);
  if (d.hi) return Interval::closed(*d.hi - 64, *d.hi);
  return Interval::closed(-32, 32);
}

class Executor {
 public:
  Executor(const MethodDef& method, const Domains& domains, const SymexecConfig& config, Characterization& out)
      : method_(method), config_(config), out_(out) {
    for (std::size_t k = 0; k < method.arity(); ++k) {
      const int id = static_cast<int>(out_.symbols.size());
      out_.symbols.push_back({method.params[k].name, Symbol::Kind::Input, static_cast<int>(k)});
      out_.inputSymbols.push_back(id);
      inputBounds_[id] = domains[k];
    }
  }

  void run() {
    State init;
    init.vars.resize(method_.frameSize);
    for (std::size_t k = 0; k < method_.arity(); ++k)
      init.vars[method_.params[k].slot] = symbol(out_.inputSymbols[k]);
    assumeAll(method_.preconditions, 0, std::move(init), [&](State s) {
      exec(*method_.body, std::move(s),
           StmtConts{[&](State) { throw Error("method '" + method_.name + "' can complete without returning"); },
                     [&](State s2, TermPtr v) { emit(s2, std::move(v)); }});
    });
  }

 private:
  void emit(const State& s, TermPtr output) {
    if (out_.paths.size() >= config_.maxPaths)
      throw ConfigError("symbolic execution of '" + method_.name + "' exceeds the path limit of " +
                        std::to_string(config_.maxPaths));
    out_.paths.push_back({conjAll(s.pc), std::move(output), s.summarized});
  }

  void cutoff(const State& s) {
    out_.cutoffHit = true;
    emit(s, nullptr);
  }

  bool feasible(const std::vector<TermPtr>& pc) {
    BoundMap b = inputBounds_;
    return propagateBounds(pc, b);
  }

  /// Adds `c` to the path condition; false if the path becomes infeasible.
  bool assume(State& s, const TermPtr& c) {
    if (isTrue(c)) return true;
    if (isFalse(c)) return false;
    s.pc.push_back(c);
    return feasible(s.pc);
  }

  void assumeAll(const std::vector<ExprPtr>& conds, std::size_t idx, State s, const std::function<void(State)>& k) {
    if (idx == conds.size()) {
      k(std::move(s));
      return;
    }
    eval(*conds[idx], std::move(s), [&](State s2, TermPtr c) {
      if (assume(s2, c)) assumeAll(conds, idx + 1, std::move(s2), k);
    });
  }

  // -- expressions ---------------------------------------------------------

  void eval(const Expr& e, State s, const ValueCont& k) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            k(std::move(s), intConst(n.value));
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            k(std::move(s), boolConst(n.value));
          } else if constexpr (std::is_same_v<T, VarRef>) {
            TermPtr v = s.vars.at(n.slot);
            if (!v) throw Error("variable '" + n.name + "' may be read before assignment");
            k(std::move(s), std::move(v));
          } else if constexpr (std::is_same_v<T, ResultRef>) {
            throw Error("'\\result' cannot be executed symbolically");
          } else if constexpr (std::is_same_v<T, Unary>) {
            eval(*n.operand, std::move(s), [&](State s2, TermPtr v) {
              k(std::move(s2), n.op == UnOp::Neg ? neg(std::move(v)) : negate(std::move(v)));
            });
          } else if constexpr (std::is_same_v<T, Binary>) {
            binary(n, std::move(s), k);
          } else if constexpr (std::is_same_v<T, Call>) {
            throw Error("symbolic execution requires an inlined method body");
          } else {
            inlined(n, std::move(s), k);
          }
        },
        e.node);
  }

  void binary(const Binary& b, State s, const ValueCont& k) {
    if (b.op == BinOp::And || b.op == BinOp::Or) {
      logical(b, std::move(s), k);
      return;
    }
    eval(*b.lhs, std::move(s), [&](State s1, TermPtr l) {
      eval(*b.rhs, std::move(s1), [&](State s2, TermPtr r) {
        switch (b.op) {
          case BinOp::Add: k(std::move(s2), add(l, r)); return;
          case BinOp::Sub: k(std::move(s2), sub(l, r)); return;
          case BinOp::Mul: k(std::move(s2), mul(l, r)); return;
          case BinOp::Div:
          case BinOp::Mod:
            if (!assume(s2, ne(r, intConst(0)))) return;
            k(std::move(s2), b.op == BinOp::Div ? div(l, r) : mod(l, r));
            return;
          case BinOp::Lt: k(std::move(s2), lt(l, r)); return;
          case BinOp::Le: k(std::move(s2), le(l, r)); return;
          case BinOp::Gt: k(std::move(s2), gt(l, r)); return;
          case BinOp::Ge: k(std::move(s2), ge(l, r)); return;
          case BinOp::Eq: k(std::move(s2), eq(l, r)); return;
          case BinOp::Ne: k(std::move(s2), ne(l, r)); return;
          default: return;
        }
      });
    });
  }

  /// Short-circuit operators. A right operand with calls forks on the left
  /// operand; otherwise its definedness side conditions are guarded by it.
  void logical(const Binary& b, State s, const ValueCont& k) {
    const bool isAnd = b.op == BinOp::And;
    eval(*b.lhs, std::move(s), [&](State s1, TermPtr l) {
      if (containsCall(*b.rhs)) {
        State shortCut = s1;
        if (assume(shortCut, isAnd ? negate(l) : l)) k(std::move(shortCut), boolConst(!isAnd));
        if (assume(s1, isAnd ? l : negate(l))) eval(*b.rhs, std::move(s1), k);
        return;
      }
      State scratch = s1;
      scratch.pc.clear();
      TermPtr r;
      TermPtr defined = boolConst(true);
      eval(*b.rhs, std::move(scratch), [&](State s2, TermPtr v) {
        r = std::move(v);
        defined = conjAll(s2.pc);
      });
      if (!r) return;  // right operand undefined everywhere (e.g. x / 0)
      if (!isTrue(defined) && !assume(s1, isAnd ? disj(negate(l), defined) : disj(l, defined))) return;
      k(std::move(s1), isAnd ? conj(l, r) : disj(l, r));
    });
  }

  void inlined(const InlinedCall& call, State s, const ValueCont& k) {
    evalArgs(call.args, 0, std::move(s), {}, [&](State s1, std::vector<TermPtr> args) {
      for (std::size_t j = 0; j < args.size(); ++j) s1.vars.at(call.paramSlots[j]) = args[j];
      assumeAll(call.preconditions, 0, std::move(s1), [&](State s2) {
        exec(*call.body, std::move(s2),
             StmtConts{[&](State) { throw Error("inlined '" + call.callee + "' can complete without returning"); },
                       k});
      });
    });
  }

  void evalArgs(const std::vector<ExprPtr>& args, std::size_t idx, State s, std::vector<TermPtr> acc,
                const std::function<void(State, std::vector<TermPtr>)>& k) {
    if (idx == args.size()) {
      k(std::move(s), std::move(acc));
      return;
    }
    eval(*args[idx], std::move(s), [&](State s1, TermPtr v) {
      std::vector<TermPtr> next = acc;
      next.push_back(std::move(v));
      evalArgs(args, idx + 1, std::move(s1), std::move(next), k);
    });
  }

  // -- statements ----------------------------------------------------------

  void exec(const Stmt& st, State s, const StmtConts& k) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            if (!n.init) {
              s.vars.at(n.slot) = nullptr;
              k.normal(std::move(s));
              return;
            }
            eval(*n.init, std::move(s), [&](State s1, TermPtr v) {
              s1.vars.at(n.slot) = std::move(v);
              k.normal(std::move(s1));
            });
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            eval(*n.value, std::move(s), [&](State s1, TermPtr v) {
              s1.vars.at(n.slot) = std::move(v);
              k.normal(std::move(s1));
            });
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            eval(*n.cond, std::move(s), [&](State s1, TermPtr c) {
              State other = s1;
              if (assume(s1, c)) exec(*n.then, std::move(s1), k);
              if (assume(other, negate(c))) {
                if (n.otherwise)
                  exec(*n.otherwise, std::move(other), k);
                else
                  k.normal(std::move(other));
              }
            });
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            loop(n, std::move(s), k);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            sequence(n.stmts, 0, std::move(s), k);
          } else {
            eval(*n.value, std::move(s), [&](State s1, TermPtr v) { k.ret(std::move(s1), std::move(v)); });
          }
        },
        st.node);
  }

  void sequence(const std::vector<StmtPtr>& stmts, std::size_t idx, State s, const StmtConts& k) {
    if (idx == stmts.size()) {
      k.normal(std::move(s));
      return;
    }
    exec(*stmts[idx], std::move(s),
         StmtConts{[&](State s1) { sequence(stmts, idx + 1, std::move(s1), k); }, k.ret});
  }

  void loop(const WhileStmt& w, State s, const StmtConts& k) {
    const bool annotated = static_cast<bool>(w.annotation.invariant);
    const bool returnsInside = containsReturn(*w.body) || (w.update && containsReturn(*w.update));
    if (config_.useInvariants && annotated && !returnsInside) {
      summarize(w, std::move(s), k);
      return;
    }
    if (config_.unrollDepth <= 0) {
      if (config_.useInvariants && annotated)
        throw ConfigError("loop " + std::to_string(w.loopId) +
                          " returns from its body and cannot be summarized; use an unroll depth > 0");
      throw ConfigError("loop " + std::to_string(w.loopId) + " of '" + method_.name +
                        "' has no usable invariant and the unroll depth is 0");
    }
    unroll(w, std::move(s), 0, k);
  }

  void unroll(const WhileStmt& w, State s, int iteration, const StmtConts& k) {
    eval(*w.cond, std::move(s), [&, iteration](State s1, TermPtr guard) {
      State exit = s1;
      if (assume(exit, negate(guard))) k.normal(std::move(exit));
      if (!assume(s1, guard)) return;
      if (iteration >= config_.unrollDepth) {
        cutoff(s1);
        return;
      }
      exec(*w.body, std::move(s1), StmtConts{[&, iteration](State s2) {
                                               if (!w.update) {
                                                 unroll(w, std::move(s2), iteration + 1, k);
                                                 return;
                                               }
                                               exec(*w.update, std::move(s2),
                                                    StmtConts{[&, iteration](State s3) {
                                                                unroll(w, std::move(s3), iteration + 1, k);
                                                              },
                                                              k.ret});
                                             },
                                             k.ret});
    });
  }

  void summarize(const WhileStmt& w, State s, const StmtConts& k) {
    const int instance = summaries_++;
    for (int slot : w.assignedSlots) {
      const int id = static_cast<int>(out_.symbols.size());
      out_.symbols.push_back({method_.slotNames.at(slot) + "#" + std::to_string(w.loopId) + "." +
                                  std::to_string(instance),
                              Symbol::Kind::Havoc, -1});
      s.vars.at(slot) = symbol(id);
    }
    s.summarized = true;
    out_.summarized = true;
    eval(*w.annotation.invariant, std::move(s), [&](State s1, TermPtr inv) {
      if (!assume(s1, inv)) return;
      eval(*w.cond, std::move(s1), [&](State s2, TermPtr guard) {
        if (assume(s2, negate(guard))) k.normal(std::move(s2));
      });
    });
  }

  const MethodDef& method_;
  const SymexecConfig& config_;
  Characterization& out_;
  BoundMap inputBounds_;
  int summaries_ = 0;
};

Assignment inputAssignment(const Characterization& c, const std::vector<Integer>& z) {
  Assignment a(c.symbols.size());
  for (std::size_t k = 0; k < z.size(); ++k) a[c.inputSymbols[k]] = z[k];
  return a;
}

/// Every summarized path yields at most one output on each sampled input.
bool summariesDeterminate(const Characterization& c, const Program& program, const MethodDef& method,
                          const SymexecConfig& config) {
  Rng rng(mixSeed({config.seed, nameHash(c.method)}));
  Domains box;
  for (const auto& d : c.domains) box.push_back(sampleRange(d));
  for (int sample = 0; sample < config.determinacySamples; ++sample) {
    std::vector<Integer> z;
    for (const auto& d : box) z.push_back(uniformIn(rng, d));
    if (!satisfiesPreconditions(program, method, z)) continue;
    const Assignment a = inputAssignment(c, z);
    std::vector<Integer> seen;
    for (const auto& p : c.paths) {
      if (!p.summarized || p.havoc()) continue;
      OutputSet o = enumerateOutputs({substitute(p.condition, a)}, substitute(p.output, a), 2);
      if (o.status == SolveStatus::Unknown) return false;
      for (const auto& v : o.values)
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
      if (seen.size() > 1) return false;
    }
  }
  return true;
}

}  // namespace

Characterization symexecMethod(const Program& program, const std::string& method, const SymexecConfig& config) {
  const MethodDef& original = program.method(method);
  const MethodDef flat = inlineCalls(program, method);
  Characterization c;
  c.method = method;
  if (!config.domains.empty()) {
    if (config.domains.size() != original.arity())
      throw ConfigError("'" + method + "' takes " + std::to_string(original.arity()) + " inputs, got " +
                        std::to_string(config.domains.size()) + " domains");
    c.domains = config.domains;
  } else {
    try {
      c.domains = inputDomain(original);
    } catch (const DomainError&) {
      c.domains.assign(original.arity(), Interval::unbounded());
    }
  }
  Executor exec(flat, c.domains, config, c);
  exec.run();
  c.exact = !c.cutoffHit && (!c.summarized || summariesDeterminate(c, program, original, config));
  return c;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validateCharacterization(const Characterization& c, const Program& program, std::size_t samples,
                                          std::uint64_t seed, const Domains& box) {
  const Domains& range = box.empty() ? c.domains : box;
  if (!allFinite(range))
    throw DomainError("validating '" + c.method + "' needs finite domains or an explicit sample box");
  const MethodDef& method = program.method(c.method);
  Rng rng(mixSeed({seed, nameHash(c.method)}));
  ValidationReport report;

  for (std::size_t sample = 0; sample < samples; ++sample) {
    std::vector<Integer> z;
    for (const auto& d : range) z.push_back(uniformIn(rng, d));
    if (!satisfiesPreconditions(program, method, z)) continue;
    ++report.samples;
    const Integer expected = evalMethod(program, method, z);
    const Assignment a = inputAssignment(c, z);
    const auto issue = [&](ValidationIssue::Kind kind, std::string detail) {
      report.issues.push_back({kind, z, std::move(detail)});
    };

    int holding = 0;
    for (std::size_t pi = 0; pi < c.paths.size(); ++pi) {
      const PathFormula& p = c.paths[pi];
      const TermPtr cond = substitute(p.condition, a);
      const TermPtr out = p.output ? substitute(p.output, a) : nullptr;
      OutputSet o = enumerateOutputs({cond}, out, 2);
      if (o.status == SolveStatus::Unknown) {
        issue(ValidationIssue::Kind::Undecided, "path " + std::to_string(pi + 1) + " undecided");
        continue;
      }
      if (o.status == SolveStatus::Unsat) continue;
      ++holding;
      if (p.havoc()) {
        ++report.havocHits;
        continue;
      }
      const bool pinned = o.values.size() == 1 && o.exhaustive;
      if (pinned && o.values.front() == expected) continue;
      if (!pinned && !c.exact) {
        // Over-approximate path: the true output only has to be possible.
        OutputSet m = enumerateOutputs({cond, eq(out, intConst(expected))}, nullptr, 1);
        if (m.status == SolveStatus::Sat) continue;
      }
      std::string got;
      for (const auto& v : o.values) got += (got.empty() ? "" : "|") + v.str();
      issue(ValidationIssue::Kind::Disagreement,
            "path " + std::to_string(pi + 1) + " yields " + got + ", method returns " + expected.str());
    }
    if (holding == 0) issue(ValidationIssue::Kind::Gap, "no path condition holds");
    if (holding > 1) issue(ValidationIssue::Kind::Overlap, std::to_string(holding) + " path conditions hold");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Dumps

std::string dumpText(const Characterization& c) {
  std::ostringstream os;
  os << "method " << c.method << "(";
  for (std::size_t k = 0; k < c.arity(); ++k) os << (k ? ", " : "") << c.symbols[c.inputSymbols[k]].name;
  os << ")\n";
  os << "domains:";
  for (std::size_t k = 0; k < c.arity(); ++k) os << " " << c.symbols[c.inputSymbols[k]].name << c.domains[k].str();
  os << "\nexact: " << (c.exact ? "true" : "false") << ", cutoff: " << (c.cutoffHit ? "yes" : "no")
     << ", summarized: " << (c.summarized ? "yes" : "no") << ", paths: " << c.paths.size() << "\n";
  for (std::size_t k = 0; k < c.paths.size(); ++k) {
    const auto& p = c.paths[k];
    os << "[" << k + 1 << "] " << toString(p.condition, c.symbols) << " => "
       << (p.output ? toString(p.output, c.symbols) : std::string("HAVOC")) << "\n";
  }
  return os.str();
}

std::string dumpSmt(const Characterization& c) {
  const auto name = [&](int id) { return "|" + c.symbols.at(id).name + "|"; };
  std::ostringstream os;
  os << "; characterization of " << c.method << (c.exact ? " (exact)" : " (over-approximation)") << "\n";
  os << "(set-logic " << (c.linear() ? "QF_LIA" : "QF_NIA") << ")\n";
  for (std::size_t id = 0; id < c.symbols.size(); ++id) os << "(declare-const " << name(id) << " Int)\n";
  for (std::size_t k = 0; k < c.paths.size(); ++k) {
    const auto& p = c.paths[k];
    os << "(define-fun path" << k + 1 << "_cond () Bool " << toSmt(p.condition, name) << ")\n";
    if (p.output)
      os << "(define-fun path" << k + 1 << "_out () Int " << toSmt(p.output, name) << ")\n";
    else
      os << "; path" << k + 1 << " output: HAVOC\n";
  }
  return os.str();
}

}  // namespace hypermon::sym
