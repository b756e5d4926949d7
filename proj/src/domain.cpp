#include "hypermon/domain.hpp"

#include <algorithm>

namespace hypermon::lang {

namespace {

std::optional<Integer> constant(const Expr& e) {
  if (const auto* lit = std::get_if<IntLit>(&e.node)) return lit->value;
  if (const auto* u = std::get_if<Unary>(&e.node); u && u->op == UnOp::Neg)
    if (auto inner = constant(*u->operand)) return -*inner;
  return std::nullopt;
}

BinOp mirror(BinOp op) {
  switch (op) {
    case BinOp::Lt: return BinOp::Gt;
    case BinOp::Le: return BinOp::Ge;
    case BinOp::Gt: return BinOp::Lt;
    case BinOp::Ge: return BinOp::Le;
    default: return op;
  }
}

/// Adds the interval implied by `e` to `ranges`; false if `e` is not a
/// conjunction of parameter/constant comparisons.
bool decompose(const Expr& e, const MethodDef& method, Domains& ranges) {
  const auto* b = std::get_if<Binary>(&e.node);
  if (!b) {
    if (const auto* lit = std::get_if<BoolLit>(&e.node)) return lit->value;
    return false;
  }
  if (b->op == BinOp::And) return decompose(*b->lhs, method, ranges) && decompose(*b->rhs, method, ranges);

  const VarRef* var = std::get_if<VarRef>(&b->lhs->node);
  std::optional<Integer> bound = constant(*b->rhs);
  BinOp op = b->op;
  if (!var || !bound) {
    var = std::get_if<VarRef>(&b->rhs->node);
    bound = constant(*b->lhs);
    op = mirror(op);
  }
  if (!var || !bound) return false;
  auto param = std::find_if(method.params.begin(), method.params.end(),
                            [&](const Param& p) { return p.slot == var->slot; });
  if (param == method.params.end()) return false;
  Interval& range = ranges[param - method.params.begin()];
  switch (op) {
    case BinOp::Lt: range = range.intersect({std::nullopt, *bound - 1}); return true;
    case BinOp::Le: range = range.intersect({std::nullopt, *bound}); return true;
    case BinOp::Gt: range = range.intersect({*bound + 1, std::nullopt}); return true;
    case BinOp::Ge: range = range.intersect({*bound, std::nullopt}); return true;
    case BinOp::Eq: range = range.intersect({*bound, *bound}); return true;
    default: return false;
  }
}

}  // namespace

Domains inputDomain(const MethodDef& method) {
  Domains ranges(method.arity());
  bool allDeclared = true;
  for (std::size_t k = 0; k < method.arity(); ++k) {
    if (method.params[k].range)
      ranges[k] = *method.params[k].range;
    else
      allDeclared = false;
  }
  for (const auto& pre : method.preconditions) {
    Domains scratch = ranges;
    if (decompose(*pre, method, scratch)) {
      ranges = std::move(scratch);
    } else if (!allDeclared) {
      throw DomainError("requires clause of '" + method.name +
                        "' is not a conjunction of interval constraints: " + render(*pre));
    }
  }
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    if (ranges[k].empty())
      throw DomainError("empty input domain for parameter '" + method.params[k].name + "' of '" + method.name + "'");
  }
  return ranges;
}

Domains withOverrides(const MethodDef& method, Domains domains,
                      const std::vector<std::pair<std::string, Interval>>& overrides) {
  for (const auto& [name, range] : overrides) {
    auto param = std::find_if(method.params.begin(), method.params.end(),
                              [&](const Param& p) { return p.name == name; });
    if (param == method.params.end())
      throw DomainError("method '" + method.name + "' has no parameter '" + name + "'");
    if (range.empty()) throw DomainError("empty domain override for '" + name + "'");
    domains[param - method.params.begin()] = range;
  }
  return domains;
}

}  // namespace hypermon::lang
