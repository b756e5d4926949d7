#include "hypermon/term.hpp"

#include <algorithm>

namespace hypermon::sym {

namespace {

TermPtr make(Op op, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->op = op;
  t->args = std::move(args);
  return t;
}

const Integer* intValue(const TermPtr& t) { return t->op == Op::Int ? &t->value : nullptr; }

bool sameTerm(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->op != b->op || a->args.size() != b->args.size()) return false;
  switch (a->op) {
    case Op::Int: return a->value == b->value;
    case Op::Bool: return a->truth == b->truth;
    case Op::Sym: return a->symbol == b->symbol;
    default: break;
  }
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!sameTerm(a->args[k], b->args[k])) return false;
  return true;
}

}  // namespace

bool Term::isBool() const {
  switch (op) {
    case Op::Bool: case Op::Lt: case Op::Le: case Op::Eq: case Op::Ne:
    case Op::And: case Op::Or: case Op::Not:
      return true;
    default:
      return false;
  }
}

TermPtr intConst(const Integer& v) {
  auto t = std::make_shared<Term>();
  t->op = Op::Int;
  t->value = v;
  return t;
}

TermPtr boolConst(bool b) {
  static const TermPtr kTrue = [] {
    auto t = std::make_shared<Term>();
    t->op = Op::Bool;
    t->truth = true;
    return TermPtr(t);
  }();
  static const TermPtr kFalse = [] {
    auto t = std::make_shared<Term>();
    t->op = Op::Bool;
    t->truth = false;
    return TermPtr(t);
  }();
  return b ? kTrue : kFalse;
}

TermPtr symbol(int id) {
  auto t = std::make_shared<Term>();
  t->op = Op::Sym;
  t->symbol = id;
  return t;
}

bool isTrue(const TermPtr& t) { return t->op == Op::Bool && t->truth; }
bool isFalse(const TermPtr& t) { return t->op == Op::Bool && !t->truth; }

TermPtr add(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return intConst(*x + *y);
  if (x && *x == 0) return b;
  if (y && *y == 0) return a;
  return make(Op::Add, {std::move(a), std::move(b)});
}

TermPtr sub(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return intConst(*x - *y);
  if (y && *y == 0) return a;
  if (sameTerm(a, b)) return intConst(0);
  return make(Op::Sub, {std::move(a), std::move(b)});
}

TermPtr mul(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return intConst(*x * *y);
  if ((x && *x == 0) || (y && *y == 0)) return intConst(0);
  if (x && *x == 1) return b;
  if (y && *y == 1) return a;
  return make(Op::Mul, {std::move(a), std::move(b)});
}

TermPtr div(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y && *y != 0) return intConst(truncDiv(*x, *y));
  if (y && *y == 1) return a;
  return make(Op::Div, {std::move(a), std::move(b)});
}

TermPtr mod(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y && *y != 0) return intConst(truncMod(*x, *y));
  if (y && (*y == 1 || *y == -1)) return intConst(0);
  return make(Op::Mod, {std::move(a), std::move(b)});
}

TermPtr neg(TermPtr a) {
  if (const Integer* x = intValue(a)) return intConst(-*x);
  if (a->op == Op::Neg) return a->args[0];
  return make(Op::Neg, {std::move(a)});
}

TermPtr lt(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return boolConst(*x < *y);
  if (sameTerm(a, b)) return boolConst(false);
  return make(Op::Lt, {std::move(a), std::move(b)});
}

TermPtr le(TermPtr a, TermPtr b) {
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return boolConst(*x <= *y);
  if (sameTerm(a, b)) return boolConst(true);
  return make(Op::Le, {std::move(a), std::move(b)});
}

TermPtr gt(TermPtr a, TermPtr b) { return lt(std::move(b), std::move(a)); }
TermPtr ge(TermPtr a, TermPtr b) { return le(std::move(b), std::move(a)); }

TermPtr eq(TermPtr a, TermPtr b) {
  if (a->op == Op::Bool && b->op == Op::Bool) return boolConst(a->truth == b->truth);
  const Integer* x = intValue(a);
  const Integer* y = intValue(b);
  if (x && y) return boolConst(*x == *y);
  if (sameTerm(a, b)) return boolConst(true);
  return make(Op::Eq, {std::move(a), std::move(b)});
}

TermPtr ne(TermPtr a, TermPtr b) { return negate(eq(std::move(a), std::move(b))); }

TermPtr conj(TermPtr a, TermPtr b) {
  if (isFalse(a) || isFalse(b)) return boolConst(false);
  if (isTrue(a)) return b;
  if (isTrue(b)) return a;
  return make(Op::And, {std::move(a), std::move(b)});
}

TermPtr disj(TermPtr a, TermPtr b) {
  if (isTrue(a) || isTrue(b)) return boolConst(true);
  if (isFalse(a)) return b;
  if (isFalse(b)) return a;
  return make(Op::Or, {std::move(a), std::move(b)});
}

TermPtr negate(TermPtr a) {
  switch (a->op) {
    case Op::Bool: return boolConst(!a->truth);
    case Op::Not: return a->args[0];
    case Op::Lt: return le(a->args[1], a->args[0]);
    case Op::Le: return lt(a->args[1], a->args[0]);
    case Op::Eq: return make(Op::Ne, a->args);
    case Op::Ne: return make(Op::Eq, a->args);
    default: return make(Op::Not, {std::move(a)});
  }
}

TermPtr conjAll(const std::vector<TermPtr>& terms) {
  TermPtr out = boolConst(true);
  for (const auto& t : terms) out = conj(out, t);
  return out;
}

TermPtr substitute(const TermPtr& t, const Assignment& values) {
  switch (t->op) {
    case Op::Int:
    case Op::Bool:
      return t;
    case Op::Sym:
      if (t->symbol < static_cast<int>(values.size()) && values[t->symbol]) return intConst(*values[t->symbol]);
      return t;
    default:
      break;
  }
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    args.push_back(substitute(a, values));
    changed = changed || args.back() != a;
  }
  if (!changed) return t;
  switch (t->op) {
    case Op::Add: return add(args[0], args[1]);
    case Op::Sub: return sub(args[0], args[1]);
    case Op::Mul: return mul(args[0], args[1]);
    case Op::Div: return div(args[0], args[1]);
    case Op::Mod: return mod(args[0], args[1]);
    case Op::Neg: return neg(args[0]);
    case Op::Lt: return lt(args[0], args[1]);
    case Op::Le: return le(args[0], args[1]);
    case Op::Eq: return eq(args[0], args[1]);
    case Op::Ne: return ne(args[0], args[1]);
    case Op::And: return conj(args[0], args[1]);
    case Op::Or: return disj(args[0], args[1]);
    case Op::Not: return negate(args[0]);
    default: return t;
  }
}

Integer evaluate(const TermPtr& t, const Assignment& values) {
  const auto& a = t->args;
  switch (t->op) {
    case Op::Int: return t->value;
    case Op::Bool: return t->truth ? 1 : 0;
    case Op::Sym:
      if (t->symbol >= static_cast<int>(values.size()) || !values[t->symbol])
        throw std::logic_error("evaluate: unassigned symbol");
      return *values[t->symbol];
    case Op::Add: return evaluate(a[0], values) + evaluate(a[1], values);
    case Op::Sub: return evaluate(a[0], values) - evaluate(a[1], values);
    case Op::Mul: return evaluate(a[0], values) * evaluate(a[1], values);
    case Op::Div:
    case Op::Mod: {
      Integer l = evaluate(a[0], values);
      Integer r = evaluate(a[1], values);
      if (r == 0) throw UndefinedValue();
      return t->op == Op::Div ? truncDiv(l, r) : truncMod(l, r);
    }
    case Op::Neg: return -evaluate(a[0], values);
    case Op::Lt: return evaluate(a[0], values) < evaluate(a[1], values) ? 1 : 0;
    case Op::Le: return evaluate(a[0], values) <= evaluate(a[1], values) ? 1 : 0;
    case Op::Eq: return evaluate(a[0], values) == evaluate(a[1], values) ? 1 : 0;
    case Op::Ne: return evaluate(a[0], values) != evaluate(a[1], values) ? 1 : 0;
    case Op::And: return evaluate(a[0], values) != 0 && evaluate(a[1], values) != 0 ? 1 : 0;
    case Op::Or: return evaluate(a[0], values) != 0 || evaluate(a[1], values) != 0 ? 1 : 0;
    case Op::Not: return evaluate(a[0], values) == 0 ? 1 : 0;
  }
  return 0;
}

void collectSymbols(const TermPtr& t, std::vector<int>& out) {
  if (t->op == Op::Sym) {
    auto it = std::lower_bound(out.begin(), out.end(), t->symbol);
    if (it == out.end() || *it != t->symbol) out.insert(it, t->symbol);
    return;
  }
  for (const auto& a : t->args) collectSymbols(a, out);
}

void flattenConjunction(const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->op == Op::And) {
    flattenConjunction(t->args[0], out);
    flattenConjunction(t->args[1], out);
  } else if (!isTrue(t)) {
    out.push_back(t);
  }
}

namespace {

void addScaled(LinearForm& into, const LinearForm& from, const Integer& factor) {
  for (const auto& [s, c] : from.coeffs) {
    Integer& slot = into.coeffs[s];
    slot += c * factor;
    if (slot == 0) into.coeffs.erase(s);
  }
  into.constant += from.constant * factor;
}

}  // namespace

std::optional<LinearForm> linearize(const TermPtr& t) {
  switch (t->op) {
    case Op::Int: return LinearForm{{}, t->value};
    case Op::Sym: return LinearForm{{{t->symbol, Integer(1)}}, Integer(0)};
    case Op::Neg: {
      auto inner = linearize(t->args[0]);
      if (!inner) return std::nullopt;
      LinearForm out;
      addScaled(out, *inner, -1);
      return out;
    }
    case Op::Add:
    case Op::Sub: {
      auto l = linearize(t->args[0]);
      auto r = linearize(t->args[1]);
      if (!l || !r) return std::nullopt;
      addScaled(*l, *r, t->op == Op::Add ? 1 : -1);
      return l;
    }
    case Op::Mul: {
      auto l = linearize(t->args[0]);
      auto r = linearize(t->args[1]);
      if (!l || !r) return std::nullopt;
      if (l->coeffs.empty()) {
        LinearForm out;
        addScaled(out, *r, l->constant);
        return out;
      }
      if (r->coeffs.empty()) {
        LinearForm out;
        addScaled(out, *l, r->constant);
        return out;
      }
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

bool isNonlinear(const TermPtr& t) {
  if (t->op == Op::Mul && !t->args[0]->isConst() && !t->args[1]->isConst()) return true;
  if ((t->op == Op::Div || t->op == Op::Mod) && !t->args[1]->isConst()) return true;
  for (const auto& a : t->args)
    if (isNonlinear(a)) return true;
  return false;
}

std::string toString(const TermPtr& t, const std::vector<Symbol>& symbols) {
  const auto bin = [&](const char* op) {
    return "(" + toString(t->args[0], symbols) + " " + op + " " + toString(t->args[1], symbols) + ")";
  };
  switch (t->op) {
    case Op::Int: return t->value.str();
    case Op::Bool: return t->truth ? "true" : "false";
    case Op::Sym:
      return t->symbol < static_cast<int>(symbols.size()) ? symbols[t->symbol].name : "s" + std::to_string(t->symbol);
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Mod: return bin("%");
    case Op::Neg: return "-" + toString(t->args[0], symbols);
    case Op::Lt: return bin("<");
    case Op::Le: return bin("<=");
    case Op::Eq: return bin("==");
    case Op::Ne: return bin("!=");
    case Op::And: return bin("&&");
    case Op::Or: return bin("||");
    case Op::Not: return "!" + toString(t->args[0], symbols);
  }
  return "?";
}

namespace {

std::string smtInt(const Integer& v) { return v < 0 ? "(- " + Integer(-v).str() + ")" : v.str(); }

}  // namespace

std::string toSmt(const TermPtr& t, const std::function<std::string(int)>& name) {
  const auto s = [&](int k) { return toSmt(t->args[k], name); };
  switch (t->op) {
    case Op::Int: return smtInt(t->value);
    case Op::Bool: return t->truth ? "true" : "false";
    case Op::Sym: return name(t->symbol);
    case Op::Add: return "(+ " + s(0) + " " + s(1) + ")";
    case Op::Sub: return "(- " + s(0) + " " + s(1) + ")";
    case Op::Mul: return "(* " + s(0) + " " + s(1) + ")";
    case Op::Div: {
      // SMT-LIB div is Euclidean; truncation differs for negative dividends.
      const std::string a = s(0), b = s(1);
      return "(ite (>= " + a + " 0) (div " + a + " " + b + ") (- (div (- " + a + ") " + b + ")))";
    }
    case Op::Mod: {
      const std::string a = s(0), b = s(1);
      const std::string q = "(ite (>= " + a + " 0) (div " + a + " " + b + ") (- (div (- " + a + ") " + b + ")))";
      return "(- " + a + " (* " + b + " " + q + "))";
    }
    case Op::Neg: return "(- " + s(0) + ")";
    case Op::Lt: return "(< " + s(0) + " " + s(1) + ")";
    case Op::Le: return "(<= " + s(0) + " " + s(1) + ")";
    case Op::Eq: return "(= " + s(0) + " " + s(1) + ")";
    case Op::Ne: return "(distinct " + s(0) + " " + s(1) + ")";
    case Op::And: return "(and " + s(0) + " " + s(1) + ")";
    case Op::Or: return "(or " + s(0) + " " + s(1) + ")";
    case Op::Not: return "(not " + s(0) + ")";
  }
  return "false";
}

}  // namespace hypermon::sym
