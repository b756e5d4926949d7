#include "hypermon/ast.hpp"

namespace hypermon::lang {

const char* spelling(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

const MethodDef* Program::find(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const MethodDef& Program::method(const std::string& name) const {
  if (const auto* m = find(name)) return *m;
  throw Error("no method '" + name + "' in class " + className);
}

ExprPtr makeExpr(decltype(Expr::node) node, SourceLoc loc) {
  return std::make_shared<const Expr>(Expr{std::move(node), loc});
}

StmtPtr makeStmt(decltype(Stmt::node) node, SourceLoc loc) {
  return std::make_shared<const Stmt>(Stmt{std::move(node), loc});
}

std::string render(const Expr& expr) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return n.value.str();
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, ResultRef>) {
          return "\\result";
        } else if constexpr (std::is_same_v<T, Unary>) {
          return std::string(n.op == UnOp::Neg ? "-" : "!") + render(*n.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + render(*n.lhs) + " " + spelling(n.op) + " " + render(*n.rhs) + ")";
        } else {
          std::string out = n.callee + "(";
          for (std::size_t k = 0; k < n.args.size(); ++k) out += (k ? ", " : "") + render(*n.args[k]);
          return out + ")";
        }
      },
      expr.node);
}

}  // namespace hypermon::lang
