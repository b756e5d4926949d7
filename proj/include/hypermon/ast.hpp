#pragma once

// AST of the annotated integer mini-language.
//
// Every local variable (parameters included) is resolved at parse time to a
// slot in its method's frame; slots are never reused within a method, so an
// inlined callee can be relocated into the caller's frame by offsetting its
// slots.

#include "hypermon/error.hpp"
#include "hypermon/integer.hpp"
#include "hypermon/interval.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hypermon::lang {

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnOp { Neg, Not };

const char* spelling(BinOp op);

struct IntLit {
  Integer value;
};
struct BoolLit {
  bool value;
};
struct VarRef {
  std::string name;
  int slot;
};
/// `\result` inside an ensures clause.
struct ResultRef {};
struct Unary {
  UnOp op;
  ExprPtr operand;
};
struct Binary {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Call {
  std::string callee;
  std::vector<ExprPtr> args;
  int target = -1;  // index into Program::methods
};
/// A call whose callee body has been copied into the caller (see inlineCalls).
/// Arguments are bound to `paramSlots`; a `return` in `body` yields the value.
struct InlinedCall {
  std::string callee;
  std::vector<ExprPtr> args;
  std::vector<int> paramSlots;
  std::vector<ExprPtr> preconditions;
  StmtPtr body;
};

struct Expr {
  std::variant<IntLit, BoolLit, VarRef, ResultRef, Unary, Binary, Call, InlinedCall> node;
  SourceLoc loc;
};

struct LoopAnnotation {
  ExprPtr invariant;  // nullable
  ExprPtr variant;    // nullable
};

struct DeclStmt {
  std::string name;
  int slot;
  ExprPtr init;  // nullable
};
struct AssignStmt {
  std::string name;
  int slot;
  ExprPtr value;
};
struct IfStmt {
  ExprPtr cond;
  StmtPtr then;
  StmtPtr otherwise;  // nullable
};
/// `while` loop; `for` loops are desugared into a block holding the init
/// statement followed by a WhileStmt with a non-null `update`.
struct WhileStmt {
  ExprPtr cond;
  StmtPtr body;
  StmtPtr update;  // nullable
  LoopAnnotation annotation;
  /// Slots declared outside the loop and assigned in body or update.
  std::vector<int> assignedSlots;
  int loopId = 0;
};
struct BlockStmt {
  std::vector<StmtPtr> stmts;
};
struct ReturnStmt {
  ExprPtr value;
};

struct Stmt {
  std::variant<DeclStmt, AssignStmt, IfStmt, WhileStmt, BlockStmt, ReturnStmt> node;
  SourceLoc loc;
};

struct Param {
  std::string name;
  int slot;
  std::optional<Interval> range;  // from `//@ domain name in [lo, hi];`
};

struct MethodDef {
  std::string name;
  std::vector<Param> params;
  StmtPtr body;
  std::vector<ExprPtr> preconditions;
  std::vector<ExprPtr> postconditions;
  int frameSize = 0;
  /// Slot names, indexed by slot (for diagnostics and symbol naming).
  std::vector<std::string> slotNames;
  SourceLoc loc;

  std::size_t arity() const { return params.size(); }
};

struct Program {
  std::string className;
  std::vector<MethodDef> methods;

  const MethodDef* find(const std::string& name) const;
  const MethodDef& method(const std::string& name) const;
  /// Last method in the file; the conventional default entry point.
  const std::string& defaultEntry() const { return methods.back().name; }
};

// Construction helpers used by the parser and the inliner.
ExprPtr makeExpr(decltype(Expr::node) node, SourceLoc loc = {});
StmtPtr makeStmt(decltype(Stmt::node) node, SourceLoc loc = {});

/// Renders an expression in surface syntax (fully parenthesised binaries).
std::string render(const Expr& expr);

}  // namespace hypermon::lang
