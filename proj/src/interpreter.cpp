#include "hypermon/interpreter.hpp"

#include <optional>

namespace hypermon::lang {

namespace {

using Frame = std::vector<std::optional<Integer>>;

class Interpreter {
 public:
  Interpreter(const Program& program, const EvalOptions& options)
      : program_(program), options_(options), fuel_(options.fuel) {}

  Integer call(const MethodDef& method, std::span<const Integer> args) {
    if (args.size() != method.arity()) {
      throw EvalError(EvalError::Kind::Arity, "method '" + method.name + "' expects " +
                                                  std::to_string(method.arity()) + " arguments, got " +
                                                  std::to_string(args.size()));
    }
    Frame frame(method.frameSize);
    for (std::size_t k = 0; k < args.size(); ++k) frame[method.params[k].slot] = args[k];
    if (options_.checkPreconditions) {
      for (const auto& pre : method.preconditions) {
        if (eval(*pre, frame) == 0)
          throw EvalError(EvalError::Kind::Precondition,
                          "precondition of '" + method.name + "' violated: " + render(*pre));
      }
    }
    auto result = exec(*method.body, frame);
    if (!result) throw EvalError(EvalError::Kind::Uninitialized, "method '" + method.name + "' did not return");
    if (options_.checkContracts) {
      for (const auto& post : method.postconditions) {
        result_ = &*result;
        const bool ok = eval(*post, frame) != 0;
        result_ = nullptr;
        if (!ok)
          throw EvalError(EvalError::Kind::Contract,
                          "postcondition of '" + method.name + "' violated: " + render(*post));
      }
    }
    return std::move(*result);
  }

  Integer evalIn(const Expr& expr, Frame& frame, const Integer* result) {
    result_ = result;
    Integer v = eval(expr, frame);
    result_ = nullptr;
    return v;
  }

 private:
  void burn() {
    if (fuel_ == 0) throw EvalError(EvalError::Kind::Divergence, "evaluation exceeded fuel bound");
    --fuel_;
  }

  /// Returns the method result when a return statement was executed.
  std::optional<Integer> exec(const Stmt& stmt, Frame& frame) {
    burn();
    return std::visit(
        [&](const auto& n) -> std::optional<Integer> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            if (n.init)
              frame[n.slot] = eval(*n.init, frame);
            else
              frame[n.slot].reset();
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            frame[n.slot] = eval(*n.value, frame);
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            if (eval(*n.cond, frame) != 0) return exec(*n.then, frame);
            if (n.otherwise) return exec(*n.otherwise, frame);
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            while (true) {
              if (options_.checkContracts && n.annotation.invariant &&
                  eval(*n.annotation.invariant, frame) == 0) {
                throw EvalError(EvalError::Kind::Contract,
                                "loop invariant violated: " + render(*n.annotation.invariant));
              }
              if (eval(*n.cond, frame) == 0) return std::nullopt;
              burn();
              if (auto r = exec(*n.body, frame)) return r;
              if (n.update)
                if (auto r = exec(*n.update, frame)) return r;
            }
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            for (const auto& s : n.stmts)
              if (auto r = exec(*s, frame)) return r;
            return std::nullopt;
          } else {
            return eval(*n.value, frame);
          }
        },
        stmt.node);
  }

  Integer eval(const Expr& expr, Frame& frame) {
    return std::visit(
        [&](const auto& n) -> Integer {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return n.value;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return n.value ? 1 : 0;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            const auto& v = frame[n.slot];
            if (!v) throw EvalError(EvalError::Kind::Uninitialized, "variable '" + n.name + "' read before assignment");
            return *v;
          } else if constexpr (std::is_same_v<T, ResultRef>) {
            if (!result_) throw EvalError(EvalError::Kind::Uninitialized, "'\\result' outside postcondition");
            return *result_;
          } else if constexpr (std::is_same_v<T, Unary>) {
            Integer v = eval(*n.operand, frame);
            if (n.op == UnOp::Neg) return -v;
            return v == 0 ? 1 : 0;
          } else if constexpr (std::is_same_v<T, Binary>) {
            return binary(n, frame);
          } else if constexpr (std::is_same_v<T, Call>) {
            burn();
            std::vector<Integer> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(eval(*a, frame));
            return call(program_.methods.at(n.target), args);
          } else {
            burn();
            std::vector<Integer> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(eval(*a, frame));
            for (std::size_t k = 0; k < args.size(); ++k) frame[n.paramSlots[k]] = std::move(args[k]);
            if (options_.checkPreconditions) {
              for (const auto& pre : n.preconditions)
                if (eval(*pre, frame) == 0)
                  throw EvalError(EvalError::Kind::Precondition,
                                  "precondition of '" + n.callee + "' violated: " + render(*pre));
            }
            auto r = exec(*n.body, frame);
            if (!r) throw EvalError(EvalError::Kind::Uninitialized, "inlined '" + n.callee + "' did not return");
            return std::move(*r);
          }
        },
        expr.node);
  }

  Integer binary(const Binary& b, Frame& frame) {
    if (b.op == BinOp::And) return eval(*b.lhs, frame) != 0 && eval(*b.rhs, frame) != 0 ? 1 : 0;
    if (b.op == BinOp::Or) return eval(*b.lhs, frame) != 0 || eval(*b.rhs, frame) != 0 ? 1 : 0;
    Integer l = eval(*b.lhs, frame);
    Integer r = eval(*b.rhs, frame);
    switch (b.op) {
      case BinOp::Add: return l + r;
      case BinOp::Sub: return l - r;
      case BinOp::Mul: return l * r;
      case BinOp::Div:
      case BinOp::Mod:
        if (r == 0) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
        return b.op == BinOp::Div ? truncDiv(l, r) : truncMod(l, r);
      case BinOp::Lt: return l < r ? 1 : 0;
      case BinOp::Le: return l <= r ? 1 : 0;
      case BinOp::Gt: return l > r ? 1 : 0;
      case BinOp::Ge: return l >= r ? 1 : 0;
      case BinOp::Eq: return l == r ? 1 : 0;
      case BinOp::Ne: return l != r ? 1 : 0;
      default: break;
    }
    return 0;
  }

  const Program& program_;
  const EvalOptions& options_;
  std::uint64_t fuel_;
  const Integer* result_ = nullptr;
};

}  // namespace

Integer evalMethod(const Program& program, const MethodDef& method, std::span<const Integer> args,
                   const EvalOptions& options) {
  Interpreter interp(program, options);
  return interp.call(method, args);
}

Integer evalMethod(const Program& program, const std::string& method, std::span<const Integer> args,
                   const EvalOptions& options) {
  return evalMethod(program, program.method(method), args, options);
}

bool satisfiesPreconditions(const Program& program, const MethodDef& method, std::span<const Integer> args) {
  if (method.preconditions.empty()) return true;
  EvalOptions options;
  options.fuel = 1'000'000;
  Interpreter interp(program, options);
  Frame frame(method.frameSize);
  for (std::size_t k = 0; k < args.size() && k < method.params.size(); ++k) frame[method.params[k].slot] = args[k];
  try {
    for (const auto& pre : method.preconditions)
      if (interp.evalIn(*pre, frame, nullptr) == 0) return false;
  } catch (const EvalError&) {
    return false;
  }
  return true;
}

bool evalPredicate(const Program& program, const Expr& expr, std::span<const Integer> frame,
                   const Integer* result) {
  EvalOptions options;
  Interpreter interp(program, options);
  Frame f(frame.begin(), frame.end());
  return interp.evalIn(expr, f, result) != 0;
}

}  // namespace hypermon::lang
