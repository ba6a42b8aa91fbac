#include "grassp/eval.hpp"

#include "grassp/detail/overloaded.hpp"
#include "grassp/error.hpp"

namespace grassp {
namespace {

using detail::Overloaded;

Scalar apply(ArithOp op, const Scalar& a, const Scalar& b) {
  switch (op) {
    case ArithOp::kAdd:
      return add(a, b);
    case ArithOp::kSub:
      return sub(a, b);
    case ArithOp::kMul:
      return mul(a, b);
    case ArithOp::kMin:
      return min_of(a, b);
    case ArithOp::kMax:
      return max_of(a, b);
  }
  throw EvalError("unknown arithmetic operator");
}

bool apply(CmpOp op, const Scalar& a, const Scalar& b) {
  switch (op) {
    case CmpOp::kEq:
      return a == b;
    case CmpOp::kNe:
      return a != b;
    case CmpOp::kLt:
      return compare(a, b) < 0;
    case CmpOp::kLe:
      return compare(a, b) <= 0;
    case CmpOp::kGt:
      return compare(a, b) > 0;
    case CmpOp::kGe:
      return compare(a, b) >= 0;
  }
  throw EvalError("unknown comparison operator");
}

}  // namespace

Scalar eval_expr(const Expr& e, std::span<const Scalar> state,
                 std::optional<Scalar> input) {
  return std::visit(
      Overloaded{
          [](const ConstExpr& n) { return n.value; },
          [&](const InputExpr&) {
            if (!input) throw EvalError("current input is not available here");
            return *input;
          },
          [&](const FieldExpr& n) {
            if (n.index >= state.size()) throw EvalError("state index out of range");
            return state[n.index];
          },
          [&](const IfExpr& n) {
            return eval_bool(n.cond, state, input)
                       ? eval_expr(n.then_branch, state, input)
                       : eval_expr(n.else_branch, state, input);
          },
          [&](const ArithExpr& n) {
            return apply(n.op, eval_expr(n.lhs, state, input),
                         eval_expr(n.rhs, state, input));
          },
      },
      e.node().v);
}

bool eval_bool(const BoolExpr& b, std::span<const Scalar> state,
               std::optional<Scalar> input) {
  return std::visit(
      Overloaded{
          [&](const CmpBool& n) {
            return apply(n.op, eval_expr(n.lhs, state, input),
                         eval_expr(n.rhs, state, input));
          },
          [&](const AndBool& n) {
            return eval_bool(n.lhs, state, input) && eval_bool(n.rhs, state, input);
          },
          [&](const OrBool& n) {
            return eval_bool(n.lhs, state, input) || eval_bool(n.rhs, state, input);
          },
          [&](const NotBool& n) { return !eval_bool(n.operand, state, input); },
      },
      b.node().v);
}

bool eval_predicate(const BoolExpr& b, const Scalar& element) {
  return eval_bool(b, {}, element);
}

}  // namespace grassp
