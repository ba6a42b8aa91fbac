#include "grassp/expr.hpp"

#include <algorithm>

#include "grassp/detail/overloaded.hpp"

namespace grassp {

using detail::Overloaded;

std::string_view symbol(ArithOp op) {
  switch (op) {
    case ArithOp::kAdd:
      return "+";
    case ArithOp::kSub:
      return "-";
    case ArithOp::kMul:
      return "*";
    case ArithOp::kMin:
      return "min";
    case ArithOp::kMax:
      return "max";
  }
  return "?";
}

std::string_view symbol(CmpOp op) {
  switch (op) {
    case CmpOp::kEq:
      return "=";
    case CmpOp::kNe:
      return "!=";
    case CmpOp::kLt:
      return "<";
    case CmpOp::kLe:
      return "<=";
    case CmpOp::kGt:
      return ">";
    case CmpOp::kGe:
      return ">=";
  }
  return "?";
}

bool is_ordered(CmpOp op) { return op != CmpOp::kEq && op != CmpOp::kNe; }

Expr::Expr() {
  static const auto zero =
      std::make_shared<const ExprNode>(ExprNode{ConstExpr{Scalar(0)}});
  node_ = zero;
}

Expr Expr::constant(Scalar value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{ConstExpr{value}}));
}

Expr Expr::input() {
  static const auto node = std::make_shared<const ExprNode>(ExprNode{InputExpr{}});
  return Expr(node);
}

Expr Expr::field(std::size_t index) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{FieldExpr{index}}));
}

Expr Expr::if_then_else(BoolExpr cond, Expr then_branch, Expr else_branch) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{
      IfExpr{std::move(cond), std::move(then_branch), std::move(else_branch)}}));
}

Expr Expr::arith(ArithOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{ArithExpr{op, std::move(lhs), std::move(rhs)}}));
}

bool operator==(const Expr& a, const Expr& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

BoolExpr BoolExpr::compare(CmpOp op, Expr lhs, Expr rhs) {
  return BoolExpr(std::make_shared<const BoolNode>(
      BoolNode{CmpBool{op, std::move(lhs), std::move(rhs)}}));
}

BoolExpr BoolExpr::conjunction(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr(std::make_shared<const BoolNode>(
      BoolNode{AndBool{std::move(lhs), std::move(rhs)}}));
}

BoolExpr BoolExpr::disjunction(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr(std::make_shared<const BoolNode>(
      BoolNode{OrBool{std::move(lhs), std::move(rhs)}}));
}

BoolExpr BoolExpr::negation(BoolExpr operand) {
  return BoolExpr(
      std::make_shared<const BoolNode>(BoolNode{NotBool{std::move(operand)}}));
}

bool operator==(const BoolExpr& a, const BoolExpr& b) {
  return a.node_ == b.node_ || a.node_->v == b.node_->v;
}

std::size_t depth(const Expr& e) {
  return std::visit(
      Overloaded{
          [](const IfExpr& n) {
            return 1 + std::max({depth(n.cond), depth(n.then_branch),
                                 depth(n.else_branch)});
          },
          [](const ArithExpr& n) {
            return 1 + std::max(depth(n.lhs), depth(n.rhs));
          },
          [](const auto&) -> std::size_t { return 1; },
      },
      e.node().v);
}

std::size_t depth(const BoolExpr& b) {
  return std::visit(
      Overloaded{
          [](const CmpBool& n) {
            return 1 + std::max(depth(n.lhs), depth(n.rhs));
          },
          [](const AndBool& n) {
            return 1 + std::max(depth(n.lhs), depth(n.rhs));
          },
          [](const OrBool& n) {
            return 1 + std::max(depth(n.lhs), depth(n.rhs));
          },
          [](const NotBool& n) { return 1 + depth(n.operand); },
      },
      b.node().v);
}

void visit(const Expr& e, const std::function<void(const Expr&)>& on_expr,
           const std::function<void(const BoolExpr&)>& on_bool) {
  if (on_expr) on_expr(e);
  std::visit(Overloaded{
                 [&](const IfExpr& n) {
                   visit(n.cond, on_expr, on_bool);
                   visit(n.then_branch, on_expr, on_bool);
                   visit(n.else_branch, on_expr, on_bool);
                 },
                 [&](const ArithExpr& n) {
                   visit(n.lhs, on_expr, on_bool);
                   visit(n.rhs, on_expr, on_bool);
                 },
                 [](const auto&) {},
             },
             e.node().v);
}

void visit(const BoolExpr& b, const std::function<void(const Expr&)>& on_expr,
           const std::function<void(const BoolExpr&)>& on_bool) {
  if (on_bool) on_bool(b);
  std::visit(Overloaded{
                 [&](const CmpBool& n) {
                   visit(n.lhs, on_expr, on_bool);
                   visit(n.rhs, on_expr, on_bool);
                 },
                 [&](const AndBool& n) {
                   visit(n.lhs, on_expr, on_bool);
                   visit(n.rhs, on_expr, on_bool);
                 },
                 [&](const OrBool& n) {
                   visit(n.lhs, on_expr, on_bool);
                   visit(n.rhs, on_expr, on_bool);
                 },
                 [&](const NotBool& n) { visit(n.operand, on_expr, on_bool); },
             },
             b.node().v);
}

bool uses_input(const Expr& e) {
  bool found = false;
  visit(e, [&](const Expr& sub) {
    found = found || std::holds_alternative<InputExpr>(sub.node().v);
  });
  return found;
}

bool uses_input(const BoolExpr& b) {
  bool found = false;
  visit(b, [&](const Expr& sub) {
    found = found || std::holds_alternative<InputExpr>(sub.node().v);
  });
  return found;
}

}  // namespace grassp
