#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <variant>

#include "grassp/scalar.hpp"

namespace grassp {

enum class ArithOp : std::uint8_t { kAdd, kSub, kMul, kMin, kMax };
enum class CmpOp : std::uint8_t { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view symbol(ArithOp op);
std::string_view symbol(CmpOp op);
bool is_ordered(CmpOp op);

struct ExprNode;
struct BoolNode;
class BoolExpr;

// Immutable integer-valued expression tree. Copies share structure.
class Expr {
 public:
  // Const 0.
  Expr();

  static Expr constant(Scalar value);
  static Expr input();
  static Expr field(std::size_t index);
  static Expr if_then_else(BoolExpr cond, Expr then_branch, Expr else_branch);
  static Expr arith(ArithOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const { return *node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const ExprNode> node_;
};

// Immutable boolean expression tree.
class BoolExpr {
 public:
  static BoolExpr compare(CmpOp op, Expr lhs, Expr rhs);
  static BoolExpr conjunction(BoolExpr lhs, BoolExpr rhs);
  static BoolExpr disjunction(BoolExpr lhs, BoolExpr rhs);
  static BoolExpr negation(BoolExpr operand);

  const BoolNode& node() const { return *node_; }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b);

 private:
  explicit BoolExpr(std::shared_ptr<const BoolNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const BoolNode> node_;
};

struct ConstExpr {
  Scalar value;
  friend bool operator==(const ConstExpr&, const ConstExpr&) = default;
};
struct InputExpr {
  friend bool operator==(const InputExpr&, const InputExpr&) = default;
};
struct FieldExpr {
  std::size_t index;
  friend bool operator==(const FieldExpr&, const FieldExpr&) = default;
};
struct IfExpr {
  BoolExpr cond;
  Expr then_branch;
  Expr else_branch;
  friend bool operator==(const IfExpr&, const IfExpr&) = default;
};
struct ArithExpr {
  ArithOp op;
  Expr lhs;
  Expr rhs;
  friend bool operator==(const ArithExpr&, const ArithExpr&) = default;
};

struct ExprNode {
  std::variant<ConstExpr, InputExpr, FieldExpr, IfExpr, ArithExpr> v;
};

struct CmpBool {
  CmpOp op;
  Expr lhs;
  Expr rhs;
  friend bool operator==(const CmpBool&, const CmpBool&) = default;
};
struct AndBool {
  BoolExpr lhs;
  BoolExpr rhs;
  friend bool operator==(const AndBool&, const AndBool&) = default;
};
struct OrBool {
  BoolExpr lhs;
  BoolExpr rhs;
  friend bool operator==(const OrBool&, const OrBool&) = default;
};
struct NotBool {
  BoolExpr operand;
  friend bool operator==(const NotBool&, const NotBool&) = default;
};

struct BoolNode {
  std::variant<CmpBool, AndBool, OrBool, NotBool> v;
};

// Longest root-to-leaf path, counting nodes (a leaf has depth 1). Boolean
// nodes count toward the depth of the expressions containing them.
std::size_t depth(const Expr& e);
std::size_t depth(const BoolExpr& b);

bool uses_input(const Expr& e);
bool uses_input(const BoolExpr& b);

// Pre-order walks over every integer sub-expression (including those nested
// under boolean nodes) and every boolean sub-expression.
void visit(const Expr& e, const std::function<void(const Expr&)>& on_expr,
           const std::function<void(const BoolExpr&)>& on_bool = {});
void visit(const BoolExpr& b, const std::function<void(const Expr&)>& on_expr,
           const std::function<void(const BoolExpr&)>& on_bool = {});

}  // namespace grassp
