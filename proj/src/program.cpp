#include "grassp/program.hpp"

#include <algorithm>
#include <set>

#include "grassp/detail/overloaded.hpp"
#include "grassp/error.hpp"

namespace grassp {
namespace {

using detail::Overloaded;

bool is_eof_constant(const Expr& e) {
  const auto* c = std::get_if<ConstExpr>(&e.node().v);
  return c != nullptr && c->value.is_eof();
}

// Collects violations for a single expression into `out` (deduplicated).
void check_expr(const Expr& e, std::size_t arity, bool allow_input,
                std::set<std::string>& out) {
  if (depth(e) > kMaxExprDepth) {
    out.insert("expression depth exceeds " + std::to_string(kMaxExprDepth));
  }
  visit(
      e,
      [&](const Expr& sub) {
        std::visit(Overloaded{
                       [&](const FieldExpr& f) {
                         if (f.index >= arity) out.insert("state index out of range");
                       },
                       [&](const InputExpr&) {
                         if (!allow_input) out.insert("output uses current input");
                       },
                       [&](const ArithExpr& a) {
                         if (is_eof_constant(a.lhs) || is_eof_constant(a.rhs)) {
                           out.insert("eof used as an arithmetic operand");
                         }
                       },
                       [](const auto&) {},
                   },
                   sub.node().v);
      },
      [&](const BoolExpr& b) {
        const auto* cmp = std::get_if<CmpBool>(&b.node().v);
        if (cmp != nullptr && is_ordered(cmp->op) &&
            (is_eof_constant(cmp->lhs) || is_eof_constant(cmp->rhs))) {
          out.insert("eof used in an ordered comparison");
        }
      });
}

}  // namespace

std::vector<std::string> validate_program(const Program& p) {
  std::vector<std::string> violations;
  if (p.arity == 0) violations.push_back("arity must be positive");
  if (p.init.size() != p.arity) {
    violations.push_back("init has " + std::to_string(p.init.size()) +
                         " values but arity is " + std::to_string(p.arity));
  }
  if (p.step.size() != p.arity) {
    violations.push_back("step has " + std::to_string(p.step.size()) +
                         " assignments but arity is " + std::to_string(p.arity));
  }
  if (!p.field_names.empty() && p.field_names.size() != p.arity) {
    violations.push_back("field name count does not match arity");
  }
  std::set<std::string> expr_violations;
  for (const auto& e : p.step) check_expr(e, p.arity, true, expr_violations);
  check_expr(p.output, p.arity, false, expr_violations);
  violations.insert(violations.end(), expr_violations.begin(),
                    expr_violations.end());
  return violations;
}

void require_valid(const Program& p) {
  auto violations = validate_program(p);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

bool mentions_eof(const Program& p) {
  bool found = std::any_of(p.init.begin(), p.init.end(),
                           [](const Scalar& s) { return s.is_eof(); });
  auto scan = [&](const Expr& sub) { found = found || is_eof_constant(sub); };
  for (const auto& e : p.step) visit(e, scan);
  visit(p.output, scan);
  return found;
}

}  // namespace grassp
