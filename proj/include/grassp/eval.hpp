#pragma once

#include <optional>
#include <span>

#include "grassp/expr.hpp"
#include "grassp/scalar.hpp"

namespace grassp {

// Evaluates `e` over `state`. `input` must be present whenever `e` reaches
// CurrentInput. Throws EvalError on ordered comparison against Eof, overflow,
// out-of-range field access or a missing input.
Scalar eval_expr(const Expr& e, std::span<const Scalar> state,
                 std::optional<Scalar> input);

bool eval_bool(const BoolExpr& b, std::span<const Scalar> state,
               std::optional<Scalar> input);

// Element predicate: `b` may only read the current input.
bool eval_predicate(const BoolExpr& b, const Scalar& element);

}  // namespace grassp
