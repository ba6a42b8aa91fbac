#pragma once

#include <span>
#include <string>
#include <string_view>

#include "grassp/expr.hpp"
#include "grassp/program.hpp"

namespace grassp {

// Parses the parenthesized program format:
//
//   (program
//     (state (m -inf))
//     (step (m (max elem m)))
//     (output m))
//
// `;` starts a line comment. Step assignments are simultaneous. Throws
// ParseError (with position) for malformed text and ValidationError when the
// parsed program violates an invariant.
Program parse_program(std::string_view text, std::string name = "");

// Canonical text for `p`; parse_program(pretty_print(p)) == p.
std::string pretty_print(const Program& p);

// Parses a predicate over `elem` only, e.g. "(and (>= elem 1) (= elem 2))".
// `element` is accepted as a synonym of `elem`.
BoolExpr parse_predicate(std::string_view text);

// Whitespace-separated scalars ("3 -1 +inf eof").
InputArray parse_input_array(std::string_view text);

std::string format_expr(const Expr& e, std::span<const std::string> field_names = {});
std::string format_bool(const BoolExpr& b,
                        std::span<const std::string> field_names = {});

}  // namespace grassp
