#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "grassp/expr.hpp"
#include "grassp/scalar.hpp"

namespace grassp {

inline constexpr std::size_t kMaxExprDepth = 32;

using State = std::vector<Scalar>;
using InputArray = std::vector<Scalar>;

// A sequential left-fold: state of `arity` fields starting at `init`, updated
// per element by `step` (all fields at once, reading the old state), and
// reduced to a single value by `output`.
struct Program {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::string> field_names;
  State init;
  std::vector<Expr> step;
  Expr output;

  friend bool operator==(const Program&, const Program&) = default;
};

// Empty when every program invariant holds.
std::vector<std::string> validate_program(const Program& p);

// Throws ValidationError listing the violations, if any.
void require_valid(const Program& p);

// True if any expression in the program mentions the Eof constant.
bool mentions_eof(const Program& p);

}  // namespace grassp
