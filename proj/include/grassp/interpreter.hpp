#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grassp/program.hpp"

namespace grassp {

struct FoldTrace {
  State final_state;
  std::size_t iterations = 0;  // one per consumed element
};

struct SequentialResult {
  Scalar out;
  std::size_t iterations = 0;
};

// One application of the step function; every field reads the old state.
State step(const Program& p, std::span<const Scalar> state, const Scalar& input);

FoldTrace fold_run(const Program& p, State start, std::span<const Scalar> array);

Scalar output(const Program& p, std::span<const Scalar> state);

InputArray append(std::span<const InputArray> arrays);

SequentialResult sequential_run(const Program& p, std::span<const Scalar> array);

}  // namespace grassp
