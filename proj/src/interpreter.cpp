#include "grassp/interpreter.hpp"

#include <numeric>

#include "grassp/eval.hpp"

namespace grassp {

State step(const Program& p, std::span<const Scalar> state, const Scalar& input) {
  State next;
  next.reserve(p.step.size());
  for (const auto& e : p.step) next.push_back(eval_expr(e, state, input));
  return next;
}

FoldTrace fold_run(const Program& p, State start, std::span<const Scalar> array) {
  FoldTrace trace{std::move(start), 0};
  State scratch(trace.final_state.size());
  for (const Scalar& x : array) {
    scratch.resize(p.step.size());
    for (std::size_t i = 0; i < p.step.size(); ++i) {
      scratch[i] = eval_expr(p.step[i], trace.final_state, x);
    }
    trace.final_state.swap(scratch);
    ++trace.iterations;
  }
  return trace;
}

Scalar output(const Program& p, std::span<const Scalar> state) {
  return eval_expr(p.output, state, std::nullopt);
}

InputArray append(std::span<const InputArray> arrays) {
  std::size_t total = std::accumulate(
      arrays.begin(), arrays.end(), std::size_t{0},
      [](std::size_t n, const InputArray& a) { return n + a.size(); });
  InputArray out;
  out.reserve(total);
  for (const auto& a : arrays) out.insert(out.end(), a.begin(), a.end());
  return out;
}

SequentialResult sequential_run(const Program& p, std::span<const Scalar> array) {
  FoldTrace trace = fold_run(p, p.init, array);
  return {output(p, trace.final_state), trace.iterations};
}

}  // namespace grassp
