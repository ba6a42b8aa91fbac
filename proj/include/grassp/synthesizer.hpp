#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "grassp/expr.hpp"
#include "grassp/program.hpp"
#include "grassp/verifier.hpp"

namespace grassp {

enum class Hypothesis : std::uint8_t { kNoPrefix, kConstPrefix, kCondPrefix };

// "SyntNoPrefix", "SyntConstPrefix", "SyntCondPrefix".
std::string_view to_string(Hypothesis h);

// [+, min, max, *, first, last]
std::vector<MergeOp> default_merge_menu();
// [+, min, max]
std::vector<MergeOp> strict_merge_menu();

struct CandidateSpace {
  std::vector<MergeOp> merge_ops = default_merge_menu();
  std::size_t max_const_prefix = 3;
  // Empty means condition_constants(program).
  std::vector<Scalar> cond_constants;
  std::size_t max_conjuncts = 2;
  std::vector<CmpOp> atom_ops = {CmpOp::kEq, CmpOp::kLe, CmpOp::kGe};
};

struct SynthesisBounds {
  std::vector<std::size_t> segment_counts = {2, 3};
  std::size_t max_total_len = 6;
  std::size_t min_seg_len = 1;
  // Empty means default_domain(program).
  std::vector<Scalar> domain;
};

struct SynthesisOptions {
  std::size_t jobs = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SynthesisStats {
  std::uint64_t candidates_tried = 0;
  std::uint64_t arrays_checked = 0;  // (array, split) pairs compared
  std::chrono::duration<double> elapsed{};
};

struct SynthesisResult {
  std::optional<Hypothesis> hypothesis;  // empty: unknown
  Decomposition decomposition;
  SynthesisStats stats;

  bool found() const { return hypothesis.has_value(); }
};

// {0, 1, 2, 3}, plus Eof when the program mentions it.
std::vector<Scalar> default_domain(const Program& p);

// Constants for conditional-prefix atoms. Constants the step function
// compares the current element against come first, closest (in field
// dependencies) to the output first; then the program's other constants and
// 0, 1, 2. Ties ascend, Eof last.
std::vector<Scalar> condition_constants(const Program& p);

// Atoms `elem op c`, then conjunctions of up to max_conjuncts atoms. Predicates
// that are constant, not total, or equivalent to an earlier one over `domain`
// are dropped.
std::vector<BoolExpr> enumerate_conditions(const Program& p, const CandidateSpace& s,
                                           std::span<const Scalar> domain);

// Each returns the first candidate of its hypothesis that verifies for every
// configured segment count, in candidate order. `stats` may be null.
std::optional<Decomposition> synt_no_prefix(const Program& p, const SynthesisBounds& b,
                                            const CandidateSpace& s,
                                            const SynthesisOptions& options = {},
                                            SynthesisStats* stats = nullptr);
std::optional<Decomposition> synt_constant_prefix(const Program& p,
                                                  const SynthesisBounds& b,
                                                  const CandidateSpace& s,
                                                  const SynthesisOptions& options = {},
                                                  SynthesisStats* stats = nullptr);
std::optional<Decomposition> synt_conditional_prefix(
    const Program& p, const SynthesisBounds& b, const CandidateSpace& s,
    const SynthesisOptions& options = {}, SynthesisStats* stats = nullptr);

// No prefix, then constant prefix, then conditional prefix. Throws
// ConfigError for infeasible bounds or an empty space, EvalError when the
// sequential program itself fails inside the bounds, TimeoutError past the
// deadline.
SynthesisResult grassp(const Program& p, const SynthesisBounds& b = {},
                       const CandidateSpace& s = {},
                       const SynthesisOptions& options = {});

// Whether `d` verifies for every segment count in `b` with at least one
// segmentation actually checked.
bool accepts(const Program& p, const Decomposition& d, const SynthesisBounds& b,
             const SynthesisOptions& options = {}, SynthesisStats* stats = nullptr);

}  // namespace grassp
