#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grassp/expr.hpp"
#include "grassp/program.hpp"

namespace grassp {

enum class MergeOp : std::uint8_t { kAdd, kMin, kMax, kMul, kFirst, kLast };

std::string_view to_string(MergeOp op);
// Accepts "+", "add", "min", "max", "*", "mul", "first", "last".
std::optional<MergeOp> parse_merge_op(std::string_view text);

// Left fold of the binary operator over the partial outputs; `first` and
// `last` project. Throws EvalError on empty input or arithmetic failure.
Scalar merge_outputs(MergeOp op, std::span<const Scalar> outputs);

struct NoPrefix {
  friend bool operator==(const NoPrefix&, const NoPrefix&) = default;
};
struct ConstPrefix {
  std::size_t length = 0;
  friend bool operator==(const ConstPrefix&, const ConstPrefix&) = default;
};
// Prefix runs up to and including the first element satisfying `predicate`
// (the whole segment if none does). The predicate reads only `elem`.
struct CondPrefix {
  BoolExpr predicate;
  friend bool operator==(const CondPrefix&, const CondPrefix&) = default;
};

using PrefixSpec = std::variant<NoPrefix, ConstPrefix, CondPrefix>;

// "-", "1", "(= elem 2)".
std::string prefix_text(const PrefixSpec& spec);

struct Decomposition {
  MergeOp merge = MergeOp::kAdd;
  PrefixSpec prefix;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

std::string to_string(const Decomposition& d);

struct VerifBounds {
  std::size_t segments = 2;
  std::size_t max_total_len = 6;
  std::size_t min_seg_len = 1;
  std::vector<Scalar> domain = {0, 1, 2, 3};
};

// Throws ConfigError for m < 2, min_seg_len < 1, m * min_seg_len >
// max_total_len, or an empty/duplicated domain.
void check_bounds(const VerifBounds& b);

struct Verdict {
  enum class Kind { kValid, kCounterexample, kError };

  Kind kind = Kind::kValid;
  std::vector<InputArray> segments;  // failing segmentation, if any
  Scalar expected;
  Scalar actual;
  std::string error;
  // Error raised by the sequential program itself rather than the candidate.
  bool program_error = false;
  // (array, split) pairs compared, and pairs skipped because the prefix did
  // not apply to that segmentation.
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;

  bool valid() const { return kind == Kind::kValid; }
};

std::string to_string(const Verdict& v);

struct VerifyOptions {
  std::size_t jobs = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

std::size_t prefix_length(const PrefixSpec& spec, std::span<const Scalar> segment);
InputArray compute_prefix(const PrefixSpec& spec, std::span<const Scalar> segment);

// Whether the decomposition covers this segmentation. A constant prefix must be
// strictly shorter than every segment it is taken from (segments 2..m). A
// conditional prefix must end inside every middle segment (2..m-1): when the
// predicate never fires there, repairing would have to continue into the
// following segment. Inapplicable segmentations are skipped by verify() and
// coalesced by the parallel runtime.
bool prefix_applicable(const PrefixSpec& spec, std::span<const InputArray> segments);

// merge(w_1, ..., w_m) where w_i folds segment i followed by the prefix of
// segment i+1 from the initial state, and w_m folds segment m alone.
Scalar parallel_outputs(const Program& p, const Decomposition& d,
                        std::span<const InputArray> segments);

// Compares sequential_run against parallel_outputs on every array over
// b.domain with m * min_seg_len <= |A| <= max_total_len and every split into
// b.segments parts of at least min_seg_len. Enumeration runs by length, then
// array (lexicographic in domain order), then split; the first mismatch in
// that order is reported regardless of `options.jobs`.
Verdict verify(const Program& p, const Decomposition& d, const VerifBounds& b,
               const VerifyOptions& options = {});

// Number of (array, split) pairs verify() enumerates under `b`; 0 when the
// bounds admit none.
std::uint64_t count_search_space(const VerifBounds& b);

}  // namespace grassp
