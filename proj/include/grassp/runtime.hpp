#pragma once

#include <boost/rational.hpp>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grassp/program.hpp"
#include "grassp/verifier.hpp"

namespace grassp {

using Ratio = boost::rational<std::int64_t>;

// Iteration-unit cost of one parallel run. Index i is segment i+1.
struct CostReport {
  std::vector<std::size_t> seq_iterations;     // s_i: elements of segment i
  std::vector<std::size_t> prefix_iterations;  // p_i: prefix of segment i, p_1 = 0
  std::size_t sequential_cost = 0;             // T_s = sum s_i
  std::size_t prefix_cost = 0;                 // T_p = max_{i>=2} p_i
  std::size_t fold_cost = 0;                   // T_f = max (s_i + p_{i+1})
  std::size_t merge_cost = 0;                  // T_c = m
  Ratio speedup{0};                            // X = T_s / (T_p + T_f + T_c)
  std::chrono::duration<double> wall_sequential{};
  std::chrono::duration<double> wall_parallel{};
};

// Cost fields only. Throws ConfigError unless |s| = |p| = m >= 1 and p_1 = 0.
CostReport speedup_model(std::span<const std::size_t> s, std::span<const std::size_t> p,
                         std::size_t m);

// m contiguous segments whose lengths differ by at most one, longer first.
// Throws ConfigError if m < 1 or |a| < m.
std::vector<InputArray> partition(std::span<const Scalar> a, std::size_t m);

// Folds every segment the prefix cannot be taken from into its predecessor
// (see prefix_applicable), so the result is always covered by the prefix.
std::vector<InputArray> adjust_segments(const PrefixSpec& spec,
                                        std::span<const InputArray> segments);

// Global event order: every prefix must finish before any fold starts.
struct ScheduleTrace {
  std::vector<std::uint64_t> prefix_done;  // per segment 2..m
  std::vector<std::uint64_t> fold_start;   // per segment 1..m
};

struct ParallelRun {
  Scalar out;
  Scalar sequential_out;
  CostReport report;
  std::vector<InputArray> segments;  // after adjust_segments
  std::size_t requested_segments = 0;
  ScheduleTrace trace;

  bool matches_sequential() const { return out == sequential_out; }
};

// Three phases on `workers` threads (capped at m): prefixes of segments 2..m,
// barrier, fold of segment i plus the prefix of segment i+1 from the initial
// state, barrier, then a left-fold merge of the partial outputs. Also times a
// sequential run of the concatenation for comparison. A failing worker aborts
// the run with RunError naming its (1-based) segment.
ParallelRun run_parallel(const Program& p, const Decomposition& d,
                         std::span<const InputArray> segments, std::size_t workers);

}  // namespace grassp
