#include "grassp/benchmarks.hpp"

#include <algorithm>
#include <array>

#include "grassp/error.hpp"
#include "grassp/syntax.hpp"

namespace grassp {
namespace {

struct Row {
  std::string_view name;
  std::string_view description;
  Hypothesis hypothesis;
  MergeOp merge;
  std::string_view prefix;
  std::size_t reference_vars;
  bool eof_terminated;
};

constexpr std::array kRows = {
    Row{"array-count", "size of the array", Hypothesis::kNoPrefix, MergeOp::kAdd, "-",
        1, false},
    Row{"array-max", "maximal element", Hypothesis::kNoPrefix, MergeOp::kMax, "-", 1,
        false},
    Row{"is-sorted", "1 iff the array is sorted", Hypothesis::kConstPrefix,
        MergeOp::kMin, "1", 1, false},
    Row{"alternation-of-1-2", "1 iff the array alternates 1 and 2",
        Hypothesis::kConstPrefix, MergeOp::kMin, "1", 1, false},
    Row{"number-of-123", "occurrences of the pattern 1 2 3", Hypothesis::kConstPrefix,
        MergeOp::kAdd, "2", 2, false},
    Row{"seen-2-after-1", "1 iff a 2 occurs after a 1", Hypothesis::kCondPrefix,
        MergeOp::kMax, "(= elem 2)", 2, false},
    Row{"alternation-of-11-22", "1 iff the array alternates blocks 1 1 and 2 2",
        Hypothesis::kCondPrefix, MergeOp::kMin, "(= elem eof)", 3, true},
};

std::optional<std::string> embedded(std::string_view name) {
  for (const auto& e : detail::embedded_programs()) {
    if (name == e.name) return std::string(e.text);
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> benchmark_names() {
  std::vector<std::string> out;
  for (const Row& r : kRows) out.emplace_back(r.name);
  return out;
}

BenchmarkEntry load_benchmark(std::string_view name) {
  auto row = std::find_if(kRows.begin(), kRows.end(),
                          [&](const Row& r) { return r.name == name; });
  if (row == kRows.end()) {
    std::string known;
    for (const Row& r : kRows) known += (known.empty() ? "" : ", ") + std::string(r.name);
    throw ConfigError("unknown benchmark '" + std::string(name) + "'; available: " + known);
  }
  auto text = embedded(name);
  if (!text) throw ConfigError("benchmark '" + std::string(name) + "' has no program");

  BenchmarkEntry e;
  e.name = row->name;
  e.description = row->description;
  e.source = *text;
  e.program = parse_program(e.source, e.name);
  e.expected_hypothesis = row->hypothesis;
  e.expected_merge = row->merge;
  e.expected_prefix = row->prefix;
  e.vars = e.program.arity;
  e.reference_vars = row->reference_vars;
  e.eof_terminated = row->eof_terminated;
  return e;
}

std::optional<std::string> bundled_program_source(std::string_view name) {
  auto in_table = std::find_if(kRows.begin(), kRows.end(),
                               [&](const Row& r) { return r.name == name; });
  if (in_table != kRows.end()) return std::nullopt;
  return embedded(name);
}

}  // namespace grassp
