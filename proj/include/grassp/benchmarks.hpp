#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grassp/program.hpp"
#include "grassp/synthesizer.hpp"

namespace grassp {

struct BenchmarkEntry {
  std::string name;
  std::string description;
  Program program;
  std::string source;  // .gsp text
  Hypothesis expected_hypothesis = Hypothesis::kNoPrefix;
  MergeOp expected_merge = MergeOp::kAdd;
  std::string expected_prefix;  // prefix_text() form: "-", "2", "(= elem eof)"
  std::size_t vars = 0;          // state arity of our encoding
  std::size_t reference_vars = 0;  // variable count of the reference table
  // Inputs end with an explicit eof element.
  bool eof_terminated = false;
};

// The seven benchmarks in table order.
std::vector<std::string> benchmark_names();

// Throws ConfigError listing the available names for an unknown one.
BenchmarkEntry load_benchmark(std::string_view name);

// Bundled programs outside the benchmark table ("second-distinct-max").
std::optional<std::string> bundled_program_source(std::string_view name);

namespace detail {

struct EmbeddedProgram {
  const char* name;
  const char* text;
};

const std::vector<EmbeddedProgram>& embedded_programs();

}  // namespace detail
}  // namespace grassp
