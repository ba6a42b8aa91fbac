#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grassp/synthesizer.hpp"

namespace grassp::cli {

enum class Format { kText, kTsv };

struct RunConfig {
  std::vector<std::size_t> segments = {2, 3};
  std::size_t max_len = 6;
  std::size_t min_seg_len = 1;
  std::vector<Scalar> domain;  // empty: per-program default
  CandidateSpace space;
  std::size_t jobs = 1;
  double timeout_s = 60.0;
  Format format = Format::kText;
};

// Exactly one of the two is set.
struct ProgramSource {
  std::optional<std::string> bench;
  std::optional<std::string> file;
};

struct DecompositionFlags {
  std::optional<std::string> merge;
  bool prefix_none = false;
  std::optional<std::size_t> prefix_const;
  std::optional<std::string> prefix_cond;
};

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Exit codes: 0 found, 2 unknown, 1 error.
CommandResult cmd_synthesize(const ProgramSource& src, const RunConfig& cfg);
// 0 valid for every segment count, 2 counterexample (or nothing checked), 1 error.
CommandResult cmd_verify(const ProgramSource& src, const DecompositionFlags& flags,
                         const RunConfig& cfg);
// Splits the input into the largest configured segment count. Without
// --merge, synthesizes first using the default segment counts. 0 ok, 3 parallel/sequential mismatch,
// 2 nothing to run (unknown), 1 error.
CommandResult cmd_run(const ProgramSource& src, const DecompositionFlags& flags,
                      const std::string& input_file, const RunConfig& cfg);
// 0 iff every row matches its expected hypothesis, merge and prefix.
CommandResult cmd_bench(const RunConfig& cfg);

// Full command line (argv[0] included).
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace grassp::cli
