#include "grassp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "grassp/benchmarks.hpp"
#include "grassp/detail/overloaded.hpp"
#include "grassp/error.hpp"
#include "grassp/runtime.hpp"
#include "grassp/syntax.hpp"

namespace grassp::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Program load_program(const ProgramSource& src) {
  if (src.bench) return load_benchmark(*src.bench).program;
  if (!src.file) throw ConfigError("give --bench NAME or --program FILE");
  const std::filesystem::path path(*src.file);
  const std::string stem = path.stem().string();
  if (!std::filesystem::exists(path)) {
    // Bundled programs can be named without a path.
    if (auto text = bundled_program_source(stem)) return parse_program(*text, stem);
  }
  return parse_program(read_file(*src.file), stem);
}

SynthesisBounds bounds_of(const RunConfig& cfg) {
  return SynthesisBounds{cfg.segments, cfg.max_len, cfg.min_seg_len, cfg.domain};
}

SynthesisOptions options_of(const RunConfig& cfg) {
  if (!(cfg.timeout_s > 0)) throw ConfigError("timeout must be positive");
  return SynthesisOptions{
      std::max<std::size_t>(1, cfg.jobs),
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(cfg.timeout_s))};
}

std::optional<Decomposition> decomposition_of(const DecompositionFlags& f) {
  const int prefixes = int(f.prefix_none) + int(f.prefix_const.has_value()) +
                       int(f.prefix_cond.has_value());
  if (!f.merge) {
    if (prefixes) throw ConfigError("prefix flags need --merge");
    return std::nullopt;
  }
  if (prefixes > 1) throw ConfigError("give at most one prefix flag");
  auto op = parse_merge_op(*f.merge);
  if (!op) throw ConfigError("unknown merge operator '" + *f.merge + "'");
  Decomposition d{*op, NoPrefix{}};
  if (f.prefix_const) d.prefix = ConstPrefix{*f.prefix_const};
  if (f.prefix_cond) d.prefix = CondPrefix{parse_predicate(*f.prefix_cond)};
  return d;
}

// "min prefix_length=1", "+", "max prefix_cond=(= elem 2)".
std::string describe(const Decomposition& d) {
  std::string s(to_string(d.merge));
  std::visit(detail::Overloaded{
                 [](const NoPrefix&) {},
                 [&](const ConstPrefix& c) {
                   s += " prefix_length=" + std::to_string(c.length);
                 },
                 [&](const CondPrefix& c) {
                   s += " prefix_cond=" + format_bool(c.predicate);
                 },
             },
             d.prefix);
  return s;
}

std::string seconds(std::chrono::duration<double> d) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << d.count();
  return os.str();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::string ratio_text(const Ratio& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator() << " (" << std::fixed
     << std::setprecision(4)
     << static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()) << ')';
  return os.str();
}

template <typename F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const TimeoutError& e) {
    return {1, "", std::string("timeout: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {1, "", std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace

CommandResult cmd_synthesize(const ProgramSource& src, const RunConfig& cfg) {
  return guarded([&] {
    const Program p = load_program(src);
    const SynthesisResult r = grassp(p, bounds_of(cfg), cfg.space, options_of(cfg));
    std::ostringstream os;
    if (cfg.format == Format::kTsv) {
      os << "hypothesis\tmerge\tprefix\tcandidates\tchecked\ttime_s\n";
      if (r.found()) {
        os << to_string(*r.hypothesis) << '\t' << to_string(r.decomposition.merge) << '\t'
           << prefix_text(r.decomposition.prefix);
      } else {
        os << "unknown\t-\t-";
      }
      os << '\t' << r.stats.candidates_tried << '\t' << r.stats.arrays_checked << '\t'
         << seconds(r.stats.elapsed) << '\n';
    } else {
      if (r.found()) {
        os << to_string(*r.hypothesis) << ' ' << describe(r.decomposition) << '\n';
      } else {
        os << "unknown\n";
      }
      os << "candidates_tried " << r.stats.candidates_tried << '\n'
         << "segmentations_checked " << r.stats.arrays_checked << '\n'
         << "time_s " << seconds(r.stats.elapsed) << '\n';
    }
    return CommandResult{r.found() ? 0 : 2, os.str(), ""};
  });
}

CommandResult cmd_verify(const ProgramSource& src, const DecompositionFlags& flags,
                         const RunConfig& cfg) {
  return guarded([&] {
    const Program p = load_program(src);
    const auto d = decomposition_of(flags);
    if (!d) throw ConfigError("verify needs --merge");
    const SynthesisOptions opt = options_of(cfg);
    const std::vector<Scalar> domain = cfg.domain.empty() ? default_domain(p) : cfg.domain;
    for (std::size_t m : cfg.segments) {
      check_bounds(VerifBounds{m, cfg.max_len, cfg.min_seg_len, domain});
    }

    std::ostringstream os;
    std::string err;
    int code = 0;
    std::uint64_t checked = 0;
    for (std::size_t m : cfg.segments) {
      Verdict v = verify(p, *d, VerifBounds{m, cfg.max_len, cfg.min_seg_len, domain},
                         VerifyOptions{opt.jobs, opt.deadline});
      checked += v.checked;
      if (cfg.format == Format::kTsv) {
        os << m << '\t'
           << (v.valid() ? "valid"
                         : v.kind == Verdict::Kind::kError ? "error" : "counterexample")
           << '\t' << to_string(v) << '\n';
      } else {
        os << "m=" << m << ": " << to_string(v) << '\n';
      }
      if (v.kind == Verdict::Kind::kError && v.program_error) {
        err = "error: the program itself fails inside the bounds\n";
        code = 1;
        break;
      }
      if (!v.valid()) {
        code = 2;
        break;
      }
    }
    if (code == 0 && checked == 0) {
      os << "vacuous: the prefix covers no segmentation within the bounds\n";
      code = 2;
    }
    return CommandResult{code, os.str(), err};
  });
}

CommandResult cmd_run(const ProgramSource& src, const DecompositionFlags& flags,
                      const std::string& input_file, const RunConfig& cfg) {
  return guarded([&] {
    const Program p = load_program(src);
    const InputArray input = parse_input_array(read_file(input_file));
    if (cfg.segments.empty()) throw ConfigError("no segment count given");
    const std::size_t m = *std::max_element(cfg.segments.begin(), cfg.segments.end());

    auto d = decomposition_of(flags);
    if (!d) {
      // --segments sets the partition here, so search with the default counts.
      SynthesisBounds b = bounds_of(cfg);
      b.segment_counts = SynthesisBounds{}.segment_counts;
      SynthesisResult r = grassp(p, b, cfg.space, options_of(cfg));
      if (!r.found()) return CommandResult{2, "unknown\n", "no decomposition to run\n"};
      d = r.decomposition;
    }

    const ParallelRun run = run_parallel(p, *d, partition(input, m),
                                         std::max<std::size_t>(1, cfg.jobs));
    const CostReport& c = run.report;
    const bool ok = run.matches_sequential();
    std::vector<std::pair<std::string, std::string>> rows = {
        {"decomposition", describe(*d)},
        {"output", to_string(run.out)},
        {"sequential_output", to_string(run.sequential_out)},
        {"cross_check", ok ? "OK" : "MISMATCH"},
        {"segments", std::to_string(run.segments.size())},
        {"requested_segments", std::to_string(run.requested_segments)},
        {"s", join(c.seq_iterations)},
        {"p", join(c.prefix_iterations)},
        {"T_s", std::to_string(c.sequential_cost)},
        {"T_p", std::to_string(c.prefix_cost)},
        {"T_f", std::to_string(c.fold_cost)},
        {"T_c", std::to_string(c.merge_cost)},
        {"X", ratio_text(c.speedup)},
        {"wall_sequential_s", seconds(c.wall_sequential)},
        {"wall_parallel_s", seconds(c.wall_parallel)},
    };
    std::ostringstream os;
    for (const auto& [k, v] : rows) {
      if (cfg.format == Format::kTsv) {
        os << k << '\t' << v << '\n';
      } else {
        os << std::left << std::setw(20) << k << v << '\n';
      }
    }
    return CommandResult{ok ? 0 : 3, os.str(),
                         ok ? "" : "error: parallel output differs from sequential\n"};
  });
}

CommandResult cmd_bench(const RunConfig& cfg) {
  return guarded([&] {
    struct Line {
      std::string name, vars, hypothesis, merge, prefix, time, status;
    };
    std::vector<Line> lines;
    std::string err;
    std::size_t passed = 0;
    for (const std::string& name : benchmark_names()) {
      const BenchmarkEntry e = load_benchmark(name);
      Line line{name, std::to_string(e.vars), "-", "-", "-", "", "FAIL"};
      const auto start = Clock::now();
      try {
        SynthesisResult r = grassp(e.program, bounds_of(cfg), cfg.space, options_of(cfg));
        if (r.found()) {
          line.hypothesis = to_string(*r.hypothesis);
          line.merge = to_string(r.decomposition.merge);
          line.prefix = prefix_text(r.decomposition.prefix);
          if (*r.hypothesis == e.expected_hypothesis &&
              r.decomposition.merge == e.expected_merge &&
              line.prefix == e.expected_prefix) {
            line.status = "PASS";
          }
        } else {
          line.hypothesis = "unknown";
        }
      } catch (const TimeoutError&) {
        line.status = "TIMEOUT";
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& ex) {
        line.status = "ERROR";
        err += name + ": " + ex.what() + "\n";
      }
      line.time = seconds(Clock::now() - start);
      if (line.status == "PASS") ++passed;
      lines.push_back(std::move(line));
    }

    std::ostringstream os;
    if (cfg.format == Format::kTsv) {
      os << "benchmark\tvars\thypothesis\tmerge\tprefix\ttime_s\tstatus\n";
      for (const Line& l : lines) {
        os << l.name << '\t' << l.vars << '\t' << l.hypothesis << '\t' << l.merge << '\t'
           << l.prefix << '\t' << l.time << '\t' << l.status << '\n';
      }
    } else {
      auto row = [&](const Line& l) {
        os << std::left << std::setw(22) << l.name << std::setw(7) << l.vars
           << std::setw(17) << l.hypothesis << std::setw(7) << l.merge << std::setw(15)
           << l.prefix << std::setw(12) << l.time << l.status << '\n';
      };
      row({"Benchmark", "#Vars", "Hypothesis", "merge", "prefix", "synth-time", "status"});
      for (const Line& l : lines) row(l);
      os << passed << '/' << lines.size() << " PASS\n";
    }
    return CommandResult{passed == lines.size() ? 0 : 2, os.str(), err};
  });
}

CommandResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Synthesize, verify and run parallel decompositions of fold programs"};
  app.name(args.empty() ? "grassp" : args.front());
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  ProgramSource src;
  DecompositionFlags flags;
  std::string input_file;
  std::vector<std::size_t> segments;
  std::vector<std::string> domain, menu;
  bool strict = false;
  std::string format = "text";

  auto common = [&](CLI::App* sub, bool with_program) {
    if (with_program) {
      auto* b = sub->add_option("--bench", src.bench, "Benchmark name");
      auto* p = sub->add_option("--program", src.file, "Program file (.gsp)");
      b->excludes(p);
    }
    sub->add_option("--segments", segments, "Segment counts (repeatable)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-len", cfg.max_len, "Longest verified array")->capture_default_str();
    sub->add_option("--min-seg-len", cfg.min_seg_len, "Shortest verified segment")
        ->capture_default_str();
    sub->add_option("--domain", domain, "Verification values, e.g. 0,1,2,3")
        ->delimiter(',');
    auto* mm = sub->add_option("--merge-menu", menu, "Merge operators to try")->delimiter(',');
    sub->add_flag("--strict-menu", strict, "Only +, min and max")->excludes(mm);
    sub->add_option("--max-const-prefix", cfg.space.max_const_prefix,
                    "Longest constant prefix to try")
        ->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--timeout", cfg.timeout_s, "Seconds per synthesis")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "tsv"}))
        ->capture_default_str();
  };
  auto decomposition = [&](CLI::App* sub) {
    auto* none = sub->add_flag("--prefix-none", flags.prefix_none, "No prefix");
    auto* cst = sub->add_option("--prefix-const", flags.prefix_const, "Constant prefix length");
    auto* cond = sub->add_option("--prefix-cond", flags.prefix_cond, "Prefix end predicate");
    none->excludes(cst)->excludes(cond);
    cst->excludes(cond);
    sub->add_option("--merge", flags.merge, "Merge operator (+, min, max, *, first, last)");
  };

  auto* synth = app.add_subcommand("synthesize", "Search for a decomposition");
  common(synth, true);
  auto* ver = app.add_subcommand("verify", "Check one decomposition on bounded inputs");
  common(ver, true);
  decomposition(ver);
  auto* run = app.add_subcommand("run", "Execute on parallel workers");
  common(run, true);
  decomposition(run);
  run->add_option("--input", input_file, "Whitespace-separated input values")->required();
  auto* bench = app.add_subcommand("bench", "Run the benchmark table");
  common(bench, false);

  std::vector<const char*> argv;
  std::vector<std::string> owned = args.empty() ? std::vector<std::string>{"grassp"} : args;
  for (const auto& a : owned) argv.push_back(a.c_str());
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Usage errors share exit code 1 with every other error.
    int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 1, out.str(), err.str()};
  }

  return guarded([&]() -> CommandResult {
    if (!segments.empty()) cfg.segments = segments;
    for (const auto& d : domain) {
      auto v = parse_scalar(d);
      if (!v) throw ConfigError("bad domain value '" + d + "'");
      cfg.domain.push_back(*v);
    }
    if (strict) cfg.space.merge_ops = strict_merge_menu();
    if (!menu.empty()) {
      cfg.space.merge_ops.clear();
      for (const auto& m : menu) {
        auto op = parse_merge_op(m);
        if (!op) throw ConfigError("unknown merge operator '" + m + "'");
        cfg.space.merge_ops.push_back(*op);
      }
    }
    cfg.format = format == "tsv" ? Format::kTsv : Format::kText;
    if (bench->parsed()) return cmd_bench(cfg);
    if (!src.bench && !src.file) throw ConfigError("give --bench NAME or --program FILE");
    if (synth->parsed()) return cmd_synthesize(src, cfg);
    if (ver->parsed()) return cmd_verify(src, flags, cfg);
    return cmd_run(src, flags, input_file, cfg);
  });
}

}  // namespace grassp::cli
