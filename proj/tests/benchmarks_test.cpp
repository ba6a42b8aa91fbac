#include "grassp/benchmarks.hpp"

#include <gtest/gtest.h>

#include <random>

#include "grassp/error.hpp"
#include "grassp/interpreter.hpp"
#include "grassp/syntax.hpp"
#include "support/oracles.hpp"

namespace grassp {
namespace {

const Scalar kEof = Scalar::eof();

TEST(LoadBenchmark, Entries) {
  BenchmarkEntry max = load_benchmark("array-max");
  EXPECT_EQ(max.vars, 1u);
  EXPECT_EQ(max.expected_hypothesis, Hypothesis::kNoPrefix);
  EXPECT_EQ(max.expected_merge, MergeOp::kMax);
  EXPECT_EQ(max.expected_prefix, "-");

  BenchmarkEntry n123 = load_benchmark("number-of-123");
  EXPECT_EQ(n123.vars, 2u);
  EXPECT_EQ(n123.expected_hypothesis, Hypothesis::kConstPrefix);
  EXPECT_EQ(n123.expected_merge, MergeOp::kAdd);
  EXPECT_EQ(n123.expected_prefix, "2");

  BenchmarkEntry alt = load_benchmark("alternation-of-11-22");
  EXPECT_EQ(alt.vars, 3u);
  EXPECT_EQ(alt.expected_hypothesis, Hypothesis::kCondPrefix);
  EXPECT_EQ(alt.expected_merge, MergeOp::kMin);
  EXPECT_EQ(alt.expected_prefix, "(= elem eof)");
  EXPECT_TRUE(alt.eof_terminated);
}

TEST(LoadBenchmark, ArityMatchesReferenceExceptIsSorted) {
  for (const auto& name : benchmark_names()) {
    BenchmarkEntry e = load_benchmark(name);
    EXPECT_TRUE(validate_program(e.program).empty()) << name;
    EXPECT_EQ(e.vars, e.program.arity);
    // is-sorted keeps the (previous, flag) pair as two fields.
    if (name != "is-sorted") EXPECT_EQ(e.vars, e.reference_vars) << name;
  }
  EXPECT_EQ(benchmark_names().size(), 7u);
}

TEST(LoadBenchmark, UnknownNameListsAvailable) {
  try {
    load_benchmark("array-min");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const auto& name : benchmark_names()) {
      EXPECT_NE(msg.find(name), std::string::npos) << name;
    }
  }
}

TEST(BundledPrograms, SecondDistinctMaxIsNotABenchmark) {
  EXPECT_TRUE(bundled_program_source("second-distinct-max"));
  EXPECT_FALSE(bundled_program_source("array-max"));
  EXPECT_FALSE(bundled_program_source("nothing"));
}

TEST(Corpus, HandCheckedVectors) {
  auto run = [](const char* name, InputArray a) {
    return sequential_run(load_benchmark(name).program, a).out;
  };
  EXPECT_EQ(run("array-count", {}), Scalar(0));
  EXPECT_EQ(run("array-max", {}), Scalar::neg_inf());
  EXPECT_EQ(run("array-max", {-2, 5, 1}), Scalar(5));
  EXPECT_EQ(run("is-sorted", {1, 1, 0}), Scalar(0));
  EXPECT_EQ(run("alternation-of-1-2", {2, 1, 2}), Scalar(1));
  EXPECT_EQ(run("alternation-of-1-2", {1, 2, 2}), Scalar(0));
  EXPECT_EQ(run("alternation-of-1-2", {1, 3}), Scalar(0));
  EXPECT_EQ(run("number-of-123", {1, 2, 3, 1, 2, 3}), Scalar(2));
  EXPECT_EQ(run("number-of-123", {1, 1, 2, 3}), Scalar(1));
  EXPECT_EQ(run("number-of-123", {1, 2, 1, 2, 3}), Scalar(1));
  EXPECT_EQ(run("number-of-123", {1, 3, 2, 3}), Scalar(0));
  EXPECT_EQ(run("seen-2-after-1", {1, 0, 0, 2}), Scalar(1));
  EXPECT_EQ(run("seen-2-after-1", {2, 1}), Scalar(0));
  EXPECT_EQ(run("alternation-of-11-22", {1, 1, 2, 2, 1, 1, kEof}), Scalar(1));
  EXPECT_EQ(run("alternation-of-11-22", {2, 1, 1, 2, 2, kEof}), Scalar(1));
  EXPECT_EQ(run("alternation-of-11-22", {kEof}), Scalar(1));
  EXPECT_EQ(run("alternation-of-11-22", {1, 1, 2, kEof}), Scalar(0));
  EXPECT_EQ(run("alternation-of-11-22", {1, 1, 1, kEof}), Scalar(0));
  EXPECT_EQ(run("alternation-of-11-22", {1, 1, 2, 2}), Scalar(0));
  EXPECT_EQ(run("alternation-of-11-22", {1, kEof, 1, kEof}), Scalar(0));
}

// Each program against a plain C++ implementation of its description.
TEST(Corpus, ProgramsMatchReferenceImplementations) {
  std::vector<std::string> names = benchmark_names();
  names.push_back("second-distinct-max");
  std::mt19937_64 rng(99);
  for (const auto& name : names) {
    const Program p = name == "second-distinct-max"
                          ? parse_program(*bundled_program_source(name))
                          : load_benchmark(name).program;
    const auto reference = oracle::reference_for(name);
    const bool eof = name == "alternation-of-11-22";
    std::vector<Scalar> domain = {0, 1, 2, 3};
    if (eof) domain.push_back(kEof);
    std::size_t positives = 0;
    for (std::size_t n = 0; n <= 6; ++n) {
      oracle::for_each_array(domain, n, [&](const InputArray& a) {
        const Scalar got = sequential_run(p, a).out;
        ASSERT_EQ(got, reference(a)) << name << " on " << testing::PrintToString(a);
        if (got == Scalar(1)) ++positives;
      });
    }
    EXPECT_GT(positives, 0u) << name;
    std::uniform_int_distribution<int> value(-2, 5), len(0, 60);
    for (int i = 0; i < 300; ++i) {
      InputArray a(len(rng));
      for (auto& x : a) x = value(rng);
      if (eof) a.push_back(kEof);
      ASSERT_EQ(sequential_run(p, a).out, reference(a)) << name;
    }
  }
}

}  // namespace
}  // namespace grassp
