#include "grassp/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>
#include <thread>

#include "grassp/detail/overloaded.hpp"
#include "grassp/error.hpp"
#include "grassp/eval.hpp"
#include "grassp/interpreter.hpp"
#include "grassp/syntax.hpp"

namespace grassp {
namespace {

using detail::Overloaded;
using Segment = std::span<const Scalar>;

constexpr std::uint64_t kChunkSize = 512;

Scalar merge_pair(MergeOp op, const Scalar& acc, const Scalar& next) {
  switch (op) {
    case MergeOp::kAdd:
      return add(acc, next);
    case MergeOp::kMin:
      return min_of(acc, next);
    case MergeOp::kMax:
      return max_of(acc, next);
    case MergeOp::kMul:
      return mul(acc, next);
    case MergeOp::kFirst:
      return acc;
    case MergeOp::kLast:
      return next;
  }
  throw EvalError("unknown merge operator");
}

bool applicable(const PrefixSpec& spec, std::span<const Segment> segments) {
  const std::size_t m = segments.size();
  return std::visit(
      Overloaded{
          [](const NoPrefix&) { return true; },
          [&](const ConstPrefix& c) {
            for (std::size_t i = 1; i < m; ++i) {
              if (segments[i].size() <= c.length) return false;
            }
            return true;
          },
          [&](const CondPrefix& c) {
            for (std::size_t i = 1; i + 1 < m; ++i) {
              bool fires = std::any_of(
                  segments[i].begin(), segments[i].end(),
                  [&](const Scalar& x) { return eval_predicate(c.predicate, x); });
              if (!fires) return false;
            }
            return true;
          },
      },
      spec);
}

Scalar combine(const Program& p, const Decomposition& d,
               std::span<const Segment> segments, std::vector<Scalar>& partial) {
  partial.clear();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    FoldTrace trace = fold_run(p, p.init, segments[i]);
    if (i + 1 < segments.size()) {
      const Segment& next = segments[i + 1];
      trace = fold_run(p, std::move(trace.final_state),
                       next.first(prefix_length(d.prefix, next)));
    }
    partial.push_back(output(p, trace.final_state));
  }
  return merge_outputs(d.merge, partial);
}

std::vector<InputArray> materialize(std::span<const Segment> segments) {
  std::vector<InputArray> out;
  for (const auto& s : segments) out.emplace_back(s.begin(), s.end());
  return out;
}

// Segment lengths, each >= min_len and summing to total, visited in
// lexicographic order.
class Compositions {
 public:
  Compositions(std::size_t parts, std::size_t total, std::size_t min_len)
      : lengths_(parts, min_len), min_len_(min_len) {
    lengths_.back() = total - (parts - 1) * min_len;
  }

  const std::vector<std::size_t>& lengths() const { return lengths_; }

  bool next() {
    const std::size_t m = lengths_.size();
    // Slack available to the right of position i, accumulated leftwards.
    std::size_t slack = lengths_[m - 1] - min_len_;
    for (std::size_t i = m - 1; i-- > 0;) {
      if (slack > 0) {
        ++lengths_[i];
        std::size_t rest = slack - 1;
        for (std::size_t j = i + 1; j + 1 < m; ++j) lengths_[j] = min_len_;
        lengths_[m - 1] = min_len_ + rest;
        return true;
      }
      slack += lengths_[i] - min_len_;
    }
    return false;
  }

 private:
  std::vector<std::size_t> lengths_;
  std::size_t min_len_;
};

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) {
      throw ConfigError("verification search space is too large");
    }
  }
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is always divisible by i.
    if (__builtin_mul_overflow(r, n - k + i, &r)) {
      throw ConfigError("verification search space is too large");
    }
    r /= i;
  }
  return r;
}

struct ChunkResult {
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::optional<Verdict> failure;
};

class Enumerator {
 public:
  Enumerator(const Program& p, const Decomposition& d, const VerifBounds& b,
             const VerifyOptions& options)
      : p_(p), d_(d), b_(b), options_(options) {}

  Verdict run() {
    Verdict result;
    const std::size_t m = b_.segments;
    for (std::size_t n = m * b_.min_seg_len; n <= b_.max_total_len; ++n) {
      const std::uint64_t arrays = checked_pow(b_.domain.size(), n);
      const std::uint64_t chunks = (arrays + kChunkSize - 1) / kChunkSize;
      std::vector<ChunkResult> results(chunks);
      first_failure_.store(std::numeric_limits<std::uint64_t>::max());
      timed_out_.store(false);

      std::atomic<std::uint64_t> next_chunk{0};
      auto work = [&] {
        for (;;) {
          std::uint64_t c = next_chunk.fetch_add(1);
          if (c >= chunks) return;
          if (c > first_failure_.load()) continue;
          if (options_.deadline &&
              std::chrono::steady_clock::now() > *options_.deadline) {
            timed_out_.store(true);
            return;
          }
          results[c] = process_chunk(n, c * kChunkSize,
                                     std::min(arrays, (c + 1) * kChunkSize));
          if (results[c].failure) {
            std::uint64_t seen = first_failure_.load();
            while (c < seen && !first_failure_.compare_exchange_weak(seen, c)) {
            }
          }
        }
      };
      const std::size_t jobs =
          std::max<std::size_t>(1, std::min<std::uint64_t>(options_.jobs, chunks));
      if (jobs == 1) {
        work();
      } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
      }
      if (timed_out_.load()) throw TimeoutError("verification timed out");

      for (auto& r : results) {
        result.checked += r.checked;
        result.skipped += r.skipped;
        if (r.failure) {
          Verdict v = std::move(*r.failure);
          v.checked = result.checked;
          v.skipped = result.skipped;
          return v;
        }
      }
    }
    return result;
  }

 private:
  ChunkResult process_chunk(std::size_t n, std::uint64_t begin, std::uint64_t end) {
    ChunkResult out;
    const std::size_t m = b_.segments;
    const std::size_t radix = b_.domain.size();
    InputArray array(n);
    std::vector<Segment> segments(m);
    std::vector<Scalar> partial;
    partial.reserve(m);

    for (std::uint64_t index = begin; index < end; ++index) {
      std::uint64_t rest = index;
      for (std::size_t pos = n; pos-- > 0;) {
        array[pos] = b_.domain[rest % radix];
        rest /= radix;
      }

      std::optional<Scalar> expected;
      Compositions split(m, n, b_.min_seg_len);
      do {
        std::size_t offset = 0;
        for (std::size_t i = 0; i < m; ++i) {
          segments[i] = Segment(array).subspan(offset, split.lengths()[i]);
          offset += split.lengths()[i];
        }
        if (!expected) {
          try {
            expected = sequential_run(p_, array).out;
          } catch (const EvalError& e) {
            out.failure = error_verdict(segments, e.what(), true);
            return out;
          }
        }
        Scalar actual;
        try {
          if (!applicable(d_.prefix, segments)) {
            ++out.skipped;
            continue;
          }
          actual = combine(p_, d_, segments, partial);
        } catch (const EvalError& e) {
          ++out.checked;
          out.failure = error_verdict(segments, e.what(), false);
          return out;
        }
        ++out.checked;
        if (actual != *expected) {
          Verdict v;
          v.kind = Verdict::Kind::kCounterexample;
          v.segments = materialize(segments);
          v.expected = *expected;
          v.actual = actual;
          out.failure = std::move(v);
          return out;
        }
      } while (split.next());
    }
    return out;
  }

  static Verdict error_verdict(std::span<const Segment> segments,
                               const std::string& what, bool program_error) {
    Verdict v;
    v.kind = Verdict::Kind::kError;
    v.segments = materialize(segments);
    v.error = what;
    v.program_error = program_error;
    return v;
  }

  const Program& p_;
  const Decomposition& d_;
  const VerifBounds& b_;
  const VerifyOptions& options_;
  std::atomic<std::uint64_t> first_failure_{0};
  std::atomic<bool> timed_out_{false};
};

std::string segments_text(const std::vector<InputArray>& segments) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < segments[i].size(); ++j) {
      if (j) os << ',';
      os << segments[i][j];
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string_view to_string(MergeOp op) {
  switch (op) {
    case MergeOp::kAdd:
      return "+";
    case MergeOp::kMin:
      return "min";
    case MergeOp::kMax:
      return "max";
    case MergeOp::kMul:
      return "*";
    case MergeOp::kFirst:
      return "first";
    case MergeOp::kLast:
      return "last";
  }
  return "?";
}

std::optional<MergeOp> parse_merge_op(std::string_view text) {
  if (text == "+" || text == "add") return MergeOp::kAdd;
  if (text == "min") return MergeOp::kMin;
  if (text == "max") return MergeOp::kMax;
  if (text == "*" || text == "mul") return MergeOp::kMul;
  if (text == "first") return MergeOp::kFirst;
  if (text == "last") return MergeOp::kLast;
  return std::nullopt;
}

Scalar merge_outputs(MergeOp op, std::span<const Scalar> outputs) {
  if (outputs.empty()) throw EvalError("merge of zero partial outputs");
  Scalar acc = outputs.front();
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    acc = merge_pair(op, acc, outputs[i]);
  }
  return acc;
}

std::string prefix_text(const PrefixSpec& spec) {
  return std::visit(Overloaded{
                        [](const NoPrefix&) { return std::string("-"); },
                        [](const ConstPrefix& c) { return std::to_string(c.length); },
                        [](const CondPrefix& c) { return format_bool(c.predicate); },
                    },
                    spec);
}

std::string to_string(const Decomposition& d) {
  std::string s = "merge=" + std::string(to_string(d.merge));
  std::visit(Overloaded{
                 [&](const NoPrefix&) { s += " prefix=none"; },
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

void check_bounds(const VerifBounds& b) {
  if (b.segments < 2) throw ConfigError("number of segments must be at least 2");
  if (b.min_seg_len < 1) throw ConfigError("minimum segment length must be at least 1");
  if (b.segments * b.min_seg_len > b.max_total_len) {
    throw ConfigError("infeasible bounds: " + std::to_string(b.segments) +
                      " segments of length >= " + std::to_string(b.min_seg_len) +
                      " exceed max length " + std::to_string(b.max_total_len));
  }
  if (b.domain.empty()) throw ConfigError("value domain is empty");
  std::vector<Scalar> sorted = b.domain;
  std::sort(sorted.begin(), sorted.end(), sort_before);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("value domain contains duplicates");
  }
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::kValid:
      return "valid (" + std::to_string(v.checked) + " segmentations checked)";
    case Verdict::Kind::kCounterexample:
      return "counterexample " + segments_text(v.segments) + " expected " +
             to_string(v.expected) + " actual " + to_string(v.actual);
    case Verdict::Kind::kError:
      return std::string(v.program_error ? "program" : "candidate") +
             " error on " + segments_text(v.segments) + ": " + v.error;
  }
  return "?";
}

std::size_t prefix_length(const PrefixSpec& spec, std::span<const Scalar> segment) {
  return std::visit(
      Overloaded{
          [](const NoPrefix&) -> std::size_t { return 0; },
          [&](const ConstPrefix& c) { return std::min(c.length, segment.size()); },
          [&](const CondPrefix& c) {
            for (std::size_t i = 0; i < segment.size(); ++i) {
              if (eval_predicate(c.predicate, segment[i])) return i + 1;
            }
            return segment.size();
          },
      },
      spec);
}

InputArray compute_prefix(const PrefixSpec& spec, std::span<const Scalar> segment) {
  auto head = segment.first(prefix_length(spec, segment));
  return InputArray(head.begin(), head.end());
}

bool prefix_applicable(const PrefixSpec& spec, std::span<const InputArray> segments) {
  std::vector<Segment> views(segments.begin(), segments.end());
  return applicable(spec, views);
}

Scalar parallel_outputs(const Program& p, const Decomposition& d,
                        std::span<const InputArray> segments) {
  if (segments.size() < 2) throw ConfigError("parallel_outputs needs at least 2 segments");
  std::vector<Segment> views(segments.begin(), segments.end());
  std::vector<Scalar> partial;
  return combine(p, d, views, partial);
}

Verdict verify(const Program& p, const Decomposition& d, const VerifBounds& b,
               const VerifyOptions& options) {
  check_bounds(b);
  return Enumerator(p, d, b, options).run();
}

std::uint64_t count_search_space(const VerifBounds& b) {
  if (b.segments == 0 || b.min_seg_len == 0 || b.domain.empty()) return 0;
  const std::size_t m = b.segments;
  std::uint64_t total = 0;
  for (std::size_t n = m * b.min_seg_len; n <= b.max_total_len; ++n) {
    // Compositions of n into m parts >= min: C(n - m*(min-1) - 1, m - 1).
    std::uint64_t splits = binomial(n - m * (b.min_seg_len - 1) - 1, m - 1);
    std::uint64_t term = 0;
    if (__builtin_mul_overflow(checked_pow(b.domain.size(), n), splits, &term) ||
        __builtin_add_overflow(total, term, &total)) {
      throw ConfigError("verification search space is too large");
    }
  }
  return total;
}

}  // namespace grassp
