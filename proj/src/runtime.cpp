#include "grassp/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "grassp/error.hpp"
#include "grassp/eval.hpp"
#include "grassp/interpreter.hpp"

namespace grassp {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t narrow(std::size_t v) {
  if (v > static_cast<std::size_t>(std::numeric_limits<std::int64_t>::max())) {
    throw ConfigError("cost value out of range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

CostReport speedup_model(std::span<const std::size_t> s, std::span<const std::size_t> p,
                         std::size_t m) {
  if (m < 1) throw ConfigError("cost model needs at least one segment");
  if (s.size() != m || p.size() != m) {
    throw ConfigError("cost model expects " + std::to_string(m) +
                      " fold and prefix counts, got " + std::to_string(s.size()) +
                      " and " + std::to_string(p.size()));
  }
  if (p[0] != 0) throw ConfigError("the first segment has no prefix (p_1 must be 0)");

  CostReport r;
  r.seq_iterations.assign(s.begin(), s.end());
  r.prefix_iterations.assign(p.begin(), p.end());
  r.sequential_cost = std::accumulate(s.begin(), s.end(), std::size_t{0});
  r.prefix_cost = *std::max_element(p.begin(), p.end());
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t next = i + 1 < m ? p[i + 1] : 0;
    r.fold_cost = std::max(r.fold_cost, s[i] + next);
  }
  r.merge_cost = m;
  r.speedup = Ratio(narrow(r.sequential_cost),
                    narrow(r.prefix_cost + r.fold_cost + r.merge_cost));
  return r;
}

std::vector<InputArray> partition(std::span<const Scalar> a, std::size_t m) {
  if (m < 1) throw ConfigError("cannot partition into zero segments");
  if (a.size() < m) {
    throw ConfigError("cannot split " + std::to_string(a.size()) + " elements into " +
                      std::to_string(m) + " non-empty segments");
  }
  std::vector<InputArray> out;
  const std::size_t base = a.size() / m;
  const std::size_t extra = a.size() % m;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t len = base + (i < extra ? 1 : 0);
    out.emplace_back(a.begin() + offset, a.begin() + offset + len);
    offset += len;
  }
  return out;
}

std::vector<InputArray> adjust_segments(const PrefixSpec& spec,
                                        std::span<const InputArray> segments) {
  std::vector<InputArray> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const InputArray& seg = segments[i];
    bool keep = true;
    if (i > 0) {
      if (auto* c = std::get_if<ConstPrefix>(&spec)) {
        keep = seg.size() > c->length;
      } else if (auto* cond = std::get_if<CondPrefix>(&spec)) {
        keep = i + 1 == segments.size() ||
               std::any_of(seg.begin(), seg.end(), [&](const Scalar& x) {
                 return eval_predicate(cond->predicate, x);
               });
      }
    }
    if (keep) {
      out.push_back(seg);
    } else {
      out.back().insert(out.back().end(), seg.begin(), seg.end());
    }
  }
  return out;
}

ParallelRun run_parallel(const Program& p, const Decomposition& d,
                         std::span<const InputArray> segments, std::size_t workers) {
  if (segments.empty()) throw ConfigError("no segments to run");
  if (workers < 1) throw ConfigError("worker count must be positive");

  ParallelRun run;
  run.requested_segments = segments.size();
  run.segments = adjust_segments(d.prefix, segments);
  const auto& segs = run.segments;
  const std::size_t m = segs.size();
  const std::size_t threads = std::min(workers, m);

  std::vector<std::size_t> prefix_len(m, 0);
  std::vector<std::optional<Scalar>> partial(m);
  std::vector<std::exception_ptr> errors(m);
  std::atomic<bool> failed{false};
  std::atomic<std::uint64_t> ticket{0};
  run.trace.prefix_done.assign(m - 1, 0);
  run.trace.fold_start.assign(m, 0);

  auto guarded = [&](std::size_t seg, auto&& body) {
    if (failed.load()) return;
    try {
      body();
    } catch (...) {
      errors[seg] = std::current_exception();
      failed.store(true);
    }
  };

  const auto start = Clock::now();
  {
    std::barrier sync(static_cast<std::ptrdiff_t>(threads));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        // Prefix of segment i is consumed by the worker folding segment i-1.
        for (std::size_t i = 1 + w; i < m; i += threads) {
          guarded(i, [&] {
            prefix_len[i] = prefix_length(d.prefix, segs[i]);
            run.trace.prefix_done[i - 1] = ticket.fetch_add(1);
          });
        }
        sync.arrive_and_wait();
        for (std::size_t i = w; i < m; i += threads) {
          guarded(i, [&] {
            run.trace.fold_start[i] = ticket.fetch_add(1);
            FoldTrace t = fold_run(p, p.init, segs[i]);
            if (i + 1 < m) {
              t = fold_run(p, std::move(t.final_state),
                           std::span<const Scalar>(segs[i + 1]).first(prefix_len[i + 1]));
            }
            partial[i] = output(p, t.final_state);
          });
        }
        sync.arrive_and_wait();
      });
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw RunError(i + 1, e.what());
    }
  }
  std::vector<Scalar> outputs;
  for (auto& w : partial) outputs.push_back(*w);
  run.out = merge_outputs(d.merge, outputs);
  const auto parallel_end = Clock::now();

  std::vector<std::size_t> s(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = segs[i].size();
  run.report = speedup_model(s, prefix_len, m);
  run.report.wall_parallel = parallel_end - start;

  const auto seq_start = Clock::now();
  run.sequential_out = sequential_run(p, append(segments)).out;
  run.report.wall_sequential = Clock::now() - seq_start;
  return run;
}

}  // namespace grassp
