#include "grassp/synthesizer.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>

#include "grassp/error.hpp"
#include "grassp/eval.hpp"

namespace grassp {
namespace {

using Clock = std::chrono::steady_clock;

struct SortBefore {
  bool operator()(const Scalar& a, const Scalar& b) const { return sort_before(a, b); }
};
using ScalarSet = std::set<Scalar, SortBefore>;

SynthesisBounds resolved(const Program& p, SynthesisBounds b) {
  if (b.domain.empty()) b.domain = default_domain(p);
  if (b.segment_counts.empty()) throw ConfigError("no segment counts configured");
  for (std::size_t m : b.segment_counts) {
    check_bounds(VerifBounds{m, b.max_total_len, b.min_seg_len, b.domain});
  }
  return b;
}

void check_space(const CandidateSpace& s) {
  if (s.merge_ops.empty()) throw ConfigError("merge menu is empty");
}

// Counts one candidate and checks it against the deadline.
bool try_candidate(const Program& p, const Decomposition& d, const SynthesisBounds& b,
                   const SynthesisOptions& options, SynthesisStats* stats) {
  if (options.deadline && Clock::now() > *options.deadline) {
    throw TimeoutError("synthesis timed out");
  }
  if (stats) ++stats->candidates_tried;
  return accepts(p, d, b, options, stats);
}

std::optional<Decomposition> first_accepted(const Program& p, const SynthesisBounds& b,
                                            const CandidateSpace& s,
                                            const std::vector<PrefixSpec>& prefixes,
                                            const SynthesisOptions& options,
                                            SynthesisStats* stats) {
  check_space(s);
  SynthesisBounds rb = resolved(p, b);
  for (const auto& prefix : prefixes) {
    for (MergeOp op : s.merge_ops) {
      Decomposition d{op, prefix};
      if (try_candidate(p, d, rb, options, stats)) return d;
    }
  }
  return std::nullopt;
}

void collect_fields(const Expr& e, std::set<std::size_t>& out) {
  visit(e, [&](const Expr& sub) {
    if (auto* f = std::get_if<FieldExpr>(&sub.node().v)) out.insert(f->index);
  });
}

void collect_constants(const Expr& e, ScalarSet& out) {
  visit(e, [&](const Expr& sub) {
    if (auto* c = std::get_if<ConstExpr>(&sub.node().v)) out.insert(c->value);
  });
}

// Constants c appearing in a comparison between the current element and c.
void collect_input_comparisons(const Expr& e, ScalarSet& out) {
  auto is_input = [](const Expr& x) {
    return std::holds_alternative<InputExpr>(x.node().v);
  };
  auto as_const = [](const Expr& x) -> const ConstExpr* {
    return std::get_if<ConstExpr>(&x.node().v);
  };
  visit(e, [](const Expr&) {},
        [&](const BoolExpr& b) {
          auto* cmp = std::get_if<CmpBool>(&b.node().v);
          if (!cmp) return;
          if (is_input(cmp->lhs) && as_const(cmp->rhs)) out.insert(as_const(cmp->rhs)->value);
          if (is_input(cmp->rhs) && as_const(cmp->lhs)) out.insert(as_const(cmp->lhs)->value);
        });
}

std::optional<std::vector<bool>> truth_table(const BoolExpr& pred,
                                             std::span<const Scalar> domain) {
  std::vector<bool> table;
  table.reserve(domain.size());
  try {
    for (const Scalar& x : domain) table.push_back(eval_predicate(pred, x));
  } catch (const EvalError&) {
    return std::nullopt;
  }
  return table;
}

}  // namespace

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::kNoPrefix:
      return "SyntNoPrefix";
    case Hypothesis::kConstPrefix:
      return "SyntConstPrefix";
    case Hypothesis::kCondPrefix:
      return "SyntCondPrefix";
  }
  return "?";
}

std::vector<MergeOp> default_merge_menu() {
  return {MergeOp::kAdd, MergeOp::kMin, MergeOp::kMax,
          MergeOp::kMul, MergeOp::kFirst, MergeOp::kLast};
}

std::vector<MergeOp> strict_merge_menu() {
  return {MergeOp::kAdd, MergeOp::kMin, MergeOp::kMax};
}

std::vector<Scalar> default_domain(const Program& p) {
  std::vector<Scalar> d = {0, 1, 2, 3};
  if (mentions_eof(p)) d.push_back(Scalar::eof());
  return d;
}

std::vector<Scalar> condition_constants(const Program& p) {
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

  // Distance of each field from the output along "is read by" edges.
  std::vector<std::size_t> dist(p.arity, kUnreached);
  std::deque<std::size_t> queue;
  std::set<std::size_t> roots;
  collect_fields(p.output, roots);
  for (std::size_t f : roots) {
    dist[f] = 0;
    queue.push_back(f);
  }
  while (!queue.empty()) {
    std::size_t f = queue.front();
    queue.pop_front();
    std::set<std::size_t> reads;
    collect_fields(p.step[f], reads);
    for (std::size_t g : reads) {
      if (dist[g] == kUnreached) {
        dist[g] = dist[f] + 1;
        queue.push_back(g);
      }
    }
  }

  std::map<Scalar, std::size_t, SortBefore> rank;
  for (std::size_t f = 0; f < p.arity; ++f) {
    ScalarSet compared;
    collect_input_comparisons(p.step[f], compared);
    for (const Scalar& c : compared) {
      auto [it, inserted] = rank.emplace(c, dist[f]);
      if (!inserted) it->second = std::min(it->second, dist[f]);
    }
  }
  std::vector<Scalar> out;
  for (const auto& [c, r] : rank) out.push_back(c);
  std::stable_sort(out.begin(), out.end(), [&](const Scalar& a, const Scalar& b) {
    return rank.at(a) < rank.at(b);
  });

  ScalarSet rest = {0, 1, 2};
  for (const Scalar& c : p.init) rest.insert(c);
  for (const Expr& e : p.step) collect_constants(e, rest);
  collect_constants(p.output, rest);
  for (const Scalar& c : rest) {
    if (!rank.contains(c)) out.push_back(c);
  }
  return out;
}

std::vector<BoolExpr> enumerate_conditions(const Program& p, const CandidateSpace& s,
                                           std::span<const Scalar> domain) {
  const std::vector<Scalar> constants =
      s.cond_constants.empty() ? condition_constants(p) : s.cond_constants;

  std::vector<BoolExpr> atoms;
  for (CmpOp op : s.atom_ops) {
    for (const Scalar& c : constants) {
      atoms.push_back(BoolExpr::compare(op, Expr::input(), Expr::constant(c)));
    }
  }

  std::vector<BoolExpr> out;
  std::set<std::vector<bool>> seen;
  auto consider = [&](const BoolExpr& pred) {
    auto table = truth_table(pred, domain);
    if (!table) return;
    bool any = std::find(table->begin(), table->end(), true) != table->end();
    bool all = std::find(table->begin(), table->end(), false) == table->end();
    if (!any || all) return;
    if (seen.insert(*table).second) out.push_back(pred);
  };

  for (const auto& a : atoms) consider(a);
  const std::size_t n = atoms.size();
  for (std::size_t k = 2; k <= s.max_conjuncts && k <= n; ++k) {
    // Index combinations in lexicographic order.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      BoolExpr conj = atoms[idx[0]];
      for (std::size_t i = 1; i < k; ++i) conj = BoolExpr::conjunction(conj, atoms[idx[i]]);
      consider(conj);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

bool accepts(const Program& p, const Decomposition& d, const SynthesisBounds& b,
             const SynthesisOptions& options, SynthesisStats* stats) {
  const std::vector<Scalar> domain = b.domain.empty() ? default_domain(p) : b.domain;
  std::uint64_t checked = 0;
  for (std::size_t m : b.segment_counts) {
    Verdict v = verify(p, d, VerifBounds{m, b.max_total_len, b.min_seg_len, domain},
                       VerifyOptions{options.jobs, options.deadline});
    checked += v.checked;
    if (stats) stats->arrays_checked += v.checked;
    if (v.kind == Verdict::Kind::kError && v.program_error) {
      throw EvalError("program fails inside the bounds: " + to_string(v));
    }
    if (!v.valid()) return false;
  }
  return checked > 0;
}

std::optional<Decomposition> synt_no_prefix(const Program& p, const SynthesisBounds& b,
                                            const CandidateSpace& s,
                                            const SynthesisOptions& options,
                                            SynthesisStats* stats) {
  return first_accepted(p, b, s, {NoPrefix{}}, options, stats);
}

std::optional<Decomposition> synt_constant_prefix(const Program& p,
                                                  const SynthesisBounds& b,
                                                  const CandidateSpace& s,
                                                  const SynthesisOptions& options,
                                                  SynthesisStats* stats) {
  std::vector<PrefixSpec> prefixes;
  for (std::size_t c = 1; c <= s.max_const_prefix; ++c) prefixes.push_back(ConstPrefix{c});
  return first_accepted(p, b, s, prefixes, options, stats);
}

std::optional<Decomposition> synt_conditional_prefix(const Program& p,
                                                     const SynthesisBounds& b,
                                                     const CandidateSpace& s,
                                                     const SynthesisOptions& options,
                                                     SynthesisStats* stats) {
  const std::vector<Scalar> domain = b.domain.empty() ? default_domain(p) : b.domain;
  std::vector<PrefixSpec> prefixes;
  for (auto& pred : enumerate_conditions(p, s, domain)) {
    prefixes.push_back(CondPrefix{std::move(pred)});
  }
  return first_accepted(p, b, s, prefixes, options, stats);
}

SynthesisResult grassp(const Program& p, const SynthesisBounds& b,
                       const CandidateSpace& s, const SynthesisOptions& options) {
  const auto start = Clock::now();
  check_space(s);
  const SynthesisBounds rb = resolved(p, b);

  SynthesisResult result;
  auto attempt = [&](Hypothesis h, auto&& method) {
    if (result.found()) return;
    if (auto d = method(p, rb, s, options, &result.stats)) {
      result.hypothesis = h;
      result.decomposition = std::move(*d);
    }
  };
  attempt(Hypothesis::kNoPrefix, synt_no_prefix);
  attempt(Hypothesis::kConstPrefix, synt_constant_prefix);
  attempt(Hypothesis::kCondPrefix, synt_conditional_prefix);
  result.stats.elapsed = Clock::now() - start;
  return result;
}

}  // namespace grassp
