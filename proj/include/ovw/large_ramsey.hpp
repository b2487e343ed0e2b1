#pragma once

// Large homogeneous substructures: the block constructions that turn
// omega^n - largeness of an anchor set into homogeneous subspaces and
// subtrees with large anchor sets, plus the exponent recursion and
// refutation search.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ovw/largeness.hpp"
#include "ovw/ramsey.hpp"

namespace ovw {

struct BoundParams {
  Nat n0 = 1;
  Nat n1 = 1;

  void validate() const {
    if (n0 < 1 || n1 < 1) fail(errc::invalid_argument, "n0 and n1 must be >= 1");
  }
  bool operator==(const BoundParams&) const = default;
};

/// p(0) = n1, p(b + 1) = 4 p(b) + 3 n0 + 8.
inline Nat ovw_exponent(Nat b, const BoundParams& params) {
  Nat p = params.n1;
  for (Nat i = 0; i < b; ++i) {
    const Nat next = sat_add(sat_add(sat_mul(4, p), sat_mul(3, params.n0)), 8);
    if (next == kNatMax) fail(errc::invalid_argument, "exponent overflows 64 bits at b = " + std::to_string(i + 1));
    p = next;
  }
  return p;
}

enum class OVWMode { pre_ind, ind };

inline std::string_view to_string(OVWMode m) { return m == OVWMode::pre_ind ? "preind" : "ind"; }

struct PipelineOptions {
  /// Skip the size, sparsity and min X preconditions; search block
  /// partitions instead of deriving them.
  bool relax = false;
  Budget budget;
  /// Recursion depth a request may unfold into.
  std::size_t max_depth = 16;
  /// Candidate block instantiations examined before giving up.
  std::uint64_t search_budget = 2'000'000;
  /// Block partitions tried in relaxed mode.
  std::uint64_t max_partitions = 100'000;
};

struct BlockTrace {
  FinSet block;
  /// Anchors kept from this block.
  FinSet chosen;
  /// Number of prefix instantiations combined into the product coloring.
  Nat factors = 1;
  /// l^factors, saturated.
  Nat width = 1;
  /// l^(k^max(previous block)), saturated; 1 for the first block.
  Nat width_bound = 1;
  /// width < min block, the size condition the construction relies on.
  bool width_below_min = true;
};

struct LargeHomogResult {
  FinSet y;
  OrdinalExpr target;
  std::optional<CombinatorialSpace> space;
  std::optional<OVWTree> tree;
  Color color = 0;
  LargenessWitness witness;
  std::vector<BlockTrace> trace;
  std::vector<std::string> warnings;
};

namespace detail {

inline FinSet anchor_set(const VariableWord& w) {
  std::vector<Nat> v(w.anchors().begin(), w.anchors().end());
  return FinSet(std::move(v));
}

inline void check_common_pre(const FinSet& x, std::uint32_t k, Color l, const ThetaPredicate& theta,
                             OrdinalExpr need, bool relax, bool sparse_first) {
  if (x.empty()) fail(errc::empty_set, "structure has no anchors");
  if (relax) return;
  check_strict_min(x, theta, {});
  if (!(k < x.min()) || !(l < x.min()))
    fail(errc::not_large_enough, "alphabet and color counts must be below min X = " + std::to_string(x.min()));
  auto sparse = [&] {
    if (!is_sparse(x)) fail(errc::not_sparse, "anchor set " + to_string(x) + " is not sparse");
  };
  if (sparse_first) sparse();
  if (!large(x, need, theta, {}))
    fail(errc::not_large_enough, "anchor set is not " + to_string(need) + "-large");
  if (!sparse_first) sparse();
}

// Visits every partition of x into `parts` consecutive nonempty runs
// (parts = 0: any number of runs, fewest first).
template <typename Fn>
bool for_each_consecutive_partition(const FinSet& x, std::size_t parts, Fn&& fn) {
  const std::size_t n = x.size();
  auto emit = [&](const std::vector<std::size_t>& cuts) {
    std::vector<FinSet> blocks;
    std::size_t from = 0;
    for (std::size_t c : cuts) {
      blocks.push_back(x.slice(from, c));
      from = c;
    }
    blocks.push_back(x.slice(from, n));
    return fn(blocks);
  };
  auto run = [&](std::size_t p) {
    if (p == 0 || p > n) return true;
    std::vector<std::size_t> cuts(p - 1);
    auto rec = [&](auto&& self, std::size_t i, std::size_t lo) -> bool {
      if (i == cuts.size()) return emit(cuts);
      for (std::size_t c = lo; c + (cuts.size() - i - 1) < n; ++c) {
        cuts[i] = c;
        if (!self(self, i + 1, c + 1)) return false;
      }
      return true;
    };
    return rec(rec, 0, 1);
  };
  if (parts != 0) return run(parts);
  for (std::size_t p = 1; p <= n; ++p)
    if (!run(p)) return false;
  return true;
}

// Instantiates every variable of w whose anchor is outside `keep` with letter 0.
inline VariableWord restrict_to(const VariableWord& w, const FinSet& keep) {
  Tokens u;
  std::uint32_t fresh = 0;
  for (std::size_t j = 0; j < w.dimension(); ++j)
    u.push_back(keep.contains(w.anchors()[j]) ? Token::var(fresh++) : Token::letter(0));
  return compose(w, u);
}

// Replaces variables [from, from + width) of w by `block`, an instantiation
// using its own fresh variables 0..m-1; others keep their order.
inline VariableWord replace_block(const VariableWord& w, std::size_t from, std::size_t width, const Tokens& block) {
  std::uint32_t m = 0;
  for (const auto& t : block)
    if (t.is_variable()) m = std::max(m, t.value + 1);
  Tokens u;
  for (std::size_t j = 0; j < from; ++j) u.push_back(Token::var(static_cast<std::uint32_t>(j)));
  for (const auto& t : block) u.push_back(t.is_variable() ? Token::var(static_cast<std::uint32_t>(from) + t.value) : t);
  for (std::size_t j = from + width; j < w.dimension(); ++j)
    u.push_back(Token::var(static_cast<std::uint32_t>(j - width + m)));
  return compose(w, u);
}

inline BlockTrace trace_for(const FinSet& block, const FinSet& chosen, std::size_t prefix_vars,
                            std::optional<Nat> prev_max, std::uint32_t k, Color l) {
  BlockTrace t;
  t.block = block;
  t.chosen = chosen;
  t.factors = sat_pow(k, prefix_vars);
  t.width = sat_pow(l, t.factors);
  t.width_bound = prev_max ? sat_pow(l, sat_pow(k, *prev_max)) : 1;
  t.width_below_min = t.width < block.min();
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace detail {

// Backward block homogenization of a combinatorial space whose variables
// are grouped by `blocks` (anchor sets, in order). Throws HJFailure.
inline LargeHomogResult homogenize_space(const CombinatorialSpace& s, const Coloring& f,
                                         const std::vector<FinSet>& blocks, const Budget& budget) {
  const std::uint32_t k = s.alphabet().size();
  FinSet all;
  {
    std::vector<Nat> v;
    for (const auto& b : blocks) v.insert(v.end(), b.begin(), b.end());
    all = FinSet(std::move(v));
  }
  VariableWord w = restrict_to(s.generator, all);
  std::vector<std::size_t> sizes;
  for (const auto& b : blocks) sizes.push_back(b.size());
  LargeHomogResult res;
  res.trace.resize(blocks.size());
  for (std::size_t j = blocks.size(); j-- > 0;) {
    std::size_t prefix = 0;
    for (std::size_t i = 0; i < j; ++i) prefix += sizes[i];
    const std::size_t later = blocks.size() - 1 - j;
    if (!checked_pow(k, prefix, budget.points)) fail(errc::budget_exceeded, "too many prefixes for block " + std::to_string(j));
    Word full(w.dimension(), 0);
    auto color = [&](const Word& v) {
      std::vector<Color> tuple;
      for_each_word(k, prefix, [&](const Word& rho) {
        std::copy(rho.begin(), rho.end(), full.begin());
        std::copy(v.begin(), v.end(), full.begin() + static_cast<std::ptrdiff_t>(prefix));
        std::fill(full.end() - static_cast<std::ptrdiff_t>(later), full.end(), 0);
        tuple.push_back(f(substitute(w, full)));
        return true;
      });
      return tuple;
    };
    auto line = find_homogeneous_line(sizes[j], k, color);
    if (!line)
      fail(errc::hj_failure, "block " + std::to_string(j) + " = {" + to_string(blocks[j]) +
                                 "} has no line monochromatic for the product coloring");
    w = replace_block(w, prefix, sizes[j], *line);
    sizes[j] = 1;
    const Nat y = w.anchors()[prefix];
    res.trace[j] = trace_for(blocks[j], FinSet({y}), prefix, j ? std::optional<Nat>(blocks[j - 1].max()) : std::nullopt,
                             k, f.colors());
  }
  res.space = CombinatorialSpace{w};
  res.y = anchor_set(w);
  return res;
}

}  // namespace detail

/// A homogeneous subspace of s whose anchor set is omega^b - large.
inline LargeHomogResult find_large_homog_subspace(const CombinatorialSpace& s, const Coloring& f,
                                                  const ThetaPredicate& theta, Nat b, const BoundParams& params,
                                                  const PipelineOptions& opts = {}) {
  params.validate();
  const FinSet x = detail::anchor_set(s.generator);
  const OrdinalExpr need{sat_add(sat_add(sat_mul(2, b), params.n0), 1), 1};
  detail::check_common_pre(x, s.alphabet().size(), f.colors(), theta, need, opts.relax, false);
  const OrdinalExpr target{b, 1};

  auto finish = [&](LargeHomogResult res) {
    if (!verify_homogeneous(*res.space, f, opts.budget))
      fail(errc::postcondition_failure, "result subspace is not homogeneous");
    if (!is_substructure(*res.space, s, opts.budget))
      fail(errc::postcondition_failure, "result is not a subspace of the input");
    auto lr = is_large(res.y, target, theta, {.strict = false});
    if (!lr.large) fail(errc::postcondition_failure, "anchor set " + to_string(res.y) + " is not " + to_string(target) + "-large");
    res.witness = *lr.witness;
    res.target = target;
    res.color = f(space_points(*res.space, opts.budget).front());
    for (const auto& t : res.trace)
      if (!t.width_below_min)
        res.warnings.push_back("product width " + std::to_string(t.width) + " is not below min of block {" +
                               to_string(t.block) + "}");
    return res;
  };

  if (!opts.relax) return finish(detail::homogenize_space(s, f, split_large(x, params.n0, b, theta), opts.budget));

  std::optional<LargeHomogResult> found;
  std::optional<error> last;
  std::uint64_t tried = 0;
  detail::for_each_consecutive_partition(x, 0, [&](const std::vector<FinSet>& blocks) {
    if (++tried > opts.max_partitions) return false;
    if (!check_split(x, blocks, 0, b, theta).ok()) return true;
    try {
      found = detail::homogenize_space(s, f, blocks, opts.budget);
      return false;
    } catch (const error& e) {
      if (e.code() != errc::hj_failure) throw;
      last = e;
      return true;
    }
  });
  if (!found) {
    if (last) throw *last;
    fail(errc::not_large_enough, "no block partition of " + to_string(x) + " has " + to_string(target) +
                                     "-large transversals");
  }
  return finish(std::move(*found));
}

// ---------------------------------------------------------------------------

namespace detail {

struct OVWSearch {
  const OVWTree& tree;
  const Coloring& f;
  const ThetaPredicate& theta;
  OVWMode mode;
  Nat r;
  bool relax;
  const PipelineOptions& opts;
  std::uint32_t k;
  Nat min_x;
  OrdinalExpr target;
  std::vector<FinSet> blocks;
  std::uint64_t examined = 0;

  // Current per-block variable counts while the search runs.
  std::vector<std::size_t> sizes;

  std::size_t prefix_of(std::size_t j) const {
    std::size_t p = 0;
    for (std::size_t i = 0; i < j; ++i) p += sizes[i];
    return p;
  }

  OrdinalExpr block_target(std::size_t j) const {
    if (mode == OVWMode::pre_ind || relax) return {r, 1};
    const Nat m = blocks[j].min();
    return {r, m > 1 ? m - 1 : 1};
  }

  // Does w, with block j just instantiated to m variables, give uniform
  // colors: one color per prefix on block j's levels, and later block colors
  // independent of block j's letters?
  bool uniform(const VariableWord& w, std::size_t j, std::size_t m) const {
    const std::size_t prefix = prefix_of(j);
    const bool last = j + 1 == blocks.size();
    std::vector<std::size_t> later_starts;
    for (std::size_t i = j + 1, p = prefix + m; i < blocks.size(); p += sizes[i], ++i) later_starts.push_back(p);
    bool ok = true;
    Word u;
    for_each_word(k, prefix, [&](const Word& rho) {
      std::optional<Color> own;
      const std::size_t top = last ? m : m - 1;
      for (std::size_t depth = 0; depth <= top && ok; ++depth) {
        for_each_word(k, depth, [&](const Word& v) {
          u.assign(rho.begin(), rho.end());
          u.insert(u.end(), v.begin(), v.end());
          const Color c = f(substitute(w, u));
          if (!own) own = c;
          ok = *own == c;
          return ok;
        });
      }
      if (!ok || later_starts.empty()) return ok;
      std::optional<std::vector<Color>> tuple;
      for_each_word(k, m, [&](const Word& v) {
        std::vector<Color> t;
        for (std::size_t start : later_starts) {
          u.assign(rho.begin(), rho.end());
          u.insert(u.end(), v.begin(), v.end());
          u.resize(start, 0);
          t.push_back(f(substitute(w, u)));
        }
        if (!tuple) tuple = t;
        ok = *tuple == t;
        return ok;
      });
      return ok;
    });
    return ok;
  }

  std::optional<LargeHomogResult> run(const VariableWord& w, std::size_t j) {
    if (j == 0) return select(w);
    const std::size_t b = j - 1;
    const std::size_t prefix = prefix_of(b);
    const std::size_t width = sizes[b];
    for (std::size_t m = width; m >= 1; --m) {
      std::optional<LargeHomogResult> out;
      for_each_instantiation(width, m, k, [&](const Tokens& u) {
        if (++examined > opts.search_budget)
          fail(errc::budget_exceeded, "block search budget of " + std::to_string(opts.search_budget) + " exhausted");
        VariableWord next = replace_block(w, prefix, width, u);
        std::vector<Nat> kept(next.anchors().begin() + static_cast<std::ptrdiff_t>(prefix),
                              next.anchors().begin() + static_cast<std::ptrdiff_t>(prefix + m));
        if (!large(FinSet(kept), block_target(b), theta, {.strict = false})) return true;
        sizes[b] = m;
        if (uniform(next, b, m)) out = run(next, b);
        sizes[b] = width;
        return !out;
      });
      if (out) return out;
    }
    return std::nullopt;
  }

  // Levels of w are now grouped by block with one color per block.
  std::optional<LargeHomogResult> select(const VariableWord& w) {
    const std::size_t nb = blocks.size();
    std::vector<Color> colors(nb);
    std::vector<std::vector<std::size_t>> vars(nb);
    for (std::size_t j = 0, p = 0; j < nb; p += sizes[j], ++j) {
      colors[j] = f(substitute(w, Word(p, 0)));
      for (std::size_t i = 0; i < sizes[j]; ++i) vars[j].push_back(p + i);
    }
    std::vector<std::vector<std::size_t>> selections;
    if (mode == OVWMode::ind || relax) {
      for (std::size_t j = 1; j < nb; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (colors[i] == colors[j]) {
            std::vector<std::size_t> sel{vars[i].front()};
            sel.insert(sel.end(), vars[j].begin(), vars[j].end());
            selections.push_back(std::move(sel));
          }
    }
    if (mode == OVWMode::pre_ind || relax) {
      for (Color c = 0; c < f.colors(); ++c) {
        std::vector<std::size_t> sel;
        std::size_t count = 0;
        for (std::size_t j = 0; j < nb; ++j)
          if (colors[j] == c) {
            sel.insert(sel.end(), vars[j].begin(), vars[j].end());
            ++count;
          }
        if (count > 0 && (relax || count + 1 >= min_x)) selections.push_back(std::move(sel));
      }
    }
    for (const auto& sel : selections)
      if (auto res = finish(w, sel)) return res;
    return std::nullopt;
  }

  // Keeps the variables in `sel`, instantiates the rest with letter 0 and
  // cuts the generator so that its leaves carry the common color.
  std::optional<LargeHomogResult> finish(const VariableWord& w, const std::vector<std::size_t>& sel) {
    Tokens u;
    std::uint32_t fresh = 0;
    for (std::size_t v = 0; v < w.dimension(); ++v)
      u.push_back(std::find(sel.begin(), sel.end(), v) != sel.end() ? Token::var(fresh++) : Token::letter(0));
    const std::size_t top = sel.back();
    std::vector<VariableWord> candidates;
    if (top + 1 == w.dimension()) {
      candidates.push_back(compose(w, u));
    } else {
      // cut at the next variable, or give up the top kept anchor
      Tokens upto(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(top + 2));
      upto.back() = Token::var(fresh);
      candidates.push_back(truncate_before(compose(truncate_before(w, top + 2), upto), fresh));
      if (sel.size() > 1) {
        Tokens cut(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(top + 1));
        candidates.push_back(truncate_before(compose(truncate_before(w, top + 1), cut), fresh - 1));
      }
    }
    for (const auto& g : candidates) {
      if (g.dimension() == 0) continue;
      OVWTree sub{g};
      if (!verify_homogeneous(sub, f, opts.budget)) continue;
      const FinSet y = anchor_set(g);
      auto lr = is_large(y, target, theta, {.strict = false});
      if (!lr.large) continue;
      if (!is_substructure(sub, tree, opts.budget))
        fail(errc::postcondition_failure, "selected subtree escapes the input tree");
      LargeHomogResult res;
      res.y = y;
      res.target = target;
      res.tree = sub;
      res.color = f(substitute(g, Word{}));
      res.witness = *lr.witness;
      return res;
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// A homogeneous OVW subtree of t with a large anchor set: omega^r * (min X - 1)
/// for PreInd, omega^(r+1) for Ind.
inline LargeHomogResult find_large_homog_ovw_subtree(const OVWTree& t, const Coloring& f, const ThetaPredicate& theta,
                                                     Nat r, OVWMode mode, const BoundParams& params,
                                                     const PipelineOptions& opts = {}) {
  params.validate();
  const std::size_t depth = 2 * r + (mode == OVWMode::pre_ind ? 1 : 2);
  if (depth > opts.max_depth)
    fail(errc::recursion_budget_exceeded,
         "r = " + std::to_string(r) + " needs depth " + std::to_string(depth) + " > " + std::to_string(opts.max_depth));
  const FinSet x = detail::anchor_set(t.generator);
  const std::uint32_t k = t.alphabet().size();
  const Color l = f.colors();
  const Nat q = ovw_exponent(r, params);
  const Nat pre_need = sat_add(sat_add(sat_mul(2, q), params.n0), 3);
  const Nat need = mode == OVWMode::pre_ind ? pre_need : ovw_exponent(r + 1, params);
  detail::check_common_pre(x, k, l, theta, {need, 1}, opts.relax, true);
  const Nat min_x = x.min();
  const OrdinalExpr target = mode == OVWMode::pre_ind ? OrdinalExpr{r, min_x > 1 ? min_x - 1 : 1} : OrdinalExpr{r + 1, 1};
  const std::size_t nblocks = mode == OVWMode::ind ? l + 1 : l * (min_x > 2 ? min_x - 2 : 0) + 1;

  auto attempt = [&](const std::vector<FinSet>& blocks,
                     const VariableWord& base) -> std::optional<LargeHomogResult> {
    std::vector<Nat> all;
    for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
    detail::OVWSearch search{t, f, theta, mode, r, opts.relax, opts, k, min_x, target, blocks, 0, {}};
    for (const auto& b : blocks) search.sizes.push_back(b.size());
    auto res = search.run(detail::restrict_to(base, FinSet(all)), blocks.size());
    if (!res) return res;
    std::optional<Nat> prev;
    for (std::size_t j = 0, p = 0; j < blocks.size(); p += blocks[j].size(), ++j) {
      std::vector<Nat> chosen;
      for (Nat y : res->y)
        if (blocks[j].contains(y)) chosen.push_back(y);
      res->trace.push_back(detail::trace_for(blocks[j], FinSet(chosen), p, prev, k, l));
      if (!res->trace.back().width_below_min)
        res->warnings.push_back("product width " + std::to_string(res->trace.back().width) +
                                " is not below min of block {" + to_string(blocks[j]) + "}");
      prev = blocks[j].max();
    }
    return res;
  };

  if (!opts.relax) {
    FinSet pool = x;
    Nat block_exp = 0;
    if (mode == OVWMode::pre_ind) {
      pool = x.without_min().without_min();
      block_exp = sat_add(sat_add(sat_mul(2, q), params.n0), 1);
    } else {
      block_exp = sat_add(sat_add(sat_mul(2, pre_need), params.n0), 1);
    }
    LargenessSolver solver(pool.elements(), theta);
    if (solver.first_fit(0, block_exp, nblocks) == LargenessSolver::kNone)
      fail(errc::not_large_enough, "cannot place " + std::to_string(nblocks) + " apart w^" + std::to_string(block_exp) +
                                       "-large blocks");
    std::vector<FinSet> blocks;
    for (auto [s, e] : solver.block_ranges(0, block_exp, nblocks)) blocks.push_back(pool.slice(s, e + 1));
    if (auto res = attempt(blocks, t.generator)) return *res;
    fail(errc::hj_failure, "block construction found no homogeneous selection");
  }

  // Longest prefix first: the tree cut before anchor `cut` has leaves at X[cut].
  std::optional<LargeHomogResult> found;
  std::uint64_t tried = 0;
  for (std::size_t cut = x.size(); cut >= 1 && !found && tried <= opts.max_partitions; --cut) {
    const VariableWord base = truncate_before(t.generator, cut);
    detail::for_each_consecutive_partition(x.slice(0, cut), 0, [&](const std::vector<FinSet>& blocks) {
      if (++tried > opts.max_partitions) return false;
      found = attempt(blocks, base);
      return !found;
    });
  }
  if (!found)
    fail(errc::hj_failure, "no consecutive partition of " + to_string(x) + " yields a homogeneous " +
                               to_string(target) + "-large selection");
  return *found;
}

// ---------------------------------------------------------------------------

struct GRRefutation {
  /// A coloring of the anchored X-space with no homogeneous Y-subspace for
  /// any e-large Y; absent when every coloring has one.
  std::optional<Coloring> counterexample;
  /// The search covered every coloring.
  bool complete = false;
  HJMode mode = HJMode::automatic;
  std::size_t large_subspaces = 0;
};

struct RefutationOptions {
  HJMode mode = HJMode::automatic;
  std::uint64_t coloring_budget = std::uint64_t{1} << 24;
  std::uint64_t node_budget = 50'000'000;
  Budget budget;
};

/// Searches for a coloring refuting that x is e-large(theta, GR) at (k, l),
/// on the space generated by x_j at position X[j] and letter 0 elsewhere.
inline GRRefutation certify_not_gr_large(const FinSet& x, OrdinalExpr e, const ThetaPredicate& theta, std::uint32_t k,
                                         Color l, const RefutationOptions& opts = {}) {
  if (x.empty()) fail(errc::empty_set, "no anchors");
  if (!(k < x.min()) || !(l < x.min()))
    fail(errc::invalid_argument, "k and l must be below min X = " + std::to_string(x.min()));
  std::vector<std::size_t> anchors(x.begin(), x.end());
  const CombinatorialSpace s{anchored_generator(anchors, Alphabet(k))};
  const auto points = space_points(s, opts.budget);
  std::map<Word, std::uint32_t> index;
  for (std::uint32_t i = 0; i < points.size(); ++i) index[points[i]] = i;
  std::vector<std::vector<std::uint32_t>> edges;
  for (std::size_t m = 1; m <= s.dimension(); ++m) {
    for_each_subspace(s, m, [&](const CombinatorialSpace& sub) {
      if (!large(detail::anchor_set(sub.generator), e, theta, {.strict = false})) return true;
      std::vector<std::uint32_t> edge;
      for (const auto& p : space_points(sub, opts.budget)) edge.push_back(index.at(p));
      edges.push_back(std::move(edge));
      return true;
    });
  }
  GRRefutation out;
  out.large_subspaces = edges.size();
  MonoFreeSearch search(points.size(), l, std::move(edges));
  HJMode mode = opts.mode;
  if (mode == HJMode::automatic) {
    Nat total = 1;
    for (std::size_t i = 0; i < points.size(); ++i) total = sat_mul(total, l);
    mode = total <= opts.coloring_budget ? HJMode::exhaustive : HJMode::backtrack;
  }
  out.mode = mode;
  auto found = mode == HJMode::exhaustive ? search.exhaustive(opts.coloring_budget) : search.backtrack(opts.node_budget);
  out.complete = true;
  if (found) {
    std::map<Word, Color> entries;
    for (std::size_t i = 0; i < points.size(); ++i) entries[points[i]] = (*found)[i];
    out.counterexample = Coloring::table(l, std::move(entries));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct Calibration {
  struct Entry {
    std::uint32_t k;
    Color l;
    /// Least n <= n_max with the HJ instance holding, if found.
    std::optional<std::size_t> threshold;
    bool budget_hit = false;
  };
  std::vector<Entry> entries;
  /// Least e with |generate_large(w^e, Top, start)| >= every known threshold.
  std::optional<Nat> n0;
  std::vector<std::size_t> generated_sizes;
};

inline Calibration calibrate_n0(std::uint32_t k_max, Color l_max, std::size_t n_max, Nat start, Nat e_max = 3,
                                const HJInstanceOptions& hj = {.mode = HJMode::automatic,
                                                               .coloring_budget = std::uint64_t{1} << 20,
                                                               .node_budget = 5'000'000}) {
  Calibration out;
  std::size_t need = 1;
  for (std::uint32_t k = 2; k <= k_max; ++k) {
    for (Color l = 2; l <= l_max; ++l) {
      Calibration::Entry e{k, l, std::nullopt, false};
      for (std::size_t n = 1; n <= n_max; ++n) {
        try {
          if (verify_hj_instance(k, l, n, hj).holds) {
            e.threshold = n;
            break;
          }
        } catch (const error& err) {
          if (err.code() != errc::budget_exceeded) throw;
          e.budget_hit = true;
          break;
        }
      }
      if (e.threshold) need = std::max(need, *e.threshold);
      out.entries.push_back(e);
    }
  }
  for (Nat e = 0; e <= e_max; ++e) {
    try {
      const auto x = generate_large({e, 1}, ThetaPredicate::top(), start, false, {.largeness = {.strict = false}});
      out.generated_sizes.push_back(x.size());
      if (x.size() >= need) {
        out.n0 = std::max<Nat>(e, 1);
        break;
      }
    } catch (const error& err) {
      if (err.code() != errc::schedule_exhausted) throw;
      break;
    }
  }
  return out;
}

}  // namespace ovw
