#pragma once

// Hales-Jewett, Graham-Rothschild and Carlson-Simpson witness searches.

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "ovw/coloring.hpp"
#include "ovw/largeness.hpp"

namespace ovw {

struct SearchOptions {
  Budget budget;
  /// Worker threads for candidate scans; results do not depend on it.
  unsigned threads = 1;
};

namespace detail {

// Least i < count with pred(i), scanning with `threads` workers.
template <typename Pred>
std::optional<std::size_t> first_index(std::size_t count, unsigned threads, Pred&& pred) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{count};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < best.load(); i += threads) {
          if (pred(i)) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  if (best.load() == count) return std::nullopt;
  return best.load();
}

template <typename ColorFn>
bool all_same(const std::vector<Word>& points, ColorFn&& color) {
  if (points.empty()) return true;
  const auto first = color(points.front());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(color(points[i]) == first)) return false;
  return true;
}

}  // namespace detail

inline bool verify_homogeneous(const CombinatorialSpace& s, const Coloring& f, const Budget& budget = {}) {
  return detail::all_same(space_points(s, budget), f);
}

inline bool verify_homogeneous(const OVWTree& t, const Coloring& f, const Budget& budget = {}) {
  return detail::all_same(tree_points(t, budget), f);
}

/// All m-dimensional subspaces of s share one g-color.
inline bool verify_homogeneous(const CombinatorialSpace& s, std::size_t m, const SubstructureColoring& g) {
  std::optional<Color> first;
  return for_each_subspace(s, m, [&](const CombinatorialSpace& sub) {
    const Color c = g(sub.generator);
    if (!first) first = c;
    return *first == c;
  });
}

/// First instantiation (one fresh variable) of A^n, in canonical order, whose
/// k points get equal colors under color(point as word over A^n).
template <typename ColorFn>
std::optional<Tokens> find_homogeneous_line(std::size_t n, std::uint32_t k, ColorFn&& color) {
  std::optional<Tokens> found;
  Word point(n);
  for_each_instantiation(n, 1, k, [&](const Tokens& u) {
    bool same = true;
    std::optional<decltype(color(point))> first;
    for (Letter a = 0; a < k && same; ++a) {
      for (std::size_t i = 0; i < n; ++i) point[i] = u[i].is_variable() ? a : u[i].value;
      auto c = color(static_cast<const Word&>(point));
      if (!first) {
        first = std::move(c);
      } else if (!(c == *first)) {
        same = false;
      }
    }
    if (same) found = u;
    return !same;
  });
  return found;
}

struct LineResult {
  CombinatorialSpace line;
  Color color = 0;
};

/// The canonically first monochromatic combinatorial line of s.
inline std::optional<LineResult> find_hj_line(const CombinatorialSpace& s, const Coloring& f,
                                              const SearchOptions& opts = {}) {
  space_size(s, opts.budget);
  if (s.dimension() == 0) return std::nullopt;
  auto is_mono = [&](const Tokens& u) {
    const auto line = CombinatorialSpace{compose(s.generator, u)};
    return verify_homogeneous(line, f, opts.budget);
  };
  if (opts.threads > 1) {
    const auto cands = instantiations(s.dimension(), 1, s.alphabet().size());
    auto idx = detail::first_index(cands.size(), opts.threads, [&](std::size_t i) { return is_mono(cands[i]); });
    if (!idx) return std::nullopt;
    CombinatorialSpace line{compose(s.generator, cands[*idx])};
    return LineResult{line, f(substitute(line.generator, Word{0}))};
  }
  std::optional<LineResult> out;
  for_each_instantiation(s.dimension(), 1, s.alphabet().size(), [&](const Tokens& u) {
    if (!is_mono(u)) return true;
    CombinatorialSpace line{compose(s.generator, u)};
    out = LineResult{line, f(substitute(line.generator, Word{0}))};
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------

/// Searches for an l-coloring of points 0..n-1 under which no edge is
/// monochromatic; colorings are tried in lexicographic order.
class MonoFreeSearch {
 public:
  MonoFreeSearch(std::size_t points, Color colors, std::vector<std::vector<std::uint32_t>> edges)
      : n_(points), l_(colors), edges_(std::move(edges)), incident_(points) {
    for (std::uint32_t e = 0; e < edges_.size(); ++e)
      for (auto p : edges_[e]) incident_[p].push_back(e);
  }

  /// Enumerates every coloring; fails when there are more than `limit`.
  std::optional<std::vector<Color>> exhaustive(std::uint64_t limit) {
    Nat total = 1;
    for (std::size_t i = 0; i < n_; ++i) total = sat_mul(total, l_);
    if (total > limit)
      fail(errc::budget_exceeded, std::to_string(l_) + "^" + std::to_string(n_) + " colorings exceed the budget");
    std::vector<Color> c(n_, 0);
    while (true) {
      ++nodes_;
      if (!any_mono(c)) return c;
      std::size_t i = n_;
      while (true) {
        if (i == 0) return std::nullopt;
        --i;
        if (++c[i] < l_) break;
        c[i] = 0;
      }
    }
  }

  /// Depth-first assignment in point order with forward checking on edges
  /// that have a single unassigned point left.
  std::optional<std::vector<Color>> backtrack(std::uint64_t node_limit) {
    node_limit_ = node_limit;
    assign_.assign(n_, kUnset);
    forbidden_.assign(n_ * l_, 0);
    if (n_ == 0) return any_edge_empty() ? std::nullopt : std::optional<std::vector<Color>>(std::vector<Color>{});
    if (dfs(0)) return assign_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr Color kUnset = std::numeric_limits<Color>::max();

  bool any_edge_empty() const {
    for (const auto& e : edges_)
      if (e.empty()) return true;
    return false;
  }

  bool any_mono(const std::vector<Color>& c) const {
    for (const auto& e : edges_) {
      bool mono = true;
      for (std::size_t i = 1; i < e.size() && mono; ++i) mono = c[e[i]] == c[e[0]];
      if (mono) return true;
    }
    return false;
  }

  bool dfs(std::size_t p) {
    if (p == n_) return true;
    for (Color c = 0; c < l_; ++c) {
      if (forbidden_[p * l_ + c]) continue;
      if (++nodes_ > node_limit_) fail(errc::budget_exceeded, "backtracking node budget exhausted");
      assign_[p] = c;
      std::vector<std::size_t> marks;
      bool ok = true;
      for (auto e : incident_[p]) {
        const auto& pts = edges_[e];
        std::size_t unset = 0, hole = 0;
        bool same = true;
        std::optional<Color> col;
        for (auto q : pts) {
          if (assign_[q] == kUnset) {
            ++unset;
            hole = q;
          } else if (!col) {
            col = assign_[q];
          } else if (*col != assign_[q]) {
            same = false;
          }
        }
        if (!same) continue;
        if (unset == 0) {
          ok = false;
          break;
        }
        if (unset == 1) {
          const std::size_t slot = hole * l_ + *col;
          ++forbidden_[slot];
          marks.push_back(slot);
          bool alive = false;
          for (Color d = 0; d < l_ && !alive; ++d) alive = forbidden_[hole * l_ + d] == 0;
          if (!alive) {
            ok = false;
            break;
          }
        }
      }
      if (ok && dfs(p + 1)) return true;
      for (auto s : marks) --forbidden_[s];
      assign_[p] = kUnset;
    }
    return false;
  }

  std::size_t n_;
  Color l_;
  std::vector<std::vector<std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<Color> assign_;
  std::vector<std::uint32_t> forbidden_;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_limit_ = 0;
};

inline std::size_t lex_rank(const Word& u, std::uint32_t k) {
  std::size_t r = 0;
  for (Letter a : u) r = r * k + a;
  return r;
}

/// Point indices (lexicographic ranks in A^n) of every combinatorial line.
inline std::vector<std::vector<std::uint32_t>> line_edges(std::uint32_t k, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> edges;
  Word point(n);
  for_each_instantiation(n, 1, k, [&](const Tokens& u) {
    std::vector<std::uint32_t> e;
    for (Letter a = 0; a < k; ++a) {
      for (std::size_t i = 0; i < n; ++i) point[i] = u[i].is_variable() ? a : u[i].value;
      e.push_back(static_cast<std::uint32_t>(lex_rank(point, k)));
    }
    edges.push_back(std::move(e));
    return true;
  });
  return edges;
}

enum class HJMode { automatic, exhaustive, backtrack };

struct HJInstance {
  bool holds = false;
  /// A line-free coloring of A^n when holds is false.
  std::optional<Coloring> counterexample;
  HJMode mode = HJMode::automatic;
  std::uint64_t nodes = 0;
};

struct HJInstanceOptions {
  HJMode mode = HJMode::automatic;
  std::uint64_t coloring_budget = std::uint64_t{1} << 24;
  std::uint64_t node_budget = 50'000'000;
  Budget budget;
};

/// Does every l-coloring of A^n (|A| = k) have a monochromatic line?
inline HJInstance verify_hj_instance(std::uint32_t k, Color l, std::size_t n, const HJInstanceOptions& opts = {}) {
  const auto full = full_space(Alphabet(k), n);
  const auto points = space_points(full, opts.budget);
  MonoFreeSearch search(points.size(), l, line_edges(k, n));
  HJMode mode = opts.mode;
  if (mode == HJMode::automatic) {
    Nat total = 1;
    for (std::size_t i = 0; i < points.size(); ++i) total = sat_mul(total, l);
    mode = total <= opts.coloring_budget ? HJMode::exhaustive : HJMode::backtrack;
  }
  auto found = mode == HJMode::exhaustive ? search.exhaustive(opts.coloring_budget) : search.backtrack(opts.node_budget);
  HJInstance out;
  out.mode = mode;
  out.nodes = search.nodes();
  out.holds = !found;
  if (found) {
    std::map<Word, Color> entries;
    for (std::size_t i = 0; i < points.size(); ++i) entries[points[i]] = (*found)[i];
    out.counterexample = Coloring::table(l, std::move(entries));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GRResult {
  CombinatorialSpace space;
  Color color = 0;
};

/// First d-dimensional subspace of s all of whose m-dimensional subspaces
/// share one g-color.
template <typename SubColoring>
std::optional<GRResult> find_gr_subspace(const CombinatorialSpace& s, std::size_t m, std::size_t d,
                                         const SubColoring& g, const SearchOptions& opts = {}) {
  if (m < 1 || m > d || d > s.dimension())
    fail(errc::index_out_of_range, "need 1 <= m <= d <= dim(S)");
  auto check = [&](const Tokens& u) -> std::optional<Color> {
    const CombinatorialSpace cand{compose(s.generator, u)};
    std::optional<Color> first;
    bool ok = for_each_subspace(cand, m, [&](const CombinatorialSpace& sub) {
      const Color c = g(sub.generator);
      if (!first) first = c;
      return *first == c;
    });
    return ok ? first : std::nullopt;
  };
  const auto k = s.alphabet().size();
  if (opts.threads > 1) {
    const auto cands = instantiations(s.dimension(), d, k);
    if (cands.size() > opts.budget.points) fail(errc::budget_exceeded, "too many candidate subspaces");
    auto idx = detail::first_index(cands.size(), opts.threads, [&](std::size_t i) { return check(cands[i]).has_value(); });
    if (!idx) return std::nullopt;
    return GRResult{CombinatorialSpace{compose(s.generator, cands[*idx])}, *check(cands[*idx])};
  }
  std::optional<GRResult> out;
  std::size_t seen = 0;
  for_each_instantiation(s.dimension(), d, k, [&](const Tokens& u) {
    if (++seen > opts.budget.points) fail(errc::budget_exceeded, "too many candidate subspaces");
    auto c = check(u);
    if (!c) return true;
    out = GRResult{CombinatorialSpace{compose(s.generator, u)}, *c};
    return false;
  });
  return out;
}

enum class CSStrategy { direct, via_gr };

struct CSResult {
  OVWTree tree;
  Color color = 0;
};

/// Colors a line of the leaf space by f at its generator cut before its variable.
struct CutColoring {
  const Coloring* f;
  Color operator()(const VariableWord& line) const { return (*f)(substitute(line, Word{})); }
};

/// An f-homogeneous d-dimensional OVW subtree of t.
inline std::optional<CSResult> find_cs_subtree(const OVWTree& t, std::size_t d, const Coloring& f,
                                               CSStrategy strategy, const SearchOptions& opts = {}) {
  if (d < 1 || d > t.dimension())
    fail(errc::index_out_of_range, "subtree dimension " + std::to_string(d) + " not in [1, " +
                                       std::to_string(t.dimension()) + "]");
  if (strategy == CSStrategy::direct) {
    auto homogeneous = [&](const OVWTree& sub) { return verify_homogeneous(sub, f, opts.budget); };
    auto color_of = [&](const OVWTree& sub) { return f(substitute(sub.generator, Word{})); };
    if (opts.threads > 1) {
      const auto cands = enumerate_subtrees(t, d, false, opts.budget);
      auto idx = detail::first_index(cands.size(), opts.threads, [&](std::size_t i) { return homogeneous(cands[i]); });
      if (!idx) return std::nullopt;
      return CSResult{cands[*idx], color_of(cands[*idx])};
    }
    std::optional<CSResult> out;
    for_each_subtree(
        t, d,
        [&](OVWTree sub) {
          if (!homogeneous(sub)) return true;
          const Color c = color_of(sub);
          out = CSResult{std::move(sub), c};
          return false;
        },
        false, opts.budget);
    return out;
  }
  if (d + 1 > t.dimension()) return std::nullopt;
  const CombinatorialSpace leaves{t.generator};
  auto gr = find_gr_subspace(leaves, 1, d + 1, CutColoring{&f}, opts);
  if (!gr) return std::nullopt;
  OVWTree sub{truncate_before(gr->space.generator, d)};
  if (!verify_homogeneous(sub, f, opts.budget))
    fail(errc::postcondition_failure, "subtree from the reduction is not homogeneous");
  return CSResult{sub, gr->color};
}

}  // namespace ovw
