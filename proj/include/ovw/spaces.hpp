#pragma once

// Combinatorial spaces and OVW trees generated by ordered variable words.

#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ovw/words.hpp"

namespace ovw {

/// Default cap on materialized points; OVW_POINT_BUDGET overrides it.
inline std::size_t default_point_budget() {
  if (const char* env = std::getenv("OVW_POINT_BUDGET")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
    }
  }
  return 1'000'000;
}

struct Budget {
  std::size_t points = default_point_budget();
};

/// base^exp if it does not exceed limit.
inline std::optional<std::size_t> checked_pow(std::size_t base, std::size_t exp, std::size_t limit) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) return std::nullopt;
    r *= base;
  }
  if (r > limit) return std::nullopt;
  return r;
}

/// {w[u] : u in A^n}; n = dim(w).
struct CombinatorialSpace {
  VariableWord generator;

  std::size_t dimension() const { return generator.dimension(); }
  const Alphabet& alphabet() const { return generator.alphabet(); }
  const std::vector<std::size_t>& anchors() const { return generator.anchors(); }
  bool operator==(const CombinatorialSpace&) const = default;
};

/// {w[u] : u in A^{<=n}}.
struct OVWTree {
  VariableWord generator;

  std::size_t dimension() const { return generator.dimension(); }
  const Alphabet& alphabet() const { return generator.alphabet(); }
  const std::vector<std::size_t>& anchors() const { return generator.anchors(); }
  bool operator==(const OVWTree&) const = default;
};

/// Calls fn on every word of A^len in lexicographic order; fn returns false to stop.
/// Returns false iff stopped early.
template <typename Fn>
bool for_each_word(std::uint32_t k, std::size_t len, Fn&& fn) {
  Word u(len, 0);
  while (true) {
    if (!fn(static_cast<const Word&>(u))) return false;
    std::size_t i = len;
    while (true) {
      if (i == 0) return true;
      --i;
      if (++u[i] < k) break;
      u[i] = 0;
    }
  }
}

inline std::size_t space_size(const CombinatorialSpace& s, const Budget& budget = {}) {
  auto n = checked_pow(s.alphabet().size(), s.dimension(), budget.points);
  if (!n) fail(errc::budget_exceeded, "space has more than " + std::to_string(budget.points) + " points");
  return *n;
}

inline std::size_t tree_size(const OVWTree& t, const Budget& budget = {}) {
  std::size_t total = 0;
  for (std::size_t i = 0; i <= t.dimension(); ++i) {
    auto n = checked_pow(t.alphabet().size(), i, budget.points);
    if (!n || total + *n > budget.points)
      fail(errc::budget_exceeded, "tree has more than " + std::to_string(budget.points) + " points");
    total += *n;
  }
  return total;
}

/// Points in lexicographic order of u.
inline std::vector<Word> space_points(const CombinatorialSpace& s, const Budget& budget = {}) {
  std::vector<Word> out;
  out.reserve(space_size(s, budget));
  for_each_word(s.alphabet().size(), s.dimension(), [&](const Word& u) {
    out.push_back(substitute(s.generator, u));
    return true;
  });
  return out;
}

/// Points ordered by (|u|, lex u).
inline std::vector<Word> tree_points(const OVWTree& t, const Budget& budget = {}) {
  std::vector<Word> out;
  out.reserve(tree_size(t, budget));
  for (std::size_t depth = 0; depth <= t.dimension(); ++depth) {
    for_each_word(t.alphabet().size(), depth, [&](const Word& u) {
      out.push_back(substitute(t.generator, u));
      return true;
    });
  }
  return out;
}

/// Enumerates every length-n instantiation using exactly m fresh ordered
/// variables, in canonical order (x_j before letters, lexicographic).
template <typename Fn>
bool for_each_instantiation(std::size_t n, std::size_t m, std::uint32_t k, Fn&& fn) {
  Tokens u(n);
  // cur = number of fresh variables opened so far.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t cur) -> bool {
    if (pos == n) return cur == m ? fn(static_cast<const Tokens&>(u)) : true;
    const std::size_t left = n - pos;
    if (m - cur > left) return true;
    if (cur > 0) {
      u[pos] = Token::var(static_cast<std::uint32_t>(cur - 1));
      if (!self(self, pos + 1, cur)) return false;
    }
    if (cur < m) {
      u[pos] = Token::var(static_cast<std::uint32_t>(cur));
      if (!self(self, pos + 1, cur + 1)) return false;
    }
    if (m - cur < left) {
      for (std::uint32_t a = 0; a < k; ++a) {
        u[pos] = Token::letter(a);
        if (!self(self, pos + 1, cur)) return false;
      }
    }
    return true;
  };
  return rec(rec, 0, 0);
}

inline std::vector<Tokens> instantiations(std::size_t n, std::size_t m, std::uint32_t k) {
  std::vector<Tokens> out;
  for_each_instantiation(n, m, k, [&](const Tokens& u) {
    out.push_back(u);
    return true;
  });
  return out;
}

/// Visits the m-dimensional subspaces of s in canonical order.
template <typename Fn>
bool for_each_subspace(const CombinatorialSpace& s, std::size_t m, Fn&& fn) {
  if (m < 1 || m > s.dimension())
    fail(errc::index_out_of_range, "subspace dimension " + std::to_string(m) + " not in [1, " +
                                       std::to_string(s.dimension()) + "]");
  return for_each_instantiation(s.dimension(), m, s.alphabet().size(), [&](const Tokens& u) {
    return fn(CombinatorialSpace{compose(s.generator, u)});
  });
}

inline std::vector<CombinatorialSpace> enumerate_subspaces(const CombinatorialSpace& s, std::size_t m) {
  std::vector<CombinatorialSpace> out;
  for_each_subspace(s, m, [&](CombinatorialSpace sub) {
    out.push_back(std::move(sub));
    return true;
  });
  return out;
}

namespace detail {

// True iff inner == compose(outer, u) for some u.
inline bool generator_matches(const VariableWord& inner, const VariableWord& outer) {
  if (inner.size() != outer.size()) return false;
  std::vector<std::optional<Token>> image(outer.dimension());
  for (std::size_t pos = 0; pos < outer.size(); ++pos) {
    const Token o = outer.tokens()[pos];
    const Token i = inner.tokens()[pos];
    if (o.is_letter()) {
      if (i != o) return false;
    } else {
      auto& slot = image[o.value];
      if (!slot) {
        slot = i;
      } else if (*slot != i) {
        return false;
      }
    }
  }
  return true;
}

inline bool points_contained(const std::vector<Word>& inner, const std::vector<Word>& outer) {
  std::set<Word> pool(outer.begin(), outer.end());
  for (const auto& p : inner)
    if (!pool.count(p)) return false;
  return true;
}

}  // namespace detail

/// Containment of point sets. Decided by generator matching; for alphabets of
/// size >= 2 a failed match is conclusive, otherwise points are compared.
inline bool is_substructure(const CombinatorialSpace& inner, const CombinatorialSpace& outer,
                            const Budget& budget = {}) {
  if (inner.alphabet() != outer.alphabet()) fail(errc::invalid_argument, "alphabets differ");
  if (detail::generator_matches(inner.generator, outer.generator)) return true;
  if (outer.alphabet().size() >= 2) return false;
  return detail::points_contained(space_points(inner, budget), space_points(outer, budget));
}

inline bool is_substructure(const OVWTree& inner, const OVWTree& outer, const Budget& budget = {}) {
  if (inner.alphabet() != outer.alphabet()) fail(errc::invalid_argument, "alphabets differ");
  const auto& w = outer.generator;
  for (std::size_t t = 0; t <= w.dimension(); ++t) {
    const std::size_t len = t < w.dimension() ? w.anchors()[t] : w.size();
    if (len != inner.generator.size()) continue;
    if (detail::generator_matches(inner.generator, truncate_before(w, t))) return true;
  }
  if (outer.alphabet().size() >= 2) return false;
  return detail::points_contained(tree_points(inner, budget), tree_points(outer, budget));
}

/// Visits the d-dimensional OVW subtrees compose(truncate_before(w, t), u),
/// t ascending from d to dim(T), u in canonical order. With verify set, each
/// candidate's points are checked against T and duplicates are detected by
/// point set instead of by generator.
template <typename Fn>
bool for_each_subtree(const OVWTree& tree, std::size_t d, Fn&& fn, bool verify = false,
                      const Budget& budget = {}) {
  if (d < 1 || d > tree.dimension())
    fail(errc::index_out_of_range, "subtree dimension " + std::to_string(d) + " not in [1, " +
                                       std::to_string(tree.dimension()) + "]");
  std::set<Tokens> seen_generators;
  std::set<std::set<Word>> seen_points;
  std::set<Word> outer_points;
  if (verify) {
    auto pts = tree_points(tree, budget);
    outer_points.insert(pts.begin(), pts.end());
  }
  for (std::size_t t = d; t <= tree.dimension(); ++t) {
    const VariableWord base = truncate_before(tree.generator, t);
    const bool go_on = for_each_instantiation(t, d, tree.alphabet().size(), [&](const Tokens& u) {
      OVWTree sub{compose(base, u)};
      if (verify) {
        auto pts = tree_points(sub, budget);
        std::set<Word> key(pts.begin(), pts.end());
        for (const auto& p : key)
          if (!outer_points.count(p))
            fail(errc::postcondition_failure, "subtree " + render(sub.generator) + " escapes the tree");
        if (!seen_points.insert(std::move(key)).second) return true;
      } else if (!seen_generators.insert(sub.generator.tokens()).second) {
        return true;
      }
      return fn(std::move(sub));
    });
    if (!go_on) return false;
  }
  return true;
}

inline std::vector<OVWTree> enumerate_subtrees(const OVWTree& tree, std::size_t d, bool verify = false,
                                               const Budget& budget = {}) {
  std::vector<OVWTree> out;
  for_each_subtree(
      tree, d,
      [&](OVWTree sub) {
        out.push_back(std::move(sub));
        return true;
      },
      verify, budget);
  return out;
}

/// The full space A^n: generator x0 x1 ... x_{n-1}.
inline CombinatorialSpace full_space(Alphabet alphabet, std::size_t n) {
  return {make_variable_word(identity_instantiation(n), alphabet)};
}

/// Generator whose anchors are exactly the given positions: x_j at anchors[j],
/// letter 0 elsewhere, length max(anchors) + 1.
inline VariableWord anchored_generator(const std::vector<std::size_t>& anchors, Alphabet alphabet) {
  if (anchors.empty()) fail(errc::invalid_argument, "no anchors");
  Tokens t(anchors.back() + 1, Token::letter(0));
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    if (j && anchors[j] <= anchors[j - 1]) fail(errc::invalid_argument, "anchors must increase");
    t[anchors[j]] = Token::var(static_cast<std::uint32_t>(j));
  }
  return make_variable_word(std::move(t), alphabet);
}

}  // namespace ovw
