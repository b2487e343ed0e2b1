#pragma once

// The omega^n * k - largeness(theta) calculus: apartness, exact largeness
// decisions with witnesses, sparsity, block splitting and sparse extraction.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ovw/error.hpp"

namespace ovw {

using Nat = std::uint64_t;

inline constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

// Saturating arithmetic: results that do not fit are clamped to kNatMax.
// Every comparison against a representable value stays exact.
constexpr Nat sat_mul(Nat a, Nat b) {
  if (a == 0 || b == 0) return 0;
  return a > kNatMax / b ? kNatMax : a * b;
}

constexpr Nat sat_add(Nat a, Nat b) { return a > kNatMax - b ? kNatMax : a + b; }

constexpr Nat sat_pow(Nat base, Nat exp) {
  if (exp == 0) return 1;
  if (base <= 1) return base;
  if (exp >= 64) return kNatMax;
  Nat r = 1;
  for (Nat i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kNatMax) return r;
  }
  return r;
}

/// x^(x^x), saturated.
constexpr Nat tower3(Nat x) { return sat_pow(x, sat_pow(x, x)); }

// ---------------------------------------------------------------------------

/// A decidable 3-ary predicate theta(x, y, z) with its constant c.
class ThetaPredicate {
 public:
  enum class Kind { top, greater_than, power_gap, table };

  static ThetaPredicate top(Nat c = 0) { return ThetaPredicate(Kind::top, c); }
  static ThetaPredicate greater_than(Nat c = 0) { return ThetaPredicate(Kind::greater_than, c); }
  static ThetaPredicate power_gap(Nat c = 0) { return ThetaPredicate(Kind::power_gap, c); }

  /// Triples with every coordinate below `bound` are true iff listed; any
  /// triple with a coordinate >= bound evaluates to `fallback`.
  static ThetaPredicate table(Nat bound, std::set<std::array<Nat, 3>> truths, bool fallback, Nat c = 0) {
    ThetaPredicate t(Kind::table, c);
    t.bound_ = bound;
    t.truths_ = std::move(truths);
    t.fallback_ = fallback;
    return t;
  }

  Kind kind() const { return kind_; }
  Nat constant() const { return constant_; }
  Nat bound() const { return bound_; }
  bool fallback() const { return fallback_; }
  const std::set<std::array<Nat, 3>>& truths() const { return truths_; }

  bool operator()(Nat x, Nat y, Nat z) const {
    switch (kind_) {
      case Kind::top: return true;
      case Kind::greater_than: return y > x;
      case Kind::power_gap: return x < 64 && y > (Nat{1} << x);
      case Kind::table:
        if (x >= bound_ || y >= bound_ || z >= bound_) return fallback_;
        return truths_.count({x, y, z}) != 0;
    }
    return false;
  }

  /// True when apartness of X < Y depends only on max X and min Y, and is
  /// monotone in min Y.
  bool apartness_monotone() const { return kind_ != Kind::table; }

  bool operator==(const ThetaPredicate&) const = default;

 private:
  ThetaPredicate(Kind kind, Nat c) : kind_(kind), constant_(c) {}

  Kind kind_;
  Nat constant_ = 0;
  Nat bound_ = 0;
  std::set<std::array<Nat, 3>> truths_;
  bool fallback_ = false;
};

inline std::string_view to_string(ThetaPredicate::Kind k) {
  switch (k) {
    case ThetaPredicate::Kind::top: return "top";
    case ThetaPredicate::Kind::greater_than: return "greater_than";
    case ThetaPredicate::Kind::power_gap: return "power_gap";
    case ThetaPredicate::Kind::table: return "table";
  }
  return "?";
}

/// forall x < max_x exists y < min_y forall z < max_y theta(x, y, z).
/// Exact; closed forms are used where theta ignores some coordinates.
inline bool apart_by_extremes(Nat max_x, Nat min_y, Nat max_y, const ThetaPredicate& theta) {
  if (max_x == 0) return true;
  switch (theta.kind()) {
    case ThetaPredicate::Kind::top:
      return min_y > 0;
    case ThetaPredicate::Kind::greater_than:
      // the hardest x is max_x - 1; the best y is min_y - 1
      return min_y > 0 && min_y - 1 > max_x - 1;
    case ThetaPredicate::Kind::power_gap: {
      if (min_y == 0) return false;
      const Nat x = max_x - 1;
      return x < 64 && min_y - 1 > (Nat{1} << x);
    }
    case ThetaPredicate::Kind::table: break;
  }
  // Table: every triple with a coordinate >= bound is the fallback value.
  const Nat b = theta.bound();
  const bool fb = theta.fallback();
  auto forall_z = [&](Nat x, Nat y) {
    if (x >= b || y >= b) return max_y == 0 || fb;
    const Nat zmax = std::min(max_y, b);
    for (Nat z = 0; z < zmax; ++z)
      if (!theta(x, y, z)) return false;
    return max_y <= b || fb;
  };
  auto exists_y = [&](Nat x) {
    const Nat ymax = std::min(min_y, b);
    for (Nat y = 0; y < ymax; ++y)
      if (forall_z(x, y)) return true;
    return min_y > b && forall_z(x, b);
  };
  const Nat xmax = std::min(max_x, b);
  for (Nat x = 0; x < xmax; ++x)
    if (!exists_y(x)) return false;
  return max_x <= b || exists_y(b);
}

// ---------------------------------------------------------------------------

/// omega^exponent * coefficient, coefficient >= 1.
struct OrdinalExpr {
  Nat exponent = 0;
  Nat coefficient = 1;

  static OrdinalExpr power(Nat n) { return {n, 1}; }
  static OrdinalExpr make(Nat n, Nat k) {
    if (k == 0) fail(errc::invalid_argument, "ordinal coefficient must be >= 1");
    return {n, k};
  }
  bool operator==(const OrdinalExpr&) const = default;
};

inline std::string to_string(const OrdinalExpr& e) {
  std::string s = "w^" + std::to_string(e.exponent);
  if (e.coefficient != 1) s += "*" + std::to_string(e.coefficient);
  return s;
}

/// "w^n" or "w^n*k".
inline OrdinalExpr parse_ordinal(std::string_view text) {
  auto bad = [&]() -> OrdinalExpr { fail(errc::invalid_argument, "bad ordinal '" + std::string(text) + "'"); };
  if (text.size() < 3 || text.substr(0, 2) != "w^") return bad();
  const auto rest = text.substr(2);
  const auto star = rest.find('*');
  try {
    std::size_t used = 0;
    const std::string ns(rest.substr(0, star));
    const Nat n = std::stoull(ns, &used);
    if (used != ns.size()) return bad();
    Nat k = 1;
    if (star != std::string_view::npos) {
      const std::string ks(rest.substr(star + 1));
      k = std::stoull(ks, &used);
      if (used != ks.size()) return bad();
    }
    return OrdinalExpr::make(n, k);
  } catch (const std::logic_error&) {
    return bad();
  }
}

/// A finite set of naturals, stored strictly increasing.
class FinSet {
 public:
  FinSet() = default;

  /// Rejects sequences that are not strictly increasing.
  explicit FinSet(std::vector<Nat> elements) : elements_(std::move(elements)) {
    for (std::size_t i = 1; i < elements_.size(); ++i)
      if (elements_[i - 1] >= elements_[i]) fail(errc::invalid_argument, "set elements must strictly increase");
  }

  static FinSet from_unsorted(std::vector<Nat> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return FinSet(std::move(xs));
  }

  static FinSet interval(Nat lo, Nat hi) {
    std::vector<Nat> v;
    for (Nat x = lo; x <= hi; ++x) v.push_back(x);
    return FinSet(std::move(v));
  }

  const std::vector<Nat>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  Nat min() const {
    if (empty()) fail(errc::empty_set, "min of empty set");
    return elements_.front();
  }
  Nat max() const {
    if (empty()) fail(errc::empty_set, "max of empty set");
    return elements_.back();
  }
  bool contains(Nat x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }
  bool subset_of(const FinSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
  }
  /// Elements with index in [from, to).
  FinSet slice(std::size_t from, std::size_t to) const {
    return FinSet(std::vector<Nat>(elements_.begin() + static_cast<std::ptrdiff_t>(from),
                                   elements_.begin() + static_cast<std::ptrdiff_t>(to)));
  }
  FinSet without_min() const { return empty() ? *this : slice(1, size()); }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }
  Nat operator[](std::size_t i) const { return elements_[i]; }
  bool operator==(const FinSet&) const = default;

 private:
  std::vector<Nat> elements_;
};

/// "4,5,6" (empty string is the empty set).
inline FinSet parse_finset(std::string_view text) {
  std::vector<Nat> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item(text.substr(pos, comma - pos));
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(errc::invalid_argument, "bad set element '" + item + "'");
    out.push_back(std::stoull(item));
    pos = comma + 1;
  }
  return FinSet(std::move(out));
}

inline std::string to_string(const FinSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(s[i]);
  }
  return out;
}

/// X < Y and theta-apart. Throws NotSeparated unless max X < min Y.
inline bool theta_apart(const FinSet& x, const FinSet& y, const ThetaPredicate& theta) {
  if (x.empty() || y.empty()) fail(errc::empty_set, "apartness needs nonempty sets");
  if (x.max() >= y.min()) fail(errc::not_separated, "max X = " + std::to_string(x.max()) +
                                                        " is not below min Y = " + std::to_string(y.min()));
  return apart_by_extremes(x.max(), y.min(), y.max(), theta);
}

// ---------------------------------------------------------------------------

/// Recursive certificate that a set is omega^n * k - large(theta).
struct LargenessWitness {
  enum class Rule { nonempty, successor, blocks };

  Rule rule = Rule::nonempty;
  FinSet set;
  OrdinalExpr ordinal;
  /// successor: one child certifying set \ min for omega^(n-1) * min (none
  /// when min = 0); blocks: the pairwise apart omega^n - large subsets.
  std::vector<LargenessWitness> children;

  bool operator==(const LargenessWitness&) const = default;
};

/// Bottom-up recheck of a witness. Uses only apartness and set operations.
inline bool verify_witness(const LargenessWitness& w, const ThetaPredicate& theta) {
  using Rule = LargenessWitness::Rule;
  if (w.set.empty() || w.ordinal.coefficient == 0) return false;
  switch (w.rule) {
    case Rule::nonempty:
      return w.ordinal == OrdinalExpr{0, 1} && w.children.empty();
    case Rule::successor: {
      if (w.ordinal.exponent == 0 || w.ordinal.coefficient != 1) return false;
      const Nat m = w.set.min();
      if (m == 0) return w.children.empty();
      if (w.children.size() != 1) return false;
      const auto& c = w.children.front();
      if (!(c.ordinal == OrdinalExpr{w.ordinal.exponent - 1, m})) return false;
      if (!c.set.subset_of(w.set.without_min())) return false;
      return verify_witness(c, theta);
    }
    case Rule::blocks: {
      if (w.children.size() != w.ordinal.coefficient) return false;
      for (std::size_t i = 0; i < w.children.size(); ++i) {
        const auto& c = w.children[i];
        if (c.set.empty() || !c.set.subset_of(w.set)) return false;
        if (!(c.ordinal == OrdinalExpr{w.ordinal.exponent, 1})) return false;
        if (!verify_witness(c, theta)) return false;
        for (std::size_t j = 0; j < i; ++j) {
          const auto& prev = w.children[j];
          if (prev.set.max() >= c.set.min()) return false;
          if (!theta_apart(prev.set, c.set, theta)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

/// Exact largeness over contiguous blocks of a fixed sorted sequence.
///
/// For a start index s, min_end(s, n) is the least t with X[s..t]
/// omega^n - large. Placing r further pairwise apart blocks after a block
/// ending at index p reaches, at best, last index G_n(r, p); the least t is
/// always preferable since apartness and the room left both improve as the
/// previous maximum shrinks. first_fit(i, n, k) is the least last index of
/// k blocks inside X[i..].
class LargenessSolver {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  LargenessSolver(std::span<const Nat> xs, const ThetaPredicate& theta)
      : xs_(xs.begin(), xs.end()), theta_(theta) {
    if (xs_.size() >= kNone) fail(errc::cap_exceeded, "set too large for the solver");
  }

  std::size_t size() const { return xs_.size(); }

  /// Least t with X[s..t] omega^n - large, or kNone.
  std::uint32_t min_end(std::size_t s, Nat n) { return level(n).min_end[s]; }

  /// Least last index of k apart omega^n - large blocks within X[i..], or kNone.
  std::uint32_t first_fit(std::size_t i, Nat n, Nat k) {
    if (k == 0) return i == 0 ? 0 : static_cast<std::uint32_t>(i - 1);
    if (i >= xs_.size() || k > xs_.size() - i) return kNone;
    Level& lv = level(n);
    ensure_layers(n, k - 1);
    return lv.suffix_min[k - 1][i];
  }

  /// Is the whole sequence omega^n * k - large?
  bool large(OrdinalExpr e) {
    if (xs_.empty()) return false;
    if (e.coefficient == 1 && e.exponent > 0) {
      if (xs_[0] == 0) return true;
      return first_fit(1, e.exponent - 1, xs_[0]) != kNone;
    }
    return first_fit(0, e.exponent, e.coefficient) != kNone;
  }

  /// Witness for large(e); must only be called when large(e) holds.
  LargenessWitness witness(OrdinalExpr e) {
    const FinSet all(xs_);
    if (e.coefficient == 1 && e.exponent == 0) return {LargenessWitness::Rule::nonempty, all, e, {}};
    if (e.coefficient == 1) {
      LargenessWitness w{LargenessWitness::Rule::successor, all, e, {}};
      if (xs_[0] != 0) w.children.push_back(blocks_witness(1, e.exponent - 1, xs_[0], xs_.size() - 1));
      return w;
    }
    return blocks_witness(0, e.exponent, e.coefficient, xs_.size() - 1);
  }

  /// Index ranges [s, t] of k contiguous blocks realizing first_fit(i, n, k).
  std::vector<std::pair<std::size_t, std::size_t>> block_ranges(std::size_t i, Nat n, Nat k) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::uint32_t target = first_fit(i, n, k);
    if (target == kNone) fail(errc::not_large_enough, "no block decomposition");
    Level& lv = level(n);
    std::size_t s = i;
    while (s < xs_.size()) {
      const auto t = lv.min_end[s];
      if (t != kNone && layer_value(n, k - 1, t) == target) break;
      ++s;
    }
    std::size_t p = lv.min_end[s];
    out.emplace_back(s, p);
    for (Nat r = k - 1; r > 0; --r) {
      const std::uint32_t want = layer_value(n, r, p);
      std::size_t next = p + 1;
      for (; next < xs_.size(); ++next) {
        const auto t = lv.min_end[next];
        if (t == kNone || !apart_idx(p, next, t)) continue;
        if (layer_value(n, r - 1, t) == want) break;
      }
      out.emplace_back(next, lv.min_end[next]);
      p = lv.min_end[next];
    }
    return out;
  }

 private:
  struct Level {
    std::vector<std::uint32_t> min_end;
    // layer[r][p]: G(r, p); suffix_min[r][i] = min over s >= i of G(r, min_end[s]).
    std::vector<std::vector<std::uint32_t>> layer;
    std::vector<std::vector<std::uint32_t>> suffix_min;
  };

  bool apart_idx(std::size_t p, std::size_t s, std::size_t t) const {
    return apart_by_extremes(xs_[p], xs_[s], xs_[t], theta_);
  }

  // First s > p with X[p] apart from X[s..]; only meaningful for monotone theta.
  std::size_t threshold(std::size_t p) {
    if (thresholds_.empty()) {
      thresholds_.resize(xs_.size());
      for (std::size_t q = 0; q < xs_.size(); ++q) {
        std::size_t lo = q + 1, hi = xs_.size();
        while (lo < hi) {
          const std::size_t mid = (lo + hi) / 2;
          if (apart_by_extremes(xs_[q], xs_[mid], xs_[mid], theta_)) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        thresholds_[q] = lo;
      }
    }
    return thresholds_[p];
  }

  std::uint32_t layer_value(Nat n, Nat r, std::size_t p) {
    ensure_layers(n, r);
    return level(n).layer[r][p];
  }

  Level& level(Nat n) {
    while (levels_.size() <= n) build_level(levels_.size());
    return levels_[n];
  }

  void build_level(Nat n) {
    Level lv;
    const std::size_t size = xs_.size();
    lv.min_end.assign(size, kNone);
    for (std::size_t s = 0; s < size; ++s) {
      if (n == 0 || xs_[s] == 0) {
        lv.min_end[s] = static_cast<std::uint32_t>(s);
      } else if (s + 1 < size) {
        lv.min_end[s] = first_fit(s + 1, n - 1, xs_[s]);
      }
    }
    levels_.push_back(std::move(lv));
    if (levels_.size() - 1 != n) fail(errc::postcondition_failure, "level built out of order");
  }

  void ensure_layers(Nat n, Nat r) {
    const std::size_t size = xs_.size();
    while (true) {
      Level& lv = levels_[n];
      if (lv.layer.size() > r) return;
      const std::size_t cur = lv.layer.size();
      std::vector<std::uint32_t> g(size, kNone);
      if (cur == 0) {
        for (std::size_t p = 0; p < size; ++p) g[p] = static_cast<std::uint32_t>(p);
      } else if (theta_.apartness_monotone()) {
        const auto& prev_suffix = lv.suffix_min[cur - 1];
        for (std::size_t p = 0; p < size; ++p) {
          const std::size_t thr = threshold(p);
          if (thr < size) g[p] = prev_suffix[thr];
        }
      } else {
        const auto& prev = lv.layer[cur - 1];
        for (std::size_t p = 0; p < size; ++p) {
          for (std::size_t s = p + 1; s < size; ++s) {
            const auto t = lv.min_end[s];
            if (t == kNone || prev[t] == kNone || prev[t] >= g[p]) continue;
            if (apart_idx(p, s, t)) g[p] = prev[t];
          }
        }
      }
      std::vector<std::uint32_t> suffix(size + 1, kNone);
      for (std::size_t s = size; s-- > 0;) {
        const auto t = lv.min_end[s];
        suffix[s] = std::min(suffix[s + 1], t == kNone ? kNone : g[t]);
      }
      suffix.pop_back();
      lv.layer.push_back(std::move(g));
      lv.suffix_min.push_back(std::move(suffix));
    }
  }

  LargenessWitness interval_witness(std::size_t s, std::size_t t, Nat n) {
    const FinSet block(std::vector<Nat>(xs_.begin() + static_cast<std::ptrdiff_t>(s),
                                        xs_.begin() + static_cast<std::ptrdiff_t>(t) + 1));
    if (n == 0) return {LargenessWitness::Rule::nonempty, block, {0, 1}, {}};
    LargenessWitness w{LargenessWitness::Rule::successor, block, {n, 1}, {}};
    if (xs_[s] != 0) w.children.push_back(blocks_witness(s + 1, n - 1, xs_[s], t));
    return w;
  }

  // Blocks node covering X[i..last] for omega^n * k.
  LargenessWitness blocks_witness(std::size_t i, Nat n, Nat k, std::size_t last) {
    LargenessWitness w{LargenessWitness::Rule::blocks,
                       FinSet(std::vector<Nat>(xs_.begin() + static_cast<std::ptrdiff_t>(i),
                                               xs_.begin() + static_cast<std::ptrdiff_t>(last) + 1)),
                       {n, k},
                       {}};
    for (auto [s, t] : block_ranges(i, n, k)) w.children.push_back(interval_witness(s, t, n));
    return w;
  }

  std::vector<Nat> xs_;
  ThetaPredicate theta_;
  std::vector<Level> levels_;
  std::vector<std::size_t> thresholds_;
};

struct LargenessOptions {
  /// Require min X >= max(4, c).
  bool strict = true;
};

struct LargenessResult {
  bool large = false;
  std::optional<LargenessWitness> witness;
};

inline void check_strict_min(const FinSet& x, const ThetaPredicate& theta, const LargenessOptions& opts) {
  if (!opts.strict || x.empty()) return;
  const Nat floor = std::max<Nat>(4, theta.constant());
  if (x.min() < floor)
    fail(errc::min_too_small, "min X = " + std::to_string(x.min()) + " < " + std::to_string(floor));
}

inline LargenessResult is_large(const FinSet& x, OrdinalExpr e, const ThetaPredicate& theta,
                                const LargenessOptions& opts = {}) {
  if (x.empty()) {
    if (!(e == OrdinalExpr{0, 1})) fail(errc::empty_set, "largeness of the empty set");
    return {};
  }
  check_strict_min(x, theta, opts);
  LargenessSolver solver(x.elements(), theta);
  if (!solver.large(e)) return {};
  return {true, solver.witness(e)};
}

/// Just the boolean.
inline bool large(const FinSet& x, OrdinalExpr e, const ThetaPredicate& theta, const LargenessOptions& opts = {}) {
  if (x.empty()) return false;
  check_strict_min(x, theta, opts);
  return LargenessSolver(x.elements(), theta).large(e);
}

/// Exhaustive reference decision over arbitrary (not only contiguous) subset
/// decompositions. Meant for small sets.
class BruteForceLargeness {
 public:
  BruteForceLargeness(const FinSet& x, const ThetaPredicate& theta, std::size_t cap = 12)
      : xs_(x.elements()), theta_(theta) {
    if (xs_.size() > cap)
      fail(errc::cap_exceeded, "|X| = " + std::to_string(xs_.size()) + " exceeds cap " + std::to_string(cap));
  }

  bool large(OrdinalExpr e) { return decide(full_mask(), e.exponent, e.coefficient); }

 private:
  using Mask = std::uint32_t;

  Mask full_mask() const { return xs_.empty() ? 0 : (Mask{1} << xs_.size()) - 1; }

  FinSet to_set(Mask m) const {
    std::vector<Nat> v;
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (m >> i & 1) v.push_back(xs_[i]);
    return FinSet(std::move(v));
  }

  static int lowest(Mask m) { return __builtin_ctz(m); }
  static int highest(Mask m) { return 31 - __builtin_clz(m); }

  bool decide(Mask m, Nat n, Nat k) {
    if (k == 0) return true;
    if (m == 0) return false;
    if (k == 1) {
      if (n == 0) return true;
      const int lo = lowest(m);
      return decide(m & ~(Mask{1} << lo), n - 1, xs_[static_cast<std::size_t>(lo)]);
    }
    const auto key = std::make_tuple(m, n, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<FinSet> chosen;
    const bool r = place(m, n, k, chosen);
    memo_[key] = r;
    return r;
  }

  // Chooses the next block among nonempty submasks of `avail`, checking
  // apartness against every block chosen so far.
  bool place(Mask avail, Nat n, Nat remaining, std::vector<FinSet>& chosen) {
    if (remaining == 0) return true;
    if (static_cast<Nat>(__builtin_popcount(avail)) < remaining) return false;
    for (Mask sub = avail; sub != 0; sub = (sub - 1) & avail) {
      if (!decide(sub, n, 1)) continue;
      FinSet block = to_set(sub);
      bool ok = true;
      for (const auto& prev : chosen)
        if (!theta_apart(prev, block, theta_)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const int hi = highest(sub);
      const Mask rest = hi + 1 >= 32 ? 0 : avail & ~((Mask{2} << hi) - 1);
      chosen.push_back(std::move(block));
      const bool found = place(rest, n, remaining - 1, chosen);
      chosen.pop_back();
      if (found) return true;
    }
    return false;
  }

  std::vector<Nat> xs_;
  ThetaPredicate theta_;
  std::map<std::tuple<Mask, Nat, Nat>, bool> memo_;
};

inline bool is_large_bruteforce(const FinSet& x, OrdinalExpr e, const ThetaPredicate& theta, std::size_t cap = 12) {
  return BruteForceLargeness(x, theta, cap).large(e);
}

/// x^(x^x) < y for all consecutive x < y in the set.
inline bool is_sparse(const FinSet& x) {
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(tower3(x[i - 1]) < x[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace detail {

// The k apart omega^n - large blocks of a set known to be omega^n * k - large.
inline std::vector<FinSet> decompose(const FinSet& x, Nat n, Nat k, const ThetaPredicate& theta) {
  LargenessSolver solver(x.elements(), theta);
  std::vector<FinSet> out;
  for (auto [s, t] : solver.block_ranges(0, n, k)) out.push_back(x.slice(s, t + 1));
  return out;
}

// From apart omega^(a+2b) - large y0 < y1, blocks starting with y0 whose
// transversals are all omega^b - large.
inline std::vector<FinSet> split_pair(const FinSet& y0, const FinSet& y1, Nat a, Nat b, const ThetaPredicate& theta) {
  if (b == 0) return {y0};
  const Nat m1 = y1.min();
  const auto zs = decompose(y1.without_min(), a + 2 * b - 1, m1, theta);
  std::vector<FinSet> out{y0};
  for (Nat j = 0; j < y0.max(); ++j) {
    const FinSet& z = zs.at(j);
    const auto halves = decompose(z.without_min(), a + 2 * b - 2, z.min(), theta);
    auto family = split_pair(halves.at(0), halves.at(1), a, b - 1, theta);
    out.insert(out.end(), family.begin(), family.end());
  }
  return out;
}

}  // namespace detail

/// Blocks X_0 < ... < X_{k-1} of X, pairwise theta-apart and omega^a - large,
/// such that every transversal is omega^b - large. Needs X omega^(a+2b+1) - large.
inline std::vector<FinSet> split_large(const FinSet& x, Nat a, Nat b, const ThetaPredicate& theta,
                                       const LargenessOptions& opts = {}) {
  const OrdinalExpr need{a + 2 * b + 1, 1};
  if (!large(x, need, theta, opts))
    fail(errc::not_large_enough, "set is not " + to_string(need) + "-large");
  const Nat m = x.min();
  if (m == 0) {
    if (b == 0) return {x};
    fail(errc::not_large_enough, "min X = 0: the set is only vacuously large and cannot be split");
  }
  const auto top = detail::decompose(x.without_min(), a + 2 * b, m, theta);
  if (b == 0) return {top.front()};
  if (top.size() < 2) fail(errc::not_large_enough, "splitting needs min X >= 2");
  return detail::split_pair(top[0], top[1], a, b, theta);
}

/// Result of checking a block family against the split postcondition.
struct SplitCheck {
  bool ordered = false;
  bool pairwise_apart = false;
  bool blocks_large = false;
  bool transversals_large = false;
  std::size_t transversals_checked = 0;
  bool exhaustive = false;

  bool ok() const { return ordered && pairwise_apart && blocks_large && transversals_large; }
};

/// Checks every transversal when there are at most `exhaustive_limit` of them,
/// otherwise `samples` uniformly drawn ones.
inline SplitCheck check_split(const FinSet& x, const std::vector<FinSet>& blocks, Nat a, Nat b,
                              const ThetaPredicate& theta, std::uint64_t seed = 0,
                              std::size_t exhaustive_limit = 100'000, std::size_t samples = 10'000) {
  SplitCheck r;
  r.ordered = !blocks.empty();
  for (std::size_t i = 0; i < blocks.size() && r.ordered; ++i) {
    if (blocks[i].empty() || !blocks[i].subset_of(x)) r.ordered = false;
    if (i && blocks[i - 1].max() >= blocks[i].min()) r.ordered = false;
  }
  if (!r.ordered) return r;
  r.pairwise_apart = true;
  for (std::size_t i = 0; i < blocks.size() && r.pairwise_apart; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!theta_apart(blocks[j], blocks[i], theta)) {
        r.pairwise_apart = false;
        break;
      }
  r.blocks_large = std::all_of(blocks.begin(), blocks.end(), [&](const FinSet& blk) {
    return large(blk, {a, 1}, theta, {.strict = false});
  });

  Nat count = 1;
  for (const auto& blk : blocks) count = sat_mul(count, blk.size());
  auto check_one = [&](const std::vector<std::size_t>& pick) {
    std::vector<Nat> h;
    for (std::size_t i = 0; i < blocks.size(); ++i) h.push_back(blocks[i][pick[i]]);
    ++r.transversals_checked;
    return large(FinSet(std::move(h)), {b, 1}, theta, {.strict = false});
  };
  r.transversals_large = true;
  std::vector<std::size_t> pick(blocks.size(), 0);
  if (count <= exhaustive_limit) {
    r.exhaustive = true;
    while (true) {
      if (!check_one(pick)) {
        r.transversals_large = false;
        break;
      }
      std::size_t i = blocks.size();
      bool done = true;
      while (i-- > 0) {
        if (++pick[i] < blocks[i].size()) {
          done = false;
          break;
        }
        pick[i] = 0;
      }
      if (done) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t i = 0; i < blocks.size(); ++i)
        pick[i] = std::uniform_int_distribution<std::size_t>(0, blocks[i].size() - 1)(rng);
      if (!check_one(pick)) {
        r.transversals_large = false;
        break;
      }
    }
  }
  return r;
}

/// An omega^n - large sparse subset: the maxima of omega^3 - large split blocks.
inline FinSet sparse_subset(const FinSet& x, Nat n, const ThetaPredicate& theta, const LargenessOptions& opts = {}) {
  const OrdinalExpr need{2 * n + 7, 1};
  if (!large(x, need, theta, opts)) fail(errc::not_large_enough, "set is not " + to_string(need) + "-large");
  const auto blocks = split_large(x, 3, n, theta, opts);
  std::vector<Nat> maxima;
  for (const auto& blk : blocks) maxima.push_back(blk.max());
  FinSet y(std::move(maxima));
  if (!is_sparse(y)) fail(errc::postcondition_failure, "extracted subset is not sparse");
  if (!large(y, {n, 1}, theta, {.strict = false}))
    fail(errc::postcondition_failure, "extracted subset is not " + to_string(OrdinalExpr{n, 1}) + "-large");
  return y;
}

enum class Schedule { consecutive, doubling, power_gap, tower };

inline Schedule default_schedule(const ThetaPredicate& theta, bool sparse) {
  if (sparse) return Schedule::tower;
  switch (theta.kind()) {
    case ThetaPredicate::Kind::greater_than: return Schedule::doubling;
    case ThetaPredicate::Kind::power_gap: return Schedule::power_gap;
    default: return Schedule::consecutive;
  }
}

struct GenerateOptions {
  LargenessOptions largeness;
  std::optional<Schedule> schedule;
  /// Longest candidate sequence materialized before giving up.
  std::size_t max_elements = 1024;
};

/// The shortest prefix of a growth schedule starting at `start` that the
/// largeness checker accepts.
inline FinSet generate_large(OrdinalExpr e, const ThetaPredicate& theta, Nat start, bool sparse,
                             const GenerateOptions& opts = {}) {
  if (opts.largeness.strict) check_strict_min(FinSet({start}), theta, opts.largeness);
  const Schedule sched = opts.schedule.value_or(default_schedule(theta, sparse));
  auto next = [&](Nat prev) -> std::optional<Nat> {
    Nat v = 0;
    switch (sched) {
      case Schedule::consecutive: v = sat_add(prev, 1); break;
      case Schedule::doubling: v = prev == 0 ? 1 : sat_mul(prev, 2); break;
      case Schedule::power_gap: v = sat_add(sat_pow(2, prev), 2); break;
      case Schedule::tower: v = sat_add(tower3(prev), 1); break;
    }
    if (v == kNatMax) return std::nullopt;
    return v;
  };
  std::vector<Nat> seq{start};
  while (seq.size() < opts.max_elements) {
    auto v = next(seq.back());
    if (!v) break;
    seq.push_back(*v);
  }
  auto accepts = [&](std::size_t len) {
    return LargenessSolver(std::span<const Nat>(seq.data(), len), theta).large(e);
  };
  std::size_t hi = 1;
  while (hi < seq.size() && !accepts(hi)) hi = std::min(seq.size(), hi * 2);
  if (!accepts(hi))
    fail(errc::schedule_exhausted, "no prefix of " + std::to_string(seq.size()) + " scheduled elements is " +
                                       to_string(e) + "-large");
  std::size_t lo = hi / 2 + 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (accepts(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  seq.resize(hi);
  FinSet out(std::move(seq));
  if (sparse && !is_sparse(out)) fail(errc::postcondition_failure, "generated set is not sparse");
  return out;
}

}  // namespace ovw
