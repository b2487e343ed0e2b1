#pragma once

// Colorings of words and of subspaces.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ovw/spaces.hpp"

namespace ovw {

using Color = std::uint64_t;

/// A total map from words to 0..l-1, either a finite table or a pure rule.
class Coloring {
 public:
  enum class Kind { table, length_mod, letter_count_mod, poly_hash };

  static constexpr std::uint64_t kHashPrime = (std::uint64_t{1} << 61) - 1;

  /// Words missing from the table get `fallback`, or raise NotTotal without one.
  static Coloring table(Color l, std::map<Word, Color> entries, std::optional<Color> fallback = std::nullopt) {
    Coloring c(Kind::table, l);
    for (const auto& [w, col] : entries)
      if (col >= l) fail(errc::invalid_argument, "table color " + std::to_string(col) + " >= " + std::to_string(l));
    if (fallback && *fallback >= l) fail(errc::invalid_argument, "default color out of range");
    c.entries_ = std::move(entries);
    c.default_ = fallback;
    return c;
  }
  /// (|w| mod m) mod l.
  static Coloring length_mod(Color l, std::uint64_t m) {
    Coloring c(Kind::length_mod, l);
    c.modulus_ = nonzero(m);
    return c;
  }
  /// (#occurrences of letter mod m) mod l.
  static Coloring letter_count_mod(Color l, Letter letter, std::uint64_t m) {
    Coloring c(Kind::letter_count_mod, l);
    c.letter_ = letter;
    c.modulus_ = nonzero(m);
    return c;
  }
  /// ((sum_i (w_i + 1) * 31^i + seed) mod (2^61 - 1)) mod l.
  static Coloring poly_hash(Color l, std::uint64_t seed) {
    Coloring c(Kind::poly_hash, l);
    c.seed_ = seed;
    return c;
  }
  static Coloring constant(Color l, Color value) {
    if (value >= l) fail(errc::invalid_argument, "constant color out of range");
    if (value != 0) return table(l, {}, value);
    return length_mod(l, 1);
  }

  Kind kind() const { return kind_; }
  Color colors() const { return colors_; }
  std::uint64_t modulus() const { return modulus_; }
  Letter letter() const { return letter_; }
  std::uint64_t seed() const { return seed_; }
  const std::map<Word, Color>& entries() const { return entries_; }
  const std::optional<Color>& fallback() const { return default_; }

  Color operator()(const Word& w) const {
    switch (kind_) {
      case Kind::table: {
        if (auto it = entries_.find(w); it != entries_.end()) return it->second;
        if (default_) return *default_;
        fail(errc::not_total, "coloring has no entry for '" + render(w) + "'");
      }
      case Kind::length_mod:
        return (w.size() % modulus_) % colors_;
      case Kind::letter_count_mod: {
        std::uint64_t n = 0;
        for (Letter a : w) n += a == letter_;
        return (n % modulus_) % colors_;
      }
      case Kind::poly_hash: {
        using u128 = unsigned __int128;
        u128 acc = seed_ % kHashPrime;
        u128 pow = 1;
        for (Letter a : w) {
          acc = (acc + (u128{a} + 1) % kHashPrime * pow) % kHashPrime;
          pow = pow * 31 % kHashPrime;
        }
        return static_cast<Color>(acc) % colors_;
      }
    }
    return 0;
  }

  bool operator==(const Coloring&) const = default;

 private:
  Coloring(Kind kind, Color l) : kind_(kind), colors_(l) {
    if (l == 0) fail(errc::invalid_argument, "a coloring needs at least one color");
  }
  static std::uint64_t nonzero(std::uint64_t m) {
    if (m == 0) fail(errc::invalid_argument, "modulus must be >= 1");
    return m;
  }

  Kind kind_;
  Color colors_;
  std::map<Word, Color> entries_;
  std::optional<Color> default_;
  std::uint64_t modulus_ = 1;
  Letter letter_ = 0;
  std::uint64_t seed_ = 0;
};

inline std::string_view to_string(Coloring::Kind k) {
  switch (k) {
    case Coloring::Kind::table: return "table";
    case Coloring::Kind::length_mod: return "length_mod";
    case Coloring::Kind::letter_count_mod: return "letter_count_mod";
    case Coloring::Kind::poly_hash: return "poly_hash";
  }
  return "?";
}

/// Table coloring listing f on the given points.
inline Coloring tabulate(const Coloring& f, const std::vector<Word>& points) {
  std::map<Word, Color> entries;
  for (const auto& p : points) entries.emplace(p, f(p));
  return Coloring::table(f.colors(), std::move(entries));
}

/// Colors m-dimensional subspaces through their generators.
class SubstructureColoring {
 public:
  enum class Kind { table, constant, occurrence_parity };

  static SubstructureColoring table(Color l, std::map<Tokens, Color> entries) {
    SubstructureColoring g(Kind::table, l);
    for (const auto& [t, c] : entries)
      if (c >= l) fail(errc::invalid_argument, "table color out of range");
    g.entries_ = std::move(entries);
    return g;
  }
  static SubstructureColoring constant(Color l, Color value) {
    SubstructureColoring g(Kind::constant, l);
    if (value >= l) fail(errc::invalid_argument, "constant color out of range");
    g.value_ = value;
    return g;
  }
  /// (number of variable occurrences in the generator mod 2) mod l.
  static SubstructureColoring occurrence_parity(Color l) { return {Kind::occurrence_parity, l}; }

  Kind kind() const { return kind_; }
  Color colors() const { return colors_; }
  Color value() const { return value_; }
  const std::map<Tokens, Color>& entries() const { return entries_; }

  Color operator()(const VariableWord& generator) const {
    switch (kind_) {
      case Kind::table: {
        auto it = entries_.find(generator.tokens());
        if (it == entries_.end()) fail(errc::not_total, "no color for subspace " + render(generator));
        return it->second;
      }
      case Kind::constant: return value_;
      case Kind::occurrence_parity: {
        std::uint64_t n = 0;
        for (const auto& t : generator.tokens()) n += t.is_variable();
        return (n % 2) % colors_;
      }
    }
    return 0;
  }

  bool operator==(const SubstructureColoring&) const = default;

 private:
  SubstructureColoring(Kind kind, Color l) : kind_(kind), colors_(l) {
    if (l == 0) fail(errc::invalid_argument, "a coloring needs at least one color");
  }

  Kind kind_;
  Color colors_;
  Color value_ = 0;
  std::map<Tokens, Color> entries_;
};

inline std::string_view to_string(SubstructureColoring::Kind k) {
  switch (k) {
    case SubstructureColoring::Kind::table: return "table";
    case SubstructureColoring::Kind::constant: return "constant";
    case SubstructureColoring::Kind::occurrence_parity: return "occurrence_parity";
  }
  return "?";
}

/// Mixed-radix product: code(i) = sum_j colors[j][i] * l^j.
inline std::vector<Color> product_codes(const std::vector<std::vector<Color>>& colors, Color l) {
  if (colors.empty()) fail(errc::shape_mismatch, "product of no colorings");
  const std::size_t n = colors.front().size();
  std::vector<Color> out(n, 0);
  Color radix = 1;
  for (std::size_t j = 0; j < colors.size(); ++j) {
    if (colors[j].size() != n) fail(errc::shape_mismatch, "factor " + std::to_string(j) + " has a different size");
    for (std::size_t i = 0; i < n; ++i) {
      if (colors[j][i] >= l) fail(errc::shape_mismatch, "color out of range in factor " + std::to_string(j));
      out[i] += colors[j][i] * radix;
    }
    if (j + 1 < colors.size()) {
      if (radix > std::numeric_limits<Color>::max() / l) fail(errc::budget_exceeded, "product coloring overflows");
      radix *= l;
    }
  }
  return out;
}

/// A factor of a product: a coloring of one structure; structures of equal
/// shape are matched point by point in canonical order.
template <typename Structure>
struct ColoredStructure {
  Structure structure;
  Coloring coloring;
};

namespace detail {
inline std::vector<Word> canonical_points(const CombinatorialSpace& s, const Budget& b) { return space_points(s, b); }
inline std::vector<Word> canonical_points(const OVWTree& t, const Budget& b) { return tree_points(t, b); }
}  // namespace detail

/// Product coloring on the points of `target`, whose i-th point gets the code
/// of the i-th points of the factors.
template <typename Structure>
Coloring product_coloring(const std::vector<ColoredStructure<Structure>>& factors, const Structure& target,
                          const Budget& budget = {}) {
  if (factors.empty()) fail(errc::shape_mismatch, "product of no colorings");
  const Color l = factors.front().coloring.colors();
  const auto target_points = detail::canonical_points(target, budget);
  std::vector<std::vector<Color>> cols;
  for (const auto& fac : factors) {
    if (fac.coloring.colors() != l) fail(errc::shape_mismatch, "factors use different color counts");
    if (fac.structure.dimension() != target.dimension() || fac.structure.generator.size() != target.generator.size() ||
        fac.structure.alphabet() != target.alphabet())
      fail(errc::shape_mismatch, "factor shape differs from the target");
    std::vector<Color> c;
    for (const auto& p : detail::canonical_points(fac.structure, budget)) c.push_back(fac.coloring(p));
    cols.push_back(std::move(c));
  }
  const auto codes = product_codes(cols, l);
  Color width = 1;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (width > std::numeric_limits<Color>::max() / l) fail(errc::budget_exceeded, "product coloring overflows");
    width *= l;
  }
  std::map<Word, Color> entries;
  for (std::size_t i = 0; i < target_points.size(); ++i) entries[target_points[i]] = codes[i];
  return Coloring::table(width, std::move(entries));
}

}  // namespace ovw
