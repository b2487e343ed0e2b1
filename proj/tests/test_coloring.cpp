#include <gtest/gtest.h>

#include <random>

#include "ovw/coloring.hpp"

using namespace ovw;

namespace {

const Alphabet ab{2};

Word repeat(const Word& w, std::size_t n) {
  Word out;
  while (n--) out.insert(out.end(), w.begin(), w.end());
  return out;
}

}  // namespace

// Reference values computed with arbitrary-precision integers.
TEST(Coloring, PolyHashFrozenValues) {
  EXPECT_EQ(Coloring::poly_hash(2, 7)(Word{}), 1u);
  EXPECT_EQ(Coloring::poly_hash(2, 7)(Word{0, 1, 1, 0}), 1u);
  EXPECT_EQ(Coloring::poly_hash(1000, 7)(Word{0, 1, 1, 0}), 783u);
  EXPECT_EQ(Coloring::poly_hash(1000003, 5)(Word(40, 1)), 6606u);
  EXPECT_EQ(Coloring::poly_hash(999983, 123456789012345ULL)(repeat({25, 3, 0, 9}, 10)), 144896u);
}

TEST(Coloring, RuleColorings) {
  const auto len = Coloring::length_mod(2, 3);
  EXPECT_EQ(len(parse_word("abab")), 1u);
  EXPECT_EQ(len(parse_word("aba")), 0u);
  const auto cnt = Coloring::letter_count_mod(3, 1, 5);
  EXPECT_EQ(cnt(parse_word("bbbb")), 1u);
  EXPECT_EQ(cnt(parse_word("abba")), 2u);
  EXPECT_EQ(Coloring::constant(3, 2)(parse_word("ab")), 2u);
  EXPECT_EQ(Coloring::constant(3, 0)(parse_word("abb")), 0u);
  EXPECT_THROW(Coloring::length_mod(0, 2), error);
  EXPECT_THROW(Coloring::length_mod(2, 0), error);
  EXPECT_THROW(Coloring::constant(2, 2), error);
}

TEST(Coloring, TableTotality) {
  const auto t = Coloring::table(2, {{parse_word("ab"), 1}});
  EXPECT_EQ(t(parse_word("ab")), 1u);
  try {
    t(parse_word("ba"));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_total);
  }
  EXPECT_EQ(Coloring::table(2, {}, 1)(parse_word("ba")), 1u);
  EXPECT_THROW(Coloring::table(2, {{parse_word("a"), 2}}), error);
}

TEST(Coloring, TabulateAgreesWithRule) {
  const auto s = full_space(Alphabet(3), 3);
  const auto f = Coloring::poly_hash(4, 11);
  const auto t = tabulate(f, space_points(s));
  for (const auto& p : space_points(s)) EXPECT_EQ(t(p), f(p));
}

TEST(Product, Examples) {
  EXPECT_EQ(product_codes({{0, 1}}, 2), (std::vector<Color>{0, 1}));
  EXPECT_EQ(product_codes({{0, 1}, {1, 1}}, 2), (std::vector<Color>{2, 3}));
  EXPECT_EQ(product_codes({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, 3), (std::vector<Color>{0, 0, 0}));
  EXPECT_THROW(product_codes({{0, 1}, {1}}, 2), error);
  EXPECT_THROW(product_codes({}, 2), error);
}

// Decoding each code recovers every factor's color.
TEST(Product, CodesDecode) {
  std::mt19937_64 rng(5);
  for (Color l = 1; l <= 4; ++l)
    for (std::size_t f = 1; f <= 4; ++f) {
      std::vector<std::vector<Color>> cols(f, std::vector<Color>(20));
      for (auto& c : cols)
        for (auto& x : c) x = rng() % l;
      const auto codes = product_codes(cols, l);
      for (std::size_t i = 0; i < 20; ++i) {
        Color code = codes[i];
        for (std::size_t j = 0; j < f; ++j) {
          EXPECT_EQ(code % l, cols[j][i]);
          code /= l;
        }
        EXPECT_EQ(code, 0u);
      }
    }
}

TEST(Product, OverIsomorphicSpaces) {
  const CombinatorialSpace a{parse_variable_word("x0 a x1", ab)};
  const CombinatorialSpace b{parse_variable_word("x0 b x1", ab)};
  const CombinatorialSpace target{parse_variable_word("x0 x0 x1", ab)};
  const auto fa = Coloring::letter_count_mod(2, 0, 2), fb = Coloring::length_mod(2, 2);
  const auto p = product_coloring<CombinatorialSpace>({{a, fa}, {b, fb}}, target);
  EXPECT_EQ(p.colors(), 4u);
  const auto pa = space_points(a), pb = space_points(b), pt = space_points(target);
  for (std::size_t i = 0; i < pt.size(); ++i) EXPECT_EQ(p(pt[i]), fa(pa[i]) + 2 * fb(pb[i]));
  const CombinatorialSpace other{parse_variable_word("x0 x1", ab)};
  EXPECT_THROW((product_coloring<CombinatorialSpace>({{other, fa}}, target)), error);
  EXPECT_THROW((product_coloring<CombinatorialSpace>({{a, fa}, {b, Coloring::length_mod(3, 2)}}, target)), error);
}

TEST(SubstructureColoring, Kinds) {
  const auto g = parse_variable_word("x0 a x0 x1", ab);
  EXPECT_EQ(SubstructureColoring::occurrence_parity(2)(g), 1u);
  EXPECT_EQ(SubstructureColoring::constant(3, 2)(g), 2u);
  EXPECT_EQ(SubstructureColoring::table(2, {{g.tokens(), 1}})(g), 1u);
  EXPECT_THROW(SubstructureColoring::table(2, {})(g), error);
  EXPECT_THROW(SubstructureColoring::constant(2, 5), error);
}
