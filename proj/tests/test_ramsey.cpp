#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "ovw/ramsey.hpp"

using namespace ovw;

namespace {

const Alphabet ab{2};

CombinatorialSpace space(std::string_view g, Alphabet a = ab) { return {parse_variable_word(g, a)}; }
OVWTree tree(std::string_view g, Alphabet a = ab) { return {parse_variable_word(g, a)}; }

const Coloring parity = Coloring::letter_count_mod(2, 1, 2);

Coloring from_bits(const std::vector<Word>& points, std::uint64_t bits, Color l = 2) {
  std::map<Word, Color> m;
  for (std::size_t i = 0; i < points.size(); ++i) {
    m[points[i]] = bits % l;
    bits /= l;
  }
  return Coloring::table(l, m);
}

// Any monochromatic line in A^n, found by substituting every letter into every
// pattern over A + {*} that uses *.
bool has_mono_line(std::uint32_t k, std::size_t n, const std::function<Color(const Word&)>& f) {
  std::vector<std::uint32_t> pat(n, 0);
  while (true) {
    if (std::count(pat.begin(), pat.end(), k) > 0) {
      std::optional<Color> c;
      bool same = true;
      for (Letter a = 0; a < k && same; ++a) {
        Word w;
        for (auto p : pat) w.push_back(p == k ? a : p);
        const Color x = f(w);
        if (!c) c = x;
        same = *c == x;
      }
      if (same) return true;
    }
    std::size_t i = 0;
    while (i < n && pat[i] == k) pat[i++] = 0;
    if (i == n) return false;
    ++pat[i];
  }
}

}  // namespace

TEST(HJLine, Examples) {
  auto r = find_hj_line(full_space(ab, 2), parity);
  ASSERT_TRUE(r);
  EXPECT_EQ(render(r->line.generator), "x0 x0");
  EXPECT_EQ(r->color, 0u);
  EXPECT_EQ(space_points(r->line), (std::vector<Word>{parse_word("aa"), parse_word("bb")}));

  const auto s = space("a x0 x1 b x1");
  auto c = find_hj_line(s, Coloring::constant(3, 2));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->line, enumerate_subspaces(s, 1).front());
  EXPECT_EQ(c->color, 2u);

  EXPECT_FALSE(find_hj_line(full_space(ab, 1), Coloring::letter_count_mod(2, 1, 2)));
}

TEST(HJLine, AgreesWithPatternOracle) {
  for (std::uint32_t k = 2; k <= 3; ++k)
    for (std::size_t n = 1; n <= (k == 2 ? 3u : 2u); ++n) {
      const auto full = full_space(Alphabet(k), n);
      const auto pts = space_points(full);
      std::mt19937_64 rng(n * 10 + k);
      for (int trial = 0; trial < 300; ++trial) {
        const auto f = from_bits(pts, rng(), 2);
        const auto r = find_hj_line(full, f);
        ASSERT_EQ(r.has_value(), has_mono_line(k, n, f));
        if (!r) continue;
        EXPECT_TRUE(verify_homogeneous(r->line, f));
        for (const auto& line : enumerate_subspaces(full, 1)) {
          if (line == r->line) break;
          EXPECT_FALSE(verify_homogeneous(line, f));
        }
      }
    }
}

TEST(HJInstance, Examples) {
  EXPECT_TRUE(verify_hj_instance(2, 2, 2).holds);
  const auto one = verify_hj_instance(2, 2, 1);
  ASSERT_FALSE(one.holds);
  ASSERT_TRUE(one.counterexample);
  EXPECT_NE((*one.counterexample)(parse_word("a")), (*one.counterexample)(parse_word("b")));
  for (std::uint32_t k = 1; k <= 3; ++k) EXPECT_TRUE(verify_hj_instance(k, 1, 2).holds);
}

TEST(HJInstance, ThreeLettersTwoColorsDimensionTwo) {
  const auto r = verify_hj_instance(3, 2, 2, {.mode = HJMode::backtrack});
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.counterexample);
  const auto& f = *r.counterexample;
  EXPECT_FALSE(has_mono_line(3, 2, f));
  // The grid with rows 001/110/011 is line-free as well.
  std::map<Word, Color> grid;
  const char* rows[] = {"001", "110", "011"};
  for (Letter i = 0; i < 3; ++i)
    for (Letter j = 0; j < 3; ++j) grid[Word{i, j}] = rows[i][j] - '0';
  const auto g = Coloring::table(2, grid);
  EXPECT_FALSE(has_mono_line(3, 2, g));
  EXPECT_FALSE(find_hj_line(full_space(Alphabet(3), 2), g));
}

TEST(HJInstance, ModesAgreeAndMonotone) {
  for (std::uint32_t k = 1; k <= 3; ++k)
    for (Color l = 1; l <= 2; ++l)
      for (std::size_t n = 1; n <= 2; ++n) {
        const auto e = verify_hj_instance(k, l, n, {.mode = HJMode::exhaustive});
        const auto b = verify_hj_instance(k, l, n, {.mode = HJMode::backtrack});
        EXPECT_EQ(e.holds, b.holds) << k << " " << l << " " << n;
        for (const auto* r : {&e, &b})
          if (!r->holds) EXPECT_FALSE(has_mono_line(k, n, *r->counterexample));
      }
  bool prev = false;
  for (std::size_t n = 1; n <= 3; ++n) {
    const bool h = verify_hj_instance(2, 2, n, {.mode = HJMode::exhaustive}).holds;
    if (prev) EXPECT_TRUE(h);
    prev = h;
  }
  EXPECT_TRUE(prev);
}

TEST(HJInstance, BudgetExceeded) {
  EXPECT_THROW(verify_hj_instance(2, 2, 4, {.mode = HJMode::exhaustive, .coloring_budget = 1000}), error);
}

TEST(GR, Examples) {
  const auto s = full_space(ab, 3);
  auto c = find_gr_subspace(s, 1, 2, SubstructureColoring::constant(2, 1));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->space, enumerate_subspaces(s, 2).front());
  EXPECT_EQ(c->color, 1u);

  auto same = find_gr_subspace(s, 2, 2, SubstructureColoring::occurrence_parity(2));
  ASSERT_TRUE(same);
  EXPECT_EQ(same->space, enumerate_subspaces(s, 2).front());

  EXPECT_FALSE(find_gr_subspace(full_space(ab, 2), 1, 2, SubstructureColoring::occurrence_parity(2)));
  EXPECT_THROW(find_gr_subspace(s, 2, 1, SubstructureColoring::constant(2, 0)), error);
  EXPECT_THROW(find_gr_subspace(s, 1, 4, SubstructureColoring::constant(2, 0)), error);
}

TEST(GR, ResultsVerify) {
  const auto s = full_space(ab, 3);
  std::mt19937_64 rng(9);
  const auto lines = enumerate_subspaces(s, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<Tokens, Color> m;
    for (const auto& l : lines) m[l.generator.tokens()] = rng() % 4 == 0;
    const auto g = SubstructureColoring::table(2, m);
    const auto r = find_gr_subspace(s, 1, 2, g);
    bool any = false;
    for (const auto& cand : enumerate_subspaces(s, 2)) any = any || verify_homogeneous(cand, 1, g);
    ASSERT_EQ(r.has_value(), any);
    if (r) EXPECT_TRUE(verify_homogeneous(r->space, 1, g));
  }
}

TEST(CS, Examples) {
  const auto t = tree("x0 x1");
  auto r = find_cs_subtree(t, 1, Coloring::length_mod(2, 2), CSStrategy::direct);
  ASSERT_TRUE(r);
  EXPECT_EQ(render(r->tree.generator), "x0 x0");
  EXPECT_EQ(r->color, 0u);
  EXPECT_EQ(tree_points(r->tree), (std::vector<Word>{Word{}, parse_word("aa"), parse_word("bb")}));

  auto c = find_cs_subtree(t, 1, Coloring::constant(2, 1), CSStrategy::direct);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->tree, enumerate_subtrees(t, 1).front());

  try {
    find_cs_subtree(t, 3, Coloring::constant(2, 1), CSStrategy::direct);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::index_out_of_range);
  }
}

// A reduction witness is always a direct witness too; the converse needs
// larger trees than this one.
TEST(CS, StrategiesOnSevenPointTree) {
  const auto t = tree("x0 x1");
  const auto pts = tree_points(t);
  ASSERT_EQ(pts.size(), 7u);
  int via = 0;
  for (std::uint64_t bits = 0; bits < 128; ++bits) {
    const auto f = from_bits(pts, bits);
    const auto d = find_cs_subtree(t, 1, f, CSStrategy::direct);
    const auto g = find_cs_subtree(t, 1, f, CSStrategy::via_gr);
    if (d) EXPECT_TRUE(verify_homogeneous(d->tree, f));
    if (g) {
      ++via;
      EXPECT_TRUE(verify_homogeneous(g->tree, f));
      EXPECT_TRUE(is_substructure(g->tree, t));
      EXPECT_TRUE(d);
    }
  }
  EXPECT_GT(via, 0);
}

TEST(Homogeneity, Examples) {
  EXPECT_TRUE(verify_homogeneous(space("x0 x0"), parity));
  EXPECT_FALSE(verify_homogeneous(space("x0 a"), parity));
  EXPECT_TRUE(verify_homogeneous(space("a b"), Coloring::poly_hash(5, 3)));
  EXPECT_TRUE(verify_homogeneous(tree("b"), Coloring::poly_hash(5, 3)));
}

TEST(Search, DeterministicAcrossThreads) {
  std::mt19937_64 rng(11);
  const auto s = full_space(Alphabet(3), 3);
  const auto t = tree("x0 x1 x2");
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = Coloring::poly_hash(2 + trial % 2, rng());
    const auto a = find_hj_line(s, f), b = find_hj_line(s, f, {.threads = 4});
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) EXPECT_EQ(a->line, b->line);
    const auto c = find_cs_subtree(t, 1, f, CSStrategy::direct), d = find_cs_subtree(t, 1, f, CSStrategy::direct, {.threads = 4});
    ASSERT_EQ(c.has_value(), d.has_value());
    if (c) EXPECT_EQ(c->tree, d->tree);
    const auto g = SubstructureColoring::occurrence_parity(2);
    const auto e = find_gr_subspace(s, 1, 2, g), h = find_gr_subspace(s, 1, 2, g, {.threads = 3});
    ASSERT_EQ(e.has_value(), h.has_value());
    if (e) EXPECT_EQ(e->space, h->space);
  }
}
