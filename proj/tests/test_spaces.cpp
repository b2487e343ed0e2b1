#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "ovw/spaces.hpp"

using namespace ovw;

namespace {

const Alphabet ab{2};

std::vector<Word> words(std::initializer_list<const char*> ws) {
  std::vector<Word> out;
  for (const char* s : ws) out.push_back(parse_word(s));
  return out;
}

CombinatorialSpace space(std::string_view g, Alphabet a = ab) { return {parse_variable_word(g, a)}; }
OVWTree tree(std::string_view g, Alphabet a = ab) { return {parse_variable_word(g, a)}; }

std::set<Word> as_set(const std::vector<Word>& v) { return {v.begin(), v.end()}; }

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// All valid variable words of the given length and dimension over k letters.
std::vector<VariableWord> all_words(std::size_t len, std::size_t dim, std::uint32_t k) {
  std::vector<VariableWord> out;
  Tokens t(len);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == len) {
      try {
        auto v = make_variable_word(t, Alphabet(k));
        if (v.dimension() == dim) out.push_back(std::move(v));
      } catch (const error&) {
      }
      return;
    }
    for (std::uint32_t a = 0; a < k; ++a) {
      t[p] = Token::letter(a);
      rec(p + 1);
    }
    for (std::uint32_t j = 0; j < dim; ++j) {
      t[p] = Token::var(j);
      rec(p + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST(Spaces, PointExamples) {
  EXPECT_EQ(space_points(space("x0 x0")), words({"aa", "bb"}));
  EXPECT_EQ(space_points(space("x0 x1")), words({"aa", "ab", "ba", "bb"}));
  EXPECT_EQ(space_points(space("a b")), words({"ab"}));
}

TEST(Spaces, TreePointExamples) {
  EXPECT_EQ(tree_points(tree("x0 x1")), words({"", "a", "b", "aa", "ab", "ba", "bb"}));
  EXPECT_EQ(tree_points(tree("x0", Alphabet(3))), words({"", "a", "b", "c"}));
  EXPECT_EQ(tree_points(tree("b")), words({"b"}));
}

TEST(Spaces, TreePointCount) {
  for (std::uint32_t k = 2; k <= 3; ++k)
    for (std::size_t n = 0; n <= 4; ++n) {
      const OVWTree t{make_variable_word(identity_instantiation(n), Alphabet(k))};
      EXPECT_EQ(tree_points(t).size(), (ipow(k, n + 1) - 1) / (k - 1));
      EXPECT_EQ(tree_size(t), (ipow(k, n + 1) - 1) / (k - 1));
    }
}

TEST(Spaces, SubspaceExample) {
  std::vector<std::string> got;
  for (const auto& s : enumerate_subspaces(full_space(ab, 2), 1)) got.push_back(render(s.generator));
  EXPECT_EQ(got, (std::vector<std::string>{"x0 x0", "x0 a", "x0 b", "a x0", "b x0"}));
}

TEST(Spaces, FullDimensionSubspaceIsItself) {
  const auto s = space("a x0 b x1 x1 x2");
  const auto subs = enumerate_subspaces(s, 3);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0], s);
  const auto d = enumerate_subspaces(space("x0 x0"), 1);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], space("x0 x0"));
}

TEST(Spaces, SubspaceCountAndContainment) {
  for (std::uint32_t k = 1; k <= 3; ++k)
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto full = full_space(Alphabet(k), n);
      const auto lines = enumerate_subspaces(full, 1);
      EXPECT_EQ(lines.size(), ipow(k + 1, n) - ipow(k, n)) << "k=" << k << " n=" << n;
      for (std::size_t m = 1; m <= n; ++m) {
        std::set<Tokens> seen;
        for (const auto& s : enumerate_subspaces(full, m)) {
          EXPECT_EQ(s.dimension(), m);
          EXPECT_TRUE(is_substructure(s, full));
          EXPECT_TRUE(seen.insert(s.generator.tokens()).second);
          for (auto y : s.anchors()) EXPECT_TRUE(std::count(full.anchors().begin(), full.anchors().end(), y));
        }
      }
    }
}

TEST(Spaces, InstantiationOrderIsCanonical) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 1; m <= n; ++m) {
      const auto us = instantiations(n, m, 2);
      EXPECT_TRUE(std::is_sorted(us.begin(), us.end()));
      EXPECT_EQ(std::set<Tokens>(us.begin(), us.end()).size(), us.size());
      std::size_t valid = 0;
      for (const auto& v : all_words(n, m, 2)) valid += v.size() == n;
      EXPECT_EQ(us.size(), valid);
    }
}

TEST(Spaces, SubtreeExamples) {
  const auto t = tree("x0 x1");
  const auto subs = enumerate_subtrees(t, 1, true);
  std::set<std::set<Word>> pts;
  for (const auto& s : subs) pts.insert(as_set(tree_points(s)));
  EXPECT_TRUE(pts.count({Word{}, parse_word("aa"), parse_word("bb")}));
  EXPECT_TRUE(pts.count({parse_word("a"), parse_word("aa"), parse_word("ab")}));
  const auto top = enumerate_subtrees(t, 2);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0], t);
}

TEST(Spaces, SubstructureExamples) {
  EXPECT_TRUE(is_substructure(space("x0 x0"), full_space(ab, 2)));
  EXPECT_TRUE(is_substructure(space("x0 x1"), space("x0 x1")));
  EXPECT_FALSE(is_substructure(space("x0 x0"), space("x0 a")));
}

// Generator matching agrees with point containment on all small pairs.
TEST(Spaces, SubstructureMatchesPointOracle) {
  for (std::uint32_t k = 1; k <= 2; ++k) {
    std::vector<VariableWord> ws;
    for (std::size_t len = 1; len <= 4; ++len)
      for (std::size_t d = 1; d <= 2; ++d)
        for (auto& v : all_words(len, d, k)) ws.push_back(v);
    for (const auto& a : ws)
      for (const auto& b : ws) {
        if (a.size() != b.size()) continue;
        const bool oracle = std::ranges::includes(as_set(space_points({b})), as_set(space_points({a})));
        ASSERT_EQ(is_substructure(CombinatorialSpace{a}, CombinatorialSpace{b}), oracle)
            << render(a) << " in " << render(b);
        const auto ta = as_set(tree_points({a})), tb = as_set(tree_points({b}));
        ASSERT_EQ(is_substructure(OVWTree{a}, OVWTree{b}), std::ranges::includes(tb, ta))
            << render(a) << " in tree " << render(b);
      }
  }
}

// Every tree whose points lie in T is one of the enumerated subtrees.
TEST(Spaces, SubtreeFamilyIsExhaustive) {
  for (const char* g : {"x0 x1", "a x0 x1", "x0 x0 x1", "x0 a x1", "x0 x1 x2", "x0 b x1 a"}) {
    const auto t = tree(g);
    const auto outer = as_set(tree_points(t));
    for (std::size_t d = 1; d <= t.dimension(); ++d) {
      std::set<std::set<Word>> enumerated;
      for (const auto& s : enumerate_subtrees(t, d, true)) enumerated.insert(as_set(tree_points(s)));
      std::set<std::set<Word>> oracle;
      for (std::size_t len = 1; len <= t.generator.size(); ++len)
        for (const auto& v : all_words(len, d, 2)) {
          auto pts = as_set(tree_points({v}));
          if (std::ranges::includes(outer, pts)) oracle.insert(std::move(pts));
        }
      EXPECT_EQ(enumerated, oracle) << g << " d=" << d;
    }
  }
}

TEST(Spaces, BudgetAndRangeErrors) {
  const auto big = full_space(ab, 30);
  EXPECT_THROW(space_points(big, Budget{1000}), error);
  EXPECT_THROW(tree_points(OVWTree{big.generator}, Budget{1000}), error);
  try {
    enumerate_subspaces(full_space(ab, 2), 3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::index_out_of_range);
  }
  EXPECT_THROW(enumerate_subtrees(tree("x0"), 0), error);
}

TEST(Spaces, AnchoredGenerator) {
  const auto g = anchored_generator({1, 3, 4}, ab);
  EXPECT_EQ(render(g), "a x0 a x1 x2");
  EXPECT_EQ(g.anchors(), (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_THROW(anchored_generator({3, 1}, ab), error);
}
