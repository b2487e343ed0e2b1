#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace ovw;

namespace {

const Alphabet ab{2};
const ThetaPredicate top = ThetaPredicate::top();

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return errc::invalid_argument;
}

OVWTree tree_on(std::vector<std::size_t> anchors) { return {anchored_generator(anchors, ab)}; }
CombinatorialSpace space_on(std::vector<std::size_t> anchors) { return {anchored_generator(anchors, ab)}; }

void expect_verifies(const LargeHomogResult& r, const VariableWord& ambient, const Coloring& f, bool tree) {
  EXPECT_TRUE(r.y.subset_of(oracle::anchors_of(ambient)));
  EXPECT_TRUE(is_large(r.y, r.target, top, {.strict = false}).large);
  EXPECT_TRUE(verify_witness(r.witness, top));
  if (tree) {
    ASSERT_TRUE(r.tree);
    EXPECT_TRUE(verify_homogeneous(*r.tree, f));
    EXPECT_TRUE(is_substructure(*r.tree, OVWTree{ambient}));
    EXPECT_EQ(oracle::anchors_of(r.tree->generator), r.y);
  } else {
    ASSERT_TRUE(r.space);
    EXPECT_TRUE(verify_homogeneous(*r.space, f));
    EXPECT_TRUE(is_substructure(*r.space, CombinatorialSpace{ambient}));
    EXPECT_EQ(oracle::anchors_of(r.space->generator), r.y);
  }
}

}  // namespace

TEST(Exponent, Examples) {
  const BoundParams p{10, 12};
  EXPECT_EQ(ovw_exponent(0, p), 12u);
  EXPECT_EQ(ovw_exponent(1, p), 86u);
  EXPECT_EQ(ovw_exponent(3, p), 1566u);
  EXPECT_THROW(ovw_exponent(40, p), error);
  EXPECT_THROW((BoundParams{0, 1}.validate()), error);
}

TEST(Exponent, Recursion) {
  for (Nat n0 = 1; n0 <= 12; ++n0)
    for (Nat n1 = 1; n1 <= 12; ++n1)
      for (Nat b = 0; b < 20; ++b) {
        const BoundParams p{n0, n1};
        ASSERT_GT(ovw_exponent(b + 1, p), ovw_exponent(b, p));
        ASSERT_EQ(ovw_exponent(b + 1, p) - 4 * ovw_exponent(b, p), 3 * n0 + 8);
      }
}

TEST(Subspace, ConstantColoringGivesSingleton) {
  const auto s = space_on({4, 5, 6, 7, 8});
  const auto f = Coloring::constant(2, 1);
  const auto r = find_large_homog_subspace(s, f, top, 0, {1, 1}, {.relax = true});
  EXPECT_EQ(r.y.size(), 1u);
  EXPECT_EQ(r.color, 1u);
  expect_verifies(r, s.generator, f, false);
}

TEST(Subspace, StrictPreconditions) {
  EXPECT_EQ(code_of([] { find_large_homog_subspace(space_on({4, 5, 6}), Coloring::length_mod(2, 2), top, 1, {1, 1}); }),
            errc::not_large_enough);
  EXPECT_EQ(code_of([] { find_large_homog_subspace(space_on({2, 5, 6}), Coloring::length_mod(2, 2), top, 0, {1, 1}); }),
            errc::min_too_small);
}

TEST(Subspace, RelaxedResultsVerify) {
  std::size_t found = 0;
  for (unsigned m = 1; m < 64; ++m) {
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < 6; ++i)
      if (m >> i & 1) anchors.push_back(4 + i);
    const auto s = space_on(anchors);
    for (const auto& f : oracle::sweep_colorings())
      for (Nat b = 0; b <= 1; ++b) {
        try {
          const auto r = find_large_homog_subspace(s, f, top, b, {1, 1}, {.relax = true});
          ++found;
          EXPECT_EQ(r.target, (OrdinalExpr{b, 1}));
          expect_verifies(r, s.generator, f, false);
        } catch (const error& e) {
          ASSERT_TRUE(e.code() == errc::hj_failure || e.code() == errc::not_large_enough) << e.what();
        }
      }
  }
  EXPECT_GT(found, 0u);
}

TEST(Tree, ConstantColoringPreInd) {
  const auto t = tree_on({4, 5, 6, 7, 8});
  const auto f = Coloring::constant(2, 0);
  const auto r = find_large_homog_ovw_subtree(t, f, top, 0, OVWMode::pre_ind, {1, 1}, {.relax = true});
  EXPECT_EQ(r.target, (OrdinalExpr{0, 3}));
  expect_verifies(r, t.generator, f, true);
}

TEST(Tree, LengthModInd) {
  const auto x = generate_large({1, 1}, top, 4, false, {.schedule = Schedule::doubling});
  ASSERT_EQ(x, FinSet({4, 8, 16, 32, 64}));
  // Even-length leaves, so the whole tree is LengthMod(2)-homogeneous.
  const auto t = OVWTree{parse_variable_word(render(anchored_generator({x.begin(), x.end()}, ab)) + " b", ab)};
  const auto f = Coloring::length_mod(2, 2);
  const auto r = find_large_homog_ovw_subtree(t, f, top, 0, OVWMode::ind, {1, 1}, {.relax = true});
  EXPECT_EQ(r.target, (OrdinalExpr{1, 1}));
  expect_verifies(r, t.generator, f, true);
  EXPECT_TRUE(oracle::homogeneous_large_subtree(t, f, {1, 1}, top));
}

TEST(Tree, StrictPreconditions) {
  const auto f = Coloring::length_mod(2, 2);
  EXPECT_EQ(code_of([&] { find_large_homog_ovw_subtree(tree_on({4, 5, 6}), f, top, 0, OVWMode::ind, {1, 1}); }),
            errc::not_sparse);
  EXPECT_EQ(code_of([&] { find_large_homog_ovw_subtree(tree_on({4}), f, top, 0, OVWMode::pre_ind, {1, 1}); }),
            errc::not_large_enough);
  EXPECT_EQ(code_of([&] {
              find_large_homog_ovw_subtree(tree_on({4, 5}), f, top, 9, OVWMode::ind, {1, 1}, {.max_depth = 8});
            }),
            errc::recursion_budget_exceeded);
}

// Whenever the oracle finds a homogeneous w-large subtree, so does the
// relaxed pipeline, and its results always verify.
TEST(Tree, SoundAndCompleteOnSmallTrees) {
  std::size_t oracle_hits = 0;
  for (unsigned m = 1; m < 64; ++m) {
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < 6; ++i)
      if (m >> i & 1) anchors.push_back(1 + i);
    const auto t = tree_on(anchors);
    for (const auto& f : oracle::sweep_colorings()) {
      const bool exists = oracle::homogeneous_large_subtree(t, f, {1, 1}, top).has_value();
      oracle_hits += exists;
      try {
        const auto r = find_large_homog_ovw_subtree(t, f, top, 0, OVWMode::ind, {1, 1}, {.relax = true});
        expect_verifies(r, t.generator, f, true);
        EXPECT_TRUE(exists);
      } catch (const error& e) {
        ASSERT_EQ(e.code(), errc::hj_failure) << e.what();
        EXPECT_FALSE(exists) << render(t.generator);
      }
    }
  }
  EXPECT_GT(oracle_hits, 0u);
}

TEST(Tree, TraceWidthsWithinBound) {
  const auto t = tree_on({2, 3, 5, 6});
  for (const auto& f : oracle::sweep_colorings()) {
    try {
      const auto r = find_large_homog_ovw_subtree(t, f, top, 0, OVWMode::ind, {1, 1}, {.relax = true});
      ASSERT_FALSE(r.trace.empty());
      for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i].width, r.trace[i].width_bound);
    } catch (const error& e) {
      ASSERT_EQ(e.code(), errc::hj_failure);
    }
  }
}

TEST(Refutation, Examples) {
  const auto one = certify_not_gr_large(FinSet({4}), {0, 2}, top, 2, 2);
  EXPECT_TRUE(one.counterexample);
  EXPECT_TRUE(one.complete);
  const auto mono = certify_not_gr_large(FinSet({4, 5}), {0, 1}, top, 2, 1);
  EXPECT_FALSE(mono.counterexample);
  EXPECT_TRUE(mono.complete);
  const auto pair = certify_not_gr_large(FinSet({4, 5}), {0, 2}, top, 2, 2);
  EXPECT_EQ(pair.mode, HJMode::exhaustive);
  ASSERT_TRUE(pair.counterexample);
  const CombinatorialSpace s{anchored_generator({4, 5}, ab)};
  EXPECT_FALSE(oracle::homogeneous_large_subspace(s, *pair.counterexample, {0, 2}, top));
  EXPECT_THROW(certify_not_gr_large(FinSet({2, 5}), {0, 1}, top, 2, 2), error);
}

TEST(Refutation, AgreesWithOracle) {
  std::mt19937_64 rng(4);
  for (unsigned m = 1; m < 16; ++m) {
    std::vector<Nat> xs;
    for (Nat i = 0; i < 4; ++i)
      if (m >> i & 1) xs.push_back(4 + i);
    const FinSet x(xs);
    for (Nat c = 1; c <= 3; ++c) {
      const auto r = certify_not_gr_large(x, {0, c}, top, 2, 2, {.mode = HJMode::backtrack});
      if (r.counterexample) {
        const CombinatorialSpace s{anchored_generator({xs.begin(), xs.end()}, ab)};
        EXPECT_FALSE(oracle::homogeneous_large_subspace(s, *r.counterexample, {0, c}, top));
      } else {
        EXPECT_LE(c, 1u + (xs.size() >= 3));
      }
    }
  }
}

TEST(Calibration, SmallRange) {
  const auto c = calibrate_n0(2, 2, 3, 4);
  ASSERT_EQ(c.entries.size(), 1u);
  EXPECT_EQ(c.entries[0].threshold, std::optional<std::size_t>(2));
  ASSERT_TRUE(c.n0);
  EXPECT_EQ(*c.n0, 1u);
}
