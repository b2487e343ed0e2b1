#include <gtest/gtest.h>

#include <functional>

#include "ovw/words.hpp"

using namespace ovw;

namespace {

const Alphabet ab{2};

VariableWord example() { return parse_variable_word("a b x0 a x0 b x1 b b", ab); }

Word w(std::string_view s) { return parse_word(s); }

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return errc::invalid_argument;
}

// Direct reading of the ordering conditions, independent of make_variable_word.
bool naive_valid(const Tokens& t, std::uint32_t k) {
  std::uint32_t n = 0;
  for (const auto& tok : t) {
    if (tok.is_letter() && tok.value >= k) return false;
    if (tok.is_variable()) n = std::max(n, tok.value + 1);
  }
  for (std::uint32_t j = 0; j < n; ++j) {
    std::optional<std::size_t> first, last;
    for (std::size_t p = 0; p < t.size(); ++p)
      if (t[p] == Token::var(j)) {
        if (!first) first = p;
        last = p;
      }
    if (!first) return false;
    if (j + 1 < n) {
      for (std::size_t p = 0; p < t.size(); ++p)
        if (t[p] == Token::var(j + 1)) {
          if (*last > p) return false;
          break;
        }
    }
  }
  return true;
}

void for_each_token_seq(std::size_t len, std::uint32_t k, std::uint32_t vars,
                        const std::function<void(const Tokens&)>& fn) {
  Tokens t(len);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == len) return fn(t);
    for (std::uint32_t a = 0; a < k; ++a) {
      t[p] = Token::letter(a);
      rec(p + 1);
    }
    for (std::uint32_t j = 0; j < vars; ++j) {
      t[p] = Token::var(j);
      rec(p + 1);
    }
  };
  rec(0);
}

}  // namespace

TEST(Words, ExampleAnchors) {
  const auto v = example();
  EXPECT_EQ(v.anchors(), (std::vector<std::size_t>{2, 6}));
  EXPECT_EQ(v.dimension(), 2u);
  EXPECT_EQ(v.size(), 9u);
}

TEST(Words, ExampleSubstitutions) {
  const auto v = example();
  EXPECT_EQ(substitute(v, Word{}), w("ab"));
  EXPECT_EQ(substitute(v, w("a")), w("abaaab"));
  EXPECT_EQ(substitute(v, w("ba")), w("abbabbabb"));
}

TEST(Words, InvalidWords) {
  EXPECT_EQ(code_of([] { parse_variable_word("a x0 b x1 x0 a b", ab); }), errc::order_violation);
  EXPECT_EQ(code_of([] { parse_variable_word("a a x1 b", ab); }), errc::missing_variable);
  EXPECT_EQ(code_of([] { parse_variable_word("a c x0", ab); }), errc::invalid_letter);
}

TEST(Words, SubstitutionErrors) {
  EXPECT_EQ(code_of([] { substitute(example(), w("aaa")); }), errc::too_many_letters);
  EXPECT_EQ(code_of([] { substitute(example(), w("c")); }), errc::invalid_letter);
}

TEST(Words, LeadingVariableGivesEmptyWord) {
  EXPECT_TRUE(substitute(parse_variable_word("x0 a", ab), Word{}).empty());
}

TEST(Words, ComposeExamples) {
  const auto xy = parse_variable_word("x0 x1", ab);
  const auto d = compose(xy, Tokens{Token::var(0), Token::var(0)});
  EXPECT_EQ(render(d), "x0 x0");
  EXPECT_EQ(d.anchors(), (std::vector<std::size_t>{0}));

  const auto e = compose(example(), Tokens{Token::letter(0), Token::var(0)});
  EXPECT_EQ(render(e), "a b a a a b x0 b b");
  EXPECT_EQ(e.anchors(), (std::vector<std::size_t>{6}));

  EXPECT_EQ(compose(example(), identity_instantiation(2)), example());
}

TEST(Words, ComposeErrors) {
  EXPECT_EQ(code_of([] { compose(example(), Tokens{Token::letter(0), Token::letter(1)}); }), errc::missing_variable);
  EXPECT_EQ(code_of([] { compose(example(), Tokens{Token::var(1), Token::var(0)}); }), errc::missing_variable);
  EXPECT_EQ(code_of([] { compose(parse_variable_word("x0 x1 x0", ab), Tokens{Token::var(0), Token::var(1)}); }),
            errc::order_violation);
  EXPECT_EQ(code_of([] { compose(example(), Tokens{Token::var(0)}); }), errc::length_mismatch);
}

TEST(Words, TruncateExamples) {
  const auto v = example();
  const auto t0 = truncate_before(v, 0);
  EXPECT_EQ(t0.dimension(), 0u);
  EXPECT_EQ(t0.to_word(), w("ab"));
  const auto t1 = truncate_before(v, 1);
  EXPECT_EQ(render(t1), "a b x0 a x0 b");
  EXPECT_EQ(t1.anchors(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(truncate_before(v, 2), v);
  EXPECT_EQ(code_of([&] { truncate_before(v, 3); }), errc::index_out_of_range);
}

TEST(Words, ValidityMatchesNaiveReading) {
  std::size_t valid = 0;
  for (std::size_t len = 0; len <= 6; ++len)
    for_each_token_seq(len, 2, 3, [&](const Tokens& t) {
      bool ok = true;
      try {
        make_variable_word(t, ab);
      } catch (const error&) {
        ok = false;
      }
      ASSERT_EQ(ok, naive_valid(t, 2)) << render(t);
      valid += ok;
    });
  EXPECT_GT(valid, 1000u);
}

TEST(Words, LengthLawAndRoundTrip) {
  for (std::size_t len = 1; len <= 6; ++len)
    for_each_token_seq(len, 2, 3, [&](const Tokens& t) {
      if (!naive_valid(t, 2)) return;
      const auto v = make_variable_word(t, ab);
      EXPECT_EQ(make_variable_word(v.tokens(), ab).anchors(), v.anchors());
      for (std::size_t m = 0; m <= v.dimension(); ++m) {
        const Word u(m, 1);
        const std::size_t expect = m < v.dimension() ? v.anchors()[m] : v.size();
        ASSERT_EQ(substitute(v, u).size(), expect) << render(t);
      }
    });
}

// substitute(compose(w, u), v) == substitute(w, u with fresh x_j := v(j)).
TEST(Words, CompositionCoherence) {
  const Alphabet abc{3};
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 6; ++len)
    for_each_token_seq(len, 3, 3, [&](const Tokens& t) {
      if (!naive_valid(t, 3)) return;
      const auto v = make_variable_word(t, abc);
      const std::size_t n = v.dimension();
      if (n == 0) return;
      // every u in (letters + fresh variables)^n that is itself ordered
      for_each_token_seq(n, 3, static_cast<std::uint32_t>(n), [&](const Tokens& u) {
        if (!naive_valid(u, 3)) return;
        std::uint32_t d = 0;
        for (const auto& tok : u)
          if (tok.is_variable()) d = std::max(d, tok.value + 1);
        if (d == 0) return;
        VariableWord c = v;
        try {
          c = compose(v, u);
        } catch (const error& e) {
          ASSERT_EQ(e.code(), errc::order_violation);
          return;
        }
        Word lv(d);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == d) {
            Word inst;
            for (const auto& tok : u) inst.push_back(tok.is_letter() ? tok.value : lv[tok.value]);
            ASSERT_EQ(substitute(c, lv), substitute(v, inst));
            ++checked;
            return;
          }
          for (Letter a = 0; a < 3; ++a) {
            lv[i] = a;
            rec(i + 1);
          }
        };
        rec(0);
      });
    });
  EXPECT_GT(checked, 100000u);
}

TEST(Words, TextForms) {
  EXPECT_EQ(render(example()), "a b x0 a x0 b x1 b b");
  EXPECT_EQ(parse_word("0110"), (Word{0, 1, 1, 0}));
  EXPECT_EQ(render(Word{0, 27}), "a<27>");
  EXPECT_EQ(parse_tokens("a 27 x0"), (Tokens{Token::letter(0), Token::letter(27), Token::var(0)}));
  EXPECT_EQ(code_of([] { parse_tokens("a ?"); }), errc::invalid_argument);
}

TEST(Words, CanonicalTokenOrder) {
  EXPECT_LT(Token::var(5), Token::letter(0));
  EXPECT_LT(Token::var(0), Token::var(1));
  EXPECT_LT(Token::letter(0), Token::letter(1));
}
