#pragma once

// Words, ordered variable words, substitution, composition and truncation.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ovw/error.hpp"

namespace ovw {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Letters of an alphabet of size k are 0..k-1.
class Alphabet {
 public:
  explicit Alphabet(std::uint32_t size) : size_(size) {
    if (size == 0) fail(errc::invalid_argument, "alphabet size must be >= 1");
  }
  std::uint32_t size() const noexcept { return size_; }
  bool contains(Letter a) const noexcept { return a < size_; }
  bool operator==(const Alphabet&) const = default;

 private:
  std::uint32_t size_;
};

/// A position of a variable word: either a letter or a variable index.
struct Token {
  enum class Kind : std::uint8_t { variable = 0, letter = 1 };

  Kind kind = Kind::letter;
  std::uint32_t value = 0;

  static constexpr Token letter(Letter a) { return {Kind::letter, a}; }
  static constexpr Token var(std::uint32_t j) { return {Kind::variable, j}; }

  constexpr bool is_variable() const { return kind == Kind::variable; }
  constexpr bool is_letter() const { return kind == Kind::letter; }

  // Canonical order: variables before letters, then by index.
  constexpr auto operator<=>(const Token&) const = default;
};

using Tokens = std::vector<Token>;

/// An ordered Y-variable word. Variable j first occurs at anchors()[j], and
/// every occurrence of variable j precedes the first occurrence of j+1.
/// Dimension 0 is allowed and denotes a plain word.
class VariableWord {
 public:
  const Tokens& tokens() const noexcept { return tokens_; }
  const std::vector<std::size_t>& anchors() const noexcept { return anchors_; }
  std::size_t dimension() const noexcept { return anchors_.size(); }
  std::size_t size() const noexcept { return tokens_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  /// Letters of a dimension-0 word.
  Word to_word() const {
    if (dimension() != 0) fail(errc::invalid_argument, "word still has variables");
    Word out;
    out.reserve(tokens_.size());
    for (const auto& t : tokens_) out.push_back(t.value);
    return out;
  }

  bool operator==(const VariableWord& other) const {
    return alphabet_ == other.alphabet_ && tokens_ == other.tokens_;
  }

 private:
  VariableWord(Tokens tokens, std::vector<std::size_t> anchors, Alphabet alphabet)
      : tokens_(std::move(tokens)), anchors_(std::move(anchors)), alphabet_(alphabet) {}

  friend VariableWord make_variable_word(Tokens tokens, Alphabet alphabet);

  Tokens tokens_;
  std::vector<std::size_t> anchors_;
  Alphabet alphabet_;
};

/// Validates a token sequence and infers its anchor set.
inline VariableWord make_variable_word(Tokens tokens, Alphabet alphabet) {
  std::vector<std::size_t> anchors;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const Token t = tokens[pos];
    if (t.is_letter()) {
      if (!alphabet.contains(t.value))
        fail(errc::invalid_letter, "letter " + std::to_string(t.value) + " at position " +
                                       std::to_string(pos) + " outside alphabet of size " +
                                       std::to_string(alphabet.size()));
      continue;
    }
    const std::size_t seen = anchors.size();
    if (t.value == seen) {
      anchors.push_back(pos);
    } else if (t.value > seen) {
      fail(errc::missing_variable, "x" + std::to_string(t.value) + " at position " +
                                       std::to_string(pos) + " before any occurrence of x" +
                                       std::to_string(seen));
    } else if (t.value + 1 < seen) {
      fail(errc::order_violation, "x" + std::to_string(t.value) + " at position " +
                                      std::to_string(pos) + " after first occurrence of x" +
                                      std::to_string(seen - 1));
    }
  }
  return VariableWord(std::move(tokens), std::move(anchors), alphabet);
}

/// w[u]: replace x_i by u(i) for i < |u|, cut before the first x_{|u|}.
inline Word substitute(const VariableWord& w, std::span<const Letter> u) {
  if (u.size() > w.dimension())
    fail(errc::too_many_letters, std::to_string(u.size()) + " letters for a word of dimension " +
                                     std::to_string(w.dimension()));
  for (Letter a : u)
    if (!w.alphabet().contains(a)) fail(errc::invalid_letter, "letter " + std::to_string(a));
  const std::size_t cut = u.size() < w.dimension() ? w.anchors()[u.size()] : w.size();
  Word out(cut);
  for (std::size_t pos = 0; pos < cut; ++pos) {
    const Token t = w.tokens()[pos];
    out[pos] = t.is_letter() ? t.value : u[t.value];
  }
  return out;
}

inline Word substitute(const VariableWord& w, const Word& u) {
  return substitute(w, std::span<const Letter>(u));
}

/// Replaces each x_i of w by u(i), a letter or a fresh variable. The result is
/// revalidated, so a u that breaks ordering is rejected.
inline VariableWord compose(const VariableWord& w, std::span<const Token> u) {
  if (u.size() != w.dimension())
    fail(errc::length_mismatch, "instantiation of length " + std::to_string(u.size()) +
                                    " for a word of dimension " + std::to_string(w.dimension()));
  Tokens out;
  out.reserve(w.size());
  bool any_variable = false;
  for (const Token& t : w.tokens()) {
    const Token r = t.is_letter() ? t : u[t.value];
    any_variable |= r.is_variable();
    out.push_back(r);
  }
  if (!any_variable) fail(errc::missing_variable, "instantiation uses no fresh variable");
  return make_variable_word(std::move(out), w.alphabet());
}

inline VariableWord compose(const VariableWord& w, const Tokens& u) {
  return compose(w, std::span<const Token>(u));
}

/// Prefix of w ending just before the anchor of x_j; j == dim(w) returns w.
/// For j == 0 the result has dimension 0 (a plain, possibly empty, word).
inline VariableWord truncate_before(const VariableWord& w, std::size_t j) {
  if (j > w.dimension())
    fail(errc::index_out_of_range, "truncation index " + std::to_string(j) +
                                       " exceeds dimension " + std::to_string(w.dimension()));
  if (j == w.dimension()) return w;
  Tokens prefix(w.tokens().begin(), w.tokens().begin() + static_cast<std::ptrdiff_t>(w.anchors()[j]));
  return make_variable_word(std::move(prefix), w.alphabet());
}

/// The identity instantiation x0 ... x_{n-1}.
inline Tokens identity_instantiation(std::size_t n) {
  Tokens u;
  u.reserve(n);
  for (std::size_t i = 0; i < n; ++i) u.push_back(Token::var(static_cast<std::uint32_t>(i)));
  return u;
}

inline Tokens letters_as_tokens(const Word& w) {
  Tokens out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(Token::letter(a));
  return out;
}

// --- text rendering (display and test convenience) ---

/// Renders letters 0..25 as 'a'..'z'; larger letters fall back to "<i>".
inline std::string render(const Word& w) {
  std::string out;
  for (Letter a : w) {
    if (a < 26) {
      out.push_back(static_cast<char>('a' + a));
    } else {
      out += "<" + std::to_string(a) + ">";
    }
  }
  return out;
}

inline std::string render(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    const Token t = tokens[i];
    if (t.is_variable()) {
      out += "x" + std::to_string(t.value);
    } else if (t.value < 26) {
      out.push_back(static_cast<char>('a' + t.value));
    } else {
      out += "<" + std::to_string(t.value) + ">";
    }
  }
  return out;
}

inline std::string render(const VariableWord& w) { return render(w.tokens()); }

/// A single character as a letter: 'a'..'z' or '0'..'9'.
inline Letter letter_from_char(char c) {
  if (c >= 'a' && c <= 'z') return static_cast<Letter>(c - 'a');
  if (c >= '0' && c <= '9') return static_cast<Letter>(c - '0');
  fail(errc::invalid_argument, std::string("not a letter: '") + c + "'");
}

/// "abaaab" or "0110": one letter per character.
inline Word parse_word(std::string_view text) {
  Word out;
  for (char c : text) out.push_back(letter_from_char(c));
  return out;
}

/// Whitespace-separated tokens: letters as in parse_word, variables as "x<j>",
/// multi-digit letters as plain decimal numbers.
inline Tokens parse_tokens(std::string_view text) {
  Tokens out;
  std::istringstream in{std::string(text)};
  std::string item;
  while (in >> item) {
    if (item.size() > 1 && item[0] == 'x') {
      out.push_back(Token::var(static_cast<std::uint32_t>(std::stoul(item.substr(1)))));
    } else if (item.size() == 1) {
      out.push_back(Token::letter(letter_from_char(item[0])));
    } else if (std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      out.push_back(Token::letter(static_cast<Letter>(std::stoul(item))));
    } else {
      fail(errc::invalid_argument, "bad token '" + item + "'");
    }
  }
  return out;
}

inline VariableWord parse_variable_word(std::string_view text, Alphabet alphabet) {
  return make_variable_word(parse_tokens(text), alphabet);
}

}  // namespace ovw
