#pragma once

// JSON forms of words, structures, colorings, predicates and largeness
// witnesses. Keys are sorted (nlohmann::json uses std::map), so dumps are
// byte-stable.

#include <json.hpp>

#include <string>
#include <vector>

#include "ovw/coloring.hpp"
#include "ovw/large_ramsey.hpp"
#include "ovw/largeness.hpp"
#include "ovw/spaces.hpp"
#include "ovw/words.hpp"

namespace ovw {

using json = nlohmann::json;

namespace io {

[[noreturn]] inline void bad(const std::string& what) { fail(errc::invalid_argument, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

inline Nat nat(const json& j, const char* what = "value") {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(std::string(what) + " must be a natural number");
  return j.get<Nat>();
}

inline Nat nat_field(const json& j, const char* key) { return nat(field(j, key), key); }

inline bool bool_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

inline std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string(key) + " must be a string");
  return v.get<std::string>();
}

// ---- tokens and words ----------------------------------------------------

inline json token_to_json(Token t, std::uint32_t k) {
  if (t.is_variable()) return json{{"x", t.value}};
  if (k <= 26) return std::string(1, static_cast<char>('a' + t.value));
  return json{{"l", t.value}};
}

inline Token token_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.size() != 1) bad("letter strings have exactly one character: '" + s + "'");
    return Token::letter(letter_from_char(s[0]));
  }
  if (j.is_object() && j.size() == 1) {
    if (j.contains("x")) return Token::var(static_cast<std::uint32_t>(nat_field(j, "x")));
    if (j.contains("l")) return Token::letter(static_cast<Letter>(nat_field(j, "l")));
  }
  bad("a token is a one-letter string, {\"x\": j} or {\"l\": i}");
}

inline json tokens_to_json(const Tokens& ts, std::uint32_t k) {
  json out = json::array();
  for (Token t : ts) out.push_back(token_to_json(t, k));
  return out;
}

inline Tokens tokens_from_json(const json& j) {
  if (!j.is_array()) bad("a token list is a JSON array");
  Tokens out;
  for (const auto& t : j) out.push_back(token_from_json(t));
  return out;
}

/// "abba" when k <= 26, otherwise an array of letter numbers.
inline json word_to_json(const Word& w, std::uint32_t k) {
  if (k <= 26) return render(w);
  return json(w);
}

inline Word word_from_json(const json& j) {
  if (j.is_string()) return parse_word(j.get<std::string>());
  if (!j.is_array()) bad("a word is a string or an array of letters");
  Word w;
  for (const auto& a : j) w.push_back(static_cast<Letter>(nat(a, "letter")));
  return w;
}

// ---- structures ------------------------------------------------------------

inline json generator_to_json(const VariableWord& w) {
  return {{"alphabet_size", w.alphabet().size()}, {"generator", tokens_to_json(w.tokens(), w.alphabet().size())}};
}

inline VariableWord generator_from_json(const json& j) {
  const Nat k = nat_field(j, "alphabet_size");
  if (k == 0 || k > std::numeric_limits<std::uint32_t>::max()) bad("alphabet_size out of range");
  return make_variable_word(tokens_from_json(field(j, "generator")), Alphabet(static_cast<std::uint32_t>(k)));
}

inline json to_json(const CombinatorialSpace& s) { return generator_to_json(s.generator); }
inline json to_json(const OVWTree& t) { return generator_to_json(t.generator); }
inline CombinatorialSpace space_from_json(const json& j) { return {generator_from_json(j)}; }
inline OVWTree tree_from_json(const json& j) { return {generator_from_json(j)}; }

// ---- colorings -------------------------------------------------------------

inline json to_json(const Coloring& f, std::uint32_t k = 26) {
  json j{{"l", f.colors()}, {"kind", std::string(to_string(f.kind()))}};
  switch (f.kind()) {
    case Coloring::Kind::table: {
      json entries = json::array();
      for (const auto& [w, c] : f.entries()) entries.push_back(json::array({word_to_json(w, k), c}));
      j["entries"] = std::move(entries);
      if (f.fallback()) j["default"] = *f.fallback();
      break;
    }
    case Coloring::Kind::length_mod: j["modulus"] = f.modulus(); break;
    case Coloring::Kind::letter_count_mod:
      j["letter"] = f.letter();
      j["modulus"] = f.modulus();
      break;
    case Coloring::Kind::poly_hash: j["seed"] = f.seed(); break;
  }
  return j;
}

inline Coloring coloring_from_json(const json& j) {
  const Nat l = nat_field(j, "l");
  const auto kind = string_field(j, "kind");
  if (kind == "table") {
    std::map<Word, Color> entries;
    const json& es = field(j, "entries");
    if (!es.is_array()) bad("entries must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() != 2) bad("a table entry is [word, color]");
      if (!entries.emplace(word_from_json(e[0]), nat(e[1], "color")).second) bad("duplicate table entry");
    }
    std::optional<Color> fallback;
    if (j.contains("default")) fallback = nat_field(j, "default");
    return Coloring::table(l, std::move(entries), fallback);
  }
  if (kind == "length_mod") return Coloring::length_mod(l, nat_field(j, "modulus"));
  if (kind == "letter_count_mod")
    return Coloring::letter_count_mod(l, static_cast<Letter>(nat_field(j, "letter")), nat_field(j, "modulus"));
  if (kind == "poly_hash") return Coloring::poly_hash(l, nat_field(j, "seed"));
  bad("unknown coloring kind '" + kind + "'");
}

inline json to_json(const SubstructureColoring& g, std::uint32_t k = 26) {
  json j{{"l", g.colors()}, {"kind", std::string(to_string(g.kind()))}};
  if (g.kind() == SubstructureColoring::Kind::constant) j["value"] = g.value();
  if (g.kind() == SubstructureColoring::Kind::table) {
    json entries = json::array();
    for (const auto& [t, c] : g.entries()) entries.push_back(json::array({tokens_to_json(t, k), c}));
    j["entries"] = std::move(entries);
  }
  return j;
}

inline SubstructureColoring substructure_coloring_from_json(const json& j) {
  const Nat l = nat_field(j, "l");
  const auto kind = string_field(j, "kind");
  if (kind == "constant") return SubstructureColoring::constant(l, nat_field(j, "value"));
  if (kind == "occurrence_parity") return SubstructureColoring::occurrence_parity(l);
  if (kind == "table") {
    std::map<Tokens, Color> entries;
    const json& es = field(j, "entries");
    if (!es.is_array()) bad("entries must be an array");
    for (const auto& e : es) {
      if (!e.is_array() || e.size() != 2) bad("a table entry is [generator, color]");
      if (!entries.emplace(tokens_from_json(e[0]), nat(e[1], "color")).second) bad("duplicate table entry");
    }
    return SubstructureColoring::table(l, std::move(entries));
  }
  bad("unknown subspace coloring kind '" + kind + "'");
}

// ---- predicates, sets, ordinals, witnesses --------------------------------

inline json to_json(const ThetaPredicate& t) {
  json j{{"kind", std::string(to_string(t.kind()))}, {"c", t.constant()}};
  if (t.kind() == ThetaPredicate::Kind::table) {
    j["bound"] = t.bound();
    j["fallback"] = t.fallback();
    json truths = json::array();
    for (const auto& tr : t.truths()) truths.push_back(json::array({tr[0], tr[1], tr[2]}));
    j["truths"] = std::move(truths);
  }
  return j;
}

inline ThetaPredicate theta_from_json(const json& j) {
  const auto kind = string_field(j, "kind");
  const Nat c = j.contains("c") ? nat_field(j, "c") : 0;
  if (kind == "top") return ThetaPredicate::top(c);
  if (kind == "greater_than" || kind == "gt") return ThetaPredicate::greater_than(c);
  if (kind == "power_gap") return ThetaPredicate::power_gap(c);
  if (kind == "table") {
    std::set<std::array<Nat, 3>> truths;
    const json& ts = field(j, "truths");
    if (!ts.is_array()) bad("truths must be an array");
    for (const auto& t : ts) {
      if (!t.is_array() || t.size() != 3) bad("a truth is a triple [x, y, z]");
      truths.insert({nat(t[0]), nat(t[1]), nat(t[2])});
    }
    return ThetaPredicate::table(nat_field(j, "bound"), std::move(truths), bool_field(j, "fallback"), c);
  }
  bad("unknown theta kind '" + kind + "'");
}

/// Command-line form: "top", "gt", "greater_than", "power_gap", optionally
/// followed by ":c", or a JSON object for tables.
inline ThetaPredicate parse_theta(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      bad(std::string("theta JSON: ") + e.what());
    }
    return theta_from_json(j);
  }
  std::string name(text.substr(0, text.find(':')));
  Nat c = 0;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    try {
      std::size_t used = 0;
      const std::string cs(text.substr(colon + 1));
      c = std::stoull(cs, &used);
      if (used != cs.size()) bad("bad theta constant in '" + std::string(text) + "'");
    } catch (const std::logic_error&) {
      bad("bad theta constant in '" + std::string(text) + "'");
    }
  }
  return theta_from_json(json{{"kind", name}, {"c", c}});
}

inline json to_json(const FinSet& s) { return json(s.elements()); }

inline FinSet finset_from_json(const json& j) {
  if (!j.is_array()) bad("a set is an array of naturals");
  std::vector<Nat> xs;
  for (const auto& x : j) xs.push_back(nat(x, "element"));
  return FinSet(std::move(xs));
}

inline json to_json(const OrdinalExpr& e) { return {{"exponent", e.exponent}, {"coefficient", e.coefficient}}; }

inline OrdinalExpr ordinal_from_json(const json& j) {
  return OrdinalExpr::make(nat_field(j, "exponent"), nat_field(j, "coefficient"));
}

inline std::string_view to_string(LargenessWitness::Rule r) {
  switch (r) {
    case LargenessWitness::Rule::nonempty: return "nonempty";
    case LargenessWitness::Rule::successor: return "successor";
    case LargenessWitness::Rule::blocks: return "blocks";
  }
  return "?";
}

inline json to_json(const LargenessWitness& w) {
  json children = json::array();
  for (const auto& c : w.children) children.push_back(to_json(c));
  return {{"rule", std::string(to_string(w.rule))},
          {"set", to_json(w.set)},
          {"ordinal", to_json(w.ordinal)},
          {"children", std::move(children)}};
}

inline LargenessWitness witness_from_json(const json& j, std::size_t depth = 0) {
  if (depth > 64) bad("witness nested too deeply");
  LargenessWitness w;
  const auto rule = string_field(j, "rule");
  if (rule == "nonempty") {
    w.rule = LargenessWitness::Rule::nonempty;
  } else if (rule == "successor") {
    w.rule = LargenessWitness::Rule::successor;
  } else if (rule == "blocks") {
    w.rule = LargenessWitness::Rule::blocks;
  } else {
    bad("unknown witness rule '" + rule + "'");
  }
  w.set = finset_from_json(field(j, "set"));
  w.ordinal = ordinal_from_json(field(j, "ordinal"));
  const json& cs = field(j, "children");
  if (!cs.is_array()) bad("children must be an array");
  for (const auto& c : cs) w.children.push_back(witness_from_json(c, depth + 1));
  return w;
}

inline json to_json(const BoundParams& p) { return {{"n0", p.n0}, {"n1", p.n1}}; }

inline BoundParams bound_params_from_json(const json& j) {
  BoundParams p{nat_field(j, "n0"), nat_field(j, "n1")};
  p.validate();
  return p;
}

inline json to_json(const BlockTrace& t) {
  return {{"block", to_json(t.block)},         {"chosen", to_json(t.chosen)},
          {"factors", t.factors},              {"width", t.width},
          {"width_bound", t.width_bound},      {"width_below_min", t.width_below_min}};
}

}  // namespace io
}  // namespace ovw
