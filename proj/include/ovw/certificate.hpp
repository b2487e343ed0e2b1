#pragma once

// Self-contained certificates and their verifier. The verifier decodes the
// inputs and the witness and re-runs the listed checks with evaluators only:
// substitution, point enumeration, verify_homogeneous and the largeness
// checker. It never calls a search.

#include <cstdio>
#include <string>
#include <vector>

#include "ovw/io.hpp"
#include "ovw/ramsey.hpp"

namespace ovw {

inline constexpr std::string_view kCertificateSchema = "v1";

/// Everything a run depends on besides its explicit inputs.
struct RunConfig {
  std::size_t point_budget = default_point_budget();
  std::uint64_t coloring_budget = std::uint64_t{1} << 24;
  std::size_t max_depth = 16;
  bool strict = true;
  ThetaPredicate theta = ThetaPredicate::top();
  BoundParams params;
  unsigned threads = 1;
  std::uint64_t seed = 0;

  Budget budget() const { return {point_budget}; }
  bool operator==(const RunConfig&) const = default;
};

namespace io {

inline json to_json(const RunConfig& c) {
  return {{"point_budget", c.point_budget}, {"coloring_budget", c.coloring_budget},
          {"max_depth", c.max_depth},       {"strict", c.strict},
          {"theta", to_json(c.theta)},      {"params", to_json(c.params)},
          {"threads", c.threads},           {"seed", c.seed}};
}

inline RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  c.point_budget = nat_field(j, "point_budget");
  c.coloring_budget = nat_field(j, "coloring_budget");
  c.max_depth = nat_field(j, "max_depth");
  c.strict = bool_field(j, "strict");
  c.theta = theta_from_json(field(j, "theta"));
  c.params = bound_params_from_json(field(j, "params"));
  c.threads = static_cast<unsigned>(nat_field(j, "threads"));
  c.seed = nat_field(j, "seed");
  return c;
}

}  // namespace io

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Digest of the compact, key-sorted dump of the inputs.
inline std::string inputs_digest(const json& inputs) { return hex64(fnv1a64(inputs.dump())); }

namespace cert {

inline constexpr std::string_view kHJLine = "HJLine";
inline constexpr std::string_view kGRSubspace = "GRSubspace";
inline constexpr std::string_view kCSSubtree = "CSSubtree";
inline constexpr std::string_view kLargeness = "Largeness";
inline constexpr std::string_view kApartness = "Apartness";
inline constexpr std::string_view kSplitLargeness = "SplitLargeness";
inline constexpr std::string_view kSparseSubset = "SparseSubset";
inline constexpr std::string_view kLargeHomog = "LargeHomog";

inline const std::vector<std::string_view>& kinds() {
  static const std::vector<std::string_view> all{kHJLine,         kGRSubspace,    kCSSubtree,  kLargeness,
                                                 kApartness,      kSplitLargeness, kSparseSubset, kLargeHomog};
  return all;
}

// The checks a certificate of this kind must list, in order.
inline std::vector<std::string> required_checks(std::string_view kind, const json& witness) {
  if (kind == kHJLine || kind == kGRSubspace || kind == kCSSubtree) return {"dimension", "contained", "homogeneous"};
  if (kind == kLargeness) {
    if (witness.is_object() && witness.value("large", false)) return {"verdict", "root", "witness"};
    return {"verdict"};
  }
  if (kind == kApartness) return {"verdict"};
  if (kind == kSplitLargeness) return {"partition", "apart", "blocks_large", "transversals_large"};
  if (kind == kSparseSubset) return {"subset", "sparse", "large"};
  if (kind == kLargeHomog) return {"anchors", "contained", "homogeneous", "large", "witness"};
  fail(errc::malformed_certificate, "unknown certificate kind '" + std::string(kind) + "'");
}

}  // namespace cert

inline json make_certificate(std::string_view kind, json inputs, json witness) {
  json c;
  c["schema"] = std::string(kCertificateSchema);
  c["kind"] = std::string(kind);
  c["digest"] = inputs_digest(inputs);
  c["checks"] = cert::required_checks(kind, witness);
  c["inputs"] = std::move(inputs);
  c["witness"] = std::move(witness);
  return c;
}

// ---- emitters ---------------------------------------------------------------

inline json hj_certificate(const CombinatorialSpace& s, const Coloring& f, const LineResult& r,
                           const RunConfig& cfg) {
  const auto k = s.alphabet().size();
  return make_certificate(cert::kHJLine,
                          {{"space", io::to_json(s)}, {"coloring", io::to_json(f, k)}, {"config", io::to_json(cfg)}},
                          {{"line", io::to_json(r.line)}, {"color", r.color}});
}

inline json gr_certificate(const CombinatorialSpace& s, std::size_t m, std::size_t d, const SubstructureColoring& g,
                           const GRResult& r, const RunConfig& cfg) {
  const auto k = s.alphabet().size();
  return make_certificate(cert::kGRSubspace,
                          {{"space", io::to_json(s)},
                           {"m", m},
                           {"d", d},
                           {"coloring", io::to_json(g, k)},
                           {"config", io::to_json(cfg)}},
                          {{"subspace", io::to_json(r.space)}, {"color", r.color}});
}

inline json cs_certificate(const OVWTree& t, std::size_t d, const Coloring& f, const CSResult& r,
                           const RunConfig& cfg) {
  const auto k = t.alphabet().size();
  return make_certificate(
      cert::kCSSubtree,
      {{"tree", io::to_json(t)}, {"d", d}, {"coloring", io::to_json(f, k)}, {"config", io::to_json(cfg)}},
      {{"subtree", io::to_json(r.tree)}, {"color", r.color}});
}

inline json largeness_certificate(const FinSet& x, OrdinalExpr e, const LargenessResult& r, const RunConfig& cfg) {
  json witness{{"large", r.large}};
  if (r.large && r.witness) witness["proof"] = io::to_json(*r.witness);
  return make_certificate(cert::kLargeness,
                          {{"set", io::to_json(x)}, {"ordinal", io::to_json(e)}, {"config", io::to_json(cfg)}},
                          std::move(witness));
}

inline json apartness_certificate(const FinSet& x, const FinSet& y, bool apart, const RunConfig& cfg) {
  return make_certificate(cert::kApartness,
                          {{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"config", io::to_json(cfg)}},
                          {{"apart", apart}});
}

inline json split_certificate(const FinSet& x, Nat a, Nat b, const std::vector<FinSet>& blocks, const RunConfig& cfg) {
  json bs = json::array();
  for (const auto& blk : blocks) bs.push_back(io::to_json(blk));
  return make_certificate(cert::kSplitLargeness,
                          {{"set", io::to_json(x)}, {"a", a}, {"b", b}, {"config", io::to_json(cfg)}},
                          {{"blocks", std::move(bs)}});
}

inline json sparse_subset_certificate(const FinSet& x, Nat n, const FinSet& y, const RunConfig& cfg) {
  return make_certificate(cert::kSparseSubset,
                          {{"set", io::to_json(x)}, {"n", n}, {"config", io::to_json(cfg)}},
                          {{"subset", io::to_json(y)}});
}

/// The structure is the input space (GR pipeline) or tree (OVW pipeline).
inline json large_homog_certificate(const VariableWord& input, bool tree, const Coloring& f,
                                    const LargeHomogResult& r, const RunConfig& cfg) {
  const auto k = input.alphabet().size();
  json structure = io::generator_to_json(tree ? r.tree->generator : r.space->generator);
  json trace = json::array();
  for (const auto& t : r.trace) trace.push_back(io::to_json(t));
  return make_certificate(cert::kLargeHomog,
                          {{"structure", io::generator_to_json(input)},
                           {"structure_kind", tree ? "tree" : "space"},
                           {"coloring", io::to_json(f, k)},
                           {"target", io::to_json(r.target)},
                           {"config", io::to_json(cfg)}},
                          {{"y", io::to_json(r.y)},
                           {"structure", std::move(structure)},
                           {"color", r.color},
                           {"proof", io::to_json(r.witness)},
                           {"trace", std::move(trace)}});
}

// ---- verifier -----------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = false;
};

struct VerifyReport {
  std::string kind;
  std::vector<CheckResult> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

namespace detail {

template <typename Structure>
bool structure_is_homogeneous(const Structure& s, const Coloring& f, Color claimed, const Budget& budget) {
  if (claimed >= f.colors()) return false;
  const auto pts = canonical_points(s, budget);
  for (const auto& p : pts)
    if (f(p) != claimed) return false;
  return true;
}

inline bool root_matches(const LargenessWitness& w, const FinSet& x, OrdinalExpr e) {
  return w.set == x && w.ordinal == e;
}

inline std::vector<CheckResult> run_checks(std::string_view kind, const json& in, const json& wit,
                                           const RunConfig& cfg) {
  using namespace io;
  const Budget budget = cfg.budget();
  const ThetaPredicate& theta = cfg.theta;
  const LargenessOptions lopts{.strict = cfg.strict};
  std::vector<CheckResult> out;
  auto add = [&](const char* name, bool ok) { out.push_back({name, ok}); };

  if (kind == cert::kHJLine) {
    const auto s = space_from_json(field(in, "space"));
    const auto f = coloring_from_json(field(in, "coloring"));
    const auto line = space_from_json(field(wit, "line"));
    const Color c = nat_field(wit, "color");
    add("dimension", line.dimension() == 1);
    add("contained", line.alphabet() == s.alphabet() && is_substructure(line, s, budget));
    add("homogeneous", structure_is_homogeneous(line, f, c, budget));
  } else if (kind == cert::kGRSubspace) {
    const auto s = space_from_json(field(in, "space"));
    const std::size_t m = nat_field(in, "m");
    const std::size_t d = nat_field(in, "d");
    const auto g = substructure_coloring_from_json(field(in, "coloring"));
    const auto sub = space_from_json(field(wit, "subspace"));
    const Color c = nat_field(wit, "color");
    const bool dim_ok = sub.dimension() == d && m >= 1 && m <= d;
    add("dimension", dim_ok);
    add("contained", sub.alphabet() == s.alphabet() && is_substructure(sub, s, budget));
    bool homog = dim_ok && c < g.colors();
    if (homog)
      for_each_subspace(sub, m, [&](const CombinatorialSpace& t) {
        homog = g(t.generator) == c;
        return homog;
      });
    add("homogeneous", homog);
  } else if (kind == cert::kCSSubtree) {
    const auto t = tree_from_json(field(in, "tree"));
    const std::size_t d = nat_field(in, "d");
    const auto f = coloring_from_json(field(in, "coloring"));
    const auto sub = tree_from_json(field(wit, "subtree"));
    const Color c = nat_field(wit, "color");
    add("dimension", sub.dimension() == d);
    add("contained", sub.alphabet() == t.alphabet() && is_substructure(sub, t, budget));
    add("homogeneous", structure_is_homogeneous(sub, f, c, budget));
  } else if (kind == cert::kLargeness) {
    const auto x = finset_from_json(field(in, "set"));
    const auto e = ordinal_from_json(field(in, "ordinal"));
    const bool claimed = bool_field(wit, "large");
    add("verdict", is_large(x, e, theta, lopts).large == claimed);
    if (claimed) {
      const auto w = witness_from_json(field(wit, "proof"));
      add("root", root_matches(w, x, e));
      add("witness", verify_witness(w, theta));
    }
  } else if (kind == cert::kApartness) {
    const auto x = finset_from_json(field(in, "x"));
    const auto y = finset_from_json(field(in, "y"));
    const bool claimed = bool_field(wit, "apart");
    bool actual = false;
    try {
      actual = theta_apart(x, y, theta);
    } catch (const error& e) {
      if (e.code() != errc::not_separated && e.code() != errc::empty_set) throw;
    }
    add("verdict", actual == claimed);
  } else if (kind == cert::kSplitLargeness) {
    const auto x = finset_from_json(field(in, "set"));
    const Nat a = nat_field(in, "a");
    const Nat b = nat_field(in, "b");
    std::vector<FinSet> blocks;
    const json& bs = field(wit, "blocks");
    if (!bs.is_array()) bad("blocks must be an array");
    for (const auto& blk : bs) blocks.push_back(finset_from_json(blk));
    bool inside = !blocks.empty();
    for (const auto& blk : blocks) inside = inside && !blk.empty() && blk.subset_of(x);
    const auto sc = inside ? check_split(x, blocks, a, b, theta, cfg.seed) : SplitCheck{};
    add("partition", inside && sc.ordered);
    add("apart", inside && sc.pairwise_apart);
    add("blocks_large", inside && sc.blocks_large);
    add("transversals_large", inside && sc.transversals_large);
  } else if (kind == cert::kSparseSubset) {
    const auto x = finset_from_json(field(in, "set"));
    const Nat n = nat_field(in, "n");
    const auto y = finset_from_json(field(wit, "subset"));
    add("subset", !y.empty() && y.subset_of(x));
    add("sparse", is_sparse(y));
    add("large", !y.empty() && large(y, {n, 1}, theta, {.strict = false}));
  } else if (kind == cert::kLargeHomog) {
    const auto input = generator_from_json(field(in, "structure"));
    const auto sk = string_field(in, "structure_kind");
    if (sk != "tree" && sk != "space") bad("structure_kind must be tree or space");
    const bool is_tree = sk == "tree";
    const auto f = coloring_from_json(field(in, "coloring"));
    const auto target = ordinal_from_json(field(in, "target"));
    const auto y = finset_from_json(field(wit, "y"));
    const auto sub = generator_from_json(field(wit, "structure"));
    const Color c = nat_field(wit, "color");
    const auto w = witness_from_json(field(wit, "proof"));
    add("anchors", ovw::detail::anchor_set(sub) == y);
    const bool same_alphabet = sub.alphabet() == input.alphabet();
    if (is_tree) {
      add("contained", same_alphabet && is_substructure(OVWTree{sub}, OVWTree{input}, budget));
      add("homogeneous", structure_is_homogeneous(OVWTree{sub}, f, c, budget));
    } else {
      add("contained", same_alphabet && is_substructure(CombinatorialSpace{sub}, CombinatorialSpace{input}, budget));
      add("homogeneous", structure_is_homogeneous(CombinatorialSpace{sub}, f, c, budget));
    }
    add("large", !y.empty() && large(y, target, theta, {.strict = false}));
    add("witness", root_matches(w, y, target) && verify_witness(w, theta));
  }
  return out;
}

}  // namespace detail

/// Raises MalformedCertificate on schema, digest or decoding problems;
/// otherwise reports every listed check.
inline VerifyReport verify_certificate(const json& c) {
  auto malformed = [](const std::string& what) -> VerifyReport { fail(errc::malformed_certificate, what); };
  if (!c.is_object()) return malformed("a certificate is a JSON object");
  try {
    if (io::string_field(c, "schema") != kCertificateSchema) return malformed("unsupported schema");
    for (const auto& [key, _] : c.items())
      if (key != "schema" && key != "kind" && key != "digest" && key != "checks" && key != "inputs" && key != "witness")
        return malformed("unexpected field '" + key + "'");
    const auto kind = io::string_field(c, "kind");
    const json& inputs = io::field(c, "inputs");
    const json& witness = io::field(c, "witness");
    if (io::string_field(c, "digest") != inputs_digest(inputs)) return malformed("input digest mismatch");
    const auto required = cert::required_checks(kind, witness);
    const json& listed = io::field(c, "checks");
    if (listed != json(required)) return malformed("check list does not match the certificate kind");
    const RunConfig cfg = io::run_config_from_json(io::field(inputs, "config"));
    VerifyReport report;
    report.kind = kind;
    report.checks = detail::run_checks(kind, inputs, witness, cfg);
    if (report.checks.size() != required.size()) return malformed("check list does not match the certificate kind");
    return report;
  } catch (const error& e) {
    if (e.code() == errc::malformed_certificate || e.code() == errc::budget_exceeded) throw;
    return malformed(e.what());
  } catch (const json::exception& e) {
    return malformed(e.what());
  }
}

}  // namespace ovw
