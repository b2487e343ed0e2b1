#pragma once

// The ovw command line. run() is the whole program; tools/ovw_cli.cpp only
// forwards argv.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ovw/certificate.hpp"

namespace ovw::cli {

inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kError = 2;

namespace detail {

/// A JSON literal, or the path of a file holding one.
inline json load_json(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool literal = first != std::string::npos && std::string("{[\"").find(text[first]) != std::string::npos;
  if (!literal) {
    std::ifstream in(text);
    if (!in) fail(errc::invalid_argument, "cannot read '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    fail(errc::invalid_argument, std::string("bad JSON: ") + e.what());
  }
}

inline std::uint32_t infer_alphabet(const Tokens& tokens, const Word& extra = {}) {
  Letter top = 0;
  for (const auto& t : tokens)
    if (t.is_letter()) top = std::max(top, t.value + 1);
  for (Letter a : extra) top = std::max(top, a + 1);
  return std::max<std::uint32_t>(top, 1);
}

inline Word letters_from_text(const std::string& text) {
  const auto first = text.find_first_not_of(' ');
  if (first != std::string::npos && text[first] == '[') return io::word_from_json(load_json(text));
  return parse_word(text);
}

inline void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::invalid_argument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered variable words, combinatorial spaces and largeness"};
  app.name("ovw");
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  std::size_t point_budget = default_point_budget();
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool no_strict = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");
  app.add_option("--budget", point_budget, "Maximum number of materialized points");
  app.add_option("--threads", threads, "Worker threads for candidate scans");
  app.add_option("--seed", seed, "Seed for sampled checks");
  app.add_flag("--no-strict", no_strict, "Accept sets with min below max(4, c)");

  int code = kOk;
  auto emit = [&](const json& j) { out << j.dump(pretty ? 2 : -1) << "\n"; };
  auto config = [&](const ThetaPredicate& theta, BoundParams params = {}, std::size_t depth = 16) {
    RunConfig c;
    c.point_budget = point_budget;
    c.threads = threads;
    c.seed = seed;
    c.strict = !no_strict;
    c.theta = theta;
    c.params = params;
    c.max_depth = depth;
    return c;
  };
  auto search_opts = [&] { return SearchOptions{Budget{point_budget}, threads}; };

  // ---- word ----
  auto* word = app.add_subcommand("word", "Ordered variable words");
  word->require_subcommand(1);
  std::string word_text, letters_text, with_text;
  std::optional<std::uint32_t> word_k;
  std::size_t cut = 0;
  auto word_arg = [&](CLI::App* s) {
    s->add_option("--word", word_text, "JSON token array")->required();
    s->add_option("--k", word_k, "Alphabet size (default: largest letter + 1)");
  };
  auto parsed_word = [&](const Word& extra = {}) {
    const auto tokens = io::tokens_from_json(detail::load_json(word_text));
    return make_variable_word(tokens, Alphabet(word_k.value_or(detail::infer_alphabet(tokens, extra))));
  };

  auto* w_validate = word->add_subcommand("validate", "Check the ordering conditions");
  word_arg(w_validate);
  w_validate->callback([&] {
    const auto tokens = io::tokens_from_json(detail::load_json(word_text));
    try {
      const auto w = make_variable_word(tokens, Alphabet(word_k.value_or(detail::infer_alphabet(tokens))));
      emit({{"valid", true}, {"dimension", w.dimension()}, {"anchors", w.anchors()}, {"length", w.size()}});
    } catch (const error& e) {
      emit({{"valid", false}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      code = kFalse;
    }
  });

  auto* w_subst = word->add_subcommand("subst", "Substitute letters: w[u]");
  word_arg(w_subst);
  w_subst->add_option("--letters", letters_text, "Letters u, as text (\"ba\") or a JSON array");
  w_subst->callback([&] {
    const Word u = detail::letters_from_text(letters_text);
    const auto w = parsed_word(u);
    emit(io::word_to_json(substitute(w, u), w.alphabet().size()));
  });

  auto* w_compose = word->add_subcommand("compose", "Instantiate variables with a token array: w[v]");
  word_arg(w_compose);
  w_compose->add_option("--with", with_text, "JSON token array")->required();
  w_compose->callback([&] {
    const auto v = io::tokens_from_json(detail::load_json(with_text));
    Word used;
    for (const auto& t : v)
      if (t.is_letter()) used.push_back(t.value);
    const auto w = parsed_word(used);
    emit(io::generator_to_json(compose(w, v)));
  });

  auto* w_truncate = word->add_subcommand("truncate", "Cut before the first occurrence of x_j");
  word_arg(w_truncate);
  w_truncate->add_option("--j", cut, "Variable index")->required();
  w_truncate->callback([&] { emit(io::generator_to_json(truncate_before(parsed_word(), cut))); });

  // ---- space / tree ----
  std::string structure_text;
  std::size_t dim = 1;
  auto* space = app.add_subcommand("space", "Combinatorial spaces");
  space->require_subcommand(1);
  auto* s_points = space->add_subcommand("points", "All points, in lexicographic order of u");
  s_points->add_option("--structure", structure_text, "Structure JSON")->required();
  s_points->callback([&] {
    const auto s = io::space_from_json(detail::load_json(structure_text));
    json pts = json::array();
    for (const auto& p : space_points(s, {point_budget})) pts.push_back(io::word_to_json(p, s.alphabet().size()));
    emit(pts);
  });
  auto* s_subspaces = space->add_subcommand("subspaces", "All m-dimensional subspaces");
  s_subspaces->add_option("--structure", structure_text, "Structure JSON")->required();
  s_subspaces->add_option("--m", dim, "Dimension")->required();
  s_subspaces->callback([&] {
    const auto s = io::space_from_json(detail::load_json(structure_text));
    json subs = json::array();
    for (const auto& t : enumerate_subspaces(s, dim)) subs.push_back(io::to_json(t));
    emit(subs);
  });

  auto* tree = app.add_subcommand("tree", "OVW trees");
  tree->require_subcommand(1);
  auto* t_points = tree->add_subcommand("points", "All points, by |u| then lexicographically");
  t_points->add_option("--structure", structure_text, "Structure JSON")->required();
  t_points->callback([&] {
    const auto t = io::tree_from_json(detail::load_json(structure_text));
    json pts = json::array();
    for (const auto& p : tree_points(t, {point_budget})) pts.push_back(io::word_to_json(p, t.alphabet().size()));
    emit(pts);
  });
  auto* t_subtrees = tree->add_subcommand("subtrees", "All d-dimensional subtrees");
  t_subtrees->add_option("--structure", structure_text, "Structure JSON")->required();
  t_subtrees->add_option("--d", dim, "Dimension")->required();
  t_subtrees->callback([&] {
    const auto t = io::tree_from_json(detail::load_json(structure_text));
    json subs = json::array();
    for (const auto& s : enumerate_subtrees(t, dim, false, {point_budget})) subs.push_back(io::to_json(s));
    emit(subs);
  });

  // ---- ramsey ----
  std::string coloring_text, cert_path, strategy = "direct";
  std::size_t sub_m = 1;
  auto* ramsey = app.add_subcommand("ramsey", "Monochromatic substructure searches");
  ramsey->require_subcommand(1);
  auto structure_and_coloring = [&](CLI::App* s) {
    s->add_option("--structure", structure_text, "Structure JSON")->required();
    s->add_option("--coloring", coloring_text, "Coloring JSON")->required();
    s->add_option("--cert", cert_path, "Write a certificate here");
  };

  auto* r_hj = ramsey->add_subcommand("hj", "First monochromatic combinatorial line");
  structure_and_coloring(r_hj);
  r_hj->callback([&] {
    const auto s = io::space_from_json(detail::load_json(structure_text));
    const auto f = io::coloring_from_json(detail::load_json(coloring_text));
    const auto r = find_hj_line(s, f, search_opts());
    if (!r) {
      emit({{"found", false}});
      code = kFalse;
      return;
    }
    emit({{"found", true}, {"line", io::to_json(r->line)}, {"color", r->color}});
    if (!cert_path.empty()) detail::write_file(cert_path, hj_certificate(s, f, *r, config(ThetaPredicate::top())));
  });

  auto* r_gr = ramsey->add_subcommand("gr", "d-dimensional subspace with all m-subspaces one color");
  structure_and_coloring(r_gr);
  r_gr->add_option("--m", sub_m, "Dimension of the colored subspaces")->required();
  r_gr->add_option("--d", dim, "Dimension of the homogeneous subspace")->required();
  r_gr->callback([&] {
    const auto s = io::space_from_json(detail::load_json(structure_text));
    const auto g = io::substructure_coloring_from_json(detail::load_json(coloring_text));
    const auto r = find_gr_subspace(s, sub_m, dim, g, search_opts());
    if (!r) {
      emit({{"found", false}});
      code = kFalse;
      return;
    }
    emit({{"found", true}, {"subspace", io::to_json(r->space)}, {"color", r->color}});
    if (!cert_path.empty())
      detail::write_file(cert_path, gr_certificate(s, sub_m, dim, g, *r, config(ThetaPredicate::top())));
  });

  auto* r_cs = ramsey->add_subcommand("cs", "Homogeneous d-dimensional OVW subtree");
  structure_and_coloring(r_cs);
  r_cs->add_option("--d", dim, "Dimension of the subtree");
  r_cs->add_option("--strategy", strategy, "direct or via-gr")->check(CLI::IsMember({"direct", "via-gr"}));
  r_cs->callback([&] {
    const auto t = io::tree_from_json(detail::load_json(structure_text));
    const auto f = io::coloring_from_json(detail::load_json(coloring_text));
    const auto r =
        find_cs_subtree(t, dim, f, strategy == "direct" ? CSStrategy::direct : CSStrategy::via_gr, search_opts());
    if (!r) {
      emit({{"found", false}});
      code = kFalse;
      return;
    }
    emit({{"found", true}, {"subtree", io::to_json(r->tree)}, {"color", r->color}});
    if (!cert_path.empty()) detail::write_file(cert_path, cs_certificate(t, dim, f, *r, config(ThetaPredicate::top())));
  });

  std::uint32_t hj_k = 2;
  Color hj_l = 2;
  std::size_t hj_n = 1;
  bool backtrack = false;
  auto* r_hjv = ramsey->add_subcommand("hj-verify", "Does every l-coloring of [k]^n have a monochromatic line?");
  r_hjv->add_option("K", hj_k, "Alphabet size")->required();
  r_hjv->add_option("L", hj_l, "Number of colors")->required();
  r_hjv->add_option("N", hj_n, "Dimension")->required();
  r_hjv->add_flag("--backtrack", backtrack, "Backtracking search instead of enumeration");
  r_hjv->callback([&] {
    HJInstanceOptions o;
    o.mode = backtrack ? HJMode::backtrack : HJMode::automatic;
    o.budget = {point_budget};
    const auto r = verify_hj_instance(hj_k, hj_l, hj_n, o);
    json j{{"holds", r.holds},
           {"mode", r.mode == HJMode::exhaustive ? "exhaustive" : "backtrack"},
           {"nodes", r.nodes}};
    if (r.counterexample) j["counterexample"] = io::to_json(*r.counterexample, hj_k);
    emit(j);
    code = r.holds ? kOk : kFalse;
  });

  // ---- large ----
  std::string set_text, ordinal_text, theta_text = "top", y_text, schedule_text;
  Nat na = 0, nb = 1, nn = 0, start = 4;
  std::size_t cap = 12, max_elements = 1024;
  bool sparse_flag = false;
  auto* lg = app.add_subcommand("large", "The largeness calculus");
  lg->require_subcommand(1);
  auto theta_opt = [&](CLI::App* s) { s->add_option("--theta", theta_text, "top, gt, power_gap[:c] or table JSON"); };
  auto theta = [&] { return io::parse_theta(theta_text); };
  auto lopts = [&] { return LargenessOptions{.strict = !no_strict}; };
  auto set_of = [&](const std::string& t) { return parse_finset(t); };

  auto* l_check = lg->add_subcommand("check", "Is X e-large(theta)? With a witness");
  l_check->add_option("--set", set_text, "Comma-separated naturals")->required();
  l_check->add_option("--ordinal", ordinal_text, "w^n or w^n*k")->required();
  l_check->add_option("--cert", cert_path, "Write a certificate here");
  theta_opt(l_check);
  l_check->callback([&] {
    const auto x = set_of(set_text);
    const auto e = parse_ordinal(ordinal_text);
    const auto th = theta();
    const auto r = is_large(x, e, th, lopts());
    json j{{"large", r.large}};
    if (r.witness) j["witness"] = io::to_json(*r.witness);
    emit(j);
    if (!cert_path.empty()) detail::write_file(cert_path, largeness_certificate(x, e, r, config(th)));
    code = r.large ? kOk : kFalse;
  });

  auto* l_brute = lg->add_subcommand("bruteforce", "Largeness by exhaustive search (small sets)");
  l_brute->add_option("--set", set_text, "Comma-separated naturals")->required();
  l_brute->add_option("--ordinal", ordinal_text, "w^n or w^n*k")->required();
  l_brute->add_option("--cap", cap, "Largest set size accepted");
  theta_opt(l_brute);
  l_brute->callback([&] {
    const bool r = is_large_bruteforce(set_of(set_text), parse_ordinal(ordinal_text), theta(), cap);
    emit({{"large", r}});
    code = r ? kOk : kFalse;
  });

  auto* l_sparse = lg->add_subcommand("sparse", "Is x^(x^x) < y for all x < y in X?");
  l_sparse->add_option("--set", set_text, "Comma-separated naturals")->required();
  l_sparse->callback([&] {
    const bool r = is_sparse(set_of(set_text));
    emit({{"sparse", r}});
    code = r ? kOk : kFalse;
  });

  auto* l_split = lg->add_subcommand("split", "Split into apart w^a-large blocks with w^b-large transversals");
  l_split->add_option("--set", set_text, "Comma-separated naturals")->required();
  l_split->add_option("--a", na, "Block exponent");
  l_split->add_option("--b", nb, "Transversal exponent");
  l_split->add_option("--cert", cert_path, "Write a certificate here");
  theta_opt(l_split);
  l_split->callback([&] {
    const auto x = set_of(set_text);
    const auto th = theta();
    const auto blocks = split_large(x, na, nb, th, lopts());
    json bs = json::array();
    for (const auto& b : blocks) bs.push_back(io::to_json(b));
    emit({{"blocks", bs}});
    if (!cert_path.empty()) detail::write_file(cert_path, split_certificate(x, na, nb, blocks, config(th)));
  });

  auto* l_subset = lg->add_subcommand("sparse-subset", "A sparse w^n-large subset");
  l_subset->add_option("--set", set_text, "Comma-separated naturals")->required();
  l_subset->add_option("--n", nn, "Exponent");
  l_subset->add_option("--cert", cert_path, "Write a certificate here");
  theta_opt(l_subset);
  l_subset->callback([&] {
    const auto x = set_of(set_text);
    const auto th = theta();
    const auto y = sparse_subset(x, nn, th, lopts());
    emit({{"subset", io::to_json(y)}});
    if (!cert_path.empty()) detail::write_file(cert_path, sparse_subset_certificate(x, nn, y, config(th)));
  });

  auto* l_gen = lg->add_subcommand("generate", "Shortest accepted prefix of a growth schedule");
  l_gen->add_option("--ordinal", ordinal_text, "w^n or w^n*k")->required();
  l_gen->add_option("--start", start, "First element");
  l_gen->add_flag("--sparse", sparse_flag, "Tower schedule; result is sparse");
  l_gen->add_option("--schedule", schedule_text, "consecutive, doubling, power_gap or tower")
      ->check(CLI::IsMember({"consecutive", "doubling", "power_gap", "tower"}));
  l_gen->add_option("--max-elements", max_elements, "Longest candidate tried");
  theta_opt(l_gen);
  l_gen->callback([&] {
    GenerateOptions o;
    o.largeness = lopts();
    o.max_elements = max_elements;
    if (schedule_text == "consecutive") o.schedule = Schedule::consecutive;
    if (schedule_text == "doubling") o.schedule = Schedule::doubling;
    if (schedule_text == "power_gap") o.schedule = Schedule::power_gap;
    if (schedule_text == "tower") o.schedule = Schedule::tower;
    const auto x = generate_large(parse_ordinal(ordinal_text), theta(), start, sparse_flag, o);
    emit({{"set", io::to_json(x)}, {"size", x.size()}});
  });

  auto* l_apart = lg->add_subcommand("apart", "Is X theta-apart from Y?");
  l_apart->add_option("--x", set_text, "Comma-separated naturals")->required();
  l_apart->add_option("--y", y_text, "Comma-separated naturals")->required();
  l_apart->add_option("--cert", cert_path, "Write a certificate here");
  theta_opt(l_apart);
  l_apart->callback([&] {
    const auto x = set_of(set_text);
    const auto y = set_of(y_text);
    const auto th = theta();
    const bool r = theta_apart(x, y, th);
    emit({{"apart", r}});
    if (!cert_path.empty()) detail::write_file(cert_path, apartness_certificate(x, y, r, config(th)));
    code = r ? kOk : kFalse;
  });

  // ---- pipeline ----
  Nat pb = 1, pr = 0, n0 = 1, n1 = 1;
  std::string mode_text = "ind";
  bool relax = false;
  std::size_t max_depth = 16;
  auto* pipe = app.add_subcommand("pipeline", "Homogeneous substructures with large anchor sets");
  pipe->require_subcommand(1);
  auto pipe_common = [&](CLI::App* s) {
    structure_and_coloring(s);
    theta_opt(s);
    s->add_flag("--relax", relax, "Skip preconditions and search block partitions");
    s->add_option("--n0", n0, "HJ size parameter");
    s->add_option("--n1", n1, "Base exponent of the OVW recursion");
    s->add_option("--max-depth", max_depth, "Largest recursion nesting allowed");
  };
  auto pipe_opts = [&] {
    PipelineOptions o;
    o.relax = relax;
    o.budget = {point_budget};
    o.max_depth = max_depth;
    return o;
  };
  auto homog_json = [&](const LargeHomogResult& r) {
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back(io::to_json(t));
    json j{{"y", io::to_json(r.y)},
           {"target", io::to_json(r.target)},
           {"color", r.color},
           {"witness", io::to_json(r.witness)},
           {"trace", trace},
           {"warnings", r.warnings}};
    if (r.space) j["space"] = io::to_json(*r.space);
    if (r.tree) j["tree"] = io::to_json(*r.tree);
    return j;
  };

  auto* p_gr = pipe->add_subcommand("gr-large", "Homogeneous subspace with a w^b-large anchor set");
  pipe_common(p_gr);
  p_gr->add_option("--b", pb, "Target exponent");
  p_gr->callback([&] {
    const auto s = io::space_from_json(detail::load_json(structure_text));
    const auto f = io::coloring_from_json(detail::load_json(coloring_text));
    const auto th = theta();
    const BoundParams params{n0, n1};
    const auto r = find_large_homog_subspace(s, f, th, pb, params, pipe_opts());
    emit(homog_json(r));
    if (!cert_path.empty())
      detail::write_file(cert_path, large_homog_certificate(s.generator, false, f, r, config(th, params, max_depth)));
  });

  auto* p_ovw = pipe->add_subcommand("ovw-large", "Homogeneous OVW subtree with a large anchor set");
  pipe_common(p_ovw);
  p_ovw->add_option("--r", pr, "Recursion level");
  p_ovw->add_option("--mode", mode_text, "preind or ind")->check(CLI::IsMember({"preind", "ind"}));
  p_ovw->callback([&] {
    const auto t = io::tree_from_json(detail::load_json(structure_text));
    const auto f = io::coloring_from_json(detail::load_json(coloring_text));
    const auto th = theta();
    const BoundParams params{n0, n1};
    const auto r = find_large_homog_ovw_subtree(t, f, th, pr, mode_text == "ind" ? OVWMode::ind : OVWMode::pre_ind,
                                                params, pipe_opts());
    emit(homog_json(r));
    if (!cert_path.empty())
      detail::write_file(cert_path, large_homog_certificate(t.generator, true, f, r, config(th, params, max_depth)));
  });

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "Exponent bookkeeping");
  bounds->require_subcommand(1);
  auto* b_ovw = bounds->add_subcommand("ovw", "p(0) = n1, p(b+1) = 4 p(b) + 3 n0 + 8");
  b_ovw->add_option("--b", pb, "Level")->required();
  b_ovw->add_option("--n0", n0, "HJ size parameter");
  b_ovw->add_option("--n1", n1, "Base exponent");
  b_ovw->callback([&] { emit({{"exponent", ovw_exponent(pb, BoundParams{n0, n1})}}); });

  std::uint32_t k_max = 3;
  Color l_max = 3;
  std::size_t n_max = 3;
  auto* b_cal = bounds->add_subcommand("calibrate", "Small HJ thresholds and the n0 they suggest");
  b_cal->add_option("--k-max", k_max, "Largest alphabet");
  b_cal->add_option("--l-max", l_max, "Largest color count");
  b_cal->add_option("--n-max", n_max, "Largest dimension tried");
  b_cal->add_option("--start", start, "Start of the generated sets");
  b_cal->callback([&] {
    const auto c = calibrate_n0(k_max, l_max, n_max, start);
    json entries = json::array();
    for (const auto& e : c.entries) {
      json je{{"k", e.k}, {"l", e.l}, {"budget_hit", e.budget_hit}};
      je["threshold"] = e.threshold ? json(*e.threshold) : json(nullptr);
      entries.push_back(je);
    }
    emit({{"entries", entries},
          {"n0", c.n0 ? json(*c.n0) : json(nullptr)},
          {"generated_sizes", c.generated_sizes}});
    code = c.n0 ? kOk : kFalse;
  });

  // ---- verify ----
  std::vector<std::string> cert_files;
  auto* verify = app.add_subcommand("verify", "Re-check certificates");
  verify->add_option("CERT", cert_files, "Certificate files")->required();
  verify->callback([&] {
    json results = json::array();
    bool all_ok = true, malformed = false;
    for (const auto& path : cert_files) {
      json entry{{"file", path}};
      try {
        const auto rep = verify_certificate(detail::load_json(path));
        json checks = json::object();
        for (const auto& c : rep.checks) checks[c.name] = c.passed;
        entry["kind"] = rep.kind;
        entry["checks"] = checks;
        entry["ok"] = rep.ok();
        all_ok = all_ok && rep.ok();
      } catch (const error& e) {
        entry["ok"] = false;
        entry["error"] = e.what();
        malformed = true;
      }
      results.push_back(entry);
    }
    emit({{"ok", all_ok && !malformed}, {"results", results}});
    code = malformed ? kError : all_ok ? kOk : kFalse;
  });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kOk : kError;
  } catch (const error& e) {
    err << "ovw: " << e.what() << "\n";
    return kError;
  } catch (const json::exception& e) {
    err << "ovw: " << e.what() << "\n";
    return kError;
  }
  return code;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace ovw::cli
