#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilaffine/io/json_io.hpp"
#include "nilaffine/liealg/series.hpp"
#include "nilaffine/obstruction/obstruct.hpp"

namespace nilaffine::cli {

using io::json;

/// Process exit codes.
enum ExitCode : int { kPass = 0, kFail = 1, kUndetermined = 2, kInputError = 3 };

struct CommandResult {
  int exit_code = kPass;
  json doc;
  std::string text;
};

namespace detail {

inline std::string pos1(std::size_t i) { return std::to_string(i + 1); }

inline std::string vec_str(const ScalarVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline json dims_json(const std::vector<ScalarSubspace>& series) {
  json out = json::array();
  for (const auto& s : series) out.push_back(s.dim());
  return out;
}

inline std::string dims_str(const std::vector<ScalarSubspace>& series) {
  std::string s;
  for (const auto& x : series) s += (s.empty() ? "" : " ") + std::to_string(x.dim());
  return s;
}

inline json flag_json(const Flag<Scalar>& flag) {
  json out = json::array();
  for (const auto& v : flag.basis) out.push_back(io::vector_to_json(v));
  return out;
}

inline std::string flag_str(const Flag<Scalar>& flag) {
  std::string s;
  for (const auto& v : flag.basis) s += "    " + vec_str(v) + "\n";
  return s;
}

inline json equation_json(const EquationRef& ref) {
  if (ref.kind == EquationRef::Kind::Translation)
    return {{"kind", "translation"}, {"pair", {ref.i + 1, ref.j + 1}}, {"coordinate", ref.row + 1}};
  return {{"kind", "commutator"}, {"pair", {ref.i + 1, ref.j + 1}}, {"entry", {ref.row + 1, ref.col + 1}}};
}

inline std::string equation_str(const EquationRef& ref) {
  if (ref.kind == EquationRef::Kind::Translation)
    return "coordinate " + pos1(ref.row) + " of [X" + pos1(ref.i) + ",X" + pos1(ref.j) + "] + D" + pos1(ref.i) + "(X" + pos1(ref.j) +
           ") - D" + pos1(ref.j) + "(X" + pos1(ref.i) + ")";
  return "entry (" + pos1(ref.row) + "," + pos1(ref.col) + ") of [D" + pos1(ref.i) + ",D" + pos1(ref.j) + "]";
}

}  // namespace detail

// ---- commands ----------------------------------------------------------------------

inline CommandResult check_lie_cmd(const LieAlgebra& l) {
  CommandResult r;
  auto jac = check_jacobi(l);
  json violations = json::array();
  std::ostringstream text;
  text << "algebra " << l.name() << " (dim " << l.dim() << ")\n";
  text << "Jacobi identity: " << (jac.ok() ? "pass" : "FAIL") << "\n";
  for (const auto& v : jac.violations) {
    violations.push_back({{"triple", {v.i + 1, v.j + 1, v.k + 1}}, {"residual", io::vector_to_json(v.residual)}});
    text << "  Jac(" << v.i + 1 << "," << v.j + 1 << "," << v.k + 1 << ") = " << detail::vec_str(v.residual) << "\n";
  }
  r.doc = {{"command", "check-lie"}, {"algebra", l.name()}, {"dim", l.dim()},
           {"jacobi", {{"ok", jac.ok()}, {"violations", violations}}}};
  if (jac.ok()) {
    auto lcs = lower_central_series(l);
    auto ds = derived_series(l);
    bool nil = lcs.back().dim() == 0;
    bool metabelian = is_two_step_solvable(l);
    r.doc["nilpotent"] = nil;
    r.doc["two_step_solvable"] = metabelian;
    r.doc["lower_central_series_dims"] = detail::dims_json(lcs);
    r.doc["derived_series_dims"] = detail::dims_json(ds);
    r.doc["center_dim"] = center(l).dim();
    text << "nilpotent: " << (nil ? "yes" : "no") << "\n";
    text << "two-step solvable: " << (metabelian ? "yes" : "no") << "\n";
    text << "lower central series dims: " << detail::dims_str(lcs) << "\n";
    text << "derived series dims: " << detail::dims_str(ds) << "\n";
    text << "center dim: " << center(l).dim() << "\n";
  }
  r.exit_code = jac.ok() ? kPass : kFail;
  r.text = text.str();
  return r;
}

inline CommandResult derivations_cmd(const LieAlgebra& l) {
  CommandResult r;
  if (!check_jacobi(l).ok()) {
    r.exit_code = kFail;
    r.doc = {{"command", "derivations"}, {"algebra", l.name()}, {"error", "Jacobi identity fails"}};
    r.text = "algebra " + l.name() + " violates the Jacobi identity; run check-lie for details\n";
    return r;
  }
  auto space = derivation_space(l);
  json basis = json::array();
  std::ostringstream text;
  text << "Der(" << l.name() << "): dimension " << space.dim() << "\n";
  for (std::size_t k = 0; k < space.dim(); ++k) {
    auto [ar, ac] = space.anchors[k];
    basis.push_back({{"anchor", {ar + 1, ac + 1}}, {"matrix", io::matrix_to_json(space.basis[k])}});
    text << "  E" << k + 1 << " (anchor entry (" << ar + 1 << "," << ac + 1 << ")):\n";
    for (std::size_t row = 0; row < space.n; ++row) text << "    " << detail::vec_str(space.basis[k].row(row)) << "\n";
  }
  r.doc = {{"command", "derivations"}, {"algebra", l.name()}, {"dim", l.dim()}, {"derivation_dim", space.dim()}, {"basis", basis}};
  r.text = text.str();
  return r;
}

inline json verdict_json(const RepVerdict& v) {
  json hom = {{"ok", v.homomorphism.ok()}};
  if (const auto& bad = v.homomorphism.violation)
    hom["violation"] = {{"pair", {bad->i + 1, bad->j + 1}},
                        {"translation_residual", io::vector_to_json(bad->translation_residual)},
                        {"linear_residual", io::matrix_to_json(bad->linear_residual)}};
  json nil = {{"ok", v.linear_parts_nilpotent}};
  if (v.flag) nil["flag"] = detail::flag_json(*v.flag);
  if (!v.linear_parts_nilpotent) {
    nil["stuck_subspace_dim"] = v.stuck_dim;
    if (v.non_nilpotent_combination) nil["non_nilpotent_combination"] = io::vector_to_json(*v.non_nilpotent_combination);
  }
  return {{"homomorphism", hom},
          {"t_bijective", {{"ok", v.t_bijective}, {"rank", v.t_rank}, {"dims_match", v.dims_match}}},
          {"linear_parts_nilpotent", nil},
          {"overall", v.overall()}};
}

inline std::string verdict_text(const AffineRep& rep, const RepVerdict& v) {
  std::ostringstream text;
  text << "representation " << rep.source().name() << " -> " << rep.target().name() << " x| Der(" << rep.target().name() << ")";
  if (rep.field_d() != 1) text << " over Q(sqrt(" << rep.field_d() << "))";
  text << "\n";
  text << "homomorphism: " << (v.homomorphism.ok() ? "pass" : "FAIL");
  if (const auto& bad = v.homomorphism.violation) text << " at pair (" << bad->i + 1 << "," << bad->j + 1 << ")";
  text << "\n";
  text << "t bijective: " << (v.t_bijective ? "pass" : "FAIL") << " (rank " << v.t_rank;
  if (!v.dims_match) text << ", dim g = " << rep.source().dim() << " != dim n = " << rep.target().dim();
  text << ")\n";
  text << "linear parts nilpotent: " << (v.linear_parts_nilpotent ? "pass" : "FAIL") << "\n";
  if (v.flag) text << "  strict flag A1..A" << v.flag->dim() << ":\n" << detail::flag_str(*v.flag);
  if (v.non_nilpotent_combination) text << "  non-nilpotent combination of D_i: " << detail::vec_str(*v.non_nilpotent_combination) << "\n";
  text << "simply transitive: " << (v.overall() ? "yes" : "no") << "\n";
  return text.str();
}

inline CommandResult check_rep_cmd(const AffineRep& rep) {
  CommandResult r;
  auto v = check_simply_transitive(rep);
  r.doc = verdict_json(v);
  r.doc["command"] = "check-rep";
  r.doc["source"] = rep.source().name();
  r.doc["target"] = rep.target().name();
  r.doc["d"] = rep.field_d();
  r.text = verdict_text(rep, v);
  r.exit_code = v.overall() ? kPass : kFail;
  return r;
}

inline json lr_report_json(const LRStructure& s, const LRReport& report, const CompletenessVerdict& c) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json w = json::array();
    for (auto i : v.witness) w.push_back(i + 1);
    violations.push_back({{"identity", v.identity}, {"witness", w}, {"residual", io::vector_to_json(v.residual)}});
  }
  json complete = {{"ok", c.complete}};
  if (c.flag) complete["flag"] = detail::flag_json(*c.flag);
  if (c.non_nilpotent_combination) complete["non_nilpotent_combination"] = io::vector_to_json(*c.non_nilpotent_combination);
  return {{"algebra", s.parent().name()}, {"identities", {{"ok", report.ok()}, {"violations", violations}}}, {"complete", complete}};
}

inline std::string lr_report_text(const LRStructure& s, const LRReport& report, const CompletenessVerdict& c) {
  static const char* names[] = {"", "X.(Y.Z) = Y.(X.Z)", "(X.Y).Z = (X.Z).Y", "[X,Y] = X.Y - Y.X"};
  std::ostringstream text;
  text << "LR-structure on " << s.parent().name() << "\n";
  text << "LR identities: " << (report.ok() ? "pass" : "FAIL") << "\n";
  for (const auto& v : report.violations) {
    text << "  identity (" << v.identity << ") " << names[v.identity] << " fails at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) text << (i ? "," : "") << "X" << v.witness[i] + 1;
    text << "), residual " << detail::vec_str(v.residual) << "\n";
  }
  text << "complete: " << (c.complete ? "yes" : "no") << "\n";
  if (c.flag) text << "  strict flag for all L(X):\n" << detail::flag_str(*c.flag);
  if (c.non_nilpotent_combination) text << "  non-nilpotent combination of L(X_i): " << detail::vec_str(*c.non_nilpotent_combination) << "\n";
  return text.str();
}

inline CommandResult check_lr_cmd(const LRStructure& s) {
  CommandResult r;
  auto report = check_lr(s);
  auto c = check_complete(s);
  r.doc = lr_report_json(s, report, c);
  r.doc["command"] = "check-lr";
  r.text = lr_report_text(s, report, c);
  r.exit_code = report.ok() ? kPass : kFail;
  return r;
}

inline CommandResult rep_to_lr_cmd(const AffineRep& rep) {
  CommandResult r;
  if (!rep.source().is_abelian()) {
    r.exit_code = kFail;
    r.doc = {{"command", "rep-to-lr"}, {"ok", false}, {"error", "source algebra is not abelian"}};
    r.text = "rep-to-lr: source algebra " + rep.source().name() + " is not abelian\n";
    return r;
  }
  auto v = check_simply_transitive(rep);
  if (!v.overall()) {
    r.exit_code = kFail;
    r.doc = {{"command", "rep-to-lr"}, {"ok", false}, {"error", "representation is not simply transitive"}, {"verdict", verdict_json(v)}};
    r.text = "rep-to-lr: representation is not simply transitive\n" + verdict_text(rep, v);
    return r;
  }
  auto conv = rep_to_lr(rep);
  r.doc = {{"command", "rep-to-lr"},
           {"ok", true},
           {"lr", io::lr_to_json(conv.structure)},
           {"reparametrization", io::matrix_to_json(conv.reparametrization)}};
  std::ostringstream text;
  text << "LR-structure on " << rep.target().name() << " (X.Y = -D_X(Y)):\n";
  for (std::size_t i = 0; i < conv.structure.dim(); ++i)
    for (std::size_t j = 0; j < conv.structure.dim(); ++j) {
      const auto& p = conv.structure.product_basis(i, j);
      if (!is_zero_vector(p)) text << "  X" << i + 1 << ".X" << j + 1 << " = " << detail::vec_str(p) << "\n";
    }
  if (!(conv.reparametrization == ScalarMatrix::identity(rep.target().dim()))) text << "  (source re-parametrized by t^-1)\n";
  r.text = text.str();
  return r;
}

inline CommandResult lr_to_rep_cmd(const LRStructure& s) {
  CommandResult r;
  auto report = check_lr(s);
  auto c = check_complete(s);
  if (!report.ok() || !c.complete) {
    r.exit_code = kFail;
    r.doc = lr_report_json(s, report, c);
    r.doc["command"] = "lr-to-rep";
    r.doc["ok"] = false;
    r.text = "lr-to-rep: refused\n" + lr_report_text(s, report, c);
    return r;
  }
  auto rep = lr_to_rep(s);
  r.doc = {{"command", "lr-to-rep"}, {"ok", true}, {"rep", io::rep_to_json(rep)}};
  r.text = "abelian representation R" + std::to_string(s.dim()) + " -> " + s.parent().name() + " x| Der(" + s.parent().name() +
           "), t = identity, D_i = -L(X_i)\n" + verdict_text(rep, check_simply_transitive(rep));
  return r;
}

inline json outcome_json(const ObstructionOutcome& o, bool verified) {
  json forced = json::array();
  for (const auto& [v, value] : o.forced) {
    const auto& info = o.variables[v];
    json entry = {{"variable", info.name},
                  {"d_index", info.d_index + 1},
                  {"entry", {info.anchor.first + 1, info.anchor.second + 1}},
                  {"value", io::rational_to_json(value)}};
    if (!info.label.empty()) entry["label"] = info.label;
    forced.push_back(entry);
  }
  json stages = json::array();
  for (const auto& s : o.stages) {
    json eqs = json::array();
    for (const auto& ref : s.equations) eqs.push_back(detail::equation_json(ref));
    stages.push_back({{"equations", eqs}, {"free_variables", free_variables(s.map).size()}});
  }
  json doc = {{"command", "obstruct-abelian"},
              {"algebra", o.algebra},
              {"verdict", to_string(o.verdict)},
              {"two_step_solvable", o.two_step_solvable},
              {"derivation_dim", o.derivation_dim},
              {"variable_count", o.variables.size()},
              {"max_residual_degree", o.max_residual_degree},
              {"forced", forced},
              {"stages", stages},
              {"verified", verified}};
  if (o.commutator)
    doc["certificate"] = {{"type", "commutator"},
                          {"pair", {o.commutator->i + 1, o.commutator->j + 1}},
                          {"entry", {o.commutator->row + 1, o.commutator->col + 1}},
                          {"value", io::rational_to_json(o.commutator->value)}};
  if (o.infeasible) {
    json lambda = json::array();
    for (const auto& x : o.infeasible->multipliers) lambda.push_back(io::rational_to_json(x));
    doc["certificate"] = {{"type", "infeasible"},
                          {"stage", o.infeasible->stage + 1},
                          {"multipliers", lambda},
                          {"value", io::rational_to_json(o.infeasible->value)}};
  }
  if (o.witness_rep && o.witness_lr)
    doc["witness"] = {{"origin", o.witness_origin}, {"rep", io::rep_to_json(*o.witness_rep)}, {"lr", io::lr_to_json(*o.witness_lr)}};
  if (o.verdict == Verdict::Undetermined) {
    json residual = json::array();
    auto name = [&](std::uint32_t v) { return o.variables[v].display(); };
    for (const auto& eq : o.residual) residual.push_back({{"equation", detail::equation_json(eq.ref)}, {"poly", eq.poly.str(name)}});
    doc["residual"] = residual;
  }
  return doc;
}

inline std::string outcome_text(const ObstructionOutcome& o, bool verified) {
  std::ostringstream text;
  text << "algebra " << o.algebra << ": " << to_string(o.verdict) << "\n";
  text << "derivation algebra dimension " << o.derivation_dim << ", " << o.variables.size() << " unknowns\n";
  text << "two-step solvable: " << (o.two_step_solvable ? "yes" : "no") << "\n";
  text << "linear forcing rounds: " << o.stages.size() << "\n";
  if (o.verdict == Verdict::Obstructed) {
    text << "forced assignments:\n";
    for (const auto& [v, value] : o.forced) {
      const auto& info = o.variables[v];
      text << "  " << info.display() << " = " << to_string(value);
      if (!info.label.empty()) text << "  (" << info.name << ")";
      text << "  [D" << info.d_index + 1 << " entry (" << info.anchor.first + 1 << "," << info.anchor.second + 1 << ")]\n";
    }
    if (o.commutator)
      text << "certificate: entry (" << o.commutator->row + 1 << "," << o.commutator->col + 1 << ") of [D" << o.commutator->i + 1
           << ",D" << o.commutator->j + 1 << "] equals " << to_string(o.commutator->value) << " after substitution\n";
    if (o.infeasible)
      text << "certificate: round " << o.infeasible->stage + 1 << " linear system is inconsistent (combination equals "
           << to_string(o.infeasible->value) << ")\n";
  }
  if (o.verdict == Verdict::Found) {
    text << "witness (" << o.witness_origin << "): abelian simply transitive representation, LR product:\n";
    const auto& s = *o.witness_lr;
    bool any = false;
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j) {
        const auto& p = s.product_basis(i, j);
        if (is_zero_vector(p)) continue;
        any = true;
        text << "  X" << i + 1 << ".X" << j + 1 << " = " << detail::vec_str(p) << "\n";
      }
    if (!any) text << "  (zero product)\n";
  }
  if (o.verdict == Verdict::Undetermined) {
    text << "residual system (" << o.residual.size() << " equations of degree 2):\n";
    auto name = [&](std::uint32_t v) { return o.variables[v].display(); };
    for (const auto& eq : o.residual) text << "  " << detail::equation_str(eq.ref) << ": " << eq.poly.str(name) << " = 0\n";
    if (!o.two_step_solvable) text << "note: the algebra is not two-step solvable, which already rules out such actions\n";
  }
  if (o.verdict != Verdict::Undetermined) text << "certificate re-verified: " << (verified ? "yes" : "NO") << "\n";
  return text.str();
}

inline CommandResult obstruct_cmd(const LieAlgebra& l, const ObstructionOptions& opts) {
  CommandResult r;
  auto o = obstruct_abelian(l, opts);
  bool verified = o.verdict != Verdict::Undetermined && verify_certificate(o, l);
  if (o.verdict != Verdict::Undetermined && !verified) throw std::logic_error("certificate failed independent re-verification");
  r.doc = outcome_json(o, verified);
  r.text = outcome_text(o, verified);
  r.exit_code = o.verdict == Verdict::Found ? kPass : o.verdict == Verdict::Obstructed ? kFail : kUndetermined;
  return r;
}

inline CommandResult catalog_list_cmd() {
  CommandResult r;
  json names = json::array();
  std::string text;
  for (const auto& l : catalog()) {
    names.push_back(l.name());
    text += l.name() + " (dim " + std::to_string(l.dim()) + ")\n";
  }
  r.doc = {{"command", "catalog"}, {"algebras", names}};
  r.text = text;
  return r;
}

inline CommandResult catalog_show_cmd(const LieAlgebra& l) {
  CommandResult r;
  auto lines = io::bracket_lines(l);
  r.doc = {{"command", "catalog"}, {"algebra", io::algebra_to_json(l)}, {"brackets_text", lines}};
  std::string text = l.name() + " (dim " + std::to_string(l.dim()) + ")\n";
  if (lines.empty()) text += "abelian: all brackets zero\n";
  for (const auto& line : lines) text += line + "\n";
  r.text = text;
  return r;
}

// ---- entry point --------------------------------------------------------------------

/// Runs one command line (without the program name) and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for simply transitive NIL-affine actions and LR-structures", "nilaffine"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  bool quiet = false;
  app.add_flag("--json", as_json, "Print a machine-readable JSON report");
  app.add_flag("--quiet", quiet, "Print nothing; report through the exit code only");

  std::string algebra_arg, file_arg, output_arg, catalog_name, export_path, witness_dir;
  int samples = 32;
  std::uint64_t seed = 0;

  auto* check_lie = app.add_subcommand("check-lie", "Check the Jacobi identity and report series data");
  check_lie->add_option("algebra", algebra_arg, "Algebra file or catalog name")->required();
  auto* derivations = app.add_subcommand("derivations", "Compute a basis of the derivation algebra");
  derivations->add_option("algebra", algebra_arg, "Algebra file or catalog name")->required();
  auto* check_rep = app.add_subcommand("check-rep", "Verify homomorphism, bijective translations and nilpotent linear parts");
  check_rep->add_option("rep", file_arg, "Representation file")->required();
  auto* rep_to_lr_sc = app.add_subcommand("rep-to-lr", "Convert an abelian simply transitive representation to an LR-structure");
  rep_to_lr_sc->add_option("rep", file_arg, "Representation file")->required();
  rep_to_lr_sc->add_option("-o,--output", output_arg, "Write the LR-structure file here");
  auto* lr_to_rep_sc = app.add_subcommand("lr-to-rep", "Convert a complete LR-structure to an abelian representation");
  lr_to_rep_sc->add_option("lr", file_arg, "LR-structure file")->required();
  lr_to_rep_sc->add_option("-o,--output", output_arg, "Write the representation file here");
  auto* check_lr_sc = app.add_subcommand("check-lr", "Check the LR identities and completeness");
  check_lr_sc->add_option("lr", file_arg, "LR-structure file")->required();
  auto* obstruct = app.add_subcommand("obstruct-abelian", "Decide existence of abelian simply transitive NIL-affine actions");
  obstruct->add_option("algebra", algebra_arg, "Algebra file or catalog name")->required();
  obstruct->add_option("--seed", seed, "Seed for the random witness search")->capture_default_str();
  obstruct->add_option("--samples", samples, "Number of random witness candidates")->capture_default_str()->check(CLI::NonNegativeNumber);
  obstruct->add_option("--write-witness", witness_dir, "Directory for witness rep.json and lr.json when Found");
  auto* cat = app.add_subcommand("catalog", "List, show or export the bundled algebras");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "List catalog names");
  auto* cat_show = cat->add_subcommand("show", "Show the brackets of an algebra");
  cat_show->add_option("name", catalog_name)->required();
  auto* cat_export = cat->add_subcommand("export", "Write an algebra file");
  cat_export->add_option("name", catalog_name)->required();
  cat_export->add_option("path", export_path)->required();
  cat->fallthrough();
  for (auto* sc : {check_lie, derivations, check_rep, rep_to_lr_sc, lr_to_rep_sc, check_lr_sc, obstruct}) sc->fallthrough();
  for (auto* sc : {cat_list, cat_show, cat_export}) sc->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kInputError;
  }

  auto emit = [&](const CommandResult& r) {
    if (as_json)
      out << io::dump(r.doc);
    else if (!quiet)
      out << r.text;
    return r.exit_code;
  };

  auto catalog_lookup = [&](const std::string& name) {
    if (auto l = find_in_catalog(name)) return *l;
    std::string names;
    for (const auto& n : catalog_names()) names += (names.empty() ? "" : ", ") + n;
    throw io::InputError("unknown catalog algebra '" + name + "'; valid names: " + names);
  };

  try {
    if (check_lie->parsed()) return emit(check_lie_cmd(io::resolve_algebra(algebra_arg)));
    if (derivations->parsed()) return emit(derivations_cmd(io::resolve_algebra(algebra_arg)));
    if (check_rep->parsed()) return emit(check_rep_cmd(io::load_rep(file_arg)));
    if (rep_to_lr_sc->parsed()) {
      auto r = rep_to_lr_cmd(io::load_rep(file_arg));
      if (!output_arg.empty() && r.exit_code == kPass) io::write_text(output_arg, io::dump(r.doc["lr"]));
      return emit(r);
    }
    if (lr_to_rep_sc->parsed()) {
      auto r = lr_to_rep_cmd(io::load_lr(file_arg));
      if (!output_arg.empty() && r.exit_code == kPass) io::write_text(output_arg, io::dump(r.doc["rep"]));
      return emit(r);
    }
    if (check_lr_sc->parsed()) return emit(check_lr_cmd(io::load_lr(file_arg)));
    if (obstruct->parsed()) {
      ObstructionOptions opts;
      opts.samples = samples;
      opts.seed = seed;
      auto algebra = io::resolve_algebra(algebra_arg);
      if (algebra.d() != 1) throw io::InputError(algebra.name() + ": obstruct-abelian needs an algebra over Q (d = 1)");
      if (!check_jacobi(algebra).ok()) throw io::InputError(algebra.name() + ": Jacobi identity fails; run check-lie for details");
      if (!is_nilpotent_algebra(algebra)) throw io::InputError(algebra.name() + ": algebra is not nilpotent");
      auto r = obstruct_cmd(algebra, opts);
      if (!witness_dir.empty() && r.doc.contains("witness")) {
        std::filesystem::create_directories(witness_dir);
        io::write_text(std::filesystem::path(witness_dir) / "rep.json", io::dump(r.doc["witness"]["rep"]));
        io::write_text(std::filesystem::path(witness_dir) / "lr.json", io::dump(r.doc["witness"]["lr"]));
      }
      return emit(r);
    }
    if (cat_list->parsed()) return emit(catalog_list_cmd());
    if (cat_show->parsed()) return emit(catalog_show_cmd(catalog_lookup(catalog_name)));
    if (cat_export->parsed()) {
      auto l = catalog_lookup(catalog_name);
      io::write_text(export_path, io::dump(io::algebra_to_json(l)));
      CommandResult r;
      r.doc = {{"command", "catalog"}, {"exported", l.name()}, {"path", export_path}};
      r.text = "wrote " + l.name() + " to " + export_path + "\n";
      return emit(r);
    }
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command given\n";
  return kInputError;
}

}  // namespace nilaffine::cli
