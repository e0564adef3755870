#include "mvl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "mvl/algebra.hpp"
#include "mvl/axiomatizer.hpp"
#include "mvl/calculus.hpp"
#include "mvl/interpolation.hpp"
#include "mvl/io.hpp"
#include "mvl/registry.hpp"

namespace mvl::cli {

std::vector<std::string> split_formulas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

namespace {

std::vector<Formula> formulas(const std::string& text) {
  return parse_formula_list(split_formulas(text), sig_pp_imp());
}

std::string join_formulas(const std::vector<Formula>& fs) {
  std::string s;
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + render_formula(fs[i]);
  return s;
}

void print_tree(std::ostream& out, const DerivationTree& t, int node, int indent) {
  const auto& n = t.nodes[node];
  std::string pad(indent * 2, ' ');
  if (n.star) {
    out << pad << "*\n";
    return;
  }
  out << pad;
  if (node == 0) {
    out << "{" << join_formulas(n.label) << "}";
  } else {
    out << "+ " << render_formula(n.label.back());
  }
  if (n.rule.empty()) {
    out << "  [closed]\n";
    return;
  }
  out << "  by " << n.rule << " " << render_substitution(n.substitution) << "\n";
  for (int ch : n.children) print_tree(out, t, ch, n.children.size() > 1 ? indent + 1 : indent);
}

struct Options {
  bool json = false;
};

int emit(std::ostream& out, const Options& o, const Json& j, const std::string& text, int code) {
  if (o.json) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
  return code;
}

int cmd_prove(const std::string& calc_spec, const std::string& premises, const std::string& goal,
              std::uint64_t nodes, double seconds, const std::string& dot, bool set_fmla, const Options& o,
              std::ostream& out) {
  Calculus c = load_calculus(calc_spec);
  std::vector<Formula> prem = formulas(premises), g = formulas(goal);
  Budget b;
  b.max_nodes = nodes;
  b.max_seconds = seconds;
  ProveResult r = prove(c, prem, g, b);
  Json j{{"calculus", c.name}, {"premises", split_formulas(premises)}, {"goal", split_formulas(goal)},
         {"nodes_expanded", r.nodes_expanded}, {"candidates", r.candidate_count}};
  std::ostringstream text;
  if (r.status == ProveStatus::Proved) {
    j["status"] = "Proved";
    j["tree"] = tree_to_json(*r.tree);
    TreeCheck chk = validate_tree(c, *r.tree, prem, g);
    j["tree_valid"] = chk.ok;
    text << "Proved (" << r.tree->size() << " nodes, checked: " << (chk.ok ? "ok" : chk.reason) << ")\n";
    print_tree(text, *r.tree, 0, 0);
    if (!dot.empty()) {
      std::ofstream f(dot);
      if (!f) throw Error("cannot write '" + dot + "'");
      f << tree_to_dot(*r.tree);
    }
    if (set_fmla) {
      if (g.size() != 1) throw Error("--set-fmla needs exactly one goal formula");
      SetFmlaDerivation d = translate_to_set_fmla(c, *r.tree, prem, g[0]);
      TreeCheck dc = validate_set_fmla_derivation(to_set_fmla_calculus(c), d, prem, g[0]);
      Json steps = Json::array();
      text << "Set-Fmla derivation in " << c.name << "-or (" << d.steps.size()
           << " steps, checked: " << (dc.ok ? "ok" : dc.reason) << ")\n";
      for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& st = d.steps[i];
        text << "  " << i + 1 << ". " << render_formula(st.formula) << "  "
             << (st.rule.empty() ? "premise" : st.rule + " " + render_substitution(st.substitution)) << "\n";
        steps.push_back(Json{{"formula", render_formula(st.formula)}, {"rule", st.rule}});
      }
      j["set_fmla"] = Json{{"steps", steps}, {"valid", dc.ok}};
    }
    return emit(out, o, j, text.str(), kPositive);
  }
  if (r.status == ProveStatus::OutOfBudget) {
    j["status"] = "OutOfBudget";
    text << "OutOfBudget after " << r.nodes_expanded << " expansions\n";
    return emit(out, o, j, text.str(), kBudget);
  }
  j["status"] = "Refuted";
  j["partition"] = partition_to_json(*r.partition);
  text << "Refuted: saturated open branch with " << r.partition->omega.size() << " formulas in Omega\n";
  std::vector<Formula> lambda = prem;
  lambda.insert(lambda.end(), g.begin(), g.end());
  bool extracted = false;
  if (c.name == "r-up" || c.name == "r-leq") {
    try {
      Countermodel cm = countermodel_from_partition(*r.partition, lambda,
                                                    c.name == "r-up" ? TenVariant::Up : TenVariant::Leq);
      const auto& alg = cm.matrix.alg();
      j["countermodel"] = Json{{"matrix", cm.matrix.name}, {"valuation", witness_to_json(cm.valuation, alg)}};
      text << "countermodel on " << cm.matrix.name << ": " << cm.valuation.describe(alg) << "\n";
      extracted = true;
    } catch (const ClassificationError& e) {
      text << "countermodel extraction failed: " << e.what() << "\n";
    }
  }
  if (!extracted && registry::contains(EntryKind::Calculus, c.name)) {
    for (const auto& m : registry::declared_models(c.name)) {
      auto w = find_countermodel(m, prem, g);
      if (!w) continue;
      j["countermodel"] = Json{{"matrix", m.name}, {"valuation", witness_to_json(*w, m.alg())}};
      text << "semantic countermodel on " << m.name << ": " << w->describe(m.alg()) << "\n";
      break;
    }
  }
  return emit(out, o, j, text.str(), kNegative);
}

int cmd_check(const std::string& matrix, const std::string& cls, const std::string& premises,
              const std::string& conclusions, bool set_fmla, const Options& o, std::ostream& out) {
  std::vector<PNMatrix> models;
  if (!matrix.empty()) models.push_back(load_matrix(matrix));
  if (!cls.empty()) {
    auto more = load_matrix_class(cls);
    models.insert(models.end(), more.begin(), more.end());
  }
  if (models.empty()) throw Error("check needs --matrix or --class");
  ConsequenceProblem p{models, formulas(premises), formulas(conclusions), set_fmla ? Mode::SetFmla : Mode::SetSet};
  if (p.mode == Mode::SetFmla && p.conclusions.size() != 1) throw Error("--set-fmla needs exactly one conclusion");
  ConsequenceResult r = check_consequence(p);
  Json j{{"holds", r.holds}};
  if (r.holds) return emit(out, o, j, "Holds\n", kPositive);
  const PNMatrix& m = models[r.matrix_index];
  j["matrix"] = m.name;
  j["valuation"] = witness_to_json(*r.witness, m.alg());
  return emit(out, o, j, "Fails on " + m.name + ": " + r.witness->describe(m.alg()) + "\n", kNegative);
}

int cmd_soundness(const std::string& calc_spec, const std::string& rule, const std::string& matrix,
                  const std::string& cls, const Options& o, std::ostream& out) {
  Calculus c = load_calculus(calc_spec);
  std::vector<PNMatrix> models;
  if (!matrix.empty()) models.push_back(load_matrix(matrix));
  if (!cls.empty()) {
    auto more = load_matrix_class(cls);
    models.insert(models.end(), more.begin(), more.end());
  }
  if (models.empty()) models = registry::declared_models(c.name);
  Json rows = Json::array();
  std::ostringstream text;
  bool all = true;
  for (const auto& r : c.rules) {
    if (!rule.empty() && r.name != rule) continue;
    SoundnessResult s = check_rule_soundness(r, models);
    Json row{{"rule", r.name}, {"sound", s.sound}};
    text << r.name << ": " << (s.sound ? "Sound" : "Unsound");
    if (!s.sound) {
      all = false;
      const PNMatrix& m = models[s.matrix_index];
      row["matrix"] = m.name;
      row["valuation"] = witness_to_json(*s.witness, m.alg());
      text << " on " << m.name << " at " << s.witness->describe(m.alg());
    }
    text << "\n";
    rows.push_back(row);
  }
  if (rows.empty()) throw Error("no rule named '" + rule + "'");
  return emit(out, o, Json{{"calculus", c.name}, {"rules", rows}}, text.str(), all ? kPositive : kNegative);
}

int cmd_components(const std::string& matrix, const Options& o, std::ostream& out) {
  PNMatrix m = load_matrix(matrix);
  Json arr = Json::array();
  std::ostringstream text;
  for (ValueSet s : total_components(m)) {
    std::vector<std::string> names;
    for (int v : members(s)) names.push_back(m.alg().value_name(v));
    arr.push_back(names);
    text << format_value_set(m.alg(), s) << "\n";
  }
  return emit(out, o, Json{{"matrix", m.name}, {"components", arr}}, text.str(), kPositive);
}

Json discriminator_json(const PNMatrix& m, const Discriminator& d) {
  Json j = Json::object();
  for (int a = 0; a < m.alg().size(); ++a) {
    std::vector<std::string> pos, neg;
    for (const auto& f : d.pos[a]) pos.push_back(render_formula(f));
    for (const auto& f : d.neg[a]) neg.push_back(render_formula(f));
    j[m.alg().value_name(a)] = Json{{"pos", pos}, {"neg", neg}};
  }
  return j;
}

int cmd_axiomatize(const std::string& base_spec, const std::string& refined_spec, int depth, bool simplify,
                   const Options& o, std::ostream& out) {
  PNMatrix base = load_matrix(base_spec);
  DiscriminatorResult dr = find_discriminator(base, depth);
  if (!dr.discriminator) {
    const auto& alg = base.alg();
    Json j{{"status", "NotMonadic"},
           {"witness", {alg.value_name(dr.witness->first), alg.value_name(dr.witness->second)}},
           {"saturated", dr.saturated},
           {"isomorphic_witness", dr.isomorphic_witness}};
    return emit(out, o, j,
                "NotMonadic: no unary formula separates " + alg.value_name(dr.witness->first) + " and " +
                    alg.value_name(dr.witness->second) + (dr.isomorphic_witness ? " (locally isomorphic values)\n"
                                           : dr.saturated ? " (unary clone saturated)\n"
                                                          : " (up to the depth bound)\n"),
                kNegative);
  }
  if (refined_spec.empty()) {
    Json j{{"status", "Monadic"}, {"discriminator", discriminator_json(base, *dr.discriminator)}};
    std::ostringstream text;
    for (int a = 0; a < base.alg().size(); ++a) {
      text << base.alg().value_name(a) << ": pos {" << join_formulas(dr.discriminator->pos[a]) << "} neg {"
           << join_formulas(dr.discriminator->neg[a]) << "}\n";
    }
    return emit(out, o, j, text.str(), kPositive);
  }
  PNMatrix refined = load_matrix(refined_spec);
  std::vector<Rule> rules = generate_refinement_rules(base, refined, *dr.discriminator);
  if (simplify) rules = subsume_simplify(rules);
  Calculus c;
  c.name = base.name + "-to-" + refined.name;
  c.rules = rules;
  std::ostringstream text;
  for (const auto& r : rules) text << r.name << ": " << render_rule(r) << "\n";
  if (o.json) {
    out << calculus_to_json(c).dump(2) << "\n";
    return kPositive;
  }
  out << text.str();
  return kPositive;
}

std::string set_names(const MultiAlgebra& a, const std::vector<ValueSet>& sets) {
  std::string s;
  for (ValueSet v : sets) s += format_value_set(a, v) + "\n";
  return s;
}

Json set_json(const MultiAlgebra& a, const std::vector<ValueSet>& sets) {
  Json arr = Json::array();
  for (ValueSet v : sets) {
    std::vector<std::string> names;
    for (int x : members(v)) names.push_back(a.value_name(x));
    arr.push_back(names);
  }
  return arr;
}

int cmd_algebra(const std::string& action, const std::string& alg_spec, const std::string& flavor,
                const std::string& lhs, const std::string& rhs, bool inequality, const std::string& matrix,
                const Options& o, std::ostream& out) {
  if (action == "reduce") {
    Reduction red = leibniz_and_reduce(load_matrix(matrix));
    Json blocks = Json::array();
    std::string text = red.reduced ? "reduced\n" : "not reduced\n";
    for (const auto& b : red.leibniz.blocks()) {
      std::vector<std::string> names;
      for (int v : b) names.push_back(load_matrix(matrix).alg().value_name(v));
      blocks.push_back(names);
    }
    text += "quotient values: ";
    for (std::size_t i = 0; i < red.quotient.alg().carrier().size(); ++i)
      text += (i ? " " : "") + red.quotient.alg().carrier()[i];
    text += "\n";
    Json j{{"reduced", red.reduced}, {"leibniz", blocks}, {"quotient", matrix_to_json(red.quotient)}};
    return emit(out, o, j, text, red.reduced ? kPositive : kNegative);
  }
  FiniteAlgebra alg(load_algebra(alg_spec));
  const MultiAlgebra& a = alg.base();
  if (action == "congruences") {
    auto cs = congruences(alg);
    Json arr = Json::array();
    std::ostringstream text;
    for (const auto& c : cs) {
      Json blocks = Json::array();
      for (const auto& b : c.blocks()) {
        std::vector<std::string> names;
        text << "{";
        for (std::size_t i = 0; i < b.size(); ++i) {
          names.push_back(a.value_name(b[i]));
          text << (i ? "," : "") << a.value_name(b[i]);
        }
        text << "}";
        blocks.push_back(names);
      }
      text << "\n";
      arr.push_back(blocks);
    }
    text << (cs.size() == 2 ? "simple\n" : "not simple\n");
    return emit(out, o, Json{{"congruences", arr}, {"simple", cs.size() == 2}}, text.str(), kPositive);
  }
  if (action == "filters") {
    static const std::map<std::string, FilterFlavor> flavors{{"lattice", FilterFlavor::Lattice},
                                                             {"principal", FilterFlavor::Principal},
                                                             {"prime", FilterFlavor::Prime},
                                                             {"regular", FilterFlavor::Regular}};
    auto it = flavors.find(flavor);
    if (it == flavors.end()) throw Error("unknown filter flavor '" + flavor + "'");
    auto fs = filters(alg, it->second);
    return emit(out, o, Json{{"flavor", flavor}, {"filters", set_json(a, fs)}}, set_names(a, fs), kPositive);
  }
  if (action == "subalgebras") {
    auto subs = subalgebras(alg);
    auto iso = subalgebras_up_to_isomorphism(alg);
    Json j{{"subalgebras", set_json(a, subs)}, {"up_to_isomorphism", set_json(a, iso)}};
    return emit(out, o, j, set_names(a, subs) + "up to isomorphism: " + std::to_string(iso.size()) + "\n", kPositive);
  }
  if (action == "check") {
    Formula l = parse_formula(lhs, sig_pp_imp()), r = parse_formula(rhs, sig_pp_imp());
    IdentityResult ir = inequality ? check_inequality(alg, l, r) : check_identity(alg, l, r);
    Json j{{"valid", ir.valid}};
    if (ir.valid) return emit(out, o, j, "Valid\n", kPositive);
    std::string text = "Counterexample:";
    Json cex = Json::object();
    for (const auto& [v, x] : ir.counterexample) {
      text += " " + v + "=" + a.value_name(x);
      cex[v] = a.value_name(x);
    }
    j["counterexample"] = cex;
    return emit(out, o, j, text + "\n", kNegative);
  }
  if (action == "profile") {
    VarietyProfile p = variety_profile(alg);
    Json suites = Json::array();
    std::ostringstream text;
    for (const auto& s : p.suites) {
      Json row{{"name", s.name}, {"applicable", s.applicable}, {"holds", s.holds}};
      text << s.name << ": ";
      if (!s.applicable) {
        row["missing"] = s.missing;
        text << "skipped (no '" << s.missing << "')\n";
      } else if (s.holds) {
        text << "holds\n";
      } else {
        row["failing"] = s.failing;
        text << "fails at " << s.failing << "\n";
      }
      suites.push_back(row);
    }
    return emit(out, o, Json{{"names", p.names}, {"suites", suites}}, text.str(), kPositive);
  }
  if (action == "residuum") {
    ResiduumResult r = residuum_of_meet(alg);
    if (!r.table) {
      std::string w = a.value_name(r.not_residuated->first) + "," + a.value_name(r.not_residuated->second);
      return emit(out, o, Json{{"residuated", false}, {"witness", w}}, "NotResiduated at (" + w + ")\n", kNegative);
    }
    auto copy = std::make_shared<MultiAlgebra>(a.name() + "-residuum", a.carrier());
    copy->define("imp", *r.table);
    Json j{{"residuated", true}, {"table", algebra_to_json(*copy)["connectives"]["imp"]["table"]}};
    std::ostringstream text;
    for (int x = 0; x < a.size(); ++x) {
      for (int y = 0; y < a.size(); ++y) text << (y ? " " : "") << a.value_name(members(copy->eval("imp", {x, y}))[0]);
      text << "\n";
    }
    return emit(out, o, j, text.str(), kPositive);
  }
  if (action == "clone") {
    auto fns = unary_term_functions(alg);
    Json arr = Json::array();
    std::ostringstream text;
    for (const auto& f : fns) {
      std::vector<std::string> map;
      for (int v : f.map) map.push_back(a.value_name(v));
      arr.push_back(Json{{"map", map}, {"witness", render_formula(f.witness)}});
      text << render_formula(f.witness) << ":";
      for (const auto& s : map) text << " " << s;
      text << "\n";
    }
    text << fns.size() << " unary term functions\n";
    return emit(out, o, Json{{"count", fns.size()}, {"functions", arr}}, text.str(), kPositive);
  }
  throw Error("unknown algebra action '" + action + "'");
}

int cmd_interpolate(const std::string& logic, const std::string& mode, const std::string& phi,
                    const std::string& psi, const std::string& goal, const Options& o, std::ostream& out) {
  if (mode == "cip") {
    CipReport rep = cip_failure_certificate();
    std::ostringstream text;
    text << "phi = " << render_formula(rep.phi) << "\ngoal = " << render_formula(rep.goal) << "\n";
    text << "phi entails goal: " << (rep.premise_entails_goal ? "yes" : "no") << "\n";
    text << "unary functions: " << rep.functions.size() << ", phi |- psi: " << rep.passing_first
         << ", psi |- goal: " << rep.passing_second << ", both: " << rep.passing_both << "\n";
    Json j{{"premise_entails_goal", rep.premise_entails_goal},
           {"functions", rep.functions.size()},
           {"passing_first", rep.passing_first},
           {"passing_second", rep.passing_second},
           {"passing_both", rep.passing_both}};
    return emit(out, o, j, text.str(), rep.passing_both == 0 && rep.premise_entails_goal ? kPositive : kNegative);
  }
  Logic lg;
  if (logic == "pp-top") {
    lg = Logic::Assertional;
  } else if (logic == "pp-leq") {
    lg = Logic::OrderPreserving;
  } else {
    throw Error("unknown logic '" + logic + "' (expected pp-top or pp-leq)");
  }
  std::vector<Formula> g = formulas(goal);
  if (g.size() != 1) throw Error("--goal needs exactly one formula");
  InterpolationInstance inst{formulas(phi), formulas(psi), g[0], lg};
  try {
    if (mode == "eip") {
      auto pi = eip_interpolant(inst);
      return emit(out, o, Json{{"interpolant", render_formula(pi[0])}}, "Pi = {" + render_formula(pi[0]) + "}\n",
                  kPositive);
    }
    if (lg != Logic::Assertional) throw Error("the Maehara construction is for pp-top");
    MaeharaResult m = maehara_interpolant(inst);
    std::ostringstream text;
    text << "xi = " << render_formula(m.xi) << "\n";
    text << "phi |- xi: " << (m.phi_entails_xi ? "yes" : "no") << "\n";
    text << "xi, psi |- goal: " << (m.xi_and_psi_entail_goal ? "yes" : "no") << "\n";
    Json j{{"xi", render_formula(m.xi)},
           {"shared", m.shared},
           {"family_size", m.family.size()},
           {"phi_entails_xi", m.phi_entails_xi},
           {"xi_psi_entail_goal", m.xi_and_psi_entail_goal}};
    return emit(out, o, j, text.str(), m.phi_entails_xi && m.xi_and_psi_entail_goal ? kPositive : kNegative);
  } catch (const PremiseNotEntailed& e) {
    return emit(out, o, Json{{"error", e.what()}}, std::string("PremiseNotEntailed: ") + e.what() + "\n", kNegative);
  }
}

int cmd_export(const std::string& kind, const std::string& name, std::ostream& out) {
  Json j;
  if (kind == "matrix") {
    j = matrix_to_json(load_matrix(name));
  } else if (kind == "algebra") {
    j = algebra_to_json(*load_algebra(name));
  } else if (kind == "calculus") {
    j = calculus_to_json(load_calculus(name));
  } else if (kind == "class") {
    j = Json::array();
    for (const auto& m : load_matrix_class(name)) j.push_back(matrix_to_json(m));
  } else {
    throw Error("unknown export kind '" + kind + "'");
  }
  out << j.dump(2) << "\n";
  return kPositive;
}

int cmd_list(const Options& o, std::ostream& out) {
  static const std::vector<std::pair<std::string, EntryKind>> kinds{{"algebras", EntryKind::Algebra},
                                                                   {"matrices", EntryKind::Matrix},
                                                                   {"classes", EntryKind::MatrixClass},
                                                                   {"calculi", EntryKind::Calculus}};
  Json j = Json::object();
  std::ostringstream text;
  for (const auto& [label, kind] : kinds) {
    auto names = registry::names(kind);
    j[label] = names;
    text << label << ":";
    for (const auto& n : names) text << " " << n;
    text << "\n";
  }
  return emit(out, o, j, text.str(), kPositive);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for many-valued logics, their calculi and algebras", "mvl"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  std::string calculus, premises, goal, dot, matrix, cls, algebra, rule, base, refined, flavor = "lattice";
  std::string lhs, rhs, logic = "pp-top", mode = "maehara", phi, psi, kind, name, action;
  std::uint64_t budget_nodes = Budget{}.max_nodes;
  double budget_seconds = 0;
  int depth = 3;
  bool set_fmla = false, simplify = false, inequality = false;

  auto* prove_cmd = app.add_subcommand("prove", "search for a derivation");
  prove_cmd->add_option("--calculus", calculus, "registry name or @file.json")->required();
  prove_cmd->add_option("--premises", premises, "comma-separated formulas");
  prove_cmd->add_option("--goal,--conclusions", goal, "comma-separated formulas");
  prove_cmd->add_option("--budget-nodes", budget_nodes, "node expansion limit");
  prove_cmd->add_option("--budget-seconds", budget_seconds, "wall-clock limit (0 = none)");
  prove_cmd->add_option("--dot", dot, "write the proof tree as DOT");
  prove_cmd->add_flag("--set-fmla", set_fmla, "also print the translated Set-Fmla derivation");

  auto* check_cmd = app.add_subcommand("check", "semantic consequence check");
  check_cmd->add_option("--matrix", matrix, "registry name or @file.json");
  check_cmd->add_option("--class", cls, "registry name or @file.json");
  check_cmd->add_option("--premises", premises, "comma-separated formulas");
  check_cmd->add_option("--conclusions,--goal", goal, "comma-separated formulas");
  check_cmd->add_flag("--set-fmla", set_fmla, "single-conclusion consequence");

  auto* sound_cmd = app.add_subcommand("soundness", "check the rules of a calculus");
  sound_cmd->add_option("--calculus", calculus, "registry name or @file.json")->required();
  sound_cmd->add_option("--rule", rule, "only this rule");
  sound_cmd->add_option("--matrix", matrix, "override the declared models");
  sound_cmd->add_option("--class", cls, "override the declared models");

  auto* comp_cmd = app.add_subcommand("components", "maximal total components of a PNmatrix");
  comp_cmd->add_option("--matrix", matrix, "registry name or @file.json")->required();

  auto* ax_cmd = app.add_subcommand("axiomatize", "discriminators and refinement rules");
  ax_cmd->add_option("--base", base, "registry name or @file.json")->required();
  ax_cmd->add_option("--refined", refined, "refinement of the base matrix");
  ax_cmd->add_option("--depth", depth, "maximum separator depth");
  ax_cmd->add_flag("--simplify", simplify, "drop dilutions");

  auto* alg_cmd = app.add_subcommand("algebra", "finite algebra tools");
  alg_cmd->add_option("action", action, "congruences|filters|subalgebras|check|profile|residuum|clone|reduce")
      ->required();
  alg_cmd->add_option("--algebra", algebra, "registry name or @file.json");
  alg_cmd->add_option("--matrix", matrix, "matrix for reduce");
  alg_cmd->add_option("--flavor", flavor, "lattice|principal|prime|regular");
  alg_cmd->add_option("--lhs", lhs, "left-hand side for check");
  alg_cmd->add_option("--rhs", rhs, "right-hand side for check");
  alg_cmd->add_flag("--leq", inequality, "check lhs <= rhs instead of an identity");

  auto* int_cmd = app.add_subcommand("interpolate", "interpolants and the CIP certificate");
  int_cmd->add_option("--logic", logic, "pp-top|pp-leq");
  int_cmd->add_option("--mode", mode, "maehara|eip|cip");
  int_cmd->add_option("--phi", phi, "comma-separated formulas");
  int_cmd->add_option("--psi", psi, "comma-separated formulas");
  int_cmd->add_option("--goal", goal, "one formula");

  auto* exp_cmd = app.add_subcommand("export", "emit registry entries as JSON");
  exp_cmd->add_option("--kind", kind, "matrix|algebra|calculus|class")->required();
  exp_cmd->add_option("--name", name, "registry name or @file.json")->required();

  app.add_subcommand("list", "list registry entries");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (prove_cmd->parsed())
      return cmd_prove(calculus, premises, goal, budget_nodes, budget_seconds, dot, set_fmla, o, out);
    if (check_cmd->parsed()) return cmd_check(matrix, cls, premises, goal, set_fmla, o, out);
    if (sound_cmd->parsed()) return cmd_soundness(calculus, rule, matrix, cls, o, out);
    if (comp_cmd->parsed()) return cmd_components(matrix, o, out);
    if (ax_cmd->parsed()) return cmd_axiomatize(base, refined, depth, simplify, o, out);
    if (alg_cmd->parsed()) return cmd_algebra(action, algebra, flavor, lhs, rhs, inequality, matrix, o, out);
    if (int_cmd->parsed()) return cmd_interpolate(logic, mode, phi, psi, goal, o, out);
    if (exp_cmd->parsed()) return cmd_export(kind, name, out);
    return cmd_list(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace mvl::cli
