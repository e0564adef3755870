#include "mvl/io.hpp"

#include <fstream>

#include "mvl/registry.hpp"

namespace mvl {

namespace {

std::vector<std::string> names_of(const MultiAlgebra& a, ValueSet s) {
  std::vector<std::string> out;
  for (int v : members(s)) out.push_back(a.value_name(v));
  return out;
}

std::string tuple_key(const MultiAlgebra& a, std::size_t idx, int arity) {
  std::vector<int> args(arity);
  for (int i = arity - 1; i >= 0; --i) {
    args[i] = static_cast<int>(idx % a.size());
    idx /= a.size();
  }
  std::string key;
  for (int i = 0; i < arity; ++i) key += (i ? "," : "") + a.value_name(args[i]);
  return key;
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> out;
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    out.push_back(key.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> formulas_text(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const auto& f : fs) out.push_back(render_formula(f));
  return out;
}

std::vector<Formula> formulas_from(const Json& arr, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& s : arr) out.push_back(parse_formula(s.get<std::string>(), sig));
  return out;
}

}  // namespace

Json algebra_to_json(const MultiAlgebra& a) {
  Json j;
  j["name"] = a.name();
  j["values"] = a.carrier();
  Json conns = Json::object();
  for (const auto& [conn, t] : a.ops()) {
    Json table = Json::object();
    for (std::size_t i = 0; i < t.entries.size(); ++i) table[tuple_key(a, i, t.arity)] = names_of(a, t.entries[i]);
    conns[conn] = Json{{"arity", t.arity}, {"table", table}};
  }
  j["connectives"] = conns;
  return j;
}

std::shared_ptr<const MultiAlgebra> algebra_from_json(const Json& j) {
  try {
    auto a = std::make_shared<MultiAlgebra>(j.at("name").get<std::string>(),
                                            j.at("values").get<std::vector<std::string>>());
    const int n = a->size();
    for (const auto& [conn, spec] : j.at("connectives").items()) {
      OpTable t;
      t.arity = spec.at("arity").get<int>();
      std::size_t total = 1;
      for (int i = 0; i < t.arity; ++i) total *= n;
      t.entries.assign(total, 0);
      std::vector<char> seen(total, 0);
      for (const auto& [key, vals] : spec.at("table").items()) {
        std::vector<std::string> parts = split_key(key);
        if (static_cast<int>(parts.size()) != t.arity) throw Error("tuple '" + key + "' of '" + conn + "' has wrong length");
        std::vector<int> args;
        for (const auto& p : parts) args.push_back(a->value_index(p));
        std::size_t idx = 0;
        for (int v : args) idx = idx * n + v;
        if (seen[idx]) throw Error("tuple '" + key + "' of '" + conn + "' listed twice");
        seen[idx] = 1;
        t.entries[idx] = parse_value_set(*a, vals.get<std::vector<std::string>>());
      }
      for (std::size_t i = 0; i < total; ++i)
        if (!seen[i]) throw Error("connective '" + conn + "' omits tuple '" + tuple_key(*a, i, t.arity) + "'");
      a->define(conn, std::move(t));
    }
    return a;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed algebra JSON: ") + e.what());
  }
}

Json matrix_to_json(const PNMatrix& m) {
  Json a = algebra_to_json(m.alg());
  Json j;
  j["name"] = m.name;
  j["values"] = a["values"];
  j["designated"] = names_of(m.alg(), m.designated);
  j["connectives"] = a["connectives"];
  return j;
}

PNMatrix matrix_from_json(const Json& j) {
  auto alg = algebra_from_json(j);
  try {
    return make_matrix(j.at("name").get<std::string>(), alg, j.at("designated").get<std::vector<std::string>>());
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json calculus_to_json(const Calculus& c) {
  Json j;
  j["name"] = c.name;
  j["framework"] = c.framework == Framework::SetSet ? "set-set" : "set-fmla";
  j["xi"] = c.xi ? Json(formulas_text(*c.xi)) : Json(nullptr);
  Json rules = Json::array();
  for (const auto& r : c.rules)
    rules.push_back(
        Json{{"name", r.name}, {"premises", formulas_text(r.antecedent)}, {"conclusions", formulas_text(r.succedent)}});
  j["rules"] = rules;
  return j;
}

Calculus calculus_from_json(const Json& j, const Signature& sig) {
  try {
    Calculus c;
    c.name = j.at("name").get<std::string>();
    if (j.contains("framework") && j["framework"] == "set-fmla") c.framework = Framework::SetFmla;
    if (j.contains("xi") && !j["xi"].is_null()) c.xi = formulas_from(j["xi"], sig);
    for (const auto& r : j.at("rules")) {
      Rule rule;
      rule.name = r.at("name").get<std::string>();
      rule.antecedent = formulas_from(r.at("premises"), sig);
      rule.succedent = formulas_from(r.at("conclusions"), sig);
      c.rules.push_back(std::move(rule));
    }
    return c;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed calculus JSON: ") + e.what());
  }
}

Json tree_to_json(const DerivationTree& t) {
  Json nodes = Json::array();
  for (int i = 0; i < t.size(); ++i) {
    const auto& n = t.nodes[i];
    Json sub = Json::object();
    for (const auto& [v, f] : n.substitution) sub[v] = render_formula(f);
    nodes.push_back(Json{{"id", i},
                         {"label", formulas_text(n.label)},
                         {"rule", n.rule.empty() ? Json(nullptr) : Json(n.rule)},
                         {"substitution", sub},
                         {"children", n.children},
                         {"star", n.star}});
  }
  return Json{{"root", 0}, {"nodes", nodes}};
}

Json partition_to_json(const SaturatedPartition& p) {
  return Json{{"omega", formulas_text({p.omega.begin(), p.omega.end()})},
              {"omega_bar", formulas_text({p.omega_bar.begin(), p.omega_bar.end()})}};
}

Json witness_to_json(const ValuationWitness& w, const MultiAlgebra& alg) {
  Json j = Json::object();
  for (const auto& [v, val] : w.variable_values(alg)) j[v] = val;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error("invalid JSON in '" + path + "': " + e.what());
  }
}

namespace {

bool is_file(const std::string& spec) { return !spec.empty() && spec[0] == '@'; }

}  // namespace

PNMatrix load_matrix(const std::string& spec) {
  if (is_file(spec)) return matrix_from_json(read_json_file(spec.substr(1)));
  return registry::matrix(spec);
}

std::vector<PNMatrix> load_matrix_class(const std::string& spec) {
  if (!is_file(spec)) return registry::matrix_class(spec);
  Json j = read_json_file(spec.substr(1));
  std::vector<PNMatrix> out;
  if (j.is_array()) {
    for (const auto& m : j) out.push_back(matrix_from_json(m));
  } else if (j.contains("matrices")) {
    for (const auto& m : j["matrices"]) out.push_back(matrix_from_json(m));
  } else {
    out.push_back(matrix_from_json(j));
  }
  return out;
}

std::shared_ptr<const MultiAlgebra> load_algebra(const std::string& spec) {
  if (is_file(spec)) return algebra_from_json(read_json_file(spec.substr(1)));
  return registry::algebra(spec);
}

Calculus load_calculus(const std::string& spec) {
  if (is_file(spec)) return calculus_from_json(read_json_file(spec.substr(1)));
  return registry::calculus(spec);
}

}  // namespace mvl
