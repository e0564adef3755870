#include "mvl/rule.hpp"

namespace mvl {

Rule make_rule(std::string name, const std::vector<std::string>& antecedent,
               const std::vector<std::string>& succedent, const Signature& sig) {
  return Rule{std::move(name), parse_formula_list(antecedent, sig), parse_formula_list(succedent, sig)};
}

Rule substitute_rule(const Rule& r, const Substitution& s) {
  Rule out{r.name, {}, {}};
  for (const auto& f : r.antecedent) out.antecedent.push_back(substitute(f, s));
  for (const auto& f : r.succedent) out.succedent.push_back(substitute(f, s));
  return out;
}

namespace {
std::string join(const std::vector<Formula>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += render_formula(fs[i]);
  }
  return out;
}
}  // namespace

std::string render_rule(const Rule& r) {
  std::string ant = join(r.antecedent), suc = join(r.succedent);
  return (ant.empty() ? "" : ant + " ") + "/" + (suc.empty() ? "" : " " + suc);
}

const Rule* Calculus::find(const std::string& rule_name) const {
  for (const auto& r : rules)
    if (r.name == rule_name) return &r;
  return nullptr;
}

}  // namespace mvl
