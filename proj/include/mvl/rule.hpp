#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvl/formula.hpp"

namespace mvl {

// A Set-Set inference rule: antecedent formulas over succedent formulas.
struct Rule {
  std::string name;
  std::vector<Formula> antecedent;
  std::vector<Formula> succedent;

  bool operator==(const Rule&) const = default;
};

// Builds a rule from formula texts in the concrete grammar.
Rule make_rule(std::string name, const std::vector<std::string>& antecedent,
               const std::vector<std::string>& succedent, const Signature& sig = sig_pp_imp());

enum class Framework { SetSet, SetFmla };

struct Calculus {
  std::string name;
  std::vector<Rule> rules;
  // Analyticity generators; absent means proof search is depth-bounded only.
  std::optional<std::vector<Formula>> xi;
  Framework framework = Framework::SetSet;

  const Rule* find(const std::string& rule_name) const;
};

Rule substitute_rule(const Rule& r, const Substitution& s);
std::string render_rule(const Rule& r);

}  // namespace mvl
