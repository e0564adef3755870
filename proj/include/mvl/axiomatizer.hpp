#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mvl/rule.hpp"
#include "mvl/semantics.hpp"

namespace mvl {

class NotARefinement : public Error {
 public:
  using Error::Error;
};

// Unary formulas (in the variable p) isolating each carrier value.
struct Discriminator {
  std::vector<std::vector<Formula>> pos;
  std::vector<std::vector<Formula>> neg;
};

struct DiscriminatorResult {
  std::optional<Discriminator> discriminator;
  // Set when some pair of values is not separated by the enumerated formulas.
  std::optional<std::pair<int, int>> witness;
  // True when the enumeration reached a fixpoint of unary set-functions, which
  // makes a NotMonadic verdict definitive.
  bool saturated = false;
  // True when the witness values generate isomorphic sub-multialgebras by a
  // map fixing designation, which also makes NotMonadic definitive.
  bool isomorphic_witness = false;
  int formulas_examined = 0;
  int distinct_functions = 0;
};

// The set-function of a unary formula: entry a lists every value the formula
// can take under a legal valuation sending p to a.
std::vector<ValueSet> unary_set_function(const PNMatrix& m, const Formula& f);

DiscriminatorResult find_discriminator(const PNMatrix& m, int max_depth);

// True when a bijection between the values reachable from a and from b sends
// a to b, preserves designation and commutes with every multioperation. Such
// values take matching truth values under every one-variable formula.
bool locally_isomorphic(const PNMatrix& m, int a, int b);

// Checks the defining conditions of a discriminator on every carrier value.
bool verify_discriminator(const PNMatrix& m, const Discriminator& d);

std::vector<Rule> generate_refinement_rules(const PNMatrix& base, const PNMatrix& refined, const Discriminator& d);

// Removes rules that are dilutions (up to variable renaming) of other kept rules.
std::vector<Rule> subsume_simplify(const std::vector<Rule>& rules);

// True when some renaming of variables maps general into specific as a dilution.
bool subsumes(const Rule& general, const Rule& specific);

}  // namespace mvl
