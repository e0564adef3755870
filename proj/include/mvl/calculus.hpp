#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvl/registry.hpp"
#include "mvl/rule.hpp"
#include "mvl/semantics.hpp"

namespace mvl {

class MissingDisjunction : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

struct DerivationNode {
  std::vector<Formula> label;
  // Empty for leaves; otherwise the rule applied at this node.
  std::string rule;
  Substitution substitution;
  std::vector<int> children;
  // A `*` leaf, child of an expansion by a rule with empty succedent.
  bool star = false;
};

struct DerivationTree {
  std::vector<DerivationNode> nodes;  // nodes[0] is the root
  int size() const { return static_cast<int>(nodes.size()); }
};

struct SaturatedPartition {
  FormulaSet omega;
  FormulaSet omega_bar;
};

struct Budget {
  std::uint64_t max_nodes = 1000000;
  double max_seconds = 0;  // 0 means no wall-clock cap
};

enum class ProveStatus { Proved, Refuted, OutOfBudget };

struct ProveResult {
  ProveStatus status = ProveStatus::OutOfBudget;
  std::optional<DerivationTree> tree;
  std::optional<SaturatedPartition> partition;
  std::uint64_t nodes_expanded = 0;
  std::size_t candidate_count = 0;
  std::size_t instance_count = 0;
};

ProveResult prove(const Calculus& c, const std::vector<Formula>& premises, const std::vector<Formula>& goal,
                  const Budget& budget = {});

struct TreeCheck {
  bool ok = true;
  int node = -1;
  std::string reason;
};

TreeCheck validate_tree(const Calculus& c, const DerivationTree& t, const std::vector<Formula>& premises,
                        const std::vector<Formula>& goal);

// Every formula the search may consider: Upsilon^Xi(premises and goal).
std::vector<Formula> candidate_set(const Calculus& c, const std::vector<Formula>& premises,
                                   const std::vector<Formula>& goal);

// Checks the partition invariants against the calculus (disjointness, cover, saturation).
TreeCheck validate_partition(const Calculus& c, const SaturatedPartition& part, const std::vector<Formula>& premises,
                             const std::vector<Formula>& goal);

struct Countermodel {
  ValuationWitness valuation;  // over PP6 with implication, on the classified formulas
  int filter_generator = -1;   // a in the designated filter up-set of a
  PNMatrix matrix;             // the six-valued matrix with designated set the up-set of a
  std::map<Formula, int> classification;
};

Countermodel countermodel_from_partition(const SaturatedPartition& part, const std::vector<Formula>& lambda,
                                         TenVariant variant);

// Throws MissingDisjunction when sig lacks a binary `or`.
Calculus to_set_fmla_calculus(const Calculus& c, const Signature& sig = sig_pp_imp());

// A Set-Fmla derivation as a list of steps, each concluding one formula.
struct DerivationStep {
  Formula formula;
  std::string rule;  // empty for a premise
  Substitution substitution;
};

struct SetFmlaDerivation {
  std::vector<DerivationStep> steps;
};

TreeCheck validate_set_fmla_derivation(const Calculus& c, const SetFmlaDerivation& d,
                                       const std::vector<Formula>& premises, const Formula& goal);

// Converts a Set-Set proof of premises / goal in c into a derivation in to_set_fmla_calculus(c).
SetFmlaDerivation translate_to_set_fmla(const Calculus& c, const DerivationTree& t,
                                        const std::vector<Formula>& premises, const Formula& goal);

// Bounded forward chaining for Set-Fmla calculi without an analyticity set.
struct ForwardResult {
  ProveStatus status = ProveStatus::OutOfBudget;
  std::optional<SetFmlaDerivation> derivation;
  std::uint64_t formulas_generated = 0;
};

ForwardResult forward_search(const Calculus& c, const std::vector<Formula>& premises, const Formula& goal,
                             int max_rounds, std::uint64_t max_formulas);

// Export helpers.
std::string tree_to_dot(const DerivationTree& t);
std::string render_substitution(const Substitution& s);

}  // namespace mvl
