#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvl/semantics.hpp"

namespace mvl {

class TooManyVariables : public Error {
 public:
  using Error::Error;
};

class CarrierTooLarge : public Error {
 public:
  using Error::Error;
};

class MissingConnective : public Error {
 public:
  using Error::Error;
};

inline constexpr int kDefaultCarrierBound = 12;

// A deterministic total algebra with its lattice order when the lattice
// connectives are present.
class FiniteAlgebra {
 public:
  explicit FiniteAlgebra(std::shared_ptr<const MultiAlgebra> alg);

  const MultiAlgebra& base() const { return *alg_; }
  std::shared_ptr<const MultiAlgebra> shared() const { return alg_; }
  int size() const { return alg_->size(); }
  bool has(const std::string& conn) const { return alg_->has(conn); }
  int op(const std::string& conn, const std::vector<int>& args) const { return alg_->apply(conn, args); }

  bool is_lattice() const { return lattice_; }
  // a <= b iff a and b = a; throws MissingConnective without `and`.
  bool leq(int a, int b) const;
  int top() const { return alg_->constant("top"); }
  int bottom() const { return alg_->constant("bot"); }

  // Value of a formula under an assignment of its variables.
  int eval(const Formula& f, const std::map<std::string, int>& assignment) const;

 private:
  std::shared_ptr<const MultiAlgebra> alg_;
  bool lattice_ = false;
};

struct IdentityResult {
  bool valid = true;
  std::map<std::string, int> counterexample;
};

// Exhaustive check of lhs = rhs; the first counterexample in the order that
// enumerates assignments lexicographically over the sorted variables.
IdentityResult check_identity(const FiniteAlgebra& alg, const Formula& lhs, const Formula& rhs, int max_vars = 4);
// lhs <= rhs, checked as lhs = lhs and rhs.
IdentityResult check_inequality(const FiniteAlgebra& alg, const Formula& lhs, const Formula& rhs, int max_vars = 4);

struct SuiteResult {
  std::string name;
  bool applicable = true;
  bool holds = false;
  std::string missing;  // connective that made the suite inapplicable
  std::string failing;  // first failing equation, rendered
  std::map<std::string, int> counterexample;
};

struct VarietyProfile {
  std::set<std::string> names;
  std::vector<SuiteResult> suites;
};

VarietyProfile variety_profile(const FiniteAlgebra& alg);

// Delta as x and circ x when circ is present, otherwise the negation-based
// form built from implication and De Morgan negation.
Formula delta_term(const FiniteAlgebra& alg, const Formula& x);

struct Congruence {
  // block_of[i] is the block index of element i; blocks are numbered in
  // order of their least element.
  std::vector<int> block_of;

  std::vector<std::vector<int>> blocks() const;
  int block_count() const;
  bool is_identity() const { return block_count() == static_cast<int>(block_of.size()); }
  bool is_total() const { return block_count() == 1; }
  bool related(int a, int b) const { return block_of[a] == block_of[b]; }
  bool refines(const Congruence& coarser) const;
  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;
};

Congruence identity_congruence(int n);
Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b);
Congruence congruence_join(const Congruence& x, const Congruence& y);
Congruence congruence_meet(const Congruence& x, const Congruence& y);
bool is_congruence(const FiniteAlgebra& alg, const Congruence& c);

// All congruences, finest first.
std::vector<Congruence> congruences(const FiniteAlgebra& alg, int max_carrier = kDefaultCarrierBound);
bool is_simple(const FiniteAlgebra& alg, int max_carrier = kDefaultCarrierBound);

struct Reduction {
  Congruence leibniz;
  PNMatrix quotient;
  bool reduced = false;
};

Reduction leibniz_and_reduce(const PNMatrix& m, int max_carrier = kDefaultCarrierBound);

enum class FilterFlavor { Lattice, Principal, Prime, Regular };

std::vector<ValueSet> filters(const FiniteAlgebra& alg, FilterFlavor flavor, int max_carrier = kDefaultCarrierBound);
// Lattice filters closed under contraposition: a => b in F gives ~b => ~a in F.
std::vector<ValueSet> contraposition_closed_filters(const FiniteAlgebra& alg,
                                                    int max_carrier = kDefaultCarrierBound);
ValueSet upset(const FiniteAlgebra& alg, int a);

std::vector<ValueSet> subalgebras(const FiniteAlgebra& alg, int max_carrier = kDefaultCarrierBound);
// One representative per isomorphism class of the subalgebras above.
std::vector<ValueSet> subalgebras_up_to_isomorphism(const FiniteAlgebra& alg,
                                                    int max_carrier = kDefaultCarrierBound);
bool subalgebras_isomorphic(const FiniteAlgebra& alg, ValueSet x, ValueSet y);

struct ResiduumResult {
  std::optional<OpTable> table;
  std::optional<std::pair<int, int>> not_residuated;
};

ResiduumResult residuum_of_meet(const FiniteAlgebra& alg);

struct UnaryFunction {
  std::vector<int> map;
  Formula witness;  // a formula in the single variable p
};

std::vector<UnaryFunction> unary_term_functions(const FiniteAlgebra& alg, int max_carrier = kDefaultCarrierBound);

}  // namespace mvl
