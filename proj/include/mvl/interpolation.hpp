#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvl/semantics.hpp"

namespace mvl {

class PremiseNotEntailed : public Error {
 public:
  using Error::Error;
};

class NoSharedVariables : public Error {
 public:
  using Error::Error;
};

// OrderPreserving is the Set-Fmla logic of the prime-filter class of PP6
// with Heyting implication; Assertional is the logic of the matrix whose only
// designated value is ht.
enum class Logic { OrderPreserving, Assertional };

struct InterpolationInstance {
  std::vector<Formula> phi;
  std::vector<Formula> psi;
  Formula goal;
  Logic logic = Logic::OrderPreserving;
};

const std::vector<PNMatrix>& logic_models(Logic logic);
bool entails(Logic logic, const std::vector<Formula>& premises, const Formula& conclusion);

// {(and of psi) => goal}, verified semantically before returning.
std::vector<Formula> eip_interpolant(const InterpolationInstance& inst);

struct MaeharaResult {
  Formula xi;
  std::vector<std::string> shared;
  // Assignments of the shared variables (in the order of `shared`) forming U.
  std::vector<std::vector<int>> family;
  bool phi_entails_xi = false;
  bool xi_and_psi_entail_goal = false;
};

// The disjunct psi_v for one assignment of the shared variables.
Formula maehara_disjunct(const std::vector<std::string>& shared, const std::vector<int>& values);

// Works in the assertional logic whatever inst.logic says.
MaeharaResult maehara_interpolant(const InterpolationInstance& inst);

struct CipFunctionReport {
  Formula psi;            // in the variable s
  int value_at_witness;   // psi at the fixed valuation
  bool phi_entails_psi;   // over the order class
  bool psi_entails_goal;  // over the order class
  // The fixed valuation alone refutes one of the two entailments.
  bool refuted_at_witness;
};

struct CipReport {
  Formula phi;
  Formula goal;
  bool premise_entails_goal = false;
  std::map<std::string, int> witness;  // p=b, q=n, r=b, s=hf
  int phi_value = -1;
  int goal_value = -1;
  std::vector<CipFunctionReport> functions;
  std::size_t passing_first = 0;
  std::size_t passing_second = 0;
  std::size_t passing_both = 0;
};

CipReport cip_failure_certificate(bool parallel = true);

struct DdtResult {
  bool left = false;   // phi, a |- b
  bool right = false;  // phi |- a => b, or Delta a => b for the assertional logic
};

DdtResult check_ddt_instance(Logic logic, const std::vector<Formula>& phi, const Formula& a, const Formula& b);

}  // namespace mvl
