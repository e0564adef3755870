#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvl/calculus.hpp"

namespace mvl {

struct Sequent {
  std::vector<Formula> premises;
  std::vector<Formula> goal;
};

struct SampleSpec {
  std::vector<std::string> variables{"p", "q", "r"};
  int max_depth = 2;
  int max_premises = 2;
  int max_goals = 2;
  // Probability that a goal formula is drawn from the premises' subformulas.
  double reuse = 0.3;
};

Formula random_formula(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars, int depth);
Sequent random_sequent(std::mt19937_64& rng, const Signature& sig, const SampleSpec& spec);
std::vector<Sequent> random_sequents(std::uint64_t seed, std::size_t count, const Signature& sig,
                                     const SampleSpec& spec = {});

struct AgreementReport {
  std::size_t total = 0;
  std::size_t agree = 0;
  std::size_t proved = 0;
  std::size_t refuted = 0;
  std::size_t out_of_budget = 0;
  std::vector<std::size_t> disagreements;  // indices into the sequent list
  double seconds = 0;
};

// Compares the decision of prove with check_consequence over the models.
// Sequents are independent, so the parallel and serial runs agree exactly.
AgreementReport prove_vs_semantics(const Calculus& c, const std::vector<PNMatrix>& models,
                                   const std::vector<Sequent>& sequents, const Budget& budget = {},
                                   bool parallel = true);

// Compares check_consequence on two model lists.
AgreementReport semantics_vs_semantics(const std::vector<PNMatrix>& lhs, const std::vector<PNMatrix>& rhs,
                                       const std::vector<Sequent>& sequents, bool parallel = true);

}  // namespace mvl
