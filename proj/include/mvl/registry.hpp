#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mvl/rule.hpp"
#include "mvl/semantics.hpp"

namespace mvl {

class NotFound : public Error {
 public:
  using Error::Error;
};

enum class EntryKind { Algebra, Matrix, MatrixClass, Calculus };

enum class TenVariant { Up, Leq };

namespace values {
// Indices of the six-valued carrier hf < f < {n, b} < t < ht.
inline constexpr int HF = 0, F = 1, N = 2, B = 3, T = 4, HT = 5;
// Indices of the ten-valued carrier.
inline constexpr int V_HF = 0, FM = 1, NM = 2, BM = 3, TM = 4, FP = 5, NP = 6, BP = 7, TP = 8, V_HT = 9;
}  // namespace values

const std::vector<std::string>& six_values();
const std::vector<std::string>& ten_values();

// Order of the six-valued lattice.
bool pp6_leq(int a, int b);
// Upset of a value in the six-valued lattice.
ValueSet pp6_upset(int a);

// Ten-valued construction: g collapses the polarity, inc marks jointly unrealisable value sets.
int ten_g(int v);
bool inc_up(ValueSet x);
bool inc_leq(ValueSet x);
PNMatrix build_ten_valued(TenVariant variant);

namespace registry {

std::shared_ptr<const MultiAlgebra> algebra(const std::string& name);
PNMatrix matrix(const std::string& name);
std::vector<PNMatrix> matrix_class(const std::string& name);
Calculus calculus(const std::string& name);
// The matrices against which the named calculus is sound.
std::vector<PNMatrix> declared_models(const std::string& calculus_name);
std::string declared_models_name(const std::string& calculus_name);

std::vector<std::string> names(EntryKind kind);
bool contains(EntryKind kind, const std::string& name);

}  // namespace registry

// Rule groups of the implicative calculi, also reachable through registry::calculus.
std::vector<Rule> rules_rb();
std::vector<Rule> rules_pp_extra();
std::vector<Rule> rules_cl();
std::vector<Rule> rules_h14();
std::vector<Rule> rules_diamond();
std::vector<Rule> rules_imp();
std::vector<Rule> rules_neg();
std::vector<Rule> rules_circ();
std::vector<Rule> rules_and();
std::vector<Rule> rules_or();
std::vector<Rule> rules_topbot();
std::vector<Rule> rules_d();
Rule rule_d_not_up_t();
std::vector<Rule> rules_letk_hand();
std::vector<Rule> rules_moisil();
Rule rule_m12();
std::vector<Rule> rules_pp_top_distinguishing();

std::vector<Formula> xi_pnc();
std::vector<Formula> xi_theta();

}  // namespace mvl
