#include "mvl/interpolation.hpp"

#include <algorithm>
#include <set>

#include "mvl/algebra.hpp"
#include "mvl/registry.hpp"

namespace mvl {

using namespace values;

const std::vector<PNMatrix>& logic_models(Logic logic) {
  static const std::vector<PNMatrix> order = registry::matrix_class("pp6h-order");
  static const std::vector<PNMatrix> top = {registry::matrix("pp6h-top")};
  return logic == Logic::OrderPreserving ? order : top;
}

bool entails(Logic logic, const std::vector<Formula>& premises, const Formula& conclusion) {
  return check_consequence({logic_models(logic), premises, {conclusion}, Mode::SetFmla}).holds;
}

std::vector<Formula> eip_interpolant(const InterpolationInstance& inst) {
  std::vector<Formula> all = inst.phi;
  all.insert(all.end(), inst.psi.begin(), inst.psi.end());
  if (!entails(inst.logic, all, inst.goal)) throw PremiseNotEntailed("the premises do not entail the goal");
  Formula pi = f_imp(big_and(inst.psi), inst.goal);
  if (!entails(inst.logic, inst.phi, pi)) throw Error("interpolant is not entailed by phi");
  std::vector<Formula> back = inst.psi;
  back.push_back(pi);
  if (!entails(inst.logic, back, inst.goal)) throw Error("interpolant with psi does not entail the goal");
  return {pi};
}

Formula maehara_disjunct(const std::vector<std::string>& shared, const std::vector<int>& values) {
  std::vector<Formula> conj;
  for (std::size_t i = 0; i < shared.size(); ++i) {
    Formula p = var(shared[i]);
    switch (values[i]) {
      case HT:
        conj.push_back(f_and(p, f_circ(p)));
        break;
      case T:
        conj.push_back(f_neg(m_down(p)));
        break;
      case B:
      case N:
        conj.push_back(f_and(f_and(m_up(p), m_down(p)), f_neg(f_circ(p))));
        break;
      case F:
        conj.push_back(f_neg(m_up(p)));
        break;
      default:
        conj.push_back(f_and(f_neg(p), f_circ(p)));
        break;
    }
  }
  for (std::size_t i = 0; i < shared.size(); ++i)
    for (std::size_t j = 0; j < shared.size(); ++j)
      if (values[i] == B && values[j] == N) conj.push_back(f_neg(f_circ(f_imp(var(shared[i]), var(shared[j])))));
  return big_and(conj);
}

MaeharaResult maehara_interpolant(const InterpolationInstance& inst) {
  std::set<std::string> left = variables_of(inst.phi);
  std::vector<Formula> right_fs = inst.psi;
  right_fs.push_back(inst.goal);
  std::set<std::string> right = variables_of(right_fs);
  MaeharaResult res;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(res.shared));
  if (res.shared.empty()) throw NoSharedVariables("phi shares no variable with psi and the goal");
  std::vector<Formula> all = inst.phi;
  all.insert(all.end(), inst.psi.begin(), inst.psi.end());
  if (!entails(Logic::Assertional, all, inst.goal)) throw PremiseNotEntailed("the premises do not entail the goal");

  const PNMatrix& m = logic_models(Logic::Assertional).front();
  std::vector<Formula> domain = inst.phi;
  for (const auto& v : res.shared) domain.push_back(var(v));
  const int k = static_cast<int>(res.shared.size());
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= 6;
  std::vector<char> member(total, 0);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < static_cast<long>(total); ++idx) {
    std::map<Formula, ValueSet> cons;
    std::size_t rem = static_cast<std::size_t>(idx);
    for (int i = k - 1; i >= 0; --i, rem /= 6) cons[var(res.shared[i])] = bit(static_cast<int>(rem % 6));
    for (const auto& f : inst.phi) {
      auto [it, fresh] = cons.emplace(f, bit(HT));
      if (!fresh) it->second &= bit(HT);
    }
    member[idx] = satisfiable(m, domain, cons) ? 1 : 0;
  }
  std::vector<Formula> disjuncts;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!member[idx]) continue;
    std::vector<int> vals(k);
    std::size_t rem = idx;
    for (int i = k - 1; i >= 0; --i, rem /= 6) vals[i] = static_cast<int>(rem % 6);
    disjuncts.push_back(maehara_disjunct(res.shared, vals));
    res.family.push_back(std::move(vals));
  }
  res.xi = big_or(disjuncts);
  res.phi_entails_xi = entails(Logic::Assertional, inst.phi, res.xi);
  std::vector<Formula> back = inst.psi;
  back.push_back(res.xi);
  res.xi_and_psi_entail_goal = entails(Logic::Assertional, back, inst.goal);
  return res;
}

CipReport cip_failure_certificate(bool parallel) {
  CipReport rep;
  const Signature sig = sig_pp_imp();
  rep.phi = parse_formula("(p & ~p & q & ~q & ~@(p => q)) | s", sig);
  rep.goal = parse_formula("(r | ~r) | s", sig);
  rep.premise_entails_goal = entails(Logic::OrderPreserving, {rep.phi}, rep.goal);
  rep.witness = {{"p", B}, {"q", N}, {"r", B}, {"s", HF}};
  FiniteAlgebra alg(registry::algebra("pp6h"));
  rep.phi_value = alg.eval(rep.phi, rep.witness);
  rep.goal_value = alg.eval(rep.goal, rep.witness);

  std::vector<UnaryFunction> clone = unary_term_functions(alg);
  rep.functions.resize(clone.size());
  auto judge = [&](std::size_t i) {
    CipFunctionReport& fr = rep.functions[i];
    fr.psi = substitute(clone[i].witness, {{"p", var("s")}});
    fr.value_at_witness = clone[i].map[HF];
    fr.phi_entails_psi = entails(Logic::OrderPreserving, {rep.phi}, fr.psi);
    fr.psi_entails_goal = entails(Logic::OrderPreserving, {fr.psi}, rep.goal);
    // Under the order logic, a single valuation refutes phi |- psi exactly
    // when v(phi) <= v(psi) fails, and psi |- goal when v(psi) <= v(goal) fails.
    fr.refuted_at_witness = !alg.leq(rep.phi_value, fr.value_at_witness) || !alg.leq(fr.value_at_witness, rep.goal_value);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(clone.size()); ++i) judge(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < clone.size(); ++i) judge(i);
  }
  for (const auto& fr : rep.functions) {
    if (fr.phi_entails_psi) ++rep.passing_first;
    if (fr.psi_entails_goal) ++rep.passing_second;
    if (fr.phi_entails_psi && fr.psi_entails_goal) ++rep.passing_both;
  }
  return rep;
}

DdtResult check_ddt_instance(Logic logic, const std::vector<Formula>& phi, const Formula& a, const Formula& b) {
  DdtResult r;
  std::vector<Formula> left = phi;
  left.push_back(a);
  r.left = entails(logic, left, b);
  Formula guard = logic == Logic::OrderPreserving ? a : m_delta(a);
  r.right = entails(logic, phi, f_imp(guard, b));
  return r;
}

}  // namespace mvl
