#include "mvl/sampling.hpp"

#include <chrono>
#include <functional>

namespace mvl {

Formula random_formula(std::mt19937_64& rng, const Signature& sig, const std::vector<std::string>& vars, int depth) {
  std::vector<std::pair<std::string, int>> ops;
  std::vector<std::string> constants;
  for (const auto& [name, arity] : sig.connectives) {
    if (arity == 0) {
      constants.push_back(name);
    } else {
      ops.emplace_back(name, arity);
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (depth <= 0 || ops.empty() || unit(rng) < 0.3) {
    std::size_t pool = vars.size() + constants.size();
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng);
    // Constants are drawn less often than variables.
    if (k >= vars.size() && unit(rng) < 0.5) k = std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng);
    return k < vars.size() ? var(vars[k]) : Formula::app(constants[k - vars.size()], {});
  }
  const auto& [name, arity] = ops[std::uniform_int_distribution<std::size_t>(0, ops.size() - 1)(rng)];
  std::vector<Formula> args;
  for (int i = 0; i < arity; ++i) args.push_back(random_formula(rng, sig, vars, depth - 1));
  return Formula::app(name, args);
}

Sequent random_sequent(std::mt19937_64& rng, const Signature& sig, const SampleSpec& spec) {
  Sequent s;
  int np = std::uniform_int_distribution<int>(0, spec.max_premises)(rng);
  int ng = std::uniform_int_distribution<int>(1, std::max(1, spec.max_goals))(rng);
  for (int i = 0; i < np; ++i) s.premises.push_back(random_formula(rng, sig, spec.variables, spec.max_depth));
  std::vector<Formula> pool;
  for (const auto& f : subformulas(s.premises)) pool.push_back(f);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < ng; ++i) {
    if (!pool.empty() && unit(rng) < spec.reuse) {
      s.goal.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    } else {
      s.goal.push_back(random_formula(rng, sig, spec.variables, spec.max_depth));
    }
  }
  return s;
}

std::vector<Sequent> random_sequents(std::uint64_t seed, std::size_t count, const Signature& sig,
                                     const SampleSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<Sequent> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_sequent(rng, sig, spec));
  return out;
}

namespace {

AgreementReport sweep(std::size_t n, bool parallel, const std::function<int(std::size_t)>& judge) {
  // judge returns 1 for agreement with a proof, 2 for agreement with a
  // refutation, 0 for disagreement and -1 for exhausted budget.
  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> verdict(n, 0);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(n); ++i) verdict[i] = judge(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) verdict[i] = judge(i);
  }
  AgreementReport r;
  r.total = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (verdict[i] > 0) ++r.agree;
    if (verdict[i] == 1) ++r.proved;
    if (verdict[i] == 2) ++r.refuted;
    if (verdict[i] == -1) ++r.out_of_budget;
    if (verdict[i] <= 0) r.disagreements.push_back(i);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

AgreementReport prove_vs_semantics(const Calculus& c, const std::vector<PNMatrix>& models,
                                   const std::vector<Sequent>& sequents, const Budget& budget, bool parallel) {
  return sweep(sequents.size(), parallel, [&](std::size_t i) {
    const Sequent& s = sequents[i];
    ProveResult pr = prove(c, s.premises, s.goal, budget);
    if (pr.status == ProveStatus::OutOfBudget) return -1;
    ConsequenceProblem cp{models, s.premises, s.goal,
                          c.framework == Framework::SetFmla ? Mode::SetFmla : Mode::SetSet};
    bool holds = check_consequence(cp).holds;
    bool proved = pr.status == ProveStatus::Proved;
    if (holds != proved) return 0;
    return proved ? 1 : 2;
  });
}

AgreementReport semantics_vs_semantics(const std::vector<PNMatrix>& lhs, const std::vector<PNMatrix>& rhs,
                                       const std::vector<Sequent>& sequents, bool parallel) {
  return sweep(sequents.size(), parallel, [&](std::size_t i) {
    const Sequent& s = sequents[i];
    bool a = check_consequence({lhs, s.premises, s.goal, Mode::SetSet}).holds;
    bool b = check_consequence({rhs, s.premises, s.goal, Mode::SetSet}).holds;
    if (a != b) return 0;
    return a ? 1 : 2;
  });
}

}  // namespace mvl
