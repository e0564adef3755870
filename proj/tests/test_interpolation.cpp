#include <random>

#include "doctest.h"
#include "mvl/interpolation.hpp"
#include "mvl/registry.hpp"
#include "mvl/sampling.hpp"
#include "oracle.hpp"

using namespace mvl;
using namespace mvl::values;

namespace {

Formula P(const char* s) { return parse_formula(s); }

bool naive(Logic logic, const std::vector<Formula>& prem, const Formula& goal) {
  return oracle::entails(logic_models(logic), prem, {goal});
}

}  // namespace

TEST_CASE("the two logics") {
  CHECK(logic_models(Logic::OrderPreserving).size() == 3);
  REQUIRE(logic_models(Logic::Assertional).size() == 1);
  CHECK(logic_models(Logic::Assertional)[0].designated == bit(HT));
  SUBCASE("entails agrees with the naive enumerator") {
    SampleSpec spec;
    spec.variables = {"p", "q"};
    spec.max_goals = 1;
    for (Logic logic : {Logic::OrderPreserving, Logic::Assertional})
      for (const auto& s : random_sequents(61, 60, sig_pp_imp(), spec))
        CHECK(entails(logic, s.premises, s.goal[0]) == naive(logic, s.premises, s.goal[0]));
  }
  SUBCASE("modus ponens and the deduction theorem separate the logics") {
    CHECK(entails(Logic::OrderPreserving, {P("p"), P("p => q")}, P("q")));
    CHECK(entails(Logic::Assertional, {P("p"), P("p => q")}, P("q")));
    CHECK(entails(Logic::Assertional, {P("p")}, P("@p")));
    CHECK_FALSE(entails(Logic::OrderPreserving, {P("p")}, P("@p")));
    CHECK_FALSE(entails(Logic::Assertional, {}, P("p => @p")));
  }
}

TEST_CASE("deduction theorem instances") {
  std::mt19937_64 rng(2718);
  for (int i = 0; i < 60; ++i) {
    std::vector<Formula> phi{random_formula(rng, sig_pp_imp(), {"p", "q"}, 2)};
    Formula a = random_formula(rng, sig_pp_imp(), {"p", "q"}, 2);
    Formula b = random_formula(rng, sig_pp_imp(), {"p", "q"}, 2);
    DdtResult op = check_ddt_instance(Logic::OrderPreserving, phi, a, b);
    CHECK(op.left == op.right);
    std::vector<Formula> with_a = phi;
    with_a.push_back(a);
    CHECK(op.left == naive(Logic::OrderPreserving, with_a, b));
    CHECK(op.right == naive(Logic::OrderPreserving, phi, f_imp(a, b)));
    DdtResult as = check_ddt_instance(Logic::Assertional, phi, a, b);
    CHECK(as.left == as.right);
    CHECK(as.right == naive(Logic::Assertional, phi, f_imp(m_delta(a), b)));
  }
}

TEST_CASE("EIP interpolants") {
  InterpolationInstance inst{{P("p & q")}, {P("q => r")}, P("r")};
  auto xi = eip_interpolant(inst);
  REQUIRE(xi.size() == 1);
  CHECK(xi[0] == P("(q => r) => r"));
  CHECK(naive(Logic::OrderPreserving, inst.phi, xi[0]));
  std::vector<Formula> both = xi;
  both.insert(both.end(), inst.psi.begin(), inst.psi.end());
  CHECK(naive(Logic::OrderPreserving, both, inst.goal));
  SUBCASE("an instance that is not entailed is rejected") {
    CHECK_THROWS_AS(eip_interpolant({{P("p")}, {P("q")}, P("r")}), PremiseNotEntailed);
  }
}

TEST_CASE("Maehara interpolants") {
  SUBCASE("a shared-variable interpolant for a modus ponens split") {
    InterpolationInstance inst{{P("p"), P("p => q")}, {P("q => r")}, P("r")};
    MaeharaResult r = maehara_interpolant(inst);
    CHECK(r.shared == std::vector<std::string>{"q"});
    CHECK(r.phi_entails_xi);
    CHECK(r.xi_and_psi_entail_goal);
    for (const auto& v : variables_of(r.xi)) CHECK(v == "q");
    CHECK(naive(Logic::Assertional, inst.phi, r.xi));
    CHECK(naive(Logic::Assertional, {r.xi, P("q => r")}, P("r")));
  }
  SUBCASE("disjuncts pin the shared variables up to the swap of n and b") {
    const PNMatrix& m = logic_models(Logic::Assertional)[0];
    for (int target = 0; target < 6; ++target) {
      Formula d = maehara_disjunct({"q"}, {target});
      for (int v = 0; v < 6; ++v) {
        bool same = v == target || (v == N && target == B) || (v == B && target == N);
        CHECK(oracle::designated(m, oracle::eval(m.alg(), d, {{"q", v}})) == same);
      }
    }
    // With two shared variables, distinct middle values are told apart from equal ones.
    Formula bn = maehara_disjunct({"p", "q"}, {B, N});
    CHECK(oracle::designated(m, oracle::eval(m.alg(), bn, {{"p", B}, {"q", N}})));
    CHECK(oracle::designated(m, oracle::eval(m.alg(), bn, {{"p", N}, {"q", B}})));
    CHECK_FALSE(oracle::designated(m, oracle::eval(m.alg(), bn, {{"p", B}, {"q", B}})));
    CHECK_FALSE(oracle::designated(m, oracle::eval(m.alg(), bn, {{"p", N}, {"q", N}})));
  }
  SUBCASE("no shared variables") {
    CHECK_THROWS_AS(maehara_interpolant({{P("p")}, {P("q")}, P("q")}), NoSharedVariables);
  }
  SUBCASE("premises that do not entail the goal") {
    CHECK_THROWS_AS(maehara_interpolant({{P("q")}, {P("p")}, P("r & q")}), PremiseNotEntailed);
  }
}

TEST_CASE("CIP failure certificate") {
  CipReport serial = cip_failure_certificate(false);
  CipReport parallel = cip_failure_certificate(true);
  CHECK(serial.premise_entails_goal);
  CHECK(serial.functions.size() == 192);
  CHECK(serial.passing_both == 0);
  CHECK(serial.passing_first == parallel.passing_first);
  CHECK(serial.passing_second == parallel.passing_second);
  CHECK(serial.witness == std::map<std::string, int>{{"p", B}, {"q", N}, {"r", B}, {"s", HF}});
  SUBCASE("the premise really entails the goal") {
    CHECK(naive(Logic::OrderPreserving, {serial.phi}, serial.goal));
  }
  SUBCASE("each candidate is checked against the oracle") {
    for (std::size_t i = 0; i < serial.functions.size(); i += 16) {
      const auto& f = serial.functions[i];
      CHECK(f.phi_entails_psi == naive(Logic::OrderPreserving, {serial.phi}, f.psi));
      CHECK(f.psi_entails_goal == naive(Logic::OrderPreserving, {f.psi}, serial.goal));
      CHECK_FALSE((f.phi_entails_psi && f.psi_entails_goal));
    }
  }
}
