#include <random>

#include "doctest.h"
#include "mvl/formula.hpp"
#include "mvl/sampling.hpp"

using namespace mvl;

namespace {

Formula P(const char* s) { return parse_formula(s); }

}  // namespace

TEST_CASE("parse_formula builds the expected trees") {
  SUBCASE("negated conjunction") {
    CHECK(P("~(p & q)") == f_neg(f_and(var("p"), var("q"))));
  }
  SUBCASE("implication associates to the right") {
    CHECK(P("p => q => r") == f_imp(var("p"), f_imp(var("q"), var("r"))));
  }
  SUBCASE("conjunction and disjunction associate to the left") {
    CHECK(P("p & q & r") == f_and(f_and(var("p"), var("q")), var("r")));
    CHECK(P("p | q | r") == f_or(f_or(var("p"), var("q")), var("r")));
  }
  SUBCASE("precedence is unary, then &, then |, then =>") {
    CHECK(P("~p & q | r => s") ==
          f_imp(f_or(f_and(f_neg(var("p")), var("q")), var("r")), var("s")));
    CHECK(P("@~p") == f_circ(f_neg(var("p"))));
  }
  SUBCASE("constants") {
    CHECK(P("top") == f_top());
    CHECK(P("bot") == f_bot());
    CHECK(P("top").arity() == 0);
  }
  SUBCASE("two parses of one text are the same object") {
    CHECK(P("(p => q) & @r").id() == P("(p=>q)&@r").id());
  }
}

TEST_CASE("macros expand at parse time") {
  const Formula p = var("p"), q = var("q");
  CHECK(P("up(p)") == f_circ(f_imp(f_neg(p), p)));
  CHECK(P("down(p)") == f_circ(f_imp(p, f_neg(p))));
  CHECK(P("hneg(p)") == f_imp(p, f_neg(f_imp(p, p))));
  CHECK(P("delta(p)") == P("hneg(~p)"));
  CHECK(P("nabla(p)") == f_or(p, f_neg(f_circ(p))));
  CHECK(P("wimp(p, q)") == f_or(f_or(f_neg(p), f_neg(f_circ(p))), q));
  CHECK(P("iff(p, q)") == f_and(f_imp(p, q), f_imp(q, p)));
  CHECK(m_up(p) == P("up(p)"));
  CHECK(m_delta(q) == P("delta(q)"));
  SUBCASE("macro definitions contain no macro symbols") {
    for (const auto& [name, macro] : derived_connectives())
      for (const auto& c : connectives_of(macro.definition)) CHECK(derived_connectives().count(c) == 0);
  }
  SUBCASE("up(p) has exactly four subformulas") {
    Decomposition d = decompose(P("up(p)"));
    CHECK(d.subformulas == FormulaSet{p, f_neg(p), f_imp(f_neg(p), p), P("up(p)")});
    CHECK(d.variables == std::set<std::string>{"p"});
  }
}

TEST_CASE("parse errors carry their kind") {
  CHECK_THROWS_AS(P("p &"), SyntaxError);
  CHECK_THROWS_AS(P("(p | q"), SyntaxError);
  CHECK_THROWS_AS(P("P"), SyntaxError);
  CHECK_THROWS_AS(P("up(p, q)"), ArityError);
  CHECK_THROWS_AS(P("frob(p)"), UnknownConnective);
  CHECK_THROWS_AS(parse_formula("p => q", sig_dm()), UnknownConnective);
  CHECK_THROWS_AS(parse_formula("@p", sig_dm()), UnknownConnective);
  try {
    P("p & & q");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("render_formula uses minimal parentheses") {
  CHECK(render_formula(P("p => (q => r)")) == "p => q => r");
  CHECK(render_formula(P("(p => q) => r")) == "(p => q) => r");
  CHECK(render_formula(P("~(p & q)")) == "~(p & q)");
  CHECK(render_formula(f_top()) == "top");
  CHECK(render_formula(P("p & (q & r)")) == "p & (q & r)");
  CHECK(render_formula(P("(p | q) & r")) == "(p | q) & r");
}

TEST_CASE("parse and render round trip on random formulas") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, sig_pp_imp(), {"p", "q", "r"}, 4);
    CHECK(parse_formula(render_formula(f)) == f);
  }
}

TEST_CASE("decompose") {
  Decomposition d = decompose(P("p & q"));
  CHECK(d.subformulas.size() == 3);
  CHECK(d.variables == std::set<std::string>{"p", "q"});
  Decomposition t = decompose(f_top());
  CHECK(t.subformulas == FormulaSet{f_top()});
  CHECK(t.variables.empty());
}

TEST_CASE("substitute") {
  CHECK(substitute(P("p => q"), {{"p", f_bot()}}) == P("bot => q"));
  CHECK(substitute(var("p"), {{"p", var("p")}}) == var("p"));
  CHECK(substitute(P("p & p"), {{"p", P("q | r")}}) == P("(q | r) & (q | r)"));
  CHECK_THROWS_AS(substitute(P("p & q"), {{"p", P("p => q")}}, sig_dm()), ArityError);
  SUBCASE("variables of the image are the union over the substituted variables") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
      Formula f = random_formula(rng, sig_pp_imp(), {"p", "q"}, 3);
      Substitution s{{"p", random_formula(rng, sig_pp_imp(), {"r", "s"}, 2)}, {"q", var("t")}};
      std::set<std::string> expected;
      for (const auto& v : variables_of(f)) {
        auto vs = variables_of(s.at(v));
        expected.insert(vs.begin(), vs.end());
      }
      CHECK(variables_of(substitute(f, s)) == expected);
    }
  }
}

TEST_CASE("generalized_subformulas") {
  const Formula p = var("p"), q = var("q");
  SUBCASE("one-variable generator") {
    FormulaSet got = generalized_subformulas({f_and(p, q)}, {f_circ(var("x"))});
    FormulaSet want{p, q, f_and(p, q), f_circ(p), f_circ(q), f_circ(f_and(p, q))};
    CHECK(got == want);
  }
  SUBCASE("no generators") { CHECK(generalized_subformulas({p}, {}) == FormulaSet{p}); }
  SUBCASE("two-variable generator over one subformula") {
    CHECK(generalized_subformulas({p}, {P("@(x => y)")}) == FormulaSet{p, P("@(p => p)")});
  }
  SUBCASE("size bound and monotonicity") {
    std::vector<Formula> base{P("~(p & q) | r")};
    std::vector<Formula> xi{P("@x"), P("@(x => y)")};
    FormulaSet small = generalized_subformulas(base, {xi[0]});
    FormulaSet big = generalized_subformulas(base, xi);
    std::size_t n = subformulas(base).size();
    CHECK(big.size() <= n + 2 * n * n);
    for (const auto& f : small) CHECK(big.count(f) == 1);
  }
  SUBCASE("variables as generators give back the subformulas") {
    std::vector<Formula> base{P("p => ~q")};
    CHECK(generalized_subformulas(base, {var("x")}) == subformulas(base));
  }
}
