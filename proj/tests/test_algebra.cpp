#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "mvl/algebra.hpp"
#include "mvl/registry.hpp"
#include "oracle.hpp"

using namespace mvl;
using namespace mvl::values;

namespace {

Formula P(const char* s) { return parse_formula(s); }

FiniteAlgebra A(const char* name) { return FiniteAlgebra(registry::algebra(name)); }

// Every argument tuple of the given arity over n values.
std::vector<std::vector<int>> tuples(int n, int arity) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < arity; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (int v = 0; v < n; ++v) {
        auto u = t;
        u.push_back(v);
        next.push_back(u);
      }
    out = next;
  }
  return out;
}

// Every partition of {0..n-1} as a restricted growth string.
std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> go = [&](int i, int used) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      cur[i] = b;
      go(i + 1, std::max(used, b + 1));
    }
  };
  go(0, 0);
  return out;
}

bool compatible(const FiniteAlgebra& a, const std::vector<int>& block) {
  for (const auto& [conn, t] : a.base().ops())
    for (const auto& x : tuples(a.size(), t.arity))
      for (const auto& y : tuples(a.size(), t.arity)) {
        bool rel = true;
        for (int i = 0; i < t.arity; ++i) rel = rel && block[x[i]] == block[y[i]];
        if (rel && block[a.op(conn, x)] != block[a.op(conn, y)]) return false;
      }
  return true;
}

std::set<std::vector<int>> naive_congruences(const FiniteAlgebra& a) {
  std::set<std::vector<int>> out;
  for (const auto& p : partitions(a.size()))
    if (compatible(a, p)) out.insert(p);
  return out;
}

std::set<ValueSet> naive_subalgebras(const FiniteAlgebra& a) {
  std::set<ValueSet> out;
  for (ValueSet x = 1; x <= a.base().full(); ++x) {
    bool closed = true;
    for (const auto& [conn, t] : a.base().ops())
      for (const auto& args : tuples(a.size(), t.arity)) {
        bool inside = std::all_of(args.begin(), args.end(), [&](int v) { return (x & bit(v)) != 0; });
        if (inside && !(x & bit(a.op(conn, args)))) closed = false;
      }
    if (closed) out.insert(x);
  }
  return out;
}

std::set<ValueSet> naive_lattice_filters(const FiniteAlgebra& a) {
  std::set<ValueSet> out;
  for (ValueSet x = 1; x <= a.base().full(); ++x) {
    bool ok = true;
    for (int u = 0; u < a.size(); ++u)
      for (int v = 0; v < a.size(); ++v) {
        bool in_u = x & bit(u), in_v = x & bit(v);
        if (in_u && a.leq(u, v) && !in_v) ok = false;
        if (in_u && in_v && !(x & bit(a.op("and", {u, v})))) ok = false;
      }
    if (ok) out.insert(x);
  }
  return out;
}

std::set<ValueSet> as_set(const std::vector<ValueSet>& v) { return {v.begin(), v.end()}; }

// The diamond lattice with three atoms, which is not distributive.
std::shared_ptr<MultiAlgebra> make_m3() {
  auto m = std::make_shared<MultiAlgebra>("M3", std::vector<std::string>{"0", "a", "b", "c", "1"});
  auto le = [](int x, int y) { return x == y || x == 0 || y == 4; };
  auto meet = [&](int x, int y) { return le(x, y) ? x : le(y, x) ? y : 0; };
  auto join = [&](int x, int y) { return le(x, y) ? y : le(y, x) ? x : 4; };
  m->define("and", make_table(5, 2, [&](const std::vector<int>& v) { return meet(v[0], v[1]); }));
  m->define("or", make_table(5, 2, [&](const std::vector<int>& v) { return join(v[0], v[1]); }));
  return m;
}

}  // namespace

TEST_CASE("identities") {
  FiniteAlgebra h = A("pp6h");
  CHECK(check_identity(h, P("p & (q | r)"), P("(p & q) | (p & r)")).valid);
  CHECK(check_identity(h, P("~~p"), P("p")).valid);
  CHECK(check_identity(h, P("p => (q => p)"), P("top")).valid);
  SUBCASE("excluded middle fails first at f") {
    IdentityResult r = check_identity(h, P("p | ~p"), P("top"));
    CHECK_FALSE(r.valid);
    CHECK(r.counterexample == std::map<std::string, int>{{"p", F}});
  }
  SUBCASE("inequalities") {
    CHECK(check_inequality(h, P("p & q"), P("p")).valid);
    CHECK_FALSE(check_inequality(h, P("p"), P("p & q")).valid);
    CHECK(check_inequality(h, P("p & (p => q)"), P("q")).valid);
  }
  SUBCASE("variable bound") {
    CHECK_THROWS_AS(check_identity(h, P("p & q & r & s & t"), P("p"), 4), TooManyVariables);
  }
  SUBCASE("evaluation agrees with the table oracle") {
    Formula f = P("(p => ~q) | @(q & p)");
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) {
        std::map<std::string, int> asg{{"p", p}, {"q", q}};
        CHECK(h.eval(f, asg) == oracle::eval(h.base(), f, asg));
      }
  }
}

TEST_CASE("variety profiles") {
  CHECK(variety_profile(A("pp6h")).names ==
        std::set<std::string>{"DeMorgan", "DeltaIdempotent", "InvolutiveStone", "PP", "PPImp", "SymmetricHeyting"});
  CHECK(variety_profile(A("pp6")).names == std::set<std::string>{"DeMorgan", "InvolutiveStone", "PP"});
  CHECK(variety_profile(A("dm4")).names == std::set<std::string>{"DeMorgan"});
  SUBCASE("inapplicable suites name the missing connective") {
    for (const auto& s : variety_profile(A("dm4")).suites)
      if (!s.applicable) CHECK_FALSE(s.missing.empty());
  }
  SUBCASE("the delta terms coincide where both forms exist") {
    FiniteAlgebra h = A("pp6h");
    Formula circ_form = f_and(var("p"), f_circ(var("p")));
    CHECK(check_identity(h, delta_term(h, var("p")), circ_form).valid);
    CHECK(check_identity(h, circ_form, P("delta(p)")).valid);
  }
}

TEST_CASE("congruences match the brute-force partition search") {
  for (const char* name : {"dm3", "dm4", "pp3", "pp4", "pp5", "pp6", "pp6h", "letk"}) {
    FiniteAlgebra a = A(name);
    std::set<std::vector<int>> got;
    for (const auto& c : congruences(a)) {
      got.insert(c.block_of);
      CHECK(is_congruence(a, c));
    }
    CHECK(got == naive_congruences(a));
    CHECK(is_simple(a) == (got.size() == 2));
  }
  CHECK(is_simple(A("pp6h")));
  CHECK_FALSE(is_simple(A("pp6")));
}

TEST_CASE("congruences form a lattice") {
  FiniteAlgebra a = A("pp6");
  auto cs = congruences(a);
  CHECK(cs.front().is_identity());
  CHECK(cs.back().is_total());
  for (const auto& x : cs)
    for (const auto& y : cs) {
      Congruence j = congruence_join(x, y), m = congruence_meet(x, y);
      CHECK(std::find(cs.begin(), cs.end(), j) != cs.end());
      CHECK(std::find(cs.begin(), cs.end(), m) != cs.end());
      CHECK(x.refines(j));
      CHECK(m.refines(x));
    }
  SUBCASE("principal congruences are the least containing their pair") {
    for (int u = 0; u < 6; ++u)
      for (int v = 0; v < 6; ++v) {
        Congruence p = principal_congruence(a, u, v);
        CHECK(p.related(u, v));
        for (const auto& c : cs)
          if (c.related(u, v)) CHECK(p.refines(c));
      }
  }
}

TEST_CASE("Leibniz congruence and reduction") {
  SUBCASE("the Leibniz congruence is the largest compatible with designation") {
    for (const char* name : {"pp6-ub", "pp6h-ub", "pp6h-uf", "pp6h-ut", "dm4-bt", "letk-ub"}) {
      PNMatrix m = registry::matrix(name);
      FiniteAlgebra a(m.algebra);
      std::vector<int> best;
      for (const auto& p : naive_congruences(a)) {
        bool respects = true;
        for (int u = 0; u < a.size(); ++u)
          for (int v = 0; v < a.size(); ++v)
            if (p[u] == p[v] && oracle::designated(m, u) != oracle::designated(m, v)) respects = false;
        if (respects && (best.empty() || *std::max_element(p.begin(), p.end()) < *std::max_element(best.begin(), best.end())))
          best = p;
      }
      Reduction r = leibniz_and_reduce(m);
      CHECK(r.leibniz.block_of == best);
      CHECK(r.reduced == r.leibniz.is_identity());
      CHECK(r.quotient.alg().size() == r.leibniz.block_count());
    }
  }
  SUBCASE("the quotient validates the same consequences") {
    PNMatrix m = registry::matrix("pp6-ub");
    Reduction r = leibniz_and_reduce(m);
    for (const char* text : {"p & ~p", "p | ~p", "@p", "~@p | p"}) {
      Formula f = P(text);
      CHECK(check_consequence({{m}, {}, {f}}).holds == check_consequence({{r.quotient}, {}, {f}}).holds);
    }
  }
}

TEST_CASE("filters") {
  for (const char* name : {"dm4", "pp5", "pp6", "pp6h", "letk"}) {
    FiniteAlgebra a = A(name);
    auto lattice = naive_lattice_filters(a);
    CHECK(as_set(filters(a, FilterFlavor::Lattice)) == lattice);
    std::set<ValueSet> principal, prime;
    for (int v = 0; v < a.size(); ++v) principal.insert(upset(a, v));
    for (ValueSet f : lattice) {
      if (f == a.base().full()) continue;
      bool is_prime = true;
      for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < a.size(); ++v)
          if ((f & bit(a.op("or", {u, v}))) && !(f & bit(u)) && !(f & bit(v))) is_prime = false;
      if (is_prime) prime.insert(f);
    }
    CHECK(as_set(filters(a, FilterFlavor::Principal)) == principal);
    CHECK(as_set(filters(a, FilterFlavor::Prime)) == prime);
  }
  SUBCASE("the six-valued prime filters") {
    CHECK(as_set(filters(A("pp6h"), FilterFlavor::Prime)) ==
          std::set<ValueSet>{pp6_upset(F), pp6_upset(N), pp6_upset(B), pp6_upset(HT)});
  }
  SUBCASE("regular filters are the delta-closed and the contraposition-closed ones") {
    FiniteAlgebra h = A("pp6h");
    std::set<ValueSet> delta_closed;
    for (ValueSet f : filters(h, FilterFlavor::Lattice)) {
      bool closed = true;
      for (int v : members(f)) closed = closed && (f & bit(h.eval(delta_term(h, var("p")), {{"p", v}})));
      if (closed) delta_closed.insert(f);
    }
    auto regular = as_set(filters(h, FilterFlavor::Regular));
    CHECK(regular == delta_closed);
    CHECK(regular == as_set(contraposition_closed_filters(h)));
    CHECK(regular == std::set<ValueSet>{bit(HT), h.base().full()});
  }
  SUBCASE("regular filters need implication or circle") {
    CHECK_THROWS_AS(filters(A("dm4"), FilterFlavor::Regular), MissingConnective);
  }
}

TEST_CASE("subalgebras") {
  for (const char* name : {"dm4", "pp4", "pp5", "pp6", "pp6h", "letk"}) {
    FiniteAlgebra a = A(name);
    CHECK(as_set(subalgebras(a)) == naive_subalgebras(a));
  }
  SUBCASE("isomorphism classes of the six-valued Heyting subalgebras") {
    FiniteAlgebra h = A("pp6h");
    auto raw = subalgebras(h);
    auto reps = subalgebras_up_to_isomorphism(h);
    CHECK(raw.size() == 5);
    CHECK(reps.size() == 4);
    for (ValueSet x : raw) {
      int matches = 0;
      for (ValueSet r : reps) matches += subalgebras_isomorphic(h, x, r) ? 1 : 0;
      CHECK(matches == 1);
    }
    CHECK(subalgebras_isomorphic(h, bit(HF) | bit(N) | bit(HT), bit(HF) | bit(B) | bit(HT)));
  }
}

TEST_CASE("residuum of the meet") {
  SUBCASE("six-valued lattice") {
    ResiduumResult r = residuum_of_meet(A("pp6"));
    REQUIRE(r.table.has_value());
    CHECK(r.table->entries == registry::algebra("pp6h")->table("imp").entries);
  }
  SUBCASE("residuation law on the table") {
    FiniteAlgebra a = A("pp5");
    ResiduumResult r = residuum_of_meet(a);
    REQUIRE(r.table.has_value());
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y)
        for (int z = 0; z < a.size(); ++z) {
          int imp = members(r.table->entries[x * a.size() + y])[0];
          CHECK(a.leq(a.op("and", {x, z}), y) == a.leq(z, imp));
        }
  }
  SUBCASE("a non-distributive lattice is not residuated") {
    ResiduumResult r = residuum_of_meet(FiniteAlgebra(make_m3()));
    CHECK_FALSE(r.table.has_value());
    CHECK(r.not_residuated.has_value());
  }
}

TEST_CASE("unary term functions") {
  FiniteAlgebra h = A("pp6h");
  auto fns = unary_term_functions(h);
  CHECK(fns.size() == 192);
  std::set<std::vector<int>> maps;
  for (const auto& f : fns) {
    maps.insert(f.map);
    CHECK(variables_of(f.witness).size() <= 1);
    for (int v = 0; v < 6; ++v) CHECK(h.eval(f.witness, {{"p", v}}) == f.map[v]);
  }
  CHECK(maps.size() == 192);
  SUBCASE("closed under composition and contains the up function") {
    for (const auto& f : fns)
      for (const auto& g : {fns[0], fns[7], fns[50], fns[191]}) {
        std::vector<int> comp(6);
        for (int v = 0; v < 6; ++v) comp[v] = f.map[g.map[v]];
        CHECK(maps.count(comp) == 1);
      }
    std::vector<int> up(6);
    for (int v = 0; v < 6; ++v) up[v] = oracle::eval(h.base(), P("up(p)"), {{"p", v}});
    CHECK(maps.count(up) == 1);
    CHECK(maps.count({0, 1, 2, 3, 4, 5}) == 1);
  }
  SUBCASE("carrier bound") { CHECK_THROWS_AS(unary_term_functions(h, 4), CarrierTooLarge); }
}
