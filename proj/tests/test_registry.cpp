#include <algorithm>
#include <set>

#include "doctest.h"
#include "mvl/io.hpp"
#include "mvl/registry.hpp"

using namespace mvl;
using namespace mvl::values;

namespace {

// The six-valued order written out pair by pair.
bool hand_leq(int a, int b) {
  static const std::set<std::pair<int, int>> strict{
      {HF, F}, {HF, N}, {HF, B}, {HF, T}, {HF, HT}, {F, N}, {F, B}, {F, T}, {F, HT},
      {N, T},  {N, HT}, {B, T},  {B, HT}, {T, HT}};
  return a == b || strict.count({a, b}) != 0;
}

int hand_meet(int a, int b) {
  int best = -1;
  for (int z = 0; z < 6; ++z)
    if (hand_leq(z, a) && hand_leq(z, b) && (best < 0 || hand_leq(best, z))) best = z;
  return best;
}

int hand_join(int a, int b) {
  int best = -1;
  for (int z = 0; z < 6; ++z)
    if (hand_leq(a, z) && hand_leq(b, z) && (best < 0 || hand_leq(z, best))) best = z;
  return best;
}

int hand_heyting(int a, int b) {
  int best = -1;
  for (int z = 0; z < 6; ++z)
    if (hand_leq(hand_meet(a, z), b) && (best < 0 || hand_leq(best, z))) best = z;
  return best;
}

std::set<std::string> names_of(const std::vector<PNMatrix>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(m.name);
  return out;
}

}  // namespace

TEST_CASE("registry names and lookups") {
  CHECK(registry::names(EntryKind::Algebra).size() == 16);
  CHECK(registry::names(EntryKind::Matrix).size() == 16);
  CHECK(registry::names(EntryKind::MatrixClass).size() == 6);
  CHECK(registry::names(EntryKind::Calculus).size() == 20);
  for (auto kind : {EntryKind::Algebra, EntryKind::Matrix, EntryKind::MatrixClass, EntryKind::Calculus}) {
    auto ns = registry::names(kind);
    CHECK(std::is_sorted(ns.begin(), ns.end()));
    for (const auto& n : ns) CHECK(registry::contains(kind, n));
    CHECK_FALSE(registry::contains(kind, "no-such-entry"));
  }
  CHECK_THROWS_AS(registry::algebra("pp7"), NotFound);
  CHECK_THROWS_AS(registry::matrix("pp6-ux"), NotFound);
  CHECK_THROWS_AS(registry::matrix_class("nothing"), NotFound);
  CHECK_THROWS_AS(registry::calculus("r-zzz"), NotFound);
}

TEST_CASE("six-valued lattice operations follow the order") {
  const auto pp6 = registry::algebra("pp6");
  for (int a = 0; a < 6; ++a) {
    CHECK(pp6_upset(a) == [&] {
      ValueSet s = 0;
      for (int b = 0; b < 6; ++b)
        if (hand_leq(a, b)) s |= bit(b);
      return s;
    }());
    for (int b = 0; b < 6; ++b) {
      CHECK(pp6_leq(a, b) == hand_leq(a, b));
      CHECK(pp6->apply("and", a, b) == hand_meet(a, b));
      CHECK(pp6->apply("or", a, b) == hand_join(a, b));
    }
  }
  CHECK(pp6->constant("top") == HT);
  CHECK(pp6->constant("bot") == HF);
}

TEST_CASE("negation and circle on the six values") {
  const auto pp6 = registry::algebra("pp6");
  for (int a = 0; a < 6; ++a) {
    int na = pp6->apply("neg", a);
    CHECK(pp6->apply("neg", na) == a);
    for (int b = 0; b < 6; ++b) {
      // Order reversal and De Morgan.
      CHECK(hand_leq(a, b) == hand_leq(pp6->apply("neg", b), na));
      CHECK(pp6->apply("neg", hand_meet(a, b)) == hand_join(na, pp6->apply("neg", b)));
    }
    // circ marks the two classical values.
    CHECK(pp6->apply("circ", a) == ((a == HF || a == HT) ? HT : HF));
  }
  CHECK(pp6->apply("neg", N) == N);
  CHECK(pp6->apply("neg", B) == B);
}

TEST_CASE("pp6h implication is the relative pseudo-complement") {
  const auto h = registry::algebra("pp6h");
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) CHECK(h->apply("imp", a, b) == hand_heyting(a, b));
}

TEST_CASE("pp6a1 implication entries") {
  const auto a1 = registry::algebra("pp6a1");
  const ValueSet ub = bit(B) | bit(T) | bit(HT);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      ValueSet e = a1->eval("imp", {a, b});
      bool classical_true = !(ub & bit(a)) || (ub & bit(b));
      CHECK(e == (classical_true ? ub : (bit(HF) | bit(F) | bit(N))));
    }
}

TEST_CASE("dm4 is a De Morgan lattice with fixed points n and b") {
  const auto d = registry::algebra("dm4");
  CHECK(d->carrier() == std::vector<std::string>{"f", "n", "b", "t"});
  CHECK(d->apply("neg", 1) == 1);
  CHECK(d->apply("neg", 2) == 2);
  CHECK(d->apply("neg", 0) == 3);
  CHECK(d->apply("and", 1, 2) == 0);
  CHECK(d->apply("or", 1, 2) == 3);
  CHECK(registry::matrix("dm4-bt").designated == (bit(2) | bit(3)));
}

TEST_CASE("matrices and classes designate the expected up-sets") {
  CHECK(registry::matrix("pp6-ub").designated == pp6_upset(B));
  CHECK(registry::matrix("pp6h-uf").designated == pp6_upset(F));
  CHECK(registry::matrix("pp6h-un").designated == pp6_upset(N));
  CHECK(registry::matrix("pp6h-ut").designated == pp6_upset(T));
  CHECK(registry::matrix("pp6h-uht").designated == bit(HT));
  CHECK(registry::matrix("pp6h").designated == bit(HT));
  CHECK(names_of(registry::matrix_class("pp6h-order")) == std::set<std::string>{"pp6h-uf", "pp6h-ub", "pp6h-uht"});
  CHECK(names_of(registry::matrix_class("pp6h-prime")) ==
        std::set<std::string>{"pp6h-uf", "pp6h-un", "pp6h-ub", "pp6h-uht"});
  CHECK(names_of(registry::matrix_class("pp6h-principal")) ==
        std::set<std::string>{"pp6h-uf", "pp6h-un", "pp6h-ub", "pp6h-ut", "pp6h-uht"});
  CHECK(names_of(registry::matrix_class("pp6h-up")) ==
        std::set<std::string>{"pp6h-uf", "pp6h-ub", "pp6h-uht", "pp6h-ut"});
}

TEST_CASE("ten-valued construction") {
  CHECK(ten_values().size() == 10);
  SUBCASE("g forgets the polarity") {
    const int expect[10] = {HF, F, N, B, T, F, N, B, T, HT};
    for (int v = 0; v < 10; ++v) CHECK(ten_g(v) == expect[v]);
  }
  SUBCASE("every entry lies over the six-valued result") {
    const auto h = registry::algebra("pp6h");
    for (auto variant : {TenVariant::Up, TenVariant::Leq}) {
      PNMatrix m = build_ten_valued(variant);
      for (const auto& [conn, t] : m.alg().ops()) {
        const int n = 10;
        int tuples = 1;
        for (std::size_t i = 0; i < static_cast<std::size_t>(t.arity); ++i) tuples *= n;
        for (int k = 0; k < tuples; ++k) {
          std::vector<int> args(t.arity);
          int r = k;
          for (int i = t.arity - 1; i >= 0; --i) {
            args[i] = r % n;
            r /= n;
          }
          std::vector<int> g;
          for (int v : args) g.push_back(ten_g(v));
          for (int c : members(t.entries[m.alg().index(args)])) CHECK(ten_g(c) == h->apply(conn, g));
        }
      }
    }
  }
  SUBCASE("the two polarities of a value never meet") {
    PNMatrix m = build_ten_valued(TenVariant::Up);
    CHECK(m.alg().eval("and", {BM, BP}) == 0);
    CHECK(m.alg().eval("and", {NM, NP}) == 0);
    CHECK(m.alg().eval("and", {TM, TP}) == 0);
    CHECK(m.alg().eval("neg", {V_HF}) == bit(V_HT));
  }
  SUBCASE("the order variant forbids at least what the up variant forbids") {
    for (ValueSet x = 1; x < (ValueSet{1} << 10); ++x)
      if (inc_up(x)) CHECK(inc_leq(x));
    CHECK(inc_leq(bit(FM) | bit(FP)));
    CHECK_FALSE(inc_up(bit(FM) | bit(NM)));
  }
  SUBCASE("the registry entries are the construction") {
    CHECK(registry::matrix("m-up") == build_ten_valued(TenVariant::Up));
    CHECK(registry::matrix("m-leq") == build_ten_valued(TenVariant::Leq));
    CHECK(registry::matrix("m-up").designated == (bit(FP) | bit(NP) | bit(BP) | bit(TP) | bit(V_HT)));
  }
}

TEST_CASE("calculi") {
  SUBCASE("the order calculus is the up calculus plus one D-rule") {
    Calculus up = registry::calculus("r-up");
    Calculus leq = registry::calculus("r-leq");
    REQUIRE(leq.rules.size() == up.rules.size() + 1);
    CHECK(std::equal(up.rules.begin(), up.rules.end(), leq.rules.begin()));
    CHECK(leq.rules.back() == rule_d_not_up_t());
    CHECK(leq.xi == up.xi);
  }
  SUBCASE("analyticity sets") {
    CHECK(registry::calculus("r-b").xi == std::vector<Formula>{var("p"), f_neg(var("p"))});
    CHECK(registry::calculus("r-pp").xi == xi_pnc());
    CHECK(registry::calculus("r-leq").xi->size() == 5);
    CHECK_FALSE(registry::calculus("moisil").xi.has_value());
    CHECK(registry::calculus("moisil").framework == Framework::SetFmla);
  }
  SUBCASE("r-pp extends r-b") {
    Calculus b = registry::calculus("r-b");
    Calculus pp = registry::calculus("r-pp");
    for (const auto& r : b.rules) CHECK(pp.find(r.name) != nullptr);
  }
  SUBCASE("the Set-Fmla version of r-leq is single-conclusion") {
    for (const auto& r : registry::calculus("r-leq-or").rules) CHECK(r.succedent.size() <= 1);
  }
  SUBCASE("declared models") {
    CHECK(registry::declared_models_name("r-b") == "dm4-bt");
    CHECK(registry::declared_models_name("r-leq") == "pp6h-order");
    CHECK(registry::declared_models("r-up").size() == 4);
    CHECK(registry::declared_models("moisil").size() == 1);
    for (const auto& n : registry::names(EntryKind::Calculus)) CHECK_FALSE(registry::declared_models(n).empty());
  }
}

TEST_CASE("JSON export is deterministic and round-trips") {
  for (const auto& n : registry::names(EntryKind::Matrix)) {
    PNMatrix m = registry::matrix(n);
    std::string once = matrix_to_json(m).dump();
    CHECK(once == matrix_to_json(registry::matrix(n)).dump());
    PNMatrix back = matrix_from_json(Json::parse(once));
    CHECK(back == m);
    CHECK(back.name == m.name);
  }
  for (const auto& n : registry::names(EntryKind::Algebra)) {
    auto a = registry::algebra(n);
    CHECK(*algebra_from_json(algebra_to_json(*a)) == *a);
  }
  for (const auto& n : registry::names(EntryKind::Calculus)) {
    Calculus c = registry::calculus(n);
    std::string once = calculus_to_json(c).dump();
    CHECK(once == calculus_to_json(registry::calculus(n)).dump());
    Calculus back = calculus_from_json(Json::parse(once));
    CHECK(back.rules == c.rules);
    CHECK(back.xi == c.xi);
    CHECK(back.framework == c.framework);
  }
}

TEST_CASE("malformed matrix JSON is rejected") {
  Json j = matrix_to_json(registry::matrix("dm4-bt"));
  j["connectives"]["and"]["table"].erase("f,f");
  CHECK_THROWS(matrix_from_json(j));
  Json k = matrix_to_json(registry::matrix("dm4-bt"));
  k["designated"] = Json::array({"z"});
  CHECK_THROWS(matrix_from_json(k));
}
