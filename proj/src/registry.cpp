#include "mvl/registry.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "mvl/axiomatizer.hpp"
#include "mvl/calculus.hpp"

namespace mvl {

using namespace values;

const std::vector<std::string>& six_values() {
  static const std::vector<std::string> v{"hf", "f", "n", "b", "t", "ht"};
  return v;
}

const std::vector<std::string>& ten_values() {
  static const std::vector<std::string> v{"hf", "fm", "nm", "bm", "tm", "fp", "np", "bp", "tp", "ht"};
  return v;
}

bool pp6_leq(int a, int b) {
  if (a == b || a == HF || b == HT) return true;
  if (a == HT || b == HF) return false;
  if (a == F) return true;
  if (b == T) return true;
  return false;
}

ValueSet pp6_upset(int a) {
  ValueSet s = 0;
  for (int b = 0; b < 6; ++b)
    if (pp6_leq(a, b)) s |= bit(b);
  return s;
}

namespace {

// Meet and join of a finite lattice given by its order relation.
int glb(int n, const std::function<bool(int, int)>& le, int a, int b) {
  for (int c = 0; c < n; ++c) {
    if (!le(c, a) || !le(c, b)) continue;
    bool greatest = true;
    for (int d = 0; d < n; ++d)
      if (le(d, a) && le(d, b) && !le(d, c)) greatest = false;
    if (greatest) return c;
  }
  throw Error("order is not a lattice");
}

int lub(int n, const std::function<bool(int, int)>& le, int a, int b) {
  return glb(n, [&](int x, int y) { return le(y, x); }, a, b);
}

void add_lattice(MultiAlgebra& a, const std::function<bool(int, int)>& le, int bottom, int top) {
  const int n = a.size();
  a.define("and", make_table(n, 2, [&](const std::vector<int>& v) { return glb(n, le, v[0], v[1]); }));
  a.define("or", make_table(n, 2, [&](const std::vector<int>& v) { return lub(n, le, v[0], v[1]); }));
  a.define("top", make_table(n, 0, [&](const std::vector<int>&) { return top; }));
  a.define("bot", make_table(n, 0, [&](const std::vector<int>&) { return bottom; }));
}

MultiAlgebra make_pp6() {
  MultiAlgebra a("PP6", six_values());
  add_lattice(a, pp6_leq, HF, HT);
  static const int neg[6] = {HT, T, N, B, F, HF};
  a.define("neg", make_table(6, 1, [](const std::vector<int>& v) { return neg[v[0]]; }));
  a.define("circ", make_table(6, 1, [](const std::vector<int>& v) { return (v[0] == HF || v[0] == HT) ? HT : HF; }));
  return a;
}

// Heyting implication of the six-valued lattice, rows and columns in carrier order.
const int kImpH[6][6] = {
    {HT, HT, HT, HT, HT, HT}, {HF, HT, HT, HT, HT, HT}, {HF, B, HT, B, HT, HT},
    {HF, N, N, HT, HT, HT},   {HF, F, N, B, HT, HT},    {HF, F, N, B, T, HT},
};

const int kImpLetK[6][6] = {
    {HT, HT, HT, HT, HT, HT}, {T, T, T, T, T, HT}, {T, T, T, T, T, HT},
    {HF, F, N, B, T, HT},     {HF, F, N, B, T, HT}, {HF, F, N, B, T, HT},
};

MultiAlgebra with_table(MultiAlgebra a, const std::string& name, const int (&table)[6][6]) {
  a.set_name(name);
  a.define("imp", make_table(6, 2, [&](const std::vector<int>& v) { return table[v[0]][v[1]]; }));
  return a;
}

MultiAlgebra make_pp6_a1() {
  MultiAlgebra a = make_pp6();
  a.set_name("PP6A1");
  const ValueSet ub = pp6_upset(B);
  a.define("imp", make_multi_table(6, 2, [&](const std::vector<int>& v) -> ValueSet {
             bool a_in = ub & bit(v[0]);
             bool b_in = ub & bit(v[1]);
             if (!a_in || b_in) return ub;
             return bit(HF) | bit(F) | bit(N);
           }));
  return a;
}

MultiAlgebra make_dm4() {
  // Carrier f, n, b, t with f < n, b < t.
  MultiAlgebra a("DM4", {"f", "n", "b", "t"});
  auto le = [](int x, int y) { return x == y || x == 0 || y == 3; };
  add_lattice(a, le, 0, 3);
  static const int neg[4] = {3, 1, 2, 0};
  a.define("neg", make_table(4, 1, [](const std::vector<int>& v) { return neg[v[0]]; }));
  return a;
}

// Subalgebra on the listed values (which must form a subuniverse), values renamed by position.
MultiAlgebra sub_on(const MultiAlgebra& a, const std::string& name, const std::vector<std::string>& keep) {
  ValueSet x = parse_value_set(a, keep);
  PNMatrix m{"", std::make_shared<MultiAlgebra>(a), 0};
  PNMatrix r = restrict_matrix(m, x);
  MultiAlgebra out = r.alg();
  if (!out.deterministic()) throw Error("values do not form a subuniverse of " + a.name());
  out.set_name(name);
  return out;
}

}  // namespace

int ten_g(int v) {
  static const int g[10] = {HF, F, N, B, T, F, N, B, T, HT};
  return g[v];
}

namespace {

bool contains_set(ValueSet x, std::initializer_list<int> vs) {
  for (int v : vs)
    if (!(x & bit(v))) return false;
  return true;
}

}  // namespace

// The last two generators rule out t undesignated with f designated, and b
// undesignated with n designated; without them some restrictions designate a
// set that is not a lattice filter, or an isomorphic copy of the b-filter.
bool inc_up(ValueSet x) {
  const int pairs[4][2] = {{FM, FP}, {NM, NP}, {BM, BP}, {TM, TP}};
  for (const auto& p : pairs)
    if (contains_set(x, {p[0], p[1]})) return true;
  return contains_set(x, {BM, FP}) || contains_set(x, {NM, FP}) || contains_set(x, {BP, TM}) ||
         contains_set(x, {NP, TM}) || contains_set(x, {NP, BP, FM}) || contains_set(x, {TM, FP}) ||
         contains_set(x, {NP, BM});
}

bool inc_leq(ValueSet x) { return inc_up(x) || contains_set(x, {NM, BM, TP}); }

PNMatrix build_ten_valued(TenVariant variant) {
  const MultiAlgebra base = with_table(make_pp6(), "PP6H", kImpH);
  auto inc = variant == TenVariant::Up ? inc_up : inc_leq;
  auto alg = std::make_shared<MultiAlgebra>(variant == TenVariant::Up ? "Mup" : "Mleq", ten_values());
  for (const auto& [conn, table] : base.ops()) {
    alg->define(conn, make_multi_table(10, table.arity, [&](const std::vector<int>& args) -> ValueSet {
                  std::vector<int> gargs;
                  ValueSet used = 0;
                  for (int v : args) {
                    gargs.push_back(ten_g(v));
                    used |= bit(v);
                  }
                  int target = base.apply(conn, gargs);
                  ValueSet out = 0;
                  for (int c = 0; c < 10; ++c)
                    if (ten_g(c) == target && !inc(used | bit(c))) out |= bit(c);
                  return out;
                }));
  }
  PNMatrix m;
  m.name = variant == TenVariant::Up ? "m-up" : "m-leq";
  m.algebra = alg;
  m.designated = bit(FP) | bit(NP) | bit(BP) | bit(TP) | bit(V_HT);
  return m;
}

namespace {

Rule R(std::string name, std::vector<std::string> ant, std::vector<std::string> suc) {
  return make_rule(std::move(name), ant, suc, sig_pp_imp());
}

std::vector<Rule> concat(std::initializer_list<std::vector<Rule>> groups) {
  std::vector<Rule> out;
  for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
  return out;
}

}  // namespace

std::vector<Rule> rules_rb() {
  return {
      R("r1", {}, {"top"}),
      R("r2", {"~top"}, {}),
      R("r3", {}, {"~bot"}),
      R("r4", {"bot"}, {}),
      R("r5", {"p"}, {"~~p"}),
      R("r6", {"~~p"}, {"p"}),
      R("r7", {"p & q"}, {"p"}),
      R("r8", {"p & q"}, {"q"}),
      R("r9", {"p", "q"}, {"p & q"}),
      R("r10", {"~p"}, {"~(p & q)"}),
      R("r11", {"~q"}, {"~(p & q)"}),
      R("r12", {"~(p & q)"}, {"~p", "~q"}),
      R("r13", {"p"}, {"p | q"}),
      R("r14", {"q"}, {"p | q"}),
      R("r15", {"p | q"}, {"p", "q"}),
      R("r16", {"~p", "~q"}, {"~(p | q)"}),
      R("r17", {"~(p | q)"}, {"~p"}),
      R("r18", {"~(p | q)"}, {"~q"}),
  };
}

std::vector<Rule> rules_pp_extra() {
  return {
      R("r19", {}, {"@bot"}),
      R("r20", {}, {"@top"}),
      R("r21", {}, {"@@p"}),
      R("r22", {"@p"}, {"@~p"}),
      R("r23", {"@~p"}, {"@p"}),
      R("r24", {"@p"}, {"p", "~p"}),
      R("r25", {"@p", "p", "~p"}, {}),
      R("r26", {"@p"}, {"@(p & q)", "p"}),
      R("r27", {"@q"}, {"@(p & q)", "q"}),
      R("r28", {"@(p & q)", "q"}, {"@p"}),
      R("r29", {"@(p & q)", "p"}, {"@q"}),
      R("r30", {"@p", "@q"}, {"@(p & q)"}),
      R("r31", {"@(p & q)"}, {"@p", "@q"}),
      R("r32", {"@p", "@q"}, {"@(p | q)"}),
      R("r33", {"@(p | q)"}, {"@p", "@q"}),
      R("r34", {"@p", "p"}, {"@(p | q)"}),
      R("r35", {"@q", "q"}, {"@(p | q)"}),
      R("r36", {"@(p | q)"}, {"@p", "q"}),
      R("r37", {"@(p | q)"}, {"@q", "p"}),
  };
}

std::vector<Rule> rules_cl() {
  return {
      R("r1cl", {"q"}, {"p => q"}),
      R("r2cl", {}, {"p", "p => q"}),
      R("r3cl", {"p", "p => q"}, {"q"}),
  };
}

std::vector<Rule> rules_h14() {
  return {
      R("h1", {"q"}, {"p => q"}),
      R("h2", {"p", "p => q"}, {"q"}),
      R("h3", {"~(p => q)"}, {"~q"}),
      R("h4", {"~q"}, {"~(p => q)", "~p"}),
      R("h5", {}, {"p => q", "@q", "p"}),
      R("h6", {"p => q"}, {"@(p => q)", "~q", "q"}),
      R("h7", {"p => q", "@q"}, {"@p", "q"}),
      R("h8", {"~(p => q)", "~p"}, {"@(p => q)"}),
      R("h9", {"~p"}, {"@(p => q)", "p"}),
      R("h10", {"@(p => q)", "@p", "p"}, {"@q"}),
      R("h11", {"@(p => q)", "p"}, {"@q", "q"}),
      R("h12", {"@p"}, {"p => q", "p"}),
      R("h13", {"@q"}, {"@(p => q)"}),
      R("h14", {"q"}, {"~(p => q)", "@(p => q)", "@p"}),
  };
}

std::vector<Rule> rules_diamond() {
  return {
      R("d_up_or_down", {}, {"up(p)", "down(p)"}),
      R("d_id", {}, {"@(p => p)"}),
      R("d_trans", {"@(p => q)", "@(q => r)"}, {"@q", "@(p => r)"}),
      R("d_le_t", {}, {"down(p)", "@q", "@(q => p)"}),
      R("d_ge_f", {}, {"up(p)", "@(p => q)"}),
      R("d_incclass1", {"up(p)", "@(p => q)"}, {"@p", "up(q)"}),
      R("d_incclass2", {"down(q)", "@(p => q)"}, {"@q", "down(p)"}),
      R("d_incclass3", {"up(p)", "down(q)", "@(p => q)"}, {"@q", "@(q => p)"}),
      R("d_just2", {"down(p)", "up(r)"}, {"@p", "@(p => q)", "@(p => r)", "@(q => r)"}),
  };
}

std::vector<Rule> rules_imp() {
  return {
      R("imp1", {"@q"}, {"@(p => q)"}),
      R("imp2", {"q"}, {"p => q"}),
      R("imp3", {"p", "p => q"}, {"q"}),
      R("imp4", {"@p", "p", "@(p => q)"}, {"@q"}),
      R("imp5", {"@p", "p", "down(p => q)"}, {"down(q)"}),
      R("imp6", {"@p", "p", "up(p => q)"}, {"up(q)"}),
      R("imp7", {"up(q)"}, {"up(p => q)"}),
      R("imp8", {"down(q)"}, {"down(p => q)"}),
      R("imp9", {}, {"@(q => (p => q))"}),
      R("imp10", {"@p"}, {"p", "@(p => q)"}),
      R("imp11", {"@p"}, {"p", "p => q"}),
      R("imp12", {"@q", "p => q"}, {"q", "@p"}),
      R("imp13", {"@(p => q)"}, {"@q", "p => q"}),
      R("imp14", {}, {"down(p)", "@(p => q)", "@((p => q) => q)"}),
      R("imp15", {"up(p)", "@(p => q)"}, {"@p", "up(q)"}),
      R("imp16", {"down(p)"}, {"@p", "up(p => q)"}),
      R("imp17", {}, {"@p", "down(p => q)"}),
      R("imp18", {"up(p)", "@(p => (p => q))"}, {"@p", "up(q)"}),
      R("imp19", {"up(q)"}, {"@(p => q)", "@((p => q) => q)"}),
  };
}

std::vector<Rule> rules_neg() {
  return {
      R("neg1", {"@p"}, {"p", "~p"}),
      R("neg2", {"@p", "p", "~p"}, {}),
      R("neg3", {"@p"}, {"@~p"}),
      R("neg4", {"@~p"}, {"@p"}),
      R("neg5", {"up(~p)"}, {"down(p)"}),
      R("neg6", {"down(~p)"}, {"up(p)"}),
      R("neg7", {"down(p)"}, {"up(~p)"}),
      R("neg8", {"up(p)"}, {"down(~p)"}),
  };
}

std::vector<Rule> rules_circ() { return {R("circ1", {}, {"@@p"})}; }

std::vector<Rule> rules_and() {
  return {
      R("and1", {"@p", "@q"}, {"@(p & q)"}),
      R("and2", {"p", "q"}, {"p & q"}),
      R("and3", {"p & q"}, {"q"}),
      R("and4", {"p", "@(p & q)"}, {"@q"}),
      R("and5", {"@p"}, {"@(q => p & q)"}),
      R("and6", {}, {"@(p & q => q)"}),
      R("and7", {"p & q"}, {"p"}),
      R("and8", {"q", "@(p & q)"}, {"@p"}),
      R("and9", {"@q"}, {"@(p => p & q)"}),
      R("and10", {}, {"@(p & q => p)"}),
      R("and11", {"@p"}, {"p", "@(p & q)"}),
      R("and12", {"@q"}, {"q", "@(p & q)"}),
      R("and13", {"@(p & q)"}, {"@p", "@q"}),
      R("and14", {"@(p => q)"}, {"@(p => p & q)"}),
      R("and15", {"@(q => p)"}, {"@(q => p & q)"}),
      R("and16", {"down(p)", "up(p & q)"}, {"@p", "@(p => q)"}),
  };
}

std::vector<Rule> rules_or() {
  return {
      R("or1", {"@p", "@q"}, {"@(p | q)"}),
      R("or2", {"@p", "p | q"}, {"p", "q"}),
      R("or3", {"q"}, {"p | q"}),
      R("or4", {"@(p | q)"}, {"p", "@q"}),
      R("or5", {}, {"@(q => p | q)"}),
      R("or6", {"@p"}, {"p", "@(p | q => q)"}),
      R("or7", {"p"}, {"p | q"}),
      R("or8", {"@(p | q)"}, {"q", "@p"}),
      R("or9", {}, {"@(p => p | q)"}),
      R("or10", {"@q"}, {"q", "@(p | q => p)"}),
      R("or11", {"p", "@p"}, {"@(p | q)"}),
      R("or12", {"q", "@q"}, {"@(p | q)"}),
      R("or13", {"@(p | q)"}, {"@p", "@q"}),
      R("or14", {"@(p => q)"}, {"@(p | q => q)"}),
      R("or15", {"@(q => p)"}, {"@(p | q => p)"}),
      R("or16", {"up(q)", "down(p | q)"}, {"@p", "@(p => q)"}),
  };
}

std::vector<Rule> rules_topbot() {
  return {
      R("top1", {}, {"top"}),
      R("top2", {}, {"@top"}),
      R("bot1", {"bot"}, {}),
      R("bot2", {}, {"@bot"}),
  };
}

std::vector<Rule> rules_d() {
  return {
      R("d_and", {"p", "down(p)", "q"}, {"@p", "@(p => q)", "@r", "r"}),
      R("d_leq", {"p", "@(p => q)"}, {"@q", "q"}),
  };
}

Rule rule_d_not_up_t() { return R("d_not_up_t", {"r", "up(q)"}, {"down(r)", "@(p => q)", "p", "q"}); }

std::vector<Rule> rules_letk_hand() {
  return {
      R("k1", {"~(p => q)"}, {"p"}),
      R("k2", {"~(p => q)"}, {"~q"}),
      R("k3", {"p", "~q"}, {"~(p => q)"}),
      R("k4", {"@(p => q)"}, {"@p", "@q"}),
      R("k5", {"@(p => q)"}, {"@p", "p", "q"}),
      R("k6", {"@(p => q)", "p"}, {"@q"}),
      R("k7", {"@p"}, {"@(p => q)", "p"}),
      R("k8", {"p", "@q"}, {"@(p => q)"}),
      R("k9", {"@q", "q"}, {"@(p => q)"}),
  };
}

std::vector<Rule> rules_moisil() {
  return {
      R("m1", {}, {"p => q => p"}),
      R("m2", {}, {"(p => q => r) => (p => q) => p => r"}),
      R("m3", {}, {"p & q => p"}),
      R("m4", {}, {"p & q => q"}),
      R("m5", {}, {"(p => q) => (p => r) => p => q & r"}),
      R("m6", {}, {"p => p | q"}),
      R("m7", {}, {"q => p | q"}),
      R("m8", {}, {"(p => r) => (q => r) => p | q => r"}),
      R("m9", {}, {"p => ~~p"}),
      R("m10", {}, {"~~p => p"}),
      R("m11", {"p", "p => q"}, {"q"}),
      R("pptop1", {}, {"hneg(p) => ~hneg(hneg(p))"}),
      R("pptop2", {}, {"~hneg(hneg(p)) => hneg(p)"}),
      R("pptop3", {},
        {"@(p1 => p2) & @(p2 => p3) => @p1 | @p4 | @(p4 => p3) | @(p3 => p2) | @(p2 => p1)"}),
  };
}

Rule rule_m12() { return R("m12", {"p => q"}, {"~q => ~p"}); }

std::vector<Rule> rules_pp_top_distinguishing() {
  return {
      R("top_delta", {"p"}, {"p & @p"}),
      R("top_circ", {"p"}, {"@p"}),
      R("top_wmp", {"p", "wimp(p, q)"}, {"q"}),
  };
}

std::vector<Formula> xi_pnc() { return parse_formula_list({"p", "~p", "@p"}); }

std::vector<Formula> xi_theta() { return parse_formula_list({"p", "@p", "@(p => q)", "up(p)", "down(p)"}); }

namespace registry {

namespace {

struct Store {
  std::map<std::string, std::shared_ptr<const MultiAlgebra>> algebras;
  std::map<std::string, PNMatrix> matrices;
  std::map<std::string, std::vector<std::string>> classes;
  std::map<std::string, std::function<Calculus()>> calculi;
  std::map<std::string, std::string> models;
  std::map<std::string, Calculus> calculus_cache;
  std::mutex mu;
};

Store& store() {
  static Store* s = [] {
    auto* st = new Store();
    auto add_alg = [&](const std::string& name, MultiAlgebra a) {
      a.set_name(name);
      st->algebras[name] = std::make_shared<const MultiAlgebra>(std::move(a));
    };
    MultiAlgebra pp6 = make_pp6();
    MultiAlgebra pp6h = with_table(pp6, "pp6h", kImpH);
    MultiAlgebra dm4 = make_dm4();
    add_alg("pp6", pp6);
    add_alg("pp6h", pp6h);
    add_alg("pp6a1", make_pp6_a1());
    add_alg("letk", with_table(pp6, "letk", kImpLetK));
    add_alg("dm4", dm4);
    add_alg("dm3", sub_on(dm4, "dm3", {"f", "n", "t"}));
    add_alg("dm2", sub_on(dm4, "dm2", {"f", "t"}));
    add_alg("pp5", sub_on(pp6, "pp5", {"hf", "f", "n", "t", "ht"}));
    add_alg("pp4", sub_on(pp6, "pp4", {"hf", "f", "t", "ht"}));
    add_alg("pp3", sub_on(pp6, "pp3", {"hf", "n", "ht"}));
    add_alg("pp2", sub_on(pp6, "pp2", {"hf", "ht"}));
    add_alg("pp4h", sub_on(pp6h, "pp4h", {"hf", "f", "t", "ht"}));
    add_alg("pp3h", sub_on(pp6h, "pp3h", {"hf", "n", "ht"}));
    add_alg("pp2h", sub_on(pp6h, "pp2h", {"hf", "ht"}));
    PNMatrix mup = build_ten_valued(TenVariant::Up);
    PNMatrix mleq = build_ten_valued(TenVariant::Leq);
    add_alg("mup", mup.alg());
    add_alg("mleq", mleq.alg());

    auto add_mat = [&](const std::string& name, const std::string& alg, std::vector<std::string> d) {
      st->matrices[name] = make_matrix(name, st->algebras.at(alg), d);
    };
    add_mat("dm4-bt", "dm4", {"b", "t"});
    add_mat("pp6-ub", "pp6", {"b", "t", "ht"});
    add_mat("pp6-uf", "pp6", {"f", "n", "b", "t", "ht"});
    add_mat("pp6-un", "pp6", {"n", "t", "ht"});
    add_mat("pp6-uht", "pp6", {"ht"});
    add_mat("pp6h-uf", "pp6h", {"f", "n", "b", "t", "ht"});
    add_mat("pp6h-un", "pp6h", {"n", "t", "ht"});
    add_mat("pp6h-ub", "pp6h", {"b", "t", "ht"});
    add_mat("pp6h-ut", "pp6h", {"t", "ht"});
    add_mat("pp6h-uht", "pp6h", {"ht"});
    add_mat("pp6h-top", "pp6h", {"ht"});
    add_mat("pp6h", "pp6h", {"ht"});
    add_mat("pp6a1-ub", "pp6a1", {"b", "t", "ht"});
    add_mat("letk-ub", "letk", {"b", "t", "ht"});
    mup.algebra = st->algebras.at("mup");
    mleq.algebra = st->algebras.at("mleq");
    st->matrices["m-up"] = mup;
    st->matrices["m-leq"] = mleq;

    st->classes["pp6h-order"] = {"pp6h-uf", "pp6h-ub", "pp6h-uht"};
    st->classes["pp6h-prime"] = {"pp6h-uf", "pp6h-un", "pp6h-ub", "pp6h-uht"};
    st->classes["pp6h-up"] = {"pp6h-uf", "pp6h-ub", "pp6h-uht", "pp6h-ut"};
    st->classes["pp6h-principal"] = {"pp6h-uf", "pp6h-un", "pp6h-ub", "pp6h-ut", "pp6h-uht"};
    st->classes["pp6h-top"] = {"pp6h-top"};
    st->classes["pp6-prime"] = {"pp6-uf", "pp6-un", "pp6-ub", "pp6-uht"};

    auto add_calc = [&](const std::string& name, const std::string& models, std::function<Calculus()> fn) {
      st->calculi[name] = std::move(fn);
      st->models[name] = models;
    };
    auto setset = [](const std::string& name, std::vector<Rule> rules, std::vector<Formula> xi) {
      return Calculus{name, std::move(rules), std::move(xi), Framework::SetSet};
    };
    add_calc("r-b", "dm4-bt", [=] { return setset("r-b", rules_rb(), parse_formula_list({"p", "~p"})); });
    add_calc("r-pp", "pp6-ub", [=] { return setset("r-pp", concat({rules_rb(), rules_pp_extra()}), xi_pnc()); });
    add_calc("r-a1", "pp6a1-ub",
             [=] { return setset("r-a1", concat({rules_rb(), rules_pp_extra(), rules_cl()}), xi_pnc()); });
    add_calc("r-h14", "pp6h-ub",
             [=] { return setset("r-h14", concat({rules_rb(), rules_pp_extra(), rules_h14()}), xi_pnc()); });
    add_calc("r-diamond", "pp6h-principal", [=] { return setset("r-diamond", rules_diamond(), xi_theta()); });
    add_calc("r-imp", "pp6h-principal", [=] { return setset("r-imp", rules_imp(), xi_theta()); });
    add_calc("r-neg", "pp6h-principal", [=] { return setset("r-neg", rules_neg(), xi_theta()); });
    add_calc("r-circ", "pp6h-principal", [=] { return setset("r-circ", rules_circ(), xi_theta()); });
    add_calc("r-and", "pp6h-principal", [=] { return setset("r-and", rules_and(), xi_theta()); });
    add_calc("r-or", "pp6h-principal", [=] { return setset("r-or", rules_or(), xi_theta()); });
    add_calc("r-topbot", "pp6h-principal", [=] { return setset("r-topbot", rules_topbot(), xi_theta()); });
    add_calc("r-d", "pp6h-principal", [=] { return setset("r-d", rules_d(), xi_theta()); });
    auto r_up_rules = [] {
      return concat({rules_diamond(), rules_imp(), rules_circ(), rules_neg(), rules_and(), rules_or(),
                     rules_topbot(), rules_d()});
    };
    add_calc("r-up", "pp6h-up", [=] { return setset("r-up", r_up_rules(), xi_theta()); });
    add_calc("r-leq", "pp6h-order",
             [=] { return setset("r-leq", concat({r_up_rules(), {rule_d_not_up_t()}}), xi_theta()); });
    add_calc("r-leq-or", "pp6h-order", [=] {
      Calculus c = to_set_fmla_calculus(setset("r-leq", concat({r_up_rules(), {rule_d_not_up_t()}}), xi_theta()));
      c.name = "r-leq-or";
      return c;
    });
    add_calc("r-letk", "letk-ub", [=] {
      return setset("r-letk", concat({rules_rb(), rules_pp_extra(), rules_cl(), rules_letk_hand()}), xi_pnc());
    });
    add_calc("r-letk-gen", "letk-ub", [=] {
      const PNMatrix& base = st->matrices.at("pp6a1-ub");
      const PNMatrix& refined = st->matrices.at("letk-ub");
      auto disc = find_discriminator(base, 1);
      std::vector<Rule> gen = generate_refinement_rules(base, refined, *disc.discriminator);
      return setset("r-letk-gen", concat({rules_rb(), rules_pp_extra(), rules_cl(), gen}), xi_pnc());
    });
    add_calc("moisil", "pp6h-top", [=] { return Calculus{"moisil", rules_moisil(), std::nullopt, Framework::SetFmla}; });
    add_calc("m12", "pp6h-top", [=] { return Calculus{"m12", {rule_m12()}, std::nullopt, Framework::SetFmla}; });
    add_calc("pp-top-rules", "pp6h-top", [=] {
      return Calculus{"pp-top-rules", rules_pp_top_distinguishing(), std::nullopt, Framework::SetFmla};
    });
    return st;
  }();
  return *s;
}

}  // namespace

std::shared_ptr<const MultiAlgebra> algebra(const std::string& name) {
  auto& s = store();
  auto it = s.algebras.find(name);
  if (it == s.algebras.end()) throw NotFound("no algebra named '" + name + "'");
  return it->second;
}

PNMatrix matrix(const std::string& name) {
  auto& s = store();
  auto it = s.matrices.find(name);
  if (it == s.matrices.end()) throw NotFound("no matrix named '" + name + "'");
  return it->second;
}

std::vector<PNMatrix> matrix_class(const std::string& name) {
  auto& s = store();
  auto it = s.classes.find(name);
  if (it == s.classes.end()) {
    if (s.matrices.count(name)) return {s.matrices.at(name)};
    throw NotFound("no matrix class named '" + name + "'");
  }
  std::vector<PNMatrix> out;
  for (const auto& m : it->second) out.push_back(s.matrices.at(m));
  return out;
}

Calculus calculus(const std::string& name) {
  auto& s = store();
  auto it = s.calculi.find(name);
  if (it == s.calculi.end()) throw NotFound("no calculus named '" + name + "'");
  {
    std::lock_guard<std::mutex> lock(s.mu);
    auto c = s.calculus_cache.find(name);
    if (c != s.calculus_cache.end()) return c->second;
  }
  Calculus built = it->second();
  std::lock_guard<std::mutex> lock(s.mu);
  return s.calculus_cache.emplace(name, std::move(built)).first->second;
}

std::vector<PNMatrix> declared_models(const std::string& calculus_name) {
  return matrix_class(declared_models_name(calculus_name));
}

std::string declared_models_name(const std::string& calculus_name) {
  auto& s = store();
  auto it = s.models.find(calculus_name);
  if (it == s.models.end()) throw NotFound("no calculus named '" + calculus_name + "'");
  return it->second;
}

std::vector<std::string> names(EntryKind kind) {
  auto& s = store();
  std::vector<std::string> out;
  switch (kind) {
    case EntryKind::Algebra:
      for (const auto& [k, v] : s.algebras) out.push_back(k);
      break;
    case EntryKind::Matrix:
      for (const auto& [k, v] : s.matrices) out.push_back(k);
      break;
    case EntryKind::MatrixClass:
      for (const auto& [k, v] : s.classes) out.push_back(k);
      break;
    case EntryKind::Calculus:
      for (const auto& [k, v] : s.calculi) out.push_back(k);
      break;
  }
  return out;
}

bool contains(EntryKind kind, const std::string& name) {
  for (const auto& n : names(kind))
    if (n == name) return true;
  return false;
}

}  // namespace registry
}  // namespace mvl
