#include "mvl/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace mvl {

namespace {

bool lattice_laws(const MultiAlgebra& a) {
  const int n = a.size();
  auto m = [&](int x, int y) { return a.apply("and", x, y); };
  auto j = [&](int x, int y) { return a.apply("or", x, y); };
  for (int x = 0; x < n; ++x) {
    if (m(x, x) != x || j(x, x) != x) return false;
    for (int y = 0; y < n; ++y) {
      if (m(x, y) != m(y, x) || j(x, y) != j(y, x)) return false;
      if (m(x, j(x, y)) != x || j(x, m(x, y)) != x) return false;
      for (int z = 0; z < n; ++z)
        if (m(x, m(y, z)) != m(m(x, y), z) || j(x, j(y, z)) != j(j(x, y), z)) return false;
    }
  }
  return true;
}

void require_carrier(const FiniteAlgebra& alg, int bound) {
  if (alg.size() > bound)
    throw CarrierTooLarge("carrier of size " + std::to_string(alg.size()) + " exceeds the bound " +
                          std::to_string(bound));
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::shared_ptr<const MultiAlgebra> alg) : alg_(std::move(alg)) {
  if (!alg_->deterministic() || !alg_->total()) throw Error("algebra '" + alg_->name() + "' is not deterministic and total");
  if (alg_->has("and") && alg_->has("or")) {
    if (!lattice_laws(*alg_)) throw Error("the and/or reduct of '" + alg_->name() + "' is not a lattice");
    lattice_ = true;
    if (alg_->has("top") && alg_->has("bot")) {
      for (int x = 0; x < size(); ++x)
        if (!leq(bottom(), x) || !leq(x, top())) throw Error("top/bot are not the lattice bounds");
    }
  }
}

bool FiniteAlgebra::leq(int a, int b) const {
  if (!alg_->has("and")) throw MissingConnective("the order needs 'and'");
  return alg_->apply("and", a, b) == a;
}

int FiniteAlgebra::eval(const Formula& f, const std::map<std::string, int>& assignment) const {
  if (f.is_var()) return assignment.at(f.symbol());
  std::vector<int> args;
  args.reserve(f.arity());
  for (const auto& a : f.args()) args.push_back(eval(a, assignment));
  return alg_->apply(f.symbol(), args);
}

namespace {

// Evaluates against a variable vector without map lookups.
class Program {
 public:
  Program(const MultiAlgebra& alg, const std::vector<Formula>& roots, const std::vector<std::string>& vars)
      : alg_(alg) {
    for (const auto& r : roots) roots_.push_back(compile(r, vars));
  }
  int run(std::size_t root, const std::vector<int>& vals) {
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instr& in = code_[i];
      if (in.var >= 0) {
        reg_[i] = vals[in.var];
      } else {
        std::size_t idx = 0;
        for (int a : in.args) idx = idx * alg_.size() + reg_[a];
        reg_[i] = in.table->entries[idx] ? __builtin_ctz(in.table->entries[idx]) : -1;
      }
    }
    return reg_[roots_[root]];
  }

 private:
  struct Instr {
    int var = -1;
    const OpTable* table = nullptr;
    std::vector<int> args;
  };
  int compile(const Formula& f, const std::vector<std::string>& vars) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    Instr in;
    if (f.is_var()) {
      in.var = static_cast<int>(std::find(vars.begin(), vars.end(), f.symbol()) - vars.begin());
    } else {
      in.table = &alg_.table(f.symbol());
      for (const auto& a : f.args()) in.args.push_back(compile(a, vars));
    }
    code_.push_back(std::move(in));
    reg_.push_back(0);
    int id = static_cast<int>(code_.size()) - 1;
    memo_.emplace(f, id);
    return id;
  }
  const MultiAlgebra& alg_;
  std::vector<Instr> code_;
  std::vector<int> reg_;
  std::vector<int> roots_;
  std::unordered_map<Formula, int> memo_;
};

}  // namespace

IdentityResult check_identity(const FiniteAlgebra& alg, const Formula& lhs, const Formula& rhs, int max_vars) {
  require_signature(alg.base(), {lhs, rhs});
  std::set<std::string> vs = variables_of(std::vector<Formula>{lhs, rhs});
  std::vector<std::string> vars(vs.begin(), vs.end());
  if (static_cast<int>(vars.size()) > max_vars)
    throw TooManyVariables(std::to_string(vars.size()) + " variables exceed the bound " + std::to_string(max_vars));
  Program prog(alg.base(), {lhs, rhs}, vars);
  std::vector<int> vals(vars.size(), 0);
  const int n = alg.size();
  while (true) {
    if (prog.run(0, vals) != prog.run(1, vals)) {
      IdentityResult r;
      r.valid = false;
      for (std::size_t i = 0; i < vars.size(); ++i) r.counterexample[vars[i]] = vals[i];
      return r;
    }
    int k = static_cast<int>(vals.size()) - 1;
    while (k >= 0 && ++vals[k] == n) vals[k--] = 0;
    if (k < 0) break;
  }
  return {};
}

IdentityResult check_inequality(const FiniteAlgebra& alg, const Formula& lhs, const Formula& rhs, int max_vars) {
  return check_identity(alg, lhs, f_and(lhs, rhs), max_vars);
}

Formula delta_term(const FiniteAlgebra& alg, const Formula& x) {
  if (alg.has("circ") && alg.has("and")) return f_and(x, f_circ(x));
  if (alg.has("imp") && alg.has("neg")) return m_delta(x);
  throw MissingConnective("Delta needs 'circ' or both 'imp' and 'neg'");
}

namespace {

struct Equation {
  std::string lhs, rhs;
  bool inequality = false;
};

const Signature& parse_sig() {
  static const Signature s = sig_pp_imp();
  return s;
}

std::vector<Equation> lattice_bounds() {
  return {{"x & (y | z)", "(x & y) | (x & z)"}, {"x & top", "x"}, {"x | bot", "x"}};
}

std::vector<Equation> demorgan() { return {{"~~x", "x"}, {"~(x & y)", "~x | ~y"}}; }

std::vector<Equation> involutive_stone() {
  return {{"nabla(bot)", "bot"},
          {"x & nabla(x)", "x"},
          {"nabla(x & y)", "nabla(x) & nabla(y)"},
          {"~nabla(x) & nabla(x)", "bot"}};
}

std::vector<Equation> perfect_paradefinite() {
  return {{"@@x", "top"},
          {"@x", "@~x"},
          {"@top", "top"},
          {"x & ~x & @x", "bot"},
          {"@(x & y)", "(@x | @y) & (@x | ~y) & (@y | ~x)"}};
}

std::vector<Equation> heyting() {
  return {{"x => x", "top"}, {"x & (x => y)", "x & y"}, {"y & (x => y)", "y"}, {"x => (y & z)", "(x => y) & (x => z)"}};
}

Equation pp_imp_inequality() {
  return {"@(x1 => x2) & @(x2 => x3)",
          "@x1 | @x4 | @(x4 => x3) | @(x3 => x2) | @(x2 => x1)", true};
}

void run_suite(const FiniteAlgebra& alg, SuiteResult& res, const std::vector<std::string>& needs,
               const std::vector<Equation>& eqs) {
  for (const auto& c : needs) {
    if (!alg.has(c)) {
      res.applicable = false;
      res.holds = false;
      res.missing = c;
      return;
    }
  }
  res.holds = true;
  for (const auto& e : eqs) {
    Formula l = parse_formula(e.lhs, parse_sig());
    Formula r = parse_formula(e.rhs, parse_sig());
    IdentityResult ir = e.inequality ? check_inequality(alg, l, r) : check_identity(alg, l, r);
    if (!ir.valid) {
      res.holds = false;
      res.failing = render_formula(l) + (e.inequality ? " <= " : " = ") + render_formula(r);
      res.counterexample = ir.counterexample;
      return;
    }
  }
}

template <typename... Lists>
std::vector<Equation> join(const Lists&... lists) {
  std::vector<Equation> out;
  (out.insert(out.end(), lists.begin(), lists.end()), ...);
  return out;
}

}  // namespace

VarietyProfile variety_profile(const FiniteAlgebra& alg) {
  VarietyProfile p;
  const std::vector<std::string> dm_needs{"and", "or", "neg", "top", "bot"};
  auto add = [&](std::string name, std::vector<std::string> needs, std::vector<Equation> eqs) {
    SuiteResult r;
    r.name = std::move(name);
    run_suite(alg, r, needs, eqs);
    if (r.holds) p.names.insert(r.name);
    p.suites.push_back(std::move(r));
  };
  auto plus = [](std::vector<std::string> a, std::initializer_list<std::string> b) {
    a.insert(a.end(), b);
    return a;
  };
  add("DeMorgan", dm_needs, join(lattice_bounds(), demorgan()));
  add("InvolutiveStone", plus(dm_needs, {"circ"}), join(lattice_bounds(), demorgan(), involutive_stone()));
  add("PP", plus(dm_needs, {"circ"}), join(lattice_bounds(), demorgan(), perfect_paradefinite()));
  add("SymmetricHeyting", plus(dm_needs, {"imp"}), join(lattice_bounds(), demorgan(), heyting()));
  add("PPImp", plus(dm_needs, {"circ", "imp"}),
      join(lattice_bounds(), demorgan(), perfect_paradefinite(), heyting(), std::vector<Equation>{pp_imp_inequality()}));
  add("DeltaIdempotent", plus(dm_needs, {"imp"}),
      join(lattice_bounds(), demorgan(), heyting(), std::vector<Equation>{{"delta(delta(x))", "delta(x)"}}));
  return p;
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out(block_count());
  for (std::size_t i = 0; i < block_of.size(); ++i) out[block_of[i]].push_back(static_cast<int>(i));
  return out;
}

int Congruence::block_count() const {
  int m = -1;
  for (int b : block_of) m = std::max(m, b);
  return m + 1;
}

bool Congruence::refines(const Congruence& coarser) const {
  for (std::size_t a = 0; a < block_of.size(); ++a)
    for (std::size_t b = a + 1; b < block_of.size(); ++b)
      if (block_of[a] == block_of[b] && coarser.block_of[a] != coarser.block_of[b]) return false;
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  Congruence canonical() {
    Congruence c;
    const int n = static_cast<int>(parent.size());
    c.block_of.assign(n, -1);
    std::vector<int> id(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (id[r] < 0) id[r] = next++;
      c.block_of[i] = id[r];
    }
    return c;
  }
};

// Saturates under the unary polynomial translations of every operation.
void saturate(const FiniteAlgebra& alg, UnionFind& uf) {
  const int n = alg.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [conn, t] : alg.base().ops()) {
      if (t.arity == 0) continue;
      std::vector<int> args(t.arity, 0);
      std::size_t tuples = 1;
      for (int i = 0; i < t.arity - 1; ++i) tuples *= n;
      for (int pos = 0; pos < t.arity; ++pos) {
        for (std::size_t k = 0; k < tuples; ++k) {
          std::size_t rem = k;
          for (int i = 0; i < t.arity; ++i) {
            if (i == pos) continue;
            args[i] = static_cast<int>(rem % n);
            rem /= n;
          }
          for (int c = 0; c < n; ++c) {
            for (int d = c + 1; d < n; ++d) {
              if (uf.find(c) != uf.find(d)) continue;
              args[pos] = c;
              int x = alg.op(conn, args);
              args[pos] = d;
              int y = alg.op(conn, args);
              if (uf.unite(x, y)) changed = true;
            }
          }
        }
      }
    }
  }
}

}  // namespace

Congruence identity_congruence(int n) {
  Congruence c;
  c.block_of.resize(n);
  std::iota(c.block_of.begin(), c.block_of.end(), 0);
  return c;
}

Congruence principal_congruence(const FiniteAlgebra& alg, int a, int b) {
  UnionFind uf(alg.size());
  uf.unite(a, b);
  saturate(alg, uf);
  return uf.canonical();
}

Congruence congruence_join(const Congruence& x, const Congruence& y) {
  const int n = static_cast<int>(x.block_of.size());
  UnionFind uf(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (x.related(a, b) || y.related(a, b)) uf.unite(a, b);
  return uf.canonical();
}

Congruence congruence_meet(const Congruence& x, const Congruence& y) {
  const int n = static_cast<int>(x.block_of.size());
  UnionFind uf(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (x.related(a, b) && y.related(a, b)) uf.unite(a, b);
  return uf.canonical();
}

bool is_congruence(const FiniteAlgebra& alg, const Congruence& c) {
  const int n = alg.size();
  for (const auto& [conn, t] : alg.base().ops()) {
    if (t.arity == 0) continue;
    std::vector<int> a(t.arity, 0), b(t.arity, 0);
    std::size_t total = 1;
    for (int i = 0; i < t.arity; ++i) total *= n;
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t r = i;
      for (int k = t.arity - 1; k >= 0; --k, r /= n) a[k] = static_cast<int>(r % n);
      for (std::size_t j = 0; j < total; ++j) {
        std::size_t s = j;
        bool related = true;
        for (int k = t.arity - 1; k >= 0; --k, s /= n) {
          b[k] = static_cast<int>(s % n);
          if (!c.related(a[k], b[k])) related = false;
        }
        if (related && !c.related(alg.op(conn, a), alg.op(conn, b))) return false;
      }
    }
  }
  return true;
}

std::vector<Congruence> congruences(const FiniteAlgebra& alg, int max_carrier) {
  require_carrier(alg, max_carrier);
  const int n = alg.size();
  std::set<Congruence> all{identity_congruence(n)};
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all.insert(principal_congruence(alg, a, b));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Congruence> cur(all.begin(), all.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (all.insert(congruence_join(cur[i], cur[j])).second) grew = true;
  }
  std::vector<Congruence> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const Congruence& x, const Congruence& y) {
    if (x.block_count() != y.block_count()) return x.block_count() > y.block_count();
    return x.block_of < y.block_of;
  });
  return out;
}

bool is_simple(const FiniteAlgebra& alg, int max_carrier) { return congruences(alg, max_carrier).size() == 2; }

Reduction leibniz_and_reduce(const PNMatrix& m, int max_carrier) {
  FiniteAlgebra alg(m.algebra);
  Reduction red;
  bool found = false;
  for (const auto& c : congruences(alg, max_carrier)) {
    bool compatible = true;
    for (const auto& block : c.blocks()) {
      int inside = 0;
      for (int v : block)
        if (m.designated & bit(v)) ++inside;
      if (inside != 0 && inside != static_cast<int>(block.size())) compatible = false;
    }
    if (!compatible) continue;
    if (!found || c.block_count() < red.leibniz.block_count()) red.leibniz = c;
    found = true;
  }
  red.reduced = red.leibniz.is_identity();
  const auto blocks = red.leibniz.blocks();
  std::vector<std::string> names;
  for (const auto& b : blocks) {
    if (b.size() == 1) {
      names.push_back(alg.base().value_name(b[0]));
      continue;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + alg.base().value_name(b[i]);
    names.push_back(s + "]");
  }
  auto q = std::make_shared<MultiAlgebra>(alg.base().name() + "/leibniz", names);
  const int k = static_cast<int>(blocks.size());
  for (const auto& [conn, t] : alg.base().ops()) {
    q->define(conn, make_table(k, t.arity, [&](const std::vector<int>& args) {
                std::vector<int> reps;
                for (int a : args) reps.push_back(blocks[a][0]);
                return red.leibniz.block_of[alg.op(conn, reps)];
              }));
  }
  red.quotient.name = m.name + "*";
  red.quotient.algebra = q;
  red.quotient.designated = 0;
  for (int i = 0; i < k; ++i)
    if (m.designated & bit(blocks[i][0])) red.quotient.designated |= bit(i);
  return red;
}

ValueSet upset(const FiniteAlgebra& alg, int a) {
  ValueSet s = 0;
  for (int x = 0; x < alg.size(); ++x)
    if (alg.leq(a, x)) s |= bit(x);
  return s;
}

namespace {

bool is_lattice_filter(const FiniteAlgebra& alg, ValueSet f) {
  if (!f) return false;
  if (alg.has("top") && !(f & bit(alg.top()))) return false;
  for (int a : members(f)) {
    for (int x = 0; x < alg.size(); ++x)
      if (alg.leq(a, x) && !(f & bit(x))) return false;
    for (int b : members(f))
      if (!(f & bit(alg.op("and", {a, b})))) return false;
  }
  return true;
}

std::vector<ValueSet> sorted_sets(std::vector<ValueSet> v) {
  std::sort(v.begin(), v.end(), [](ValueSet a, ValueSet b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return a < b;
  });
  return v;
}

std::vector<ValueSet> lattice_filters(const FiniteAlgebra& alg, int max_carrier) {
  require_carrier(alg, max_carrier);
  if (!alg.is_lattice()) throw MissingConnective("filters need the lattice connectives 'and' and 'or'");
  std::vector<ValueSet> out;
  const ValueSet full = alg.base().full();
  for (ValueSet s = 1; s <= full && s != 0; ++s)
    if (is_lattice_filter(alg, s)) out.push_back(s);
  return out;
}

}  // namespace

std::vector<ValueSet> filters(const FiniteAlgebra& alg, FilterFlavor flavor, int max_carrier) {
  std::vector<ValueSet> lat = lattice_filters(alg, max_carrier);
  std::vector<ValueSet> out;
  const ValueSet full = alg.base().full();
  switch (flavor) {
    case FilterFlavor::Lattice:
      out = lat;
      break;
    case FilterFlavor::Principal:
      for (int a = 0; a < alg.size(); ++a) {
        ValueSet u = upset(alg, a);
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
      }
      break;
    case FilterFlavor::Prime:
      for (ValueSet f : lat) {
        if (f == full) continue;
        bool prime = true;
        for (int a = 0; a < alg.size() && prime; ++a)
          for (int b = 0; b < alg.size() && prime; ++b)
            if ((f & bit(alg.op("or", {a, b}))) && !(f & bit(a)) && !(f & bit(b))) prime = false;
        if (prime) out.push_back(f);
      }
      break;
    case FilterFlavor::Regular: {
      Formula dx = delta_term(alg, var("x"));
      for (ValueSet f : lat) {
        bool regular = true;
        for (int a : members(f))
          if (!(f & bit(alg.eval(dx, {{"x", a}})))) regular = false;
        if (regular) out.push_back(f);
      }
      break;
    }
  }
  return sorted_sets(out);
}

std::vector<ValueSet> contraposition_closed_filters(const FiniteAlgebra& alg, int max_carrier) {
  if (!alg.has("imp") || !alg.has("neg")) throw MissingConnective("contraposition needs 'imp' and 'neg'");
  std::vector<ValueSet> out;
  for (ValueSet f : lattice_filters(alg, max_carrier)) {
    bool closed = true;
    for (int a = 0; a < alg.size() && closed; ++a)
      for (int b = 0; b < alg.size() && closed; ++b)
        if ((f & bit(alg.op("imp", {a, b}))) &&
            !(f & bit(alg.op("imp", {alg.op("neg", {b}), alg.op("neg", {a})}))))
          closed = false;
    if (closed) out.push_back(f);
  }
  return sorted_sets(out);
}

namespace {

ValueSet closure(const FiniteAlgebra& alg, ValueSet seed) {
  ValueSet s = seed;
  for (const auto& [conn, t] : alg.base().ops())
    if (t.arity == 0) s |= bit(alg.op(conn, {}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> elems = members(s);
    for (const auto& [conn, t] : alg.base().ops()) {
      if (t.arity == 0) continue;
      std::vector<std::size_t> pick(t.arity, 0);
      std::vector<int> args(t.arity);
      while (true) {
        for (int i = 0; i < t.arity; ++i) args[i] = elems[pick[i]];
        int v = alg.op(conn, args);
        if (!(s & bit(v))) {
          s |= bit(v);
          grew = true;
        }
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == elems.size()) pick[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  return s;
}

}  // namespace

std::vector<ValueSet> subalgebras(const FiniteAlgebra& alg, int max_carrier) {
  require_carrier(alg, max_carrier);
  std::set<ValueSet> found;
  const ValueSet full = alg.base().full();
  for (ValueSet s = 0;; ++s) {
    ValueSet c = closure(alg, s);
    if (c) found.insert(c);
    if (s == full) break;
  }
  return sorted_sets({found.begin(), found.end()});
}

bool subalgebras_isomorphic(const FiniteAlgebra& alg, ValueSet x, ValueSet y) {
  std::vector<int> xs = members(x), ys = members(y);
  if (xs.size() != ys.size()) return false;
  std::vector<int> perm = ys;
  std::sort(perm.begin(), perm.end());
  do {
    std::map<int, int> h;
    for (std::size_t i = 0; i < xs.size(); ++i) h[xs[i]] = perm[i];
    bool ok = true;
    for (const auto& [conn, t] : alg.base().ops()) {
      if (!ok) break;
      std::vector<std::size_t> pick(t.arity, 0);
      std::vector<int> args(t.arity), img(t.arity);
      while (ok) {
        for (int i = 0; i < t.arity; ++i) {
          args[i] = xs[pick[i]];
          img[i] = h[args[i]];
        }
        if (h[alg.op(conn, args)] != alg.op(conn, img)) ok = false;
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == xs.size()) pick[k--] = 0;
        if (k < 0) break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<ValueSet> subalgebras_up_to_isomorphism(const FiniteAlgebra& alg, int max_carrier) {
  std::vector<ValueSet> reps;
  for (ValueSet s : subalgebras(alg, max_carrier)) {
    bool fresh = true;
    for (ValueSet r : reps)
      if (subalgebras_isomorphic(alg, r, s)) fresh = false;
    if (fresh) reps.push_back(s);
  }
  return reps;
}

ResiduumResult residuum_of_meet(const FiniteAlgebra& alg) {
  if (!alg.has("and")) throw MissingConnective("residuation needs 'and'");
  const int n = alg.size();
  ResiduumResult res;
  OpTable t;
  t.arity = 2;
  t.entries.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::vector<int> cand;
      for (int c = 0; c < n; ++c)
        if (alg.leq(alg.op("and", {a, c}), b)) cand.push_back(c);
      int max = -1;
      for (int c : cand) {
        bool greatest = true;
        for (int d : cand)
          if (!alg.leq(d, c)) greatest = false;
        if (greatest) max = c;
      }
      if (max < 0) {
        res.not_residuated = std::make_pair(a, b);
        return res;
      }
      t.entries[static_cast<std::size_t>(a) * n + b] = bit(max);
    }
  }
  res.table = std::move(t);
  return res;
}

std::vector<UnaryFunction> unary_term_functions(const FiniteAlgebra& alg, int max_carrier) {
  require_carrier(alg, max_carrier);
  const int n = alg.size();
  auto key = [&](const std::vector<int>& f) {
    std::uint64_t k = 0;
    for (int v : f) k = k * 16 + static_cast<std::uint64_t>(v);
    return k;
  };
  std::vector<UnaryFunction> out;
  std::unordered_map<std::uint64_t, int> seen;
  auto offer = [&](std::vector<int> f, const Formula& w) {
    if (seen.emplace(key(f), static_cast<int>(out.size())).second) out.push_back({std::move(f), w});
  };
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  offer(id, var("p"));
  for (const auto& [conn, t] : alg.base().ops())
    if (t.arity == 0) offer(std::vector<int>(n, alg.op(conn, {})), Formula::app(conn, {}));
  // Semi-naive closure: each round combines at least one function from the previous round.
  std::size_t old_end = 0;
  while (old_end < out.size()) {
    const std::size_t new_end = out.size();
    for (const auto& [conn, t] : alg.base().ops()) {
      if (t.arity == 0) continue;
      std::vector<std::size_t> pick(t.arity, 0);
      std::vector<int> args(t.arity);
      while (true) {
        bool fresh = false;
        for (std::size_t i : pick)
          if (i >= old_end) fresh = true;
        if (fresh) {
          std::vector<int> f(n);
          for (int x = 0; x < n; ++x) {
            for (int i = 0; i < t.arity; ++i) args[i] = out[pick[i]].map[x];
            f[x] = alg.op(conn, args);
          }
          if (!seen.count(key(f))) {
            std::vector<Formula> ws;
            for (std::size_t i : pick) ws.push_back(out[i].witness);
            offer(std::move(f), Formula::app(conn, ws));
          }
        }
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == new_end) pick[k--] = 0;
        if (k < 0) break;
      }
    }
    old_end = new_end;
  }
  return out;
}

}  // namespace mvl
