#include "mvl/semantics.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

namespace mvl {

int popcount(ValueSet s) { return std::popcount(s); }

std::vector<int> members(ValueSet s) {
  std::vector<int> out;
  while (s) {
    int i = std::countr_zero(s);
    out.push_back(i);
    s &= s - 1;
  }
  return out;
}

MultiAlgebra::MultiAlgebra(std::string name, std::vector<std::string> carrier)
    : name_(std::move(name)), carrier_(std::move(carrier)) {
  if (carrier_.empty() || carrier_.size() > static_cast<std::size_t>(kMaxCarrier))
    throw Error("carrier size must be between 1 and 32");
}

int MultiAlgebra::value_index(const std::string& v) const {
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (carrier_[i] == v) return static_cast<int>(i);
  throw Error("unknown value '" + v + "' in algebra " + name_);
}

void MultiAlgebra::define(const std::string& conn, OpTable table) {
  std::size_t expect = 1;
  for (int i = 0; i < table.arity; ++i) expect *= carrier_.size();
  if (table.entries.size() != expect) throw Error("table for '" + conn + "' has wrong size");
  for (ValueSet e : table.entries)
    if (e & ~full()) throw Error("table for '" + conn + "' leaves the carrier");
  ops_[conn] = std::move(table);
}

const OpTable& MultiAlgebra::table(const std::string& conn) const {
  auto it = ops_.find(conn);
  if (it == ops_.end()) throw UnknownConnective("algebra " + name_ + " does not interpret '" + conn + "'");
  return it->second;
}

Signature MultiAlgebra::signature() const {
  Signature s;
  for (const auto& [c, t] : ops_) s.connectives[c] = t.arity;
  return s;
}

std::size_t MultiAlgebra::index(const std::vector<int>& args) const {
  std::size_t idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size()) throw Error("argument outside the carrier");
    idx = idx * carrier_.size() + static_cast<std::size_t>(a);
  }
  return idx;
}

ValueSet MultiAlgebra::eval(const std::string& conn, const std::vector<int>& args) const {
  const OpTable& t = table(conn);
  if (static_cast<int>(args.size()) != t.arity)
    throw ArityError("'" + conn + "' expects " + std::to_string(t.arity) + " argument(s)");
  return t.entries[index(args)];
}

int MultiAlgebra::apply(const std::string& conn, const std::vector<int>& args) const {
  ValueSet s = eval(conn, args);
  if (popcount(s) != 1) throw Error("entry of '" + conn + "' is not deterministic");
  return std::countr_zero(s);
}

bool MultiAlgebra::deterministic() const {
  for (const auto& [c, t] : ops_)
    for (ValueSet e : t.entries)
      if (popcount(e) != 1) return false;
  return true;
}

bool MultiAlgebra::total() const {
  for (const auto& [c, t] : ops_)
    for (ValueSet e : t.entries)
      if (e == 0) return false;
  return true;
}

bool MultiAlgebra::ops_equal(const MultiAlgebra& o) const {
  if (ops_.size() != o.ops_.size()) return false;
  for (const auto& [c, t] : ops_) {
    auto it = o.ops_.find(c);
    if (it == o.ops_.end() || it->second.arity != t.arity || it->second.entries != t.entries) return false;
  }
  return true;
}

namespace {

template <typename F>
OpTable fill_table(int n, int arity, F&& fn) {
  OpTable t;
  t.arity = arity;
  std::size_t total = 1;
  for (int i = 0; i < arity; ++i) total *= static_cast<std::size_t>(n);
  t.entries.resize(total);
  std::vector<int> args(arity, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (int i = arity - 1; i >= 0; --i) {
      args[i] = static_cast<int>(r % n);
      r /= n;
    }
    t.entries[idx] = fn(args);
  }
  return t;
}

}  // namespace

OpTable make_table(int n, int arity, const std::function<int(const std::vector<int>&)>& fn) {
  return fill_table(n, arity, [&](const std::vector<int>& a) { return bit(fn(a)); });
}

OpTable make_multi_table(int n, int arity, const std::function<ValueSet(const std::vector<int>&)>& fn) {
  return fill_table(n, arity, fn);
}

ValueSet eval_multiop(const MultiAlgebra& alg, const std::string& conn, const std::vector<int>& args) {
  return alg.eval(conn, args);
}

PNMatrix make_matrix(std::string name, std::shared_ptr<const MultiAlgebra> alg,
                     const std::vector<std::string>& designated) {
  PNMatrix m;
  m.name = std::move(name);
  m.designated = parse_value_set(*alg, designated);
  m.algebra = std::move(alg);
  return m;
}

std::string format_value_set(const MultiAlgebra& alg, ValueSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ",";
    out += alg.value_name(i);
    first = false;
  }
  return out + "}";
}

ValueSet parse_value_set(const MultiAlgebra& alg, const std::vector<std::string>& names) {
  ValueSet s = 0;
  for (const auto& n : names) s |= bit(alg.value_index(n));
  return s;
}

std::string ValuationWitness::describe(const MultiAlgebra& alg) const {
  std::string out;
  for (const auto& [name, value] : variable_values(alg)) {
    if (!out.empty()) out += ", ";
    out += name + "=" + value;
  }
  return out;
}

std::map<std::string, std::string> ValuationWitness::variable_values(const MultiAlgebra& alg) const {
  std::map<std::string, std::string> out;
  for (const auto& [f, v] : assignment)
    if (f.is_var()) out[f.symbol()] = alg.value_name(v);
  return out;
}

void require_signature(const MultiAlgebra& alg, const std::vector<Formula>& fs) {
  for (const auto& f : fs) {
    for (const auto& c : connectives_of(f)) {
      if (!alg.has(c)) throw SignatureMismatch("algebra " + alg.name() + " does not interpret '" + c + "'");
    }
  }
  for (const auto& g : subformulas(fs)) {
    if (!g.is_var() && alg.table(g.symbol()).arity != static_cast<int>(g.arity()))
      throw SignatureMismatch("arity of '" + g.symbol() + "' differs from algebra " + alg.name());
  }
}

namespace {

// Depth-first valuation search over a subformula-closed domain. Positions
// list variables by name, then compound formulas by depth; each compound
// is checked as soon as its last argument receives a value.
class ValuationSearch {
 public:
  ValuationSearch(const PNMatrix& m, const std::vector<Formula>& domain,
                  const std::map<Formula, ValueSet>& constraints)
      : m_(m) {
    FormulaSet closed = subformulas(domain);
    require_signature(m.alg(), std::vector<Formula>(closed.begin(), closed.end()));
    std::vector<Formula> vars, comps;
    for (const auto& f : closed) (f.is_var() ? vars : comps).push_back(f);
    std::sort(vars.begin(), vars.end(), [](const Formula& a, const Formula& b) { return a.symbol() < b.symbol(); });
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Formula& a, const Formula& b) { return a.depth() < b.depth(); });
    order_ = vars;
    order_.insert(order_.end(), comps.begin(), comps.end());
    std::unordered_map<Formula, int> pos;
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = static_cast<int>(i);
    slots_.resize(order_.size());
    ready_.resize(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
      Slot& s = slots_[i];
      const Formula& f = order_[i];
      s.mask = m.alg().full();
      auto c = constraints.find(f);
      if (c != constraints.end()) s.mask &= c->second;
      if (f.is_var()) continue;
      s.table = &m.alg().table(f.symbol()).entries;
      int last = -1;
      for (const auto& a : f.args()) {
        s.args.push_back(pos.at(a));
        last = std::max(last, s.args.back());
      }
      if (last < 0) {
        constants_.push_back(static_cast<int>(i));
      } else {
        ready_[last].push_back(static_cast<int>(i));
      }
    }
    values_.assign(order_.size(), -1);
    cand_.assign(order_.size(), 0);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    for (int c : constants_) {
      cand_[c] = (*slots_[c].table)[0] & slots_[c].mask;
      if (!cand_[c]) return;
    }
    stop_ = false;
    dfs(0, visit);
  }

  ValuationWitness witness() const {
    ValuationWitness w;
    for (std::size_t i = 0; i < order_.size(); ++i) w.assignment.emplace(order_[i], values_[i]);
    return w;
  }

  void stop() { stop_ = true; }

 private:
  struct Slot {
    ValueSet mask = 0;
    const std::vector<ValueSet>* table = nullptr;
    std::vector<int> args;
  };

  ValueSet entry(int j) const {
    const Slot& s = slots_[j];
    std::size_t idx = 0;
    const std::size_t n = static_cast<std::size_t>(m_.alg().size());
    for (int a : s.args) idx = idx * n + static_cast<std::size_t>(values_[a]);
    return (*s.table)[idx] & s.mask;
  }

  template <typename Visit>
  void dfs(std::size_t i, Visit& visit) {
    if (stop_) return;
    if (i == order_.size()) {
      visit(*this);
      return;
    }
    const Slot& s = slots_[i];
    ValueSet options = s.table ? cand_[i] : s.mask;
    while (options && !stop_) {
      int v = std::countr_zero(options);
      options &= options - 1;
      values_[i] = v;
      bool ok = true;
      for (int j : ready_[i]) {
        cand_[j] = entry(j);
        if (!cand_[j]) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(i + 1, visit);
    }
    values_[i] = -1;
  }

  const PNMatrix& m_;
  std::vector<Formula> order_;
  std::vector<Slot> slots_;
  std::vector<std::vector<int>> ready_;
  std::vector<int> constants_;
  std::vector<int> values_;
  std::vector<ValueSet> cand_;
  bool stop_ = false;
};

}  // namespace

std::vector<ValuationWitness> solve_valuations(const PNMatrix& m, const std::vector<Formula>& domain,
                                               const std::map<Formula, ValueSet>& constraints, std::size_t limit) {
  std::vector<ValuationWitness> out;
  if (limit == 0) return out;
  std::vector<Formula> dom = domain;
  for (const auto& [f, s] : constraints) dom.push_back(f);
  ValuationSearch search(m, dom, constraints);
  search.run([&](ValuationSearch& s) {
    out.push_back(s.witness());
    if (out.size() >= limit) s.stop();
  });
  return out;
}

bool satisfiable(const PNMatrix& m, const std::vector<Formula>& domain, const std::map<Formula, ValueSet>& constraints) {
  std::vector<Formula> dom = domain;
  for (const auto& [f, s] : constraints) dom.push_back(f);
  ValuationSearch search(m, dom, constraints);
  bool found = false;
  search.run([&](ValuationSearch& s) {
    found = true;
    s.stop();
  });
  return found;
}

std::optional<ValuationWitness> find_countermodel(const PNMatrix& m, const std::vector<Formula>& premises,
                                                  const std::vector<Formula>& conclusions) {
  std::map<Formula, ValueSet> constraints;
  for (const auto& p : premises) {
    auto [it, fresh] = constraints.emplace(p, m.designated);
    if (!fresh) it->second &= m.designated;
  }
  for (const auto& c : conclusions) {
    auto [it, fresh] = constraints.emplace(c, m.undesignated());
    if (!fresh) it->second &= m.undesignated();
  }
  std::vector<Formula> dom = premises;
  dom.insert(dom.end(), conclusions.begin(), conclusions.end());
  auto ws = solve_valuations(m, dom, constraints, 1);
  if (ws.empty()) return std::nullopt;
  return ws.front();
}

ConsequenceResult check_consequence(const ConsequenceProblem& problem) {
  if (problem.mode == Mode::SetFmla && problem.conclusions.size() != 1)
    throw Error("Set-Fmla consequence needs exactly one conclusion");
  std::vector<Formula> all = problem.premises;
  all.insert(all.end(), problem.conclusions.begin(), problem.conclusions.end());
  for (const auto& m : problem.models) require_signature(m.alg(), all);
  ConsequenceResult r;
  for (std::size_t i = 0; i < problem.models.size(); ++i) {
    auto w = find_countermodel(problem.models[i], problem.premises, problem.conclusions);
    if (w) {
      r.holds = false;
      r.matrix_index = static_cast<int>(i);
      r.witness = std::move(w);
      return r;
    }
  }
  return r;
}

SoundnessResult check_rule_soundness(const Rule& r, const std::vector<PNMatrix>& models) {
  ConsequenceProblem p{models, r.antecedent, r.succedent, Mode::SetSet};
  ConsequenceResult c = check_consequence(p);
  return SoundnessResult{c.holds, c.matrix_index, c.witness};
}

PNMatrix restrict_matrix(const PNMatrix& m, ValueSet x) {
  const MultiAlgebra& a = m.alg();
  std::vector<int> keep = members(x & a.full());
  std::vector<int> newidx(a.size(), -1);
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    newidx[keep[i]] = static_cast<int>(i);
    carrier.push_back(a.value_name(keep[i]));
  }
  auto r = std::make_shared<MultiAlgebra>(a.name() + "|" + format_value_set(a, x), carrier);
  const int n = static_cast<int>(keep.size());
  for (const auto& [conn, t] : a.ops()) {
    r->define(conn, make_multi_table(n, t.arity, [&](const std::vector<int>& args) {
      std::vector<int> orig;
      for (int v : args) orig.push_back(keep[v]);
      ValueSet e = t.entries[a.index(orig)] & x;
      ValueSet out = 0;
      for (int v : members(e)) out |= bit(newidx[v]);
      return out;
    }));
  }
  PNMatrix rm;
  rm.name = m.name + "|" + format_value_set(a, x);
  rm.algebra = r;
  for (int v : members(m.designated & x)) rm.designated |= bit(newidx[v]);
  return rm;
}

bool restriction_total(const PNMatrix& m, ValueSet x) {
  const MultiAlgebra& a = m.alg();
  std::vector<int> vals = members(x);
  if (vals.empty()) return false;
  for (const auto& [conn, t] : a.ops()) {
    std::vector<std::size_t> pick(t.arity, 0);
    while (true) {
      std::size_t idx = 0;
      for (int i = 0; i < t.arity; ++i) idx = idx * a.size() + vals[pick[i]];
      if (!(t.entries[idx] & x)) return false;
      int k = t.arity - 1;
      while (k >= 0 && ++pick[k] == vals.size()) pick[k--] = 0;
      if (k < 0) break;
    }
  }
  return true;
}

std::vector<ValueSet> total_components(const PNMatrix& m) {
  const int n = m.alg().size();
  if (n > 20) throw Error("total_components supports carriers of at most 20 values");
  std::vector<ValueSet> totals;
  for (ValueSet x = 1; x < (ValueSet{1} << n); ++x)
    if (restriction_total(m, x)) totals.push_back(x);
  std::vector<ValueSet> maximal;
  for (ValueSet x : totals) {
    bool dominated = false;
    for (ValueSet y : totals)
      if (y != x && (x & y) == x) {
        dominated = true;
        break;
      }
    if (!dominated) maximal.push_back(x);
  }
  std::sort(maximal.begin(), maximal.end(), [](ValueSet a, ValueSet b) { return members(a) < members(b); });
  return maximal;
}

PNMatrix refine_matrix(const PNMatrix& m, const std::vector<Deletion>& deletions) {
  auto alg = std::make_shared<MultiAlgebra>(m.alg());
  MultiAlgebra& a = *alg;
  for (const auto& d : deletions) {
    OpTable t = a.table(d.connective);
    if (static_cast<int>(d.args.size()) != t.arity) throw ArityError("deletion with wrong arity");
    std::size_t idx = a.index(d.args);
    if (d.value < 0 || d.value >= a.size() || !(t.entries[idx] & bit(d.value)))
      throw ValueAbsent("value is not present in the entry of '" + d.connective + "'");
    t.entries[idx] &= ~bit(d.value);
    a.define(d.connective, std::move(t));
  }
  PNMatrix r = m;
  r.algebra = alg;
  return r;
}

}  // namespace mvl
