#include "mvl/calculus.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace mvl {

using namespace values;

std::string render_substitution(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, f] : s) {
    if (!first) out += ", ";
    out += v + ":=" + render_formula(f);
    first = false;
  }
  return out + "}";
}

std::vector<Formula> candidate_set(const Calculus& c, const std::vector<Formula>& premises,
                                   const std::vector<Formula>& goal) {
  std::vector<Formula> base = premises;
  base.insert(base.end(), goal.begin(), goal.end());
  FormulaSet s = c.xi ? generalized_subformulas(base, *c.xi) : subformulas(base);
  return {s.begin(), s.end()};
}

namespace {

// Extends sigma so that pattern matches target; returns false on clash.
bool match(const Formula& pattern, const Formula& target, Substitution& sigma) {
  if (pattern.is_var()) {
    auto it = sigma.find(pattern.symbol());
    if (it != sigma.end()) return it->second == target;
    sigma.emplace(pattern.symbol(), target);
    return true;
  }
  if (target.is_var() || pattern.symbol() != target.symbol() || pattern.arity() != target.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.arg(i), target.arg(i), sigma)) return false;
  return true;
}

bool match_fresh(const Formula& pattern, const Formula& target, Substitution& sigma) {
  Substitution trial = sigma;
  if (!match(pattern, target, trial)) return false;
  sigma = std::move(trial);
  return true;
}

struct Instance {
  int rule;
  std::vector<int> ant;
  std::vector<int> succ;
  Substitution sigma;
};

// Enumerates every rule instance whose formulas all lie in the candidate set.
class InstanceBuilder {
 public:
  InstanceBuilder(const std::vector<Formula>& universe) : universe_(universe) {
    for (std::size_t i = 0; i < universe.size(); ++i) {
      index_.emplace(universe[i], static_cast<int>(i));
      if (!universe[i].is_var()) by_symbol_[universe[i].symbol()].push_back(static_cast<int>(i));
    }
  }

  int id(const Formula& f) const {
    auto it = index_.find(f);
    return it == index_.end() ? -1 : it->second;
  }

  std::vector<Instance> build(const std::vector<Rule>& rules) const {
    std::vector<Instance> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const Rule& rule = rules[r];
      std::vector<Formula> patterns = rule.antecedent;
      patterns.insert(patterns.end(), rule.succedent.begin(), rule.succedent.end());
      std::stable_sort(patterns.begin(), patterns.end(),
                       [](const Formula& a, const Formula& b) { return a.size() > b.size(); });
      Substitution sigma;
      enumerate(rule, static_cast<int>(r), patterns, 0, sigma, out);
    }
    return out;
  }

 private:
  void enumerate(const Rule& rule, int r, const std::vector<Formula>& patterns, std::size_t k, Substitution& sigma,
                 std::vector<Instance>& out) const {
    if (k == patterns.size()) {
      Instance inst{r, {}, {}, sigma};
      for (const auto& f : rule.antecedent) {
        int i = id(substitute(f, sigma));
        if (std::find(inst.ant.begin(), inst.ant.end(), i) == inst.ant.end()) inst.ant.push_back(i);
      }
      for (const auto& f : rule.succedent) {
        int i = id(substitute(f, sigma));
        if (std::find(inst.succ.begin(), inst.succ.end(), i) == inst.succ.end()) inst.succ.push_back(i);
      }
      for (int s : inst.succ)
        if (std::find(inst.ant.begin(), inst.ant.end(), s) != inst.ant.end()) return;  // never useful
      out.push_back(std::move(inst));
      return;
    }
    const Formula& pat = patterns[k];
    if (pat.is_var()) {
      auto it = sigma.find(pat.symbol());
      if (it != sigma.end()) {
        if (index_.count(it->second)) enumerate(rule, r, patterns, k + 1, sigma, out);
        return;
      }
      for (const auto& f : universe_) {
        sigma.emplace(pat.symbol(), f);
        enumerate(rule, r, patterns, k + 1, sigma, out);
        sigma.erase(pat.symbol());
      }
      return;
    }
    // Fully bound patterns need only a membership test.
    bool bound = true;
    for (const auto& v : variables_of(pat))
      if (!sigma.count(v)) bound = false;
    if (bound) {
      if (index_.count(substitute(pat, sigma))) enumerate(rule, r, patterns, k + 1, sigma, out);
      return;
    }
    auto bucket = by_symbol_.find(pat.symbol());
    if (bucket == by_symbol_.end()) return;
    for (int i : bucket->second) {
      Substitution next = sigma;
      if (!match(pat, universe_[i], next)) continue;
      enumerate(rule, r, patterns, k + 1, next, out);
    }
  }

  const std::vector<Formula>& universe_;
  std::unordered_map<Formula, int> index_;
  std::unordered_map<std::string, std::vector<int>> by_symbol_;
};

struct BudgetExceeded {};

enum class Outcome { Closed, Open };

// Formula ids a closed subtree depends on.
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void merge(const Bits& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
  }
};

// Analytic proof search over a fixed finite candidate set. Provability is
// the unsatisfiability of the clauses "some antecedent missing or some
// succedent present", so the choice of branching instance never needs to
// be revisited: an open saturated branch refutes the sequent. A closed
// branch that never used the formula it added replaces its parent step.
class AnalyticSearch {
 public:
  AnalyticSearch(const Calculus& c, const std::vector<Formula>& premises, const std::vector<Formula>& goal,
                 const Budget& budget)
      : calc_(c), budget_(budget), premises_(premises) {
    universe_ = candidate_set(c, premises, goal);
    InstanceBuilder builder(universe_);
    instances_ = builder.build(c.rules);
    const std::size_t n = universe_.size();
    in_label_.assign(n, 0);
    is_goal_.assign(n, 0);
    watch_.resize(n);
    missing_.resize(instances_.size());
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      missing_[i] = static_cast<int>(instances_[i].ant.size());
      for (int a : instances_[i].ant) watch_[a].push_back(static_cast<int>(i));
    }
    for (const auto& g : goal) {
      int id = builder.id(g);
      if (!is_goal_[id]) goal_ids_.push_back(id);
      is_goal_[id] = 1;
    }
    for (const auto& p : premises) premise_ids_.push_back(builder.id(p));
    start_ = std::chrono::steady_clock::now();
  }

  ProveResult run() {
    ProveResult res;
    res.candidate_count = universe_.size();
    res.instance_count = instances_.size();
    for (std::size_t i = 0; i < instances_.size(); ++i)
      if (missing_[i] == 0) fired_.push_back(static_cast<int>(i));
    for (int p : premise_ids_)
      if (!in_label_[p]) add(p);
    nodes_.push_back(SNode{});
    try {
      Bits used(universe_.size());
      Outcome o = solve(0, 0, used);
      res.nodes_expanded = expanded_;
      if (o == Outcome::Closed) {
        res.status = ProveStatus::Proved;
        res.tree = export_tree();
      } else if (calc_.xi) {
        res.status = ProveStatus::Refuted;
        res.partition = open_partition_;
      } else {
        res.status = ProveStatus::OutOfBudget;
      }
    } catch (const BudgetExceeded&) {
      res.status = ProveStatus::OutOfBudget;
      res.nodes_expanded = expanded_;
    }
    return res;
  }

 private:
  struct SNode {
    int inst = -1;
    int added = -1;
    bool star = false;
    std::vector<int> children;
  };

  void add(int f) {
    in_label_[f] = 1;
    trail_.push_back(f);
    if (is_goal_[f]) ++goal_hits_;
    for (int i : watch_[f])
      if (--missing_[i] == 0) fired_.push_back(i);
  }

  struct Mark {
    std::size_t trail, fired, branch;
  };

  Mark mark() const { return {trail_.size(), fired_.size(), branch_.size()}; }

  void undo(const Mark& m) {
    while (trail_.size() > m.trail) {
      int f = trail_.back();
      trail_.pop_back();
      in_label_[f] = 0;
      if (is_goal_[f]) --goal_hits_;
      for (int i : watch_[f]) ++missing_[i];
    }
    fired_.resize(m.fired);
    branch_.resize(m.branch);
  }

  bool satisfied(const Instance& inst) const {
    for (int s : inst.succ)
      if (in_label_[s]) return true;
    return false;
  }

  // Unit propagation without recording a tree; true when the branch closes.
  bool propagate_closes(std::size_t q) {
    if (goal_hits_) return true;
    while (q < fired_.size()) {
      const Instance& inst = instances_[fired_[q++]];
      if (inst.succ.empty()) return true;
      if (satisfied(inst)) continue;
      if (inst.succ.size() == 1) {
        add(inst.succ[0]);
        if (goal_hits_) return true;
      }
    }
    return false;
  }

  void tick() {
    ++expanded_;
    if (expanded_ > budget_.max_nodes) throw BudgetExceeded{};
    if (budget_.max_seconds > 0 && (expanded_ & 255) == 0) {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (secs > budget_.max_seconds) throw BudgetExceeded{};
    }
  }

  int new_node(int parent, int added) {
    SNode n;
    n.added = added;
    nodes_.push_back(std::move(n));
    int id = static_cast<int>(nodes_.size()) - 1;
    nodes_[parent].children.push_back(id);
    return id;
  }

  // The subtree at child does not need the formula child added, so it can
  // stand in for the step taken at node.
  void splice(int node, int child) {
    nodes_[node].inst = nodes_[child].inst;
    nodes_[node].children = nodes_[child].children;
  }

  void use_antecedent(Bits& used, int inst) const {
    for (int a : instances_[inst].ant) used.set(a);
  }

  Outcome solve(int node, std::size_t q, Bits& used) {
    struct Step {
      int node, child, inst, added;
    };
    std::vector<Step> chain;
    Outcome result = Outcome::Closed;
    int cur = node;
    while (true) {
      if (goal_hits_) {
        for (int g : goal_ids_)
          if (in_label_[g]) {
            used.set(g);
            break;
          }
        break;
      }
      int unit = -1;
      bool closed_by_star = false;
      while (q < fired_.size()) {
        int idx = fired_[q++];
        const Instance& inst = instances_[idx];
        if (inst.succ.empty()) {
          tick();
          nodes_[cur].inst = idx;
          int star = new_node(cur, -1);
          nodes_[star].star = true;
          use_antecedent(used, idx);
          closed_by_star = true;
          break;
        }
        if (satisfied(inst)) continue;
        if (inst.succ.size() == 1) {
          unit = idx;
          break;
        }
        branch_.push_back(idx);
      }
      if (closed_by_star) break;
      if (unit >= 0) {
        tick();
        const int u = instances_[unit].succ[0];
        nodes_[cur].inst = unit;
        int child = new_node(cur, u);
        chain.push_back({cur, child, unit, u});
        add(u);
        cur = child;
        continue;
      }
      std::vector<int> open;
      for (int idx : branch_)
        if (!satisfied(instances_[idx])) open.push_back(idx);
      if (open.empty()) {
        open_partition_ = SaturatedPartition{};
        for (std::size_t i = 0; i < universe_.size(); ++i)
          (in_label_[i] ? open_partition_.omega : open_partition_.omega_bar).insert(universe_[i]);
        return Outcome::Open;
      }
      const int choice = choose(open, q);
      tick();
      nodes_[cur].inst = choice;
      Bits acc(universe_.size());
      use_antecedent(acc, choice);
      bool spliced = false;
      for (int s : instances_[choice].succ) {
        int child = new_node(cur, s);
        Mark m = mark();
        add(s);
        Bits sub(universe_.size());
        Outcome o = solve(child, q, sub);
        undo(m);
        if (o == Outcome::Open) return Outcome::Open;
        if (!sub.test(s)) {
          splice(cur, child);
          used.merge(sub);
          spliced = true;
          break;
        }
        sub.reset(s);
        acc.merge(sub);
      }
      if (!spliced) used.merge(acc);
      break;
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      if (!used.test(it->added)) {
        splice(it->node, it->child);
      } else {
        used.reset(it->added);
        use_antecedent(used, it->inst);
      }
    }
    return result;
  }

  // Prefers the instance with the fewest children left open by unit
  // propagation, then the one whose open children propagate the most.
  int choose(const std::vector<int>& open, std::size_t q) {
    struct Probe {
      bool closes;
      std::size_t grown;
    };
    std::unordered_map<int, Probe> probes;
    auto test = [&](int s) {
      auto it = probes.find(s);
      if (it != probes.end()) return it->second;
      Mark m = mark();
      add(s);
      bool c = propagate_closes(q);
      Probe pr{c, trail_.size() - m.trail};
      undo(m);
      probes.emplace(s, pr);
      return pr;
    };
    int best = -1;
    int best_open = 0;
    double best_score = 0;
    for (int idx : open) {
      const Instance& inst = instances_[idx];
      int open_children = 0;
      double score = 1;
      for (int s : inst.succ) {
        Probe pr = test(s);
        if (pr.closes) continue;
        ++open_children;
        score *= static_cast<double>(pr.grown);
      }
      if (best < 0 || open_children < best_open || (open_children == best_open && score > best_score)) {
        best = idx;
        best_open = open_children;
        best_score = score;
        if (best_open == 0) break;
      }
    }
    return best;
  }

  // Keeps the nodes reachable from the root and rebuilds their labels.
  DerivationTree export_tree() const {
    DerivationTree t;
    std::vector<int> todo{0};
    std::vector<int> parent_of{-1};
    while (!todo.empty()) {
      std::vector<int> next, next_parent;
      for (std::size_t k = 0; k < todo.size(); ++k) {
        const SNode& sn = nodes_[todo[k]];
        DerivationNode dn;
        if (parent_of[k] < 0) {
          for (const auto& p : premises_)
            if (std::find(dn.label.begin(), dn.label.end(), p) == dn.label.end()) dn.label.push_back(p);
        } else {
          t.nodes[parent_of[k]].children.push_back(t.size());
          if (!sn.star) {
            dn.label = t.nodes[parent_of[k]].label;
            dn.label.push_back(universe_[sn.added]);
          }
        }
        dn.star = sn.star;
        if (sn.inst >= 0) {
          dn.rule = calc_.rules[instances_[sn.inst].rule].name;
          dn.substitution = instances_[sn.inst].sigma;
        }
        int id = t.size();
        t.nodes.push_back(std::move(dn));
        for (int ch : sn.children) {
          next.push_back(ch);
          next_parent.push_back(id);
        }
      }
      todo = std::move(next);
      parent_of = std::move(next_parent);
    }
    return t;
  }

  const Calculus& calc_;
  Budget budget_;
  std::vector<Formula> premises_;
  std::vector<Formula> universe_;
  std::vector<Instance> instances_;
  std::vector<char> in_label_, is_goal_;
  std::vector<std::vector<int>> watch_;
  std::vector<int> missing_;
  std::vector<int> premise_ids_, goal_ids_;
  std::vector<int> trail_, fired_, branch_;
  std::vector<SNode> nodes_;
  int goal_hits_ = 0;
  std::uint64_t expanded_ = 0;
  SaturatedPartition open_partition_;
  std::chrono::steady_clock::time_point start_;
};

DerivationTree chain_tree(const std::vector<Formula>& premises, const SetFmlaDerivation& d) {
  DerivationTree t;
  t.nodes.push_back(DerivationNode{});
  for (const auto& p : premises)
    if (std::find(t.nodes[0].label.begin(), t.nodes[0].label.end(), p) == t.nodes[0].label.end())
      t.nodes[0].label.push_back(p);
  int cur = 0;
  for (const auto& step : d.steps) {
    if (step.rule.empty()) continue;
    auto& lab = t.nodes[cur].label;
    if (std::find(lab.begin(), lab.end(), step.formula) != lab.end()) continue;
    DerivationNode child;
    child.label = lab;
    child.label.push_back(step.formula);
    t.nodes[cur].rule = step.rule;
    t.nodes[cur].substitution = step.substitution;
    t.nodes.push_back(std::move(child));
    int id = t.size() - 1;
    t.nodes[cur].children.push_back(id);
    cur = id;
  }
  return t;
}

}  // namespace

ProveResult prove(const Calculus& c, const std::vector<Formula>& premises, const std::vector<Formula>& goal,
                  const Budget& budget) {
  if (c.framework == Framework::SetFmla && goal.size() != 1)
    throw Error("a Set-Fmla calculus needs exactly one goal formula");
  if (!c.xi && c.framework == Framework::SetFmla) {
    ForwardResult fr = forward_search(c, premises, goal.front(), 64, budget.max_nodes);
    ProveResult res;
    res.nodes_expanded = fr.formulas_generated;
    res.status = fr.status == ProveStatus::Proved ? ProveStatus::Proved : ProveStatus::OutOfBudget;
    if (fr.derivation) res.tree = chain_tree(premises, *fr.derivation);
    return res;
  }
  AnalyticSearch search(c, premises, goal, budget);
  return search.run();
}

TreeCheck validate_tree(const Calculus& c, const DerivationTree& t, const std::vector<Formula>& premises,
                        const std::vector<Formula>& goal) {
  auto fail = [](int node, std::string why) { return TreeCheck{false, node, std::move(why)}; };
  if (t.nodes.empty()) return fail(0, "empty tree");
  std::set<Formula> prem(premises.begin(), premises.end());
  std::set<Formula> goals(goal.begin(), goal.end());
  for (const auto& f : t.nodes[0].label)
    if (!prem.count(f)) return fail(0, "root label is not contained in the premises");
  std::vector<int> parent(t.nodes.size(), -1);
  std::vector<int> stack{0};
  std::vector<char> seen(t.nodes.size(), 0);
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (seen[id]) return fail(id, "node reached twice");
    seen[id] = 1;
    const DerivationNode& n = t.nodes[id];
    std::set<Formula> label(n.label.begin(), n.label.end());
    if (n.star) {
      if (!n.children.empty()) return fail(id, "star leaf with children");
      continue;
    }
    if (n.rule.empty()) {
      bool closed = false;
      for (const auto& f : n.label)
        if (goals.count(f)) closed = true;
      if (!closed) return fail(id, "open leaf");
      if (!n.children.empty()) return fail(id, "leaf with children");
      continue;
    }
    const Rule* r = c.find(n.rule);
    if (!r) return fail(id, "unknown rule " + n.rule);
    for (const auto& v : variables_of(r->antecedent))
      if (!n.substitution.count(v)) return fail(id, "substitution misses variable " + v);
    for (const auto& v : variables_of(r->succedent))
      if (!n.substitution.count(v)) return fail(id, "substitution misses variable " + v);
    for (const auto& a : r->antecedent)
      if (!label.count(substitute(a, n.substitution))) return fail(id, "antecedent not in label");
    std::vector<Formula> succ;
    for (const auto& s : r->succedent) {
      Formula f = substitute(s, n.substitution);
      if (std::find(succ.begin(), succ.end(), f) == succ.end()) succ.push_back(f);
    }
    if (succ.empty()) {
      if (n.children.size() != 1 || !t.nodes[n.children[0]].star) return fail(id, "expected a single star child");
      stack.push_back(n.children[0]);
      continue;
    }
    if (n.children.size() != succ.size()) return fail(id, "child count differs from succedent size");
    for (std::size_t i = 0; i < succ.size(); ++i) {
      int ch = n.children[i];
      if (ch <= 0 || ch >= t.size()) return fail(id, "bad child index");
      std::set<Formula> expect = label;
      expect.insert(succ[i]);
      const auto& cl = t.nodes[ch].label;
      if (std::set<Formula>(cl.begin(), cl.end()) != expect) return fail(ch, "child label mismatch");
      stack.push_back(ch);
    }
  }
  return TreeCheck{};
}

TreeCheck validate_partition(const Calculus& c, const SaturatedPartition& part, const std::vector<Formula>& premises,
                             const std::vector<Formula>& goal) {
  auto fail = [](std::string why) { return TreeCheck{false, -1, std::move(why)}; };
  std::vector<Formula> universe = candidate_set(c, premises, goal);
  std::set<Formula> all(universe.begin(), universe.end());
  for (const auto& f : part.omega)
    if (part.omega_bar.count(f)) return fail("omega and omega_bar overlap");
  std::set<Formula> uni(part.omega.begin(), part.omega.end());
  uni.insert(part.omega_bar.begin(), part.omega_bar.end());
  if (uni != all) return fail("partition does not cover the candidate set");
  for (const auto& p : premises)
    if (!part.omega.count(p)) return fail("premise outside omega");
  for (const auto& g : goal)
    if (part.omega.count(g)) return fail("goal inside omega");
  InstanceBuilder builder(universe);
  for (const auto& inst : builder.build(c.rules)) {
    bool fires = true;
    for (int a : inst.ant)
      if (!part.omega.count(universe[a])) fires = false;
    if (!fires) continue;
    bool ok = false;
    for (int s : inst.succ)
      if (part.omega.count(universe[s])) ok = true;
    if (!ok) return fail("rule " + c.rules[inst.rule].name + " is not saturated");
  }
  return TreeCheck{};
}

Countermodel countermodel_from_partition(const SaturatedPartition& part, const std::vector<Formula>& lambda,
                                         TenVariant variant) {
  const PNMatrix base = registry::matrix("pp6h-ub");
  const MultiAlgebra& alg = base.alg();
  auto in = [&](const Formula& f) {
    if (part.omega.count(f)) return true;
    if (part.omega_bar.count(f)) return false;
    throw ClassificationError("formula " + render_formula(f) + " is outside the partition");
  };
  FormulaSet lam = subformulas(lambda);
  std::vector<Formula> order(lam.begin(), lam.end());
  std::stable_sort(order.begin(), order.end(), [](const Formula& a, const Formula& b) { return a.depth() < b.depth(); });

  // Coarse classes; -1 marks the middle values b and n.
  std::map<Formula, int> coarse;
  std::vector<Formula> mids;
  for (const auto& f : order) {
    if (in(f_circ(f))) {
      coarse[f] = in(f) ? HT : HF;
    } else if (!in(m_down(f))) {
      coarse[f] = T;
    } else if (!in(m_up(f))) {
      coarse[f] = F;
    } else {
      coarse[f] = -1;
      mids.push_back(f);
    }
  }
  // Split the middle formulas by mutual perfection of their implications.
  std::vector<std::vector<Formula>> classes;
  for (const auto& f : mids) {
    bool placed = false;
    for (auto& cl : classes) {
      const Formula& g = cl.front();
      if (in(f_circ(f_imp(f, g))) && in(f_circ(f_imp(g, f)))) {
        cl.push_back(f);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({f});
  }
  if (classes.size() > 2) throw ClassificationError("more than two middle classes");
  auto designated_class = [&](const std::vector<Formula>& cl) {
    for (const auto& f : cl)
      if (in(f)) return true;
    return false;
  };
  // Preferred naming: a lone designated class is b.
  std::vector<int> first_names;
  if (classes.size() == 2 && !designated_class(classes[0]) && designated_class(classes[1])) {
    first_names = {N, B};
  } else {
    first_names = {B, N};
  }
  std::vector<std::vector<int>> namings{first_names, {first_names[1], first_names[0]}};

  for (const auto& names : namings) {
    std::map<Formula, int> val = coarse;
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (const auto& f : classes[i]) val[f] = names[i];
    bool legal = true;
    for (const auto& f : order) {
      if (f.is_var()) continue;
      std::vector<int> args;
      for (const auto& a : f.args()) args.push_back(val.at(a));
      if (alg.apply(f.symbol(), args) != val.at(f)) {
        legal = false;
        break;
      }
    }
    if (!legal) continue;
    int a = HT;
    bool any = false;
    for (const auto& f : order) {
      if (!in(f)) continue;
      a = any ? alg.apply("and", a, val.at(f)) : val.at(f);
      any = true;
    }
    std::vector<int> candidates{a};
    if (variant == TenVariant::Leq && a == T) candidates = {B, N};
    for (int gen : candidates) {
      ValueSet filter = pp6_upset(gen);
      bool separates = true;
      for (const auto& f : order) {
        bool des = filter & bit(val.at(f));
        if (des != in(f)) {
          separates = false;
          break;
        }
      }
      if (!separates) continue;
      Countermodel cm;
      cm.valuation.assignment = val;
      cm.classification = val;
      cm.filter_generator = gen;
      cm.matrix = base;
      cm.matrix.designated = filter;
      cm.matrix.name = "pp6h-u" + alg.value_name(gen);
      return cm;
    }
  }
  throw ClassificationError("no naming of the middle classes yields a separating valuation");
}

namespace {

std::string fresh_variable(const Calculus& c) {
  std::set<std::string> used;
  for (const auto& r : c.rules) {
    for (const auto& v : variables_of(r.antecedent)) used.insert(v);
    for (const auto& v : variables_of(r.succedent)) used.insert(v);
  }
  std::string s = "a";
  while (used.count(s)) s += "0";
  return s;
}

bool keeps_shape(const Rule& r) { return r.antecedent.empty() && r.succedent.size() == 1; }

}  // namespace

Calculus to_set_fmla_calculus(const Calculus& c, const Signature& sig) {
  if (!sig.has("or") || sig.arity("or") != 2) throw MissingDisjunction("the signature has no binary disjunction");
  const std::string s = fresh_variable(c);
  const Formula sv = var(s);
  Calculus out;
  out.name = c.name + "-or";
  out.framework = Framework::SetFmla;
  out.rules.push_back(make_rule("or_weak", {"p"}, {"p | q"}));
  out.rules.push_back(make_rule("or_comm", {"p | q"}, {"q | p"}));
  out.rules.push_back(make_rule("or_assoc", {"p | (q | r)"}, {"(p | q) | r"}));
  out.rules.push_back(make_rule("or_contr", {"p | p"}, {"p"}));
  for (const auto& r : c.rules) {
    if (keeps_shape(r)) {
      out.rules.push_back(r);
      continue;
    }
    Rule t;
    t.name = r.name + "_or";
    for (const auto& f : r.antecedent) t.antecedent.push_back(f_or(f, sv));
    t.succedent.push_back(r.succedent.empty() ? sv : f_or(big_or(r.succedent), sv));
    out.rules.push_back(std::move(t));
  }
  return out;
}

TreeCheck validate_set_fmla_derivation(const Calculus& c, const SetFmlaDerivation& d,
                                       const std::vector<Formula>& premises, const Formula& goal) {
  std::unordered_set<Formula> have(premises.begin(), premises.end());
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& st = d.steps[i];
    const int at = static_cast<int>(i);
    if (st.rule.empty()) {
      if (std::find(premises.begin(), premises.end(), st.formula) == premises.end())
        return {false, at, "step cites a non-premise without a rule"};
      continue;
    }
    const Rule* r = c.find(st.rule);
    if (!r) return {false, at, "unknown rule " + st.rule};
    if (r->succedent.size() != 1) return {false, at, "rule is not Set-Fmla"};
    for (const auto& v : variables_of(r->antecedent))
      if (!st.substitution.count(v)) return {false, at, "substitution misses variable " + v};
    if (!(substitute(r->succedent[0], st.substitution) == st.formula)) return {false, at, "conclusion mismatch"};
    for (const auto& a : r->antecedent)
      if (!have.count(substitute(a, st.substitution))) return {false, at, "premise of step not yet derived"};
    have.insert(st.formula);
  }
  if (!have.count(goal)) return {false, static_cast<int>(d.steps.size()), "goal not derived"};
  return {};
}

namespace {

// Builds Set-Fmla derivations from Set-Set proofs. Every branch of the
// Set-Set tree is carried as disjunctions with a context formula K whose
// right spine ends in the goal; closing a branch yields K itself.
class SetFmlaBuilder {
 public:
  SetFmlaBuilder(const Calculus& c, const DerivationTree& t, const std::vector<Formula>& premises,
                 const Formula& goal)
      : c_(c), t_(t), premises_(premises), goal_(goal) {
    fresh_ = var(fresh_variable(c));
  }

  SetFmlaDerivation run() {
    if (std::find(premises_.begin(), premises_.end(), goal_) != premises_.end()) return out_;
    for (const auto& p : premises_) {
      if (std::find_if(out_.steps.begin(), out_.steps.end(), [&](const DerivationStep& s) { return s.formula == p; }) ==
          out_.steps.end()) {
        out_.steps.push_back({p, "", {}});
        have_.insert(p);
      }
    }
    contexts_.push_back(Ctx{goal_, -1, Formula()});
    build(0, 0);
    return out_;
  }

 private:
  struct Ctx {
    Formula k;
    int parent;
    Formula r;  // k = r | parent.k for non-root contexts
  };

  Formula step(const Formula& f, const std::string& rule, Substitution sigma) {
    if (!have_.count(f)) {
      out_.steps.push_back({f, rule, std::move(sigma)});
      have_.insert(f);
    }
    return f;
  }

  Formula weak(const Formula& a, const Formula& b) { return step(f_or(a, b), "or_weak", {{"p", a}, {"q", b}}); }
  Formula comm(const Formula& f) {
    return step(f_or(f.arg(1), f.arg(0)), "or_comm", {{"p", f.arg(0)}, {"q", f.arg(1)}});
  }
  Formula assoc(const Formula& f) {
    const Formula& x = f.arg(0);
    const Formula& y = f.arg(1).arg(0);
    const Formula& z = f.arg(1).arg(1);
    return step(f_or(f_or(x, y), z), "or_assoc", {{"p", x}, {"q", y}, {"r", z}});
  }
  Formula contr(const Formula& f) { return step(f.arg(0), "or_contr", {{"p", f.arg(0)}}); }

  // (X | Y) | Z to X | (Y | Z).
  Formula assoc_rev(const Formula& f) { return comm(assoc(comm(assoc(comm(f))))); }

  // A | S to A | (R | S).
  Formula prefix_insert(const Formula& f, const Formula& r) {
    Formula x = comm(f);     // S | A
    x = weak(x, r);          // (S | A) | R
    x = assoc_rev(x);        // S | (A | R)
    x = comm(x);             // (A | R) | S
    return assoc_rev(x);     // A | (R | S)
  }

  // Ensures lambda | K(ctx) is derived.
  Formula held(int ctx, const Formula& lambda) {
    const Ctx& c = contexts_[ctx];
    Formula target = f_or(lambda, c.k);
    if (have_.count(target)) return target;
    if (c.parent < 0) {
      if (!have_.count(lambda)) throw Error("translation reached a formula that is not a premise");
      return weak(lambda, c.k);
    }
    Formula below = held(c.parent, lambda);
    return prefix_insert(below, c.r);
  }

  // From psi | K derive K.
  void absorb(int ctx, const Formula& psi_k) {
    Formula x = comm(psi_k);  // K | psi
    std::vector<int> chain;
    for (int c = ctx; contexts_[c].parent >= 0; c = contexts_[c].parent) chain.push_back(c);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = prefix_insert(x, contexts_[*it].r);
    contr(x);  // K | K
  }

  int child_with(int node, const Formula& f) const {
    for (int ch : t_.nodes[node].children) {
      const auto& lab = t_.nodes[ch].label;
      if (!lab.empty() && lab.back() == f) return ch;
    }
    throw Error("translation could not locate a child for " + render_formula(f));
  }

  void build(int node, int ctx) {
    const DerivationNode& n = t_.nodes[node];
    if (n.rule.empty()) {
      if (std::find(n.label.begin(), n.label.end(), goal_) == n.label.end())
        throw Error("translation met an open leaf");
      absorb(ctx, held(ctx, goal_));
      return;
    }
    const Rule* r = c_.find(n.rule);
    if (!r) throw Error("unknown rule " + n.rule);
    const Formula k = contexts_[ctx].k;
    if (keeps_shape(*r)) {
      Formula chi = substitute(r->succedent[0], n.substitution);
      step(chi, r->name, n.substitution);
      weak(chi, k);
      build(child_with(node, chi), ctx);
      return;
    }
    Substitution sigma = n.substitution;
    sigma[fresh_.symbol()] = k;
    for (const auto& a : r->antecedent) held(ctx, substitute(a, n.substitution));
    if (r->succedent.empty()) {
      step(k, r->name + "_or", sigma);
      return;
    }
    std::vector<Formula> chis;
    for (const auto& s : r->succedent) chis.push_back(substitute(s, n.substitution));
    Formula d = step(f_or(big_or(chis), k), r->name + "_or", sigma);
    for (std::size_t j = 0; j + 1 < chis.size(); ++j) {
      // d = (chi_j | rest) | K
      Formula rest = d.arg(0).arg(1);
      assoc_rev(d);
      contexts_.push_back(Ctx{f_or(rest, k), ctx, rest});
      int sub = static_cast<int>(contexts_.size()) - 1;
      build(child_with(node, chis[j]), sub);
      d = f_or(rest, k);
    }
    build(child_with(node, chis.back()), ctx);
  }

  const Calculus& c_;
  const DerivationTree& t_;
  std::vector<Formula> premises_;
  Formula goal_;
  Formula fresh_;
  std::vector<Ctx> contexts_;
  std::unordered_set<Formula> have_;
  SetFmlaDerivation out_;
};

}  // namespace

SetFmlaDerivation translate_to_set_fmla(const Calculus& c, const DerivationTree& t,
                                        const std::vector<Formula>& premises, const Formula& goal) {
  SetFmlaBuilder b(c, t, premises, goal);
  return b.run();
}

ForwardResult forward_search(const Calculus& c, const std::vector<Formula>& premises, const Formula& goal,
                             int max_rounds, std::uint64_t max_formulas) {
  ForwardResult res;
  std::vector<Formula> known;
  std::unordered_map<Formula, int> index;
  struct Just {
    std::string rule;
    Substitution sigma;
    std::vector<Formula> from;
  };
  std::vector<Just> why;
  auto add = [&](const Formula& f, Just j) {
    if (index.count(f)) return false;
    index.emplace(f, static_cast<int>(known.size()));
    known.push_back(f);
    why.push_back(std::move(j));
    return true;
  };
  for (const auto& p : premises) add(p, Just{});
  std::vector<Formula> base = premises;
  base.push_back(goal);
  FormulaSet uni = subformulas(base);
  std::vector<Formula> universe(uni.begin(), uni.end());

  auto finish = [&]() {
    std::vector<char> need(known.size(), 0);
    std::vector<int> todo{index.at(goal)};
    while (!todo.empty()) {
      int i = todo.back();
      todo.pop_back();
      if (need[i]) continue;
      need[i] = 1;
      for (const auto& f : why[i].from) todo.push_back(index.at(f));
    }
    SetFmlaDerivation d;
    for (std::size_t i = 0; i < known.size(); ++i)
      if (need[i]) d.steps.push_back({known[i], why[i].rule, why[i].sigma});
    res.status = ProveStatus::Proved;
    res.derivation = std::move(d);
    res.formulas_generated = known.size();
    return res;
  };
  if (index.count(goal)) return finish();

  for (int round = 0; round < max_rounds; ++round) {
    const std::size_t frozen = known.size();
    std::vector<std::pair<Formula, Just>> fresh;
    for (const auto& r : c.rules) {
      if (r.succedent.size() != 1) continue;
      std::function<void(std::size_t, Substitution&)> go = [&](std::size_t k, Substitution& sigma) {
        if (fresh.size() + known.size() > max_formulas) return;
        if (k == r.antecedent.size()) {
          std::vector<std::string> free;
          for (const auto& v : variables_of(r.succedent[0]))
            if (!sigma.count(v)) free.push_back(v);
          std::vector<std::size_t> pick(free.size(), 0);
          while (true) {
            Substitution full = sigma;
            for (std::size_t i = 0; i < free.size(); ++i) full[free[i]] = universe[pick[i]];
            Formula concl = substitute(r.succedent[0], full);
            if (!index.count(concl)) {
              Just j{r.name, full, {}};
              for (const auto& a : r.antecedent) j.from.push_back(substitute(a, full));
              fresh.emplace_back(concl, std::move(j));
            }
            std::size_t q = 0;
            while (q < pick.size() && ++pick[q] == universe.size()) pick[q++] = 0;
            if (q == pick.size()) break;
          }
          return;
        }
        for (std::size_t i = 0; i < frozen; ++i) {
          Substitution next = sigma;
          if (!match_fresh(r.antecedent[k], known[i], next)) continue;
          go(k + 1, next);
        }
      };
      Substitution sigma;
      go(0, sigma);
    }
    bool grew = false;
    for (auto& [f, j] : fresh) {
      if (add(f, std::move(j))) grew = true;
      if (f == goal) return finish();
      if (known.size() > max_formulas) break;
    }
    res.formulas_generated = known.size();
    if (!grew || known.size() > max_formulas) break;
  }
  res.status = ProveStatus::OutOfBudget;
  return res;
}

std::string tree_to_dot(const DerivationTree& t) {
  auto esc = [](const std::string& s) {
    std::string o;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') o += '\\';
      o += ch;
    }
    return o;
  };
  std::string out = "digraph derivation {\n  node [shape=box];\n";
  for (int i = 0; i < t.size(); ++i) {
    const auto& n = t.nodes[i];
    std::string label;
    if (n.star) {
      label = "*";
    } else if (i == 0) {
      for (std::size_t k = 0; k < n.label.size(); ++k) label += (k ? ", " : "") + render_formula(n.label[k]);
    } else if (!n.label.empty()) {
      label = render_formula(n.label.back());
    }
    out += "  n" + std::to_string(i) + " [label=\"" + esc(label) + "\"];\n";
  }
  for (int i = 0; i < t.size(); ++i) {
    const auto& n = t.nodes[i];
    for (int ch : n.children)
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(ch) + " [label=\"" +
             esc(n.rule + "@" + render_substitution(n.substitution)) + "\"];\n";
  }
  return out + "}\n";
}

}  // namespace mvl
