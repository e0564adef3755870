#include "mvl/axiomatizer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mvl {

std::vector<ValueSet> unary_set_function(const PNMatrix& m, const Formula& f) {
  const int n = m.alg().size();
  const Formula p = var("p");
  std::vector<Formula> domain{p, f};
  std::vector<ValueSet> out(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      std::map<Formula, ValueSet> cons{{p, bit(a)}};
      auto [it, fresh] = cons.emplace(f, bit(c));
      if (!fresh) it->second &= bit(c);
      if (satisfiable(m, domain, cons)) out[a] |= bit(c);
    }
  }
  return out;
}

namespace {

struct Candidate {
  Formula f;
  std::string text;
};

// True when s(a) lies inside `side` and s(b) inside its complement.
bool separates(const std::vector<ValueSet>& s, int a, int b, ValueSet d, ValueSet dbar) {
  bool a_pos = s[a] && (s[a] & ~d) == 0;
  bool a_neg = s[a] && (s[a] & ~dbar) == 0;
  bool b_pos = s[b] && (s[b] & ~d) == 0;
  bool b_neg = s[b] && (s[b] & ~dbar) == 0;
  return (a_pos && b_neg) || (a_neg && b_pos);
}

// Values reachable from x by any legal valuation of a one-variable formula.
ValueSet reachable(const MultiAlgebra& alg, int x) {
  ValueSet r = bit(x);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<int> in = members(r);
    for (const auto& [conn, t] : alg.ops()) {
      std::vector<std::size_t> pick(t.arity, 0);
      while (true) {
        std::vector<int> args;
        for (std::size_t i : pick) args.push_back(in[i]);
        ValueSet out = alg.eval(conn, args);
        if ((out & ~r) != 0) {
          r |= out;
          grew = true;
        }
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == in.size()) pick[k--] = 0;
        if (k < 0) break;
      }
    }
  }
  return r;
}

}  // namespace

bool locally_isomorphic(const PNMatrix& m, int a, int b) {
  const MultiAlgebra& alg = m.alg();
  std::vector<int> ra = members(reachable(alg, a)), rb = members(reachable(alg, b));
  if (ra.size() != rb.size()) return false;
  auto designated = [&](int v) { return (m.designated & bit(v)) != 0; };
  std::vector<int> image = rb;
  std::sort(image.begin(), image.end());
  do {
    std::vector<int> phi(alg.size(), -1);
    bool ok = true;
    for (std::size_t i = 0; i < ra.size() && ok; ++i) {
      phi[ra[i]] = image[i];
      ok = designated(ra[i]) == designated(image[i]);
    }
    if (!ok || phi[a] != b) continue;
    auto map_set = [&](ValueSet s) {
      ValueSet o = 0;
      for (int v : members(s)) o |= bit(phi[v]);
      return o;
    };
    for (const auto& [conn, t] : alg.ops()) {
      std::vector<std::size_t> pick(t.arity, 0);
      while (ok) {
        std::vector<int> args, mapped;
        for (std::size_t i : pick) {
          args.push_back(ra[i]);
          mapped.push_back(phi[ra[i]]);
        }
        ok = map_set(alg.eval(conn, args)) == alg.eval(conn, mapped);
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == ra.size()) pick[k--] = 0;
        if (k < 0) break;
      }
      if (!ok) break;
    }
    if (ok) return true;
  } while (std::next_permutation(image.begin(), image.end()));
  return false;
}

DiscriminatorResult find_discriminator(const PNMatrix& m, int max_depth) {
  DiscriminatorResult result;
  const MultiAlgebra& alg = m.alg();
  const int n = alg.size();
  const ValueSet d = m.designated, dbar = m.undesignated();

  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (locally_isomorphic(m, a, b)) {
        result.witness = std::pair{a, b};
        result.isomorphic_witness = true;
        return result;
      }

  std::vector<Formula> reps;
  std::vector<std::vector<ValueSet>> funcs;
  std::vector<int> rep_depth;
  std::set<std::vector<ValueSet>> seen;

  auto consider = [&](std::vector<Candidate> level, int depth) {
    std::sort(level.begin(), level.end(), [](const Candidate& x, const Candidate& y) {
      if (x.f.size() != y.f.size()) return x.f.size() < y.f.size();
      return x.text < y.text;
    });
    int added = 0;
    for (const auto& c : level) {
      ++result.formulas_examined;
      auto fn = unary_set_function(m, c.f);
      if (!seen.insert(fn).second) continue;
      reps.push_back(c.f);
      funcs.push_back(std::move(fn));
      rep_depth.push_back(depth);
      ++added;
    }
    return added;
  };

  {
    std::vector<Candidate> level0{{var("p"), "p"}};
    for (const auto& [conn, t] : alg.ops()) {
      if (t.arity == 0) {
        Formula c = Formula::app(conn, {});
        level0.push_back({c, render_formula(c)});
      }
    }
    consider(level0, 0);
  }
  bool saturated = false;
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<Candidate> level;
    std::set<Formula> made;
    const std::size_t count = reps.size();
    for (const auto& [conn, t] : alg.ops()) {
      if (t.arity == 0) continue;
      std::vector<std::size_t> pick(t.arity, 0);
      while (true) {
        bool fresh_depth = false;
        std::vector<Formula> args;
        for (std::size_t i : pick) {
          args.push_back(reps[i]);
          if (rep_depth[i] == depth - 1) fresh_depth = true;
        }
        if (fresh_depth) {
          Formula f = Formula::app(conn, args);
          if (made.insert(f).second) level.push_back({f, render_formula(f)});
        }
        int k = t.arity - 1;
        while (k >= 0 && ++pick[k] == count) pick[k--] = 0;
        if (k < 0) break;
      }
    }
    if (consider(std::move(level), depth) == 0) {
      saturated = true;
      break;
    }
  }
  result.saturated = saturated;
  result.distinct_functions = static_cast<int>(reps.size());

  Discriminator disc;
  disc.pos.resize(n);
  disc.neg.resize(n);
  std::optional<std::pair<int, int>> witness;
  for (int a = 0; a < n; ++a) {
    std::vector<bool> done(n, false);
    done[a] = true;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& s = funcs[i];
      bool is_pos = s[a] && (s[a] & ~d) == 0;
      bool is_neg = s[a] && (s[a] & ~dbar) == 0;
      if (!is_pos && !is_neg) continue;
      bool useful = false;
      for (int b = 0; b < n; ++b) {
        if (!done[b] && separates(s, a, b, d, dbar)) {
          done[b] = true;
          useful = true;
        }
      }
      if (useful) (is_pos ? disc.pos[a] : disc.neg[a]).push_back(reps[i]);
    }
    for (int b = 0; b < n; ++b) {
      if (!done[b]) {
        std::pair<int, int> w{std::min(a, b), std::max(a, b)};
        if (!witness || w < *witness) witness = w;
      }
    }
  }
  if (witness) {
    result.witness = witness;
  } else {
    result.discriminator = std::move(disc);
  }
  return result;
}

bool verify_discriminator(const PNMatrix& m, const Discriminator& d) {
  const int n = m.alg().size();
  if (static_cast<int>(d.pos.size()) != n || static_cast<int>(d.neg.size()) != n) return false;
  const ValueSet des = m.designated, undes = m.undesignated();
  for (int a = 0; a < n; ++a) {
    std::vector<std::pair<std::vector<ValueSet>, bool>> members;
    for (const auto& s : d.pos[a]) {
      auto fn = unary_set_function(m, s);
      if ((fn[a] & ~des) != 0) return false;
      members.push_back({fn, true});
    }
    for (const auto& s : d.neg[a]) {
      auto fn = unary_set_function(m, s);
      if ((fn[a] & ~undes) != 0) return false;
      members.push_back({fn, false});
    }
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      bool separated = false;
      for (const auto& [fn, pos] : members) {
        if (pos ? (fn[b] & ~undes) == 0 : (fn[b] & ~des) == 0) separated = true;
      }
      if (!separated) return false;
    }
  }
  return true;
}

namespace {

void push_unique(std::vector<Formula>& out, const Formula& f) {
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
}

}  // namespace

std::vector<Rule> generate_refinement_rules(const PNMatrix& base, const PNMatrix& refined, const Discriminator& d) {
  const MultiAlgebra& a = base.alg();
  const MultiAlgebra& r = refined.alg();
  if (a.carrier() != r.carrier() || base.designated != refined.designated)
    throw NotARefinement("matrices differ in carrier or designated set");
  static const char* names[] = {"p", "q", "r", "s"};
  std::vector<Rule> out;
  for (const auto& [conn, t] : a.ops()) {
    if (!r.has(conn)) throw NotARefinement("refined matrix lacks '" + conn + "'");
    const OpTable& rt = r.table(conn);
    if (rt.arity != t.arity || t.arity > 4) throw NotARefinement("arity mismatch for '" + conn + "'");
    std::vector<Formula> vars;
    for (int i = 0; i < t.arity; ++i) vars.push_back(var(names[i]));
    Formula app = Formula::app(conn, vars);
    for (std::size_t idx = 0; idx < t.entries.size(); ++idx) {
      ValueSet removed = t.entries[idx] & ~rt.entries[idx];
      if (rt.entries[idx] & ~t.entries[idx]) throw NotARefinement("entry of '" + conn + "' gains values");
      if (!removed) continue;
      std::vector<int> args(t.arity);
      std::size_t rem = idx;
      for (int i = t.arity - 1; i >= 0; --i) {
        args[i] = static_cast<int>(rem % a.size());
        rem /= a.size();
      }
      for (int c : members(removed)) {
        Rule rule;
        rule.name = "gen_" + conn;
        for (int v : args) rule.name += "_" + a.value_name(v);
        rule.name += "_" + a.value_name(c);
        auto add = [&](int value, const Formula& at) {
          for (const auto& s : d.pos[value]) push_unique(rule.antecedent, substitute(s, {{"p", at}}));
          for (const auto& s : d.neg[value]) push_unique(rule.succedent, substitute(s, {{"p", at}}));
        };
        for (int i = 0; i < t.arity; ++i) add(args[i], vars[i]);
        add(c, app);
        out.push_back(std::move(rule));
      }
    }
  }
  return out;
}

bool subsumes(const Rule& general, const Rule& specific) {
  std::vector<std::string> gv, sv;
  for (const auto& v : variables_of(general.antecedent)) gv.push_back(v);
  for (const auto& v : variables_of(general.succedent))
    if (std::find(gv.begin(), gv.end(), v) == gv.end()) gv.push_back(v);
  std::set<std::string> svs = variables_of(specific.antecedent);
  for (const auto& v : variables_of(specific.succedent)) svs.insert(v);
  sv.assign(svs.begin(), svs.end());
  std::set<Formula> sa(specific.antecedent.begin(), specific.antecedent.end());
  std::set<Formula> ss(specific.succedent.begin(), specific.succedent.end());
  auto fits = [&](const Substitution& rho) {
    for (const auto& f : general.antecedent)
      if (!sa.count(substitute(f, rho))) return false;
    for (const auto& f : general.succedent)
      if (!ss.count(substitute(f, rho))) return false;
    return true;
  };
  if (gv.empty()) return fits({});
  if (sv.empty()) return false;
  std::vector<std::size_t> pick(gv.size(), 0);
  while (true) {
    Substitution rho;
    for (std::size_t i = 0; i < gv.size(); ++i) rho[gv[i]] = var(sv[pick[i]]);
    if (fits(rho)) return true;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == sv.size()) pick[k++] = 0;
    if (k == pick.size()) return false;
  }
}

std::vector<Rule> subsume_simplify(const std::vector<Rule>& rules) {
  std::vector<Rule> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < rules.size() && !drop; ++j) {
      if (i == j || !subsumes(rules[j], rules[i])) continue;
      if (!subsumes(rules[i], rules[j]) || j < i) drop = true;
    }
    if (!drop) out.push_back(rules[i]);
  }
  return out;
}

}  // namespace mvl
