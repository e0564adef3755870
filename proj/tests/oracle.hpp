#pragma once

// Naive reference implementations used as independent oracles by the tests.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "mvl/semantics.hpp"

namespace oracle {

// All legal valuations on the subformulas of fs, by plain depth-first choice
// over each entry's value set in order of increasing formula size.
inline std::vector<std::map<mvl::Formula, int>> all_valuations(const mvl::PNMatrix& m,
                                                               const std::vector<mvl::Formula>& fs) {
  mvl::FormulaSet sub = mvl::subformulas(fs);
  std::vector<mvl::Formula> order(sub.begin(), sub.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const mvl::Formula& a, const mvl::Formula& b) { return a.size() < b.size(); });
  std::vector<std::map<mvl::Formula, int>> out;
  std::map<mvl::Formula, int> cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(cur);
      return;
    }
    const mvl::Formula& f = order[i];
    mvl::ValueSet options = m.alg().full();
    if (!f.is_var()) {
      std::vector<int> args;
      for (const auto& a : f.args()) args.push_back(cur.at(a));
      options = m.alg().eval(f.symbol(), args);
    }
    for (int v = 0; v < m.alg().size(); ++v) {
      if (!(options & mvl::bit(v))) continue;
      cur[f] = v;
      go(i + 1);
    }
    cur.erase(f);
  };
  go(0);
  return out;
}

inline bool designated(const mvl::PNMatrix& m, int v) { return (m.designated & mvl::bit(v)) != 0; }

// Set-Set consequence over a class by exhaustive enumeration.
inline bool entails(const std::vector<mvl::PNMatrix>& ms, const std::vector<mvl::Formula>& premises,
                    const std::vector<mvl::Formula>& conclusions) {
  std::vector<mvl::Formula> all = premises;
  all.insert(all.end(), conclusions.begin(), conclusions.end());
  for (const auto& m : ms) {
    for (const auto& v : all_valuations(m, all)) {
      bool prem = std::all_of(premises.begin(), premises.end(), [&](const auto& f) { return designated(m, v.at(f)); });
      bool conc = std::any_of(conclusions.begin(), conclusions.end(),
                              [&](const auto& f) { return designated(m, v.at(f)); });
      if (prem && !conc) return false;
    }
  }
  return true;
}

// Value of a formula in a deterministic algebra under an assignment of variables.
inline int eval(const mvl::MultiAlgebra& a, const mvl::Formula& f, const std::map<std::string, int>& asg) {
  if (f.is_var()) return asg.at(f.symbol());
  std::vector<int> args;
  for (const auto& x : f.args()) args.push_back(eval(a, x, asg));
  return a.apply(f.symbol(), args);
}

}  // namespace oracle
