#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mvl/formula.hpp"
#include "mvl/rule.hpp"

namespace mvl {

// A set of carrier values, bit i standing for the i-th carrier element.
using ValueSet = std::uint32_t;

inline constexpr int kMaxCarrier = 32;

inline ValueSet bit(int i) { return ValueSet{1} << i; }
int popcount(ValueSet s);
std::vector<int> members(ValueSet s);

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

class ValueAbsent : public Error {
 public:
  using Error::Error;
};

struct OpTable {
  int arity = 0;
  // Row-major over argument tuples: index = sum args[i] * n^(arity-1-i).
  std::vector<ValueSet> entries;
};

class MultiAlgebra {
 public:
  MultiAlgebra() = default;
  MultiAlgebra(std::string name, std::vector<std::string> carrier);

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int size() const { return static_cast<int>(carrier_.size()); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& value_name(int i) const { return carrier_.at(i); }
  int value_index(const std::string& v) const;  // throws Error when absent
  ValueSet full() const { return size() == 32 ? ~ValueSet{0} : bit(size()) - 1; }

  void define(const std::string& conn, OpTable table);
  bool has(const std::string& conn) const { return ops_.count(conn) != 0; }
  const OpTable& table(const std::string& conn) const;
  const std::map<std::string, OpTable>& ops() const { return ops_; }
  Signature signature() const;

  std::size_t index(const std::vector<int>& args) const;
  ValueSet eval(const std::string& conn, const std::vector<int>& args) const;
  // Deterministic lookup; throws Error if the entry is not a singleton.
  int apply(const std::string& conn, const std::vector<int>& args) const;
  int apply(const std::string& conn, int a) const { return apply(conn, std::vector<int>{a}); }
  int apply(const std::string& conn, int a, int b) const { return apply(conn, std::vector<int>{a, b}); }
  int constant(const std::string& conn) const { return apply(conn, std::vector<int>{}); }

  bool deterministic() const;
  bool total() const;

  bool operator==(const MultiAlgebra& o) const { return carrier_ == o.carrier_ && ops_equal(o); }

 private:
  bool ops_equal(const MultiAlgebra& o) const;
  std::string name_;
  std::vector<std::string> carrier_;
  std::map<std::string, OpTable> ops_;
};

// Fills a deterministic table from a function of value indices.
OpTable make_table(int n, int arity, const std::function<int(const std::vector<int>&)>& fn);
OpTable make_multi_table(int n, int arity, const std::function<ValueSet(const std::vector<int>&)>& fn);

ValueSet eval_multiop(const MultiAlgebra& alg, const std::string& conn, const std::vector<int>& args);

struct PNMatrix {
  std::string name;
  std::shared_ptr<const MultiAlgebra> algebra;
  ValueSet designated = 0;

  const MultiAlgebra& alg() const { return *algebra; }
  ValueSet undesignated() const { return alg().full() & ~designated; }
  bool operator==(const PNMatrix& o) const {
    return designated == o.designated && *algebra == *o.algebra;
  }
};

PNMatrix make_matrix(std::string name, std::shared_ptr<const MultiAlgebra> alg,
                     const std::vector<std::string>& designated);

struct ValuationWitness {
  std::map<Formula, int> assignment;

  int operator[](const Formula& f) const { return assignment.at(f); }
  // "p=b, q=n" over the variables of the domain.
  std::string describe(const MultiAlgebra& alg) const;
  std::map<std::string, std::string> variable_values(const MultiAlgebra& alg) const;
};

enum class Mode { SetSet, SetFmla };

struct ConsequenceProblem {
  std::vector<PNMatrix> models;
  std::vector<Formula> premises;
  std::vector<Formula> conclusions;
  Mode mode = Mode::SetSet;
};

struct ConsequenceResult {
  bool holds = true;
  int matrix_index = -1;
  std::optional<ValuationWitness> witness;
};

std::vector<ValuationWitness> solve_valuations(const PNMatrix& m, const std::vector<Formula>& domain,
                                               const std::map<Formula, ValueSet>& constraints,
                                               std::size_t limit);

// Same search, exposing only whether a legal valuation exists.
bool satisfiable(const PNMatrix& m, const std::vector<Formula>& domain, const std::map<Formula, ValueSet>& constraints);

// Check of one matrix; returns a countermodel if premises ▷ conclusions fails there.
std::optional<ValuationWitness> find_countermodel(const PNMatrix& m, const std::vector<Formula>& premises,
                                                  const std::vector<Formula>& conclusions);

ConsequenceResult check_consequence(const ConsequenceProblem& problem);

struct SoundnessResult {
  bool sound = true;
  int matrix_index = -1;
  std::optional<ValuationWitness> witness;
};

SoundnessResult check_rule_soundness(const Rule& r, const std::vector<PNMatrix>& models);

// Restriction of a PNmatrix to a value subset (entries and inputs restricted to X).
PNMatrix restrict_matrix(const PNMatrix& m, ValueSet x);
bool restriction_total(const PNMatrix& m, ValueSet x);
std::vector<ValueSet> total_components(const PNMatrix& m);

struct Deletion {
  std::string connective;
  std::vector<int> args;
  int value;
};

PNMatrix refine_matrix(const PNMatrix& m, const std::vector<Deletion>& deletions);

std::string format_value_set(const MultiAlgebra& alg, ValueSet s);
ValueSet parse_value_set(const MultiAlgebra& alg, const std::vector<std::string>& names);

// Throws SignatureMismatch unless every connective of fs is interpreted in alg.
void require_signature(const MultiAlgebra& alg, const std::vector<Formula>& fs);

}  // namespace mvl
