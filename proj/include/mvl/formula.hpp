#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mvl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error("syntax error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class UnknownConnective : public Error {
 public:
  using Error::Error;
};

struct Signature {
  std::map<std::string, int> connectives;

  bool has(const std::string& name) const { return connectives.count(name) != 0; }
  int arity(const std::string& name) const;
  bool operator==(const Signature&) const = default;
};

Signature sig_dm();
Signature sig_pp();
Signature sig_pp_imp();
Signature sig_dm_imp();

namespace detail {
struct Node;
}

// Immutable hash-consed formula. Identical terms share one node, so
// equality is pointer comparison; ordering is structural and canonical.
class Formula {
 public:
  Formula() = default;

  static Formula var(std::string_view name);
  static Formula app(std::string_view connective, std::vector<Formula> args);

  bool valid() const { return node_ != nullptr; }
  bool is_var() const;
  // Variable name for Var nodes, connective name for App nodes.
  const std::string& symbol() const;
  const std::vector<Formula>& args() const;
  std::size_t arity() const { return args().size(); }
  const Formula& arg(std::size_t i) const { return args()[i]; }
  int depth() const;
  int size() const;
  std::uint64_t id() const;
  std::size_t hash() const;

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  std::strong_ordering operator<=>(const Formula& o) const;

  const detail::Node* node() const { return node_; }

 private:
  explicit Formula(const detail::Node* n) : node_(n) {}
  const detail::Node* node_ = nullptr;
  friend struct detail::Node;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::set<Formula>;
using Substitution = std::map<std::string, Formula>;

// Constructors for the built-in connectives.
Formula var(std::string_view name);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_imp(Formula a, Formula b);
Formula f_neg(Formula a);
Formula f_circ(Formula a);
Formula f_top();
Formula f_bot();

// Derived connectives, expanded to their defining terms.
Formula m_up(Formula p);
Formula m_down(Formula p);
Formula m_hneg(Formula p);
Formula m_delta(Formula p);
Formula m_nabla(Formula p);
Formula m_wimp(Formula p, Formula q);
Formula m_iff(Formula p, Formula q);

struct Macro {
  std::vector<std::string> params;
  Formula definition;
};

// The fixed table of derived connectives, keyed by macro name.
const std::map<std::string, Macro>& derived_connectives();

// Right-nested conjunction/disjunction; empty conjunction is top, empty disjunction is bot.
Formula big_and(const std::vector<Formula>& fs);
Formula big_or(const std::vector<Formula>& fs);

Formula parse_formula(std::string_view text, const Signature& sig = sig_pp_imp());
std::string render_formula(const Formula& f);
std::vector<Formula> parse_formula_list(const std::vector<std::string>& texts,
                                        const Signature& sig = sig_pp_imp());

struct Decomposition {
  FormulaSet subformulas;
  std::set<std::string> variables;
};

Decomposition decompose(const Formula& f);
FormulaSet subformulas(const std::vector<Formula>& fs);
std::set<std::string> variables_of(const Formula& f);
std::set<std::string> variables_of(const std::vector<Formula>& fs);
std::vector<std::string> connectives_of(const Formula& f);

Formula substitute(const Formula& f, const Substitution& s);
// Checks that every connective of every image is in sig, then substitutes.
Formula substitute(const Formula& f, const Substitution& s, const Signature& sig);

FormulaSet generalized_subformulas(const std::vector<Formula>& base, const std::vector<Formula>& xi);

// True when every connective of f is in sig with matching arity.
bool conforms(const Formula& f, const Signature& sig);

}  // namespace mvl

template <>
struct std::hash<mvl::Formula> {
  std::size_t operator()(const mvl::Formula& f) const { return f.hash(); }
};
