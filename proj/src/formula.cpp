#include "mvl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace mvl {

namespace detail {

struct Node {
  bool is_var = false;
  const std::string* symbol = nullptr;
  std::vector<Formula> args;
  int depth = 0;
  int size = 1;
  std::uint64_t id = 0;
  std::size_t hash = 0;
};

namespace {

struct Key {
  bool is_var;
  const std::string* symbol;
  std::vector<const Node*> args;
  bool operator==(const Key& o) const {
    return is_var == o.is_var && symbol == o.symbol && args == o.args;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = std::hash<const void*>()(k.symbol) ^ (k.is_var ? 0x9e3779b97f4a7c15ULL : 0);
    for (const Node* a : k.args) h = h * 1000003u ^ std::hash<const void*>()(a);
    return h;
  }
};

class Interner {
 public:
  const std::string* symbol(std::string_view s) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = symbols_.find(std::string(s));
    if (it != symbols_.end()) return it->get();
    auto p = std::make_unique<std::string>(s);
    const std::string* raw = p.get();
    symbols_.insert(std::move(p));
    return raw;
  }

  const Node* node(bool is_var, const std::string* sym, std::vector<Formula> args) {
    Key key{is_var, sym, {}};
    key.args.reserve(args.size());
    for (const auto& a : args) key.args.push_back(a.node());
    std::lock_guard<std::mutex> lock(mu_);
    auto it = nodes_.find(key);
    if (it != nodes_.end()) return it->second.get();
    auto n = std::make_unique<Node>();
    n->is_var = is_var;
    n->symbol = sym;
    int depth = 0, size = 1;
    for (const auto& a : args) {
      depth = std::max(depth, a.depth() + 1);
      size += a.size();
    }
    n->depth = depth;
    n->size = size;
    n->id = next_id_++;
    n->hash = KeyHash()(key);
    n->args = std::move(args);
    const Node* raw = n.get();
    nodes_.emplace(std::move(key), std::move(n));
    return raw;
  }

 private:
  struct StrHash {
    using is_transparent = void;
    std::size_t operator()(const std::unique_ptr<std::string>& p) const { return std::hash<std::string>()(*p); }
    std::size_t operator()(const std::string& s) const { return std::hash<std::string>()(s); }
  };
  struct StrEq {
    using is_transparent = void;
    bool operator()(const std::unique_ptr<std::string>& a, const std::unique_ptr<std::string>& b) const {
      return *a == *b;
    }
    bool operator()(const std::string& a, const std::unique_ptr<std::string>& b) const { return a == *b; }
    bool operator()(const std::unique_ptr<std::string>& a, const std::string& b) const { return *a == b; }
  };
  std::mutex mu_;
  std::unordered_set<std::unique_ptr<std::string>, StrHash, StrEq> symbols_;
  std::unordered_map<Key, std::unique_ptr<Node>, KeyHash> nodes_;
  std::uint64_t next_id_ = 0;
};

Interner& interner() {
  static Interner* in = new Interner();
  return *in;
}

}  // namespace
}  // namespace detail


int Signature::arity(const std::string& name) const {
  auto it = connectives.find(name);
  if (it == connectives.end()) throw UnknownConnective("unknown connective '" + name + "'");
  return it->second;
}

Signature sig_dm() { return Signature{{{"and", 2}, {"or", 2}, {"neg", 1}, {"top", 0}, {"bot", 0}}}; }
Signature sig_pp() {
  return Signature{{{"and", 2}, {"or", 2}, {"neg", 1}, {"circ", 1}, {"top", 0}, {"bot", 0}}};
}
Signature sig_pp_imp() {
  Signature s = sig_pp();
  s.connectives["imp"] = 2;
  return s;
}
Signature sig_dm_imp() {
  Signature s = sig_dm();
  s.connectives["imp"] = 2;
  return s;
}

Formula Formula::var(std::string_view name) {
  auto& in = detail::interner();
  return Formula(in.node(true, in.symbol(name), {}));
}

Formula Formula::app(std::string_view connective, std::vector<Formula> args) {
  auto& in = detail::interner();
  return Formula(in.node(false, in.symbol(connective), std::move(args)));
}

bool Formula::is_var() const { return node_->is_var; }
const std::string& Formula::symbol() const { return *node_->symbol; }
const std::vector<Formula>& Formula::args() const { return node_->args; }
int Formula::depth() const { return node_->depth; }
int Formula::size() const { return node_->size; }
std::uint64_t Formula::id() const { return node_->id; }
std::size_t Formula::hash() const { return node_->hash; }

std::strong_ordering Formula::operator<=>(const Formula& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (!node_) return std::strong_ordering::less;
  if (!o.node_) return std::strong_ordering::greater;
  if (auto c = size() <=> o.size(); c != 0) return c;
  if (is_var() != o.is_var()) return is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (node_->symbol != o.node_->symbol) {
    int c = symbol().compare(o.symbol());
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto& a = args();
  const auto& b = o.args();
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

Formula var(std::string_view name) { return Formula::var(name); }
Formula f_and(Formula a, Formula b) { return Formula::app("and", {a, b}); }
Formula f_or(Formula a, Formula b) { return Formula::app("or", {a, b}); }
Formula f_imp(Formula a, Formula b) { return Formula::app("imp", {a, b}); }
Formula f_neg(Formula a) { return Formula::app("neg", {a}); }
Formula f_circ(Formula a) { return Formula::app("circ", {a}); }
Formula f_top() { return Formula::app("top", {}); }
Formula f_bot() { return Formula::app("bot", {}); }

Formula m_up(Formula p) { return f_circ(f_imp(f_neg(p), p)); }
Formula m_down(Formula p) { return f_circ(f_imp(p, f_neg(p))); }
Formula m_hneg(Formula p) { return f_imp(p, f_neg(f_imp(p, p))); }
Formula m_delta(Formula p) { return m_hneg(f_neg(p)); }
Formula m_nabla(Formula p) { return f_or(p, f_neg(f_circ(p))); }
Formula m_wimp(Formula p, Formula q) { return f_or(f_or(f_neg(p), f_neg(f_circ(p))), q); }
Formula m_iff(Formula p, Formula q) { return f_and(f_imp(p, q), f_imp(q, p)); }

const std::map<std::string, Macro>& derived_connectives() {
  static const std::map<std::string, Macro> table = [] {
    Formula p = var("p"), q = var("q");
    std::map<std::string, Macro> t;
    t["up"] = {{"p"}, m_up(p)};
    t["down"] = {{"p"}, m_down(p)};
    t["hneg"] = {{"p"}, m_hneg(p)};
    t["delta"] = {{"p"}, m_delta(p)};
    t["nabla"] = {{"p"}, m_nabla(p)};
    t["wimp"] = {{"p", "q"}, m_wimp(p, q)};
    t["iff"] = {{"p", "q"}, m_iff(p, q)};
    return t;
  }();
  return table;
}

Formula big_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_top();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = f_and(fs[i], acc);
  return acc;
}

Formula big_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_bot();
  Formula acc = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) acc = f_or(fs[i], acc);
  return acc;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : s_(text), sig_(sig) {}

  Formula parse() {
    Formula f = parse_imp();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) throw SyntaxError(pos_, "expected '" + std::string(tok) + "'");
  }

  Formula build(const std::string& conn, std::vector<Formula> args) {
    auto it = sig_.connectives.find(conn);
    if (it == sig_.connectives.end())
      throw UnknownConnective("connective '" + conn + "' is not in the signature");
    if (it->second != static_cast<int>(args.size()))
      throw ArityError("connective '" + conn + "' expects " + std::to_string(it->second) + " argument(s), got " +
                       std::to_string(args.size()));
    return Formula::app(conn, std::move(args));
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("=>")) {
      Formula rhs = parse_imp();
      return build("imp", {lhs, rhs});
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = build("or", {lhs, parse_and()});
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = build("and", {lhs, parse_unary()});
    return lhs;
  }

  Formula parse_unary() {
    if (accept("~")) return build("neg", {parse_unary()});
    if (accept("@")) return build("circ", {parse_unary()});
    return parse_atom();
  }

  Formula parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    if (accept("(")) {
      Formula f = parse_imp();
      expect(")");
      return f;
    }
    char c = s_[pos_];
    if (!(c >= 'a' && c <= 'z')) throw SyntaxError(pos_, "unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ((s_[pos_] >= 'a' && s_[pos_] <= 'z') || (s_[pos_] >= '0' && s_[pos_] <= '9') ||
                                s_[pos_] == '_'))
      ++pos_;
    std::string ident(s_.substr(start, pos_ - start));
    if (ident == "top" || ident == "bot") return build(ident, {});
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      std::vector<Formula> args;
      if (!accept(")")) {
        args.push_back(parse_imp());
        while (accept(",")) args.push_back(parse_imp());
        expect(")");
      }
      return call(ident, start, std::move(args));
    }
    pos_ = save;
    return Formula::var(ident);
  }

  Formula call(const std::string& name, std::size_t at, std::vector<Formula> args) {
    const auto& macros = derived_connectives();
    auto it = macros.find(name);
    if (it == macros.end()) {
      if (sig_.has(name)) return build(name, std::move(args));
      throw UnknownConnective("unknown connective or macro '" + name + "' at position " + std::to_string(at));
    }
    const Macro& m = it->second;
    if (m.params.size() != args.size())
      throw ArityError("macro '" + name + "' expects " + std::to_string(m.params.size()) + " argument(s), got " +
                       std::to_string(args.size()));
    for (const auto& c : connectives_of(m.definition)) {
      if (!sig_.has(c)) throw UnknownConnective("macro '" + name + "' needs connective '" + c + "'");
    }
    Substitution s;
    for (std::size_t i = 0; i < args.size(); ++i) s[m.params[i]] = args[i];
    return substitute(m.definition, s);
  }

  std::string_view s_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

// Precedence levels: imp 1, or 2, and 3, unary 4, atoms 5.
int level(const Formula& f) {
  if (f.is_var() || f.arity() == 0) return 5;
  const std::string& c = f.symbol();
  if (c == "imp") return 1;
  if (c == "or") return 2;
  if (c == "and") return 3;
  if (c == "neg" || c == "circ") return 4;
  return 5;
}

void render_into(const Formula& f, std::string& out);

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(f, out);
  if (parens) out += ')';
}

void render_into(const Formula& f, std::string& out) {
  if (f.is_var()) {
    out += f.symbol();
    return;
  }
  const std::string& c = f.symbol();
  if (f.arity() == 0) {
    out += c;
    return;
  }
  if (c == "neg" || c == "circ") {
    out += (c == "neg") ? '~' : '@';
    render_child(f.arg(0), level(f.arg(0)) < 4, out);
    return;
  }
  if (c == "imp" || c == "or" || c == "and") {
    int l = level(f);
    bool right_assoc = (c == "imp");
    int ll = level(f.arg(0)), rl = level(f.arg(1));
    render_child(f.arg(0), right_assoc ? ll <= l : ll < l, out);
    out += (c == "imp") ? " => " : (c == "or") ? " | " : " & ";
    render_child(f.arg(1), right_assoc ? rl < l : rl <= l, out);
    return;
  }
  out += c;
  out += '(';
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (i) out += ", ";
    render_into(f.arg(i), out);
  }
  out += ')';
}

void collect_sub(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  for (const auto& a : f.args()) collect_sub(a, out);
}

void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is_var()) {
    out.insert(f.symbol());
    return;
  }
  for (const auto& a : f.args()) collect_vars(a, out);
}

void collect_conns(const Formula& f, std::set<std::string>& out) {
  if (f.is_var()) return;
  out.insert(f.symbol());
  for (const auto& a : f.args()) collect_conns(a, out);
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse(); }

std::vector<Formula> parse_formula_list(const std::vector<std::string>& texts, const Signature& sig) {
  std::vector<Formula> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_formula(t, sig));
  return out;
}

std::string render_formula(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

Decomposition decompose(const Formula& f) {
  Decomposition d;
  collect_sub(f, d.subformulas);
  collect_vars(f, d.variables);
  return d;
}

FormulaSet subformulas(const std::vector<Formula>& fs) {
  FormulaSet out;
  for (const auto& f : fs) collect_sub(f, out);
  return out;
}

std::set<std::string> variables_of(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

std::set<std::string> variables_of(const std::vector<Formula>& fs) {
  std::set<std::string> out;
  for (const auto& f : fs) collect_vars(f, out);
  return out;
}

std::vector<std::string> connectives_of(const Formula& f) {
  std::set<std::string> s;
  collect_conns(f, s);
  return {s.begin(), s.end()};
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (g.is_var()) {
      auto it = s.find(g.symbol());
      return it == s.end() ? g : it->second;
    }
    if (g.arity() == 0) return g;
    auto m = memo.find(g);
    if (m != memo.end()) return m->second;
    std::vector<Formula> args;
    args.reserve(g.arity());
    bool changed = false;
    for (const auto& a : g.args()) {
      args.push_back(go(a));
      changed = changed || !(args.back() == a);
    }
    Formula r = changed ? Formula::app(g.symbol(), std::move(args)) : g;
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

bool conforms(const Formula& f, const Signature& sig) {
  if (f.is_var()) return true;
  auto it = sig.connectives.find(f.symbol());
  if (it == sig.connectives.end() || it->second != static_cast<int>(f.arity())) return false;
  for (const auto& a : f.args())
    if (!conforms(a, sig)) return false;
  return true;
}

Formula substitute(const Formula& f, const Substitution& s, const Signature& sig) {
  for (const auto& [name, image] : s) {
    if (!conforms(image, sig)) throw ArityError("substitution image for '" + name + "' leaves the signature");
  }
  return substitute(f, s);
}

FormulaSet generalized_subformulas(const std::vector<Formula>& base, const std::vector<Formula>& xi) {
  FormulaSet sub = subformulas(base);
  FormulaSet out = sub;
  std::vector<Formula> pool(sub.begin(), sub.end());
  for (const auto& x : xi) {
    std::vector<std::string> vars;
    for (const auto& v : variables_of(x)) vars.push_back(v);
    if (vars.empty()) {
      out.insert(x);
      continue;
    }
    if (pool.empty()) continue;
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      Substitution s;
      for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = pool[idx[i]];
      out.insert(substitute(x, s));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

}  // namespace mvl
