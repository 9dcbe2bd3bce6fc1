#include "blc/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace blc {

Variable Variable::fresh(std::string name) {
  static std::atomic<std::uint64_t> counter{0};
  return {std::move(name), ++counter};
}

struct Term::Node {
  Kind kind;
  Variable variable;            // Var, Lam
  std::optional<BraidWord> word;  // Braid
  std::optional<Term> left;     // Lam/Braid body, App fun
  std::optional<Term> right;    // App arg
  std::size_t size = 1;
};

Term Term::var(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->variable = std::move(v);
  return Term(std::move(n));
}

Term Term::lam(Variable binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->variable = std::move(binder);
  n->size = 1 + body.size();
  n->left = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = 1 + fun.size() + arg.size();
  n->left = std::move(fun);
  n->right = std::move(arg);
  return Term(std::move(n));
}

Term Term::braid(BraidWord s, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Braid;
  n->word = std::move(s);
  n->size = body.size();
  n->left = std::move(body);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }

const Variable& Term::variable() const {
  if (node_->kind != Kind::Var && node_->kind != Kind::Lam) throw TermError("variable(): not a Var or Lam");
  return node_->variable;
}

const Term& Term::body() const {
  if (node_->kind != Kind::Lam && node_->kind != Kind::Braid) throw TermError("body(): not a Lam or Braid");
  return *node_->left;
}

const Term& Term::fun() const {
  if (node_->kind != Kind::App) throw TermError("fun(): not an App");
  return *node_->left;
}

const Term& Term::arg() const {
  if (node_->kind != Kind::App) throw TermError("arg(): not an App");
  return *node_->right;
}

const BraidWord& Term::word() const {
  if (node_->kind != Kind::Braid) throw TermError("word(): not a Braid");
  return *node_->word;
}

std::size_t Term::size() const { return node_->size; }

Term apply(Term f, const std::vector<Term>& args) {
  for (const auto& a : args) f = Term::app(std::move(f), a);
  return f;
}

Term lambdas(const VarList& binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lam(*it, std::move(body));
  return body;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  ParseResult run() {
    auto t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return {std::move(t), std::move(warnings_)};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '\\') return true;
    return text_.substr(pos_, 2) == "\xCE\xBB";
  }

  void eat_lambda() { pos_ += text_[pos_] == '\\' ? 1 : 2; }

  bool at_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return ident_start(c) || c == '(' || c == '[';
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_term() {
    if (at_lambda()) return parse_lam();
    return parse_app();
  }

  Term parse_lam() {
    eat_lambda();
    std::vector<Variable> binders;
    skip_ws();
    while (pos_ < text_.size() && ident_start(text_[pos_])) {
      const auto at = pos_;
      auto name = ident();
      const bool shadows = std::any_of(scope_.begin(), scope_.end(),
                                       [&](const Variable& v) { return v.name == name; }) ||
                           std::any_of(binders.begin(), binders.end(),
                                       [&](const Variable& v) { return v.name == name; });
      if (shadows) {
        if (!options_.allow_shadowing) throw ParseError("duplicate binder name '" + name + "'", at);
        warnings_.push_back("binder '" + name + "' at position " + std::to_string(at) +
                            " shadows an enclosing binder");
      }
      binders.push_back(Variable::fresh(name));
      skip_ws();
    }
    if (binders.empty()) fail("expected binder after lambda");
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.'");
    ++pos_;
    const auto depth = scope_.size();
    scope_.insert(scope_.end(), binders.begin(), binders.end());
    auto body = parse_term();
    scope_.resize(depth);
    return lambdas(binders, std::move(body));
  }

  Term parse_app() {
    if (!at_atom()) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a term");
    auto t = parse_atom();
    while (at_atom()) t = Term::app(std::move(t), parse_atom());
    return t;
  }

  Term parse_atom() {
    skip_ws();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto t = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (c == '[') {
      const auto open = pos_;
      auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated braid");
      auto braid_text = text_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
      if (!at_atom() && !at_lambda()) fail("braid must be followed by an atom");
      if (at_lambda()) fail("braid body must be an atom; parenthesize the abstraction");
      auto body = parse_atom();
      try {
        std::optional<std::size_t> arity;
        if (!has_explicit_strands(braid_text)) {
          try {
            arity = cxt(body).size();
          } catch (const WellFormednessError&) {
          }
        }
        return Term::braid(parse_braid(braid_text, arity), std::move(body));
      } catch (const BraidError& e) {
        throw ParseError(std::string("syntax error: ") + e.what(), open);
      }
    }
    auto name = ident();
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->name == name) return Term::var(*it);
    return Term::var(Variable::free(name));
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::vector<Variable> scope_;
  std::vector<std::string> warnings_;
};

}  // namespace

Term parse_term(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run().term;
}

ParseResult parse_term_with_warnings(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct VarKey {
  std::string name;
  std::uint64_t uid;
  bool operator<(const VarKey& o) const { return uid != o.uid ? uid < o.uid : name < o.name; }
};

VarKey key_of(const Variable& v) { return {v.name, v.uid}; }

class Printer {
 public:
  explicit Printer(const Term& root) {
    // Free variables keep their names where possible; uid-0 names are fixed.
    auto fv = free_vars(root);
    for (const auto& v : fv)
      if (v.uid == 0) used_.insert(v.name);
    for (const auto& v : fv) {
      if (v.uid == 0) {
        names_[key_of(v)] = v.name;
      } else if (!names_.count(key_of(v))) {
        names_[key_of(v)] = pick(v.name);
      }
    }
  }

  std::string term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Lam: {
        std::string out = "\\";
        std::vector<std::string> introduced;
        const Term* cur = &t;
        bool first = true;
        while (cur->is_lam()) {
          auto name = pick(cur->variable().name);
          names_[key_of(cur->variable())] = name;
          introduced.push_back(name);
          if (!first) out += ' ';
          out += name;
          first = false;
          cur = &cur->body();
        }
        out += ". ";
        out += term(*cur);
        for (const auto& n : introduced) used_.erase(n);
        return out;
      }
      case Term::Kind::App:
        return fun_part(t.fun()) + " " + atom(t.arg());
      default:
        return atom(t);
    }
  }

 private:
  std::string pick(const std::string& base) {
    std::string name = base;
    for (int k = 1; used_.count(name); ++k) name = base + std::to_string(k);
    used_.insert(name);
    return name;
  }

  std::string fun_part(const Term& t) {
    if (t.is_app()) return fun_part(t.fun()) + " " + atom(t.arg());
    return atom(t);
  }

  std::string atom(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = names_.find(key_of(t.variable()));
        return it != names_.end() ? it->second : t.variable().name;
      }
      case Term::Kind::Braid: {
        auto body = atom(t.body());
        std::string out = "[" + to_string(t.word()) + "]";
        if (body.front() != '(') out += ' ';
        return out + body;
      }
      default:
        return "(" + term(t) + ")";
    }
  }

  std::map<VarKey, std::string> names_;
  std::multiset<std::string> used_;
};

}  // namespace

std::string print(const Term& t) { return Printer(t).term(t); }

// ---------------------------------------------------------------------------
// Contexts and checks

namespace {

struct CxtComputer {
  bool planar = true;  // false: linearity only
  std::vector<std::string> errors;

  static std::string show(const Variable& v) { return "'" + v.name + "'"; }

  // Returns nullopt after recording an error.
  std::optional<VarList> run(const Term& t, const std::string& path) {
    auto where = path.empty() ? std::string("<root>") : path;
    switch (t.kind()) {
      case Term::Kind::Var:
        return VarList{t.variable()};
      case Term::Kind::App: {
        auto f = run(t.fun(), path + "f");
        auto a = run(t.arg(), path + "a");
        if (!f || !a) return std::nullopt;
        for (const auto& v : *a) {
          if (std::find(f->begin(), f->end(), v) != f->end()) {
            errors.push_back(where + ": variable " + show(v) + " is used more than once");
            return std::nullopt;
          }
        }
        f->insert(f->end(), a->begin(), a->end());
        return f;
      }
      case Term::Kind::Lam: {
        auto body = run(t.body(), path + "b");
        if (!body) return std::nullopt;
        const auto& x = t.variable();
        auto it = std::find(body->begin(), body->end(), x);
        if (it == body->end()) {
          errors.push_back(where + ": binder " + show(x) + " is unused");
          return std::nullopt;
        }
        if (planar && std::next(it) != body->end()) {
          errors.push_back(where + ": binder " + show(x) +
                           " is not the last variable of its body's context");
          return std::nullopt;
        }
        body->erase(it);
        return body;
      }
      case Term::Kind::Braid: {
        auto body = run(t.body(), path + "b");
        if (!body) return std::nullopt;
        const auto& s = t.word();
        if (s.strands() != body->size()) {
          errors.push_back(where + ": braid has " + std::to_string(s.strands()) +
                           " strands but its body has " + std::to_string(body->size()) +
                           " free variables");
          return std::nullopt;
        }
        if (!planar) return body;
        auto p = permutation(s);
        VarList out(body->size());
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = (*body)[p(static_cast<int>(k) + 1) - 1];
        return out;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

VarList cxt(const Term& t) {
  CxtComputer c;
  auto out = c.run(t, "");
  if (!out) throw WellFormednessError(c.errors.empty() ? "ill-formed term" : c.errors.front());
  return *out;
}

CheckResult check(const Term& t) {
  CxtComputer c;
  auto out = c.run(t, "");
  return {out.has_value(), std::move(c.errors)};
}

CheckResult check_linear(const Term& t) {
  CxtComputer c;
  c.planar = false;
  auto out = c.run(t, "");
  return {out.has_value(), std::move(c.errors)};
}

namespace {

void collect_free(const Term& t, VarList& bound, VarList& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.variable()) == bound.end()) out.push_back(t.variable());
      return;
    case Term::Kind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case Term::Kind::Lam:
      bound.push_back(t.variable());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::Braid:
      collect_free(t.body(), bound, out);
      return;
  }
}

}  // namespace

VarList free_vars(const Term& t) {
  VarList bound, out;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const Term& t, const Variable& x) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.variable() == x;
    case Term::Kind::App:
      return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    case Term::Kind::Lam:
      return !(t.variable() == x) && occurs_free(t.body(), x);
    case Term::Kind::Braid:
      return occurs_free(t.body(), x);
  }
  return false;
}

Term erase(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::App:
      return Term::app(erase(t.fun()), erase(t.arg()));
    case Term::Kind::Lam:
      return Term::lam(t.variable(), erase(t.body()));
    case Term::Kind::Braid:
      return erase(t.body());
  }
  return t;
}

bool braid_free(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::App:
      return braid_free(t.fun()) && braid_free(t.arg());
    case Term::Kind::Lam:
      return braid_free(t.body());
    case Term::Kind::Braid:
      return false;
  }
  return true;
}

namespace {

Term subst_rec(const Term& t, const Variable& x, const Term& n, std::size_t m) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return n;
    case Term::Kind::App:
      if (occurs_free(t.fun(), x)) return Term::app(subst_rec(t.fun(), x, n, m), t.arg());
      return Term::app(t.fun(), subst_rec(t.arg(), x, n, m));
    case Term::Kind::Lam:
      return Term::lam(t.variable(), subst_rec(t.body(), x, n, m));
    case Term::Kind::Braid: {
      const auto& s = t.word();
      const auto inner = cxt(t.body());
      auto it = std::find(inner.begin(), inner.end(), x);
      const int i = static_cast<int>(it - inner.begin()) + 1;
      // x sits at position s^-1(i) on the outer side of the braid.
      const auto outer = static_cast<std::size_t>(permutation(s).inverse_at(i));
      return Term::braid(substitute(s, outer, m), subst_rec(t.body(), x, n, m));
    }
  }
  return t;
}

}  // namespace

Term subst(const Term& t, const Variable& x, const Term& n) {
  if (!occurs_free(t, x)) throw TermError("subst: variable '" + x.name + "' is not free in the term");
  const auto fv_t = free_vars(t);
  const auto fv_n = free_vars(n);
  for (const auto& v : fv_n) {
    if (!(v == x) && std::find(fv_t.begin(), fv_t.end(), v) != fv_t.end()) {
      throw TermError("subst: variable clash on '" + v.name + "'");
    }
  }
  return subst_rec(t, x, n, fv_n.size());
}

bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::pair<Variable, Variable>> env;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& p, const Term& q) -> bool {
    if (p.kind() != q.kind()) return false;
    switch (p.kind()) {
      case Term::Kind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
          const bool lp = it->first == p.variable();
          const bool lq = it->second == q.variable();
          if (lp || lq) return lp && lq;
        }
        return p.variable() == q.variable();
      }
      case Term::Kind::App:
        return go(p.fun(), q.fun()) && go(p.arg(), q.arg());
      case Term::Kind::Lam: {
        env.emplace_back(p.variable(), q.variable());
        const bool ok = go(p.body(), q.body());
        env.pop_back();
        return ok;
      }
      case Term::Kind::Braid:
        return p.word() == q.word() && go(p.body(), q.body());
    }
    return false;
  };
  return go(a, b);
}

Term freshen(const Term& t) {
  std::vector<std::pair<Variable, Variable>> env;
  std::function<Term(const Term&)> go = [&](const Term& p) -> Term {
    switch (p.kind()) {
      case Term::Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == p.variable()) return Term::var(it->second);
        return p;
      case Term::Kind::App:
        return Term::app(go(p.fun()), go(p.arg()));
      case Term::Kind::Lam: {
        auto v = Variable::fresh(p.variable().name);
        env.emplace_back(p.variable(), v);
        auto body = go(p.body());
        env.pop_back();
        return Term::lam(v, std::move(body));
      }
      case Term::Kind::Braid:
        return Term::braid(p.word(), go(p.body()));
    }
    return p;
  };
  return go(t);
}

}  // namespace blc
