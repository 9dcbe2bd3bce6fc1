#include "blc/combinator.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "blc/rewrite.hpp"

namespace blc {

struct CombTerm::Node {
  Kind kind;
  std::string name;
  std::optional<CombTerm> fun, arg;
  std::size_t leaves = 1;
};

CombTerm::Kind CombTerm::kind() const { return node_->kind; }
std::size_t CombTerm::leaves() const { return node_->leaves; }

CombTerm CombTerm::constant(Kind k) {
  if (k == Kind::Var || k == Kind::App) throw CombError("not a constant kind");
  auto n = std::make_shared<Node>();
  n->kind = k;
  return CombTerm(std::move(n));
}

CombTerm CombTerm::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return CombTerm(std::move(n));
}

CombTerm CombTerm::app(CombTerm f, CombTerm a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->leaves = f.leaves() + a.leaves();
  n->fun = std::move(f);
  n->arg = std::move(a);
  return CombTerm(std::move(n));
}

const std::string& CombTerm::name() const {
  if (!is_var()) throw CombError("name(): not a variable");
  return node_->name;
}

const CombTerm& CombTerm::fun() const {
  if (!is_app()) throw CombError("fun(): not an application");
  return *node_->fun;
}

const CombTerm& CombTerm::arg() const {
  if (!is_app()) throw CombError("arg(): not an application");
  return *node_->arg;
}

bool operator==(const CombTerm& a, const CombTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.leaves() != b.leaves()) return false;
  switch (a.kind()) {
    case CombTerm::Kind::Var:
      return a.name() == b.name();
    case CombTerm::Kind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    default:
      return true;
  }
}

CombTerm capply(CombTerm f, const std::vector<CombTerm>& args) {
  for (const auto& a : args) f = CombTerm::app(std::move(f), a);
  return f;
}

// ---------------------------------------------------------------------------
// Text

namespace {

class CombParser {
 public:
  explicit CombParser(std::string_view text) : text_(text) {}

  CombTerm run() {
    auto t = app();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  CombTerm app() {
    if (!at_atom()) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a combinator term");
    auto t = atom();
    while (at_atom()) t = CombTerm::app(std::move(t), atom());
    return t;
  }

  CombTerm atom() {
    skip_ws();
    if (text_[pos_] == '(') {
      ++pos_;
      auto t = app();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    std::string word(text_.substr(start, pos_ - start));
    if (word == "C" && pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      return CombTerm::constant(text_[pos_++] == '+' ? CombTerm::Kind::CPlus : CombTerm::Kind::CMinus);
    }
    if (word == "B") return CombTerm::B();
    if (word == "C") return CombTerm::C();
    if (word == "I") return CombTerm::I();
    return CombTerm::var(std::move(word));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print_into(const CombTerm& p, std::string& out, bool as_arg) {
  switch (p.kind()) {
    case CombTerm::Kind::B:
      out += "B";
      return;
    case CombTerm::Kind::C:
      out += "C";
      return;
    case CombTerm::Kind::CPlus:
      out += "C+";
      return;
    case CombTerm::Kind::CMinus:
      out += "C-";
      return;
    case CombTerm::Kind::I:
      out += "I";
      return;
    case CombTerm::Kind::Var:
      out += p.name();
      return;
    case CombTerm::Kind::App:
      if (as_arg) out += '(';
      print_into(p.fun(), out, false);
      out += ' ';
      print_into(p.arg(), out, true);
      if (as_arg) out += ')';
      return;
  }
}

void collect_vars(const CombTerm& p, std::vector<std::string>& out) {
  if (p.is_var()) out.push_back(p.name());
  if (p.is_app()) {
    collect_vars(p.fun(), out);
    collect_vars(p.arg(), out);
  }
}

bool contains(const CombTerm& p, CombTerm::Kind k) {
  if (p.kind() == k) return true;
  return p.is_app() && (contains(p.fun(), k) || contains(p.arg(), k));
}

}  // namespace

CombTerm parse_comb(std::string_view text) { return CombParser(text).run(); }

std::string print(const CombTerm& p) {
  std::string out;
  print_into(p, out, false);
  return out;
}

std::vector<std::string> comb_vars(const CombTerm& p) {
  std::vector<std::string> out;
  collect_vars(p, out);
  return out;
}

bool comb_closed(const CombTerm& p) { return comb_vars(p).empty(); }

std::optional<Flavour> flavour_of(const CombTerm& p) {
  const bool sym = contains(p, CombTerm::Kind::C);
  const bool braided = contains(p, CombTerm::Kind::CPlus) || contains(p, CombTerm::Kind::CMinus);
  if (sym && braided) throw CombError("term mixes C with C+/C-");
  if (sym) return Flavour::Symmetric;
  if (braided) return Flavour::Braided;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Braids as combinators

Term ceiling(const BraidWord& s) {
  const auto n = s.strands();
  const auto p = permutation(s);
  auto f = Variable::fresh("f");
  VarList xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(Variable::fresh("x" + std::to_string(i)));
  std::vector<Term> args;
  for (const auto& x : xs) args.push_back(Term::var(x));
  VarList binders{f};
  for (std::size_t j = 1; j <= n; ++j) binders.push_back(xs[static_cast<std::size_t>(p(static_cast<int>(j))) - 1]);
  auto body = Term::braid(tensor(BraidWord::identity(1), s), blc::apply(Term::var(f), args));
  return lambdas(binders, body);
}

CombTerm ceiling_comb(const BraidWord& s) {
  if (s.empty()) return CombTerm::I();
  std::vector<CombTerm> parts;
  for (const auto& l : s.letters()) {
    CombTerm c = l.sign > 0 ? CombTerm::CPlus() : CombTerm::CMinus();
    for (int k = 1; k < l.index; ++k) c = CombTerm::app(CombTerm::B(), c);
    parts.push_back(c);
  }
  CombTerm out = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) out = capply(CombTerm::B(), {*it, out});
  return out;
}

// ---------------------------------------------------------------------------
// Bracket abstraction and translations

namespace {

std::size_t occurrences(const CombTerm& p, const std::string& x) {
  if (p.is_var()) return p.name() == x ? 1 : 0;
  if (p.is_app()) return occurrences(p.fun(), x) + occurrences(p.arg(), x);
  return 0;
}

CombTerm star(const std::string& x, const CombTerm& p, Flavour flavour) {
  if (p.is_var()) return CombTerm::I();  // the only occurrence
  // p is an application containing x once.
  if (occurrences(p.fun(), x) == 1) {
    auto c = flavour == Flavour::Braided ? CombTerm::CPlus() : CombTerm::C();
    return capply(c, {star(x, p.fun(), flavour), p.arg()});
  }
  return capply(CombTerm::B(), {p.fun(), star(x, p.arg(), flavour)});
}

// Internal names for term variables; bound names carry their uid so distinct
// binders never collide after translation.
std::string comb_name(const Variable& v) {
  if (v.uid == 0) return v.name;
  return v.name + "#" + std::to_string(v.uid);
}

CombTerm flat_rec(const Term& m, Flavour flavour) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return CombTerm::var(comb_name(m.variable()));
    case Term::Kind::App:
      return CombTerm::app(flat_rec(m.fun(), flavour), flat_rec(m.arg(), flavour));
    case Term::Kind::Lam:
      return lambda_star(comb_name(m.variable()), flat_rec(m.body(), flavour), flavour);
    case Term::Kind::Braid: {
      const auto xs = cxt(m.body());
      auto inner = flat_rec(m.body(), flavour);
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) inner = lambda_star(comb_name(*it), inner, flavour);
      const auto p = permutation(m.word());
      std::vector<CombTerm> args{inner};
      for (std::size_t j = 1; j <= xs.size(); ++j)
        args.push_back(CombTerm::var(comb_name(xs[static_cast<std::size_t>(p(static_cast<int>(j))) - 1])));
      return capply(ceiling_comb(m.word()), args);
    }
  }
  throw CombError("flat: unreachable");
}

}  // namespace

CombTerm lambda_star(const std::string& x, const CombTerm& p, Flavour flavour) {
  const auto k = occurrences(p, x);
  if (k == 0) throw CombError("lambda_star: '" + x + "' does not occur");
  if (k > 1) throw CombError("lambda_star: '" + x + "' occurs more than once");
  return star(x, p, flavour);
}

CombTerm flat(const Term& m) {
  auto r = check(m);
  if (!r.ok) throw WellFormednessError(r.diagnostics.empty() ? "ill-formed term" : r.diagnostics.front());
  return flat_rec(m, Flavour::Braided);
}

CombTerm flat_sym(const Term& m) {
  if (!braid_free(m)) throw CombError("flat_sym: term contains braid nodes");
  auto r = check_linear(m);
  if (!r.ok) throw WellFormednessError(r.diagnostics.empty() ? "term is not linear" : r.diagnostics.front());
  return flat_rec(m, Flavour::Symmetric);
}

Term c_plus_term() { return parse_term("\\f x y. [s2 @3](f y x)"); }
Term c_minus_term() { return parse_term("\\f x y. [s2' @3](f y x)"); }

Term sharp(const CombTerm& p) {
  switch (p.kind()) {
    case CombTerm::Kind::B:
      return parse_term("\\x y z. x (y z)");
    case CombTerm::Kind::C:
      return parse_term("\\x y z. x z y");
    case CombTerm::Kind::CPlus:
      return c_plus_term();
    case CombTerm::Kind::CMinus:
      return c_minus_term();
    case CombTerm::Kind::I:
      return parse_term("\\x. x");
    case CombTerm::Kind::Var:
      return Term::var(p.name());
    case CombTerm::Kind::App:
      return Term::app(sharp(p.fun()), sharp(p.arg()));
  }
  throw CombError("sharp: unreachable");
}

bool comb_equal(const CombTerm& p, const CombTerm& q) {
  const auto fp = flavour_of(p);
  const auto fq = flavour_of(q);
  if (fp && fq && *fp != *fq) throw CombError("comb_equal: flavours differ");
  const auto flavour = fp ? *fp : (fq ? *fq : Flavour::Braided);
  if (flavour == Flavour::Symmetric) return linear_equal_betaeta(sharp(p), sharp(q));
  return equal_betaeta(sharp(p), sharp(q));
}

// ---------------------------------------------------------------------------
// Axioms

const std::vector<Axiom>& bci_axioms() {
  static const std::vector<Axiom> axioms = [] {
    auto row = [](std::string name, const char* l, const char* r) {
      return Axiom{std::move(name), parse_comb(l), parse_comb(r)};
    };
    return std::vector<Axiom>{
        row("B", "B L M N", "L (M N)"),
        row("C", "C L M N", "L N M"),
        row("I", "I M", "M"),
        row("BI", "B I", "I"),
        row("CBI", "C B I", "I"),
        row("assoc", "B (B B) B", "B (C B B) (B B B)"),
        row("BC-BBB", "B (B C) (B B B)", "B (C B C) (B B B)"),
        row("BBC", "B (B B) C", "B C (B (B C) B)"),
        row("R2", "B C C", "I"),
        row("R3", "B (B C) (B C (B C))", "B C (B (B C) C)"),
    };
  }();
  return axioms;
}

const std::vector<Axiom>& braided_axioms() {
  static const std::vector<Axiom> axioms = [] {
    auto row = [](std::string name, const char* l, const char* r) {
      return Axiom{std::move(name), parse_comb(l), parse_comb(r)};
    };
    return std::vector<Axiom>{
        row("R2+-", "B C+ C-", "I"),
        row("R2-+", "B C- C+", "I"),
        row("R3", "B (B C+) (B C+ (B C+))", "B C+ (B (B C+) C+)"),
    };
  }();
  return axioms;
}

BraidWord block_braid(std::size_t l, std::size_t m, std::size_t n) {
  std::vector<Letter> letters;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = l + m + j - 1; i >= l + j; --i) letters.push_back({static_cast<int>(i), 1});
  return BraidWord(l + m + n, std::move(letters));
}

// ---------------------------------------------------------------------------
// Prover

namespace {

using Bindings = std::map<std::string, CombTerm>;

bool is_pattern_var(const CombTerm& p) {
  return p.is_var() && (p.name() == "L" || p.name() == "M" || p.name() == "N");
}

bool match(const CombTerm& pattern, const CombTerm& t, Bindings& b) {
  if (is_pattern_var(pattern)) {
    auto [it, inserted] = b.emplace(pattern.name(), t);
    return inserted || it->second == t;
  }
  if (pattern.kind() != t.kind()) return false;
  if (pattern.is_var()) return pattern.name() == t.name();
  if (pattern.is_app()) return match(pattern.fun(), t.fun(), b) && match(pattern.arg(), t.arg(), b);
  return true;
}

CombTerm instantiate(const CombTerm& pattern, const Bindings& b) {
  if (is_pattern_var(pattern)) return b.at(pattern.name());
  if (pattern.is_app()) return CombTerm::app(instantiate(pattern.fun(), b), instantiate(pattern.arg(), b));
  return pattern;
}

const CombTerm& subterm(const CombTerm& t, const std::vector<int>& pos) {
  const CombTerm* cur = &t;
  for (int step : pos) {
    if (!cur->is_app()) throw CombError("invalid position");
    cur = step == 0 ? &cur->fun() : &cur->arg();
  }
  return *cur;
}

CombTerm replace(const CombTerm& t, const std::vector<int>& pos, std::size_t i, const CombTerm& with) {
  if (i == pos.size()) return with;
  if (!t.is_app()) throw CombError("invalid position");
  if (pos[i] == 0) return CombTerm::app(replace(t.fun(), pos, i + 1, with), t.arg());
  return CombTerm::app(t.fun(), replace(t.arg(), pos, i + 1, with));
}

void positions(const CombTerm& t, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (!t.is_app()) return;
  cur.push_back(0);
  positions(t.fun(), cur, out);
  cur.back() = 1;
  positions(t.arg(), cur, out);
  cur.pop_back();
}

struct Edge {
  std::string parent;
  std::size_t axiom = 0;
  bool left_to_right = true;
  std::vector<int> position;
};

struct Side {
  std::unordered_map<std::string, std::pair<CombTerm, std::optional<Edge>>> seen;
  std::vector<std::string> frontier;
  std::size_t level = 0;
};

}  // namespace

std::optional<CombTerm> rewrite_at(const CombTerm& t, const Axiom& axiom, bool left_to_right,
                                   const std::vector<int>& position) {
  const CombTerm* u;
  try {
    u = &subterm(t, position);
  } catch (const CombError&) {
    return std::nullopt;
  }
  Bindings b;
  const auto& from = left_to_right ? axiom.lhs : axiom.rhs;
  const auto& to = left_to_right ? axiom.rhs : axiom.lhs;
  if (!match(from, *u, b)) return std::nullopt;
  return replace(t, position, 0, instantiate(to, b));
}

bool verify_proof(const Proof& proof, const CombTerm& goal) {
  const auto& axioms = bci_axioms();
  CombTerm cur = proof.start;
  for (const auto& step : proof.steps) {
    auto it = std::find_if(axioms.begin(), axioms.end(), [&](const Axiom& a) { return a.name == step.axiom; });
    if (it == axioms.end()) return false;
    auto next = rewrite_at(cur, *it, step.left_to_right, step.position);
    if (!next || !(*next == step.result)) return false;
    cur = *next;
  }
  return cur == goal;
}

std::optional<Proof> bci_prover(const CombTerm& p, const CombTerm& q, std::size_t depth,
                                const ProverLimits& limits) {
  if (flavour_of(p) == Flavour::Braided || flavour_of(q) == Flavour::Braided)
    throw CombError("bci_prover: symmetric flavour required");
  const auto& axioms = bci_axioms();
  Side fwd, bwd;
  const auto kp = print(p), kq = print(q);
  fwd.seen.emplace(kp, std::make_pair(p, std::nullopt));
  bwd.seen.emplace(kq, std::make_pair(q, std::nullopt));
  fwd.frontier = {kp};
  bwd.frontier = {kq};

  // Path from a side's root to `key`, as (term, edge-into-term) pairs.
  auto chain = [](const Side& side, const std::string& key) {
    std::vector<std::pair<CombTerm, std::optional<Edge>>> out;
    std::string cur = key;
    while (true) {
      const auto& entry = side.seen.at(cur);
      out.push_back(entry);
      if (!entry.second) break;
      cur = entry.second->parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  auto build = [&](const std::string& meet) {
    Proof proof{p, {}};
    auto left = chain(fwd, meet);
    for (std::size_t i = 1; i < left.size(); ++i) {
      const auto& e = *left[i].second;
      proof.steps.push_back({axioms[e.axiom].name, e.left_to_right, e.position, left[i].first});
    }
    auto right = chain(bwd, meet);  // q ... meet
    for (std::size_t i = right.size() - 1; i > 0; --i) {
      const auto& e = *right[i].second;
      proof.steps.push_back({axioms[e.axiom].name, !e.left_to_right, e.position, right[i - 1].first});
    }
    return proof;
  };

  if (kp == kq) return Proof{p, {}};

  while (fwd.level + bwd.level < depth) {
    Side& grow = fwd.frontier.size() <= bwd.frontier.size() ? fwd : bwd;
    Side& other = &grow == &fwd ? bwd : fwd;
    if (grow.frontier.empty()) break;
    std::vector<std::string> next;
    for (const auto& key : grow.frontier) {
      const CombTerm t = grow.seen.at(key).first;
      std::vector<std::vector<int>> pos;
      std::vector<int> scratch;
      positions(t, scratch, pos);
      for (const auto& at : pos) {
        for (std::size_t a = 0; a < axioms.size(); ++a) {
          for (bool ltr : {true, false}) {
            if (!ltr && axioms[a].name == "I") continue;
            auto r = rewrite_at(t, axioms[a], ltr, at);
            if (!r || r->leaves() > limits.max_leaves) continue;
            auto rk = print(*r);
            if (grow.seen.count(rk)) continue;
            grow.seen.emplace(rk, std::make_pair(*r, Edge{key, a, ltr, at}));
            if (other.seen.count(rk)) return build(rk);
            next.push_back(std::move(rk));
            if (fwd.seen.size() + bwd.seen.size() > limits.max_nodes) return std::nullopt;
          }
        }
      }
    }
    grow.frontier = std::move(next);
    ++grow.level;
  }
  return std::nullopt;
}

}  // namespace blc
