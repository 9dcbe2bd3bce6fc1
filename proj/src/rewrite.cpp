#include "blc/rewrite.hpp"

#include <algorithm>

namespace blc {

namespace {

std::size_t width(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return 1;
    case Term::Kind::App:
      return width(t.fun()) + width(t.arg());
    case Term::Kind::Lam:
      return width(t.body()) - 1;
    case Term::Kind::Braid:
      return width(t.body());
  }
  return 0;
}

BraidWord embed(const BraidWord& p, std::size_t offset, std::size_t total) {
  return tensor(tensor(BraidWord::identity(offset), p),
                BraidWord::identity(total - offset - p.strands()));
}

Term wrap(const BraidWord& s, Term body) {
  if (s.empty()) return body;
  return Term::braid(s, std::move(body));
}

struct Hoisted {
  BraidWord braid;  // possibly empty
  Term core;        // no braid node at its root
};

Hoisted hoist(const Term& t);

// A maximal spine \x1..xk. B is rebuilt as \x1..xk. [t] c with c neither a
// braid nor an abstraction.
Hoisted hoist_spine(const Term& t) {
  VarList binders;
  const Term* cur = &t;
  while (cur->is_lam()) {
    binders.push_back(cur->variable());
    cur = &cur->body();
  }
  auto [braid, core] = hoist(*cur);
  while (core.is_lam()) {
    // An inner spine surfaced after hoisting: absorb it.
    VarList inner;
    const Term* c = &core;
    while (c->is_lam()) {
      inner.push_back(c->variable());
      c = &c->body();
    }
    BraidWord inner_braid = BraidWord::identity(width(*c));
    Term inner_core = *c;
    if (c->is_braid()) {
      inner_braid = c->word();
      inner_core = c->body();
    }
    braid = compose(tensor(braid, BraidWord::identity(inner.size())), inner_braid);
    binders.insert(binders.end(), inner.begin(), inner.end());
    core = inner_core;
  }
  braid = free_reduce(braid);
  const std::size_t total = braid.strands();
  const std::size_t m = total - binders.size();
  BraidWord outer = BraidWord::identity(m);
  if (!braid.empty() && parabolic_member(braid, m)) {
    outer = free_reduce(delete_strands(braid, m));
    braid = BraidWord::identity(total);
  } else if (!braid.empty() && is_trivial(braid)) {
    braid = BraidWord::identity(total);
  }
  return {outer, lambdas(binders, wrap(braid, std::move(core)))};
}

Hoisted hoist(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return {BraidWord::identity(1), t};
    case Term::Kind::App: {
      auto f = hoist(t.fun());
      auto a = hoist(t.arg());
      return {tensor(f.braid, a.braid), Term::app(std::move(f.core), std::move(a.core))};
    }
    case Term::Kind::Braid: {
      auto inner = hoist(t.body());
      return {compose(t.word(), inner.braid), std::move(inner.core)};
    }
    case Term::Kind::Lam:
      return hoist_spine(t);
  }
  return {BraidWord(), t};
}

// ---------------------------------------------------------------------------
// Structural equality by gauge fixing, bottom-up over the spines.

class GaugeCompare {
 public:
  bool root(const Term& a, const Term& b) {
    auto [ra, ca] = split(a);
    auto [rb, cb] = split(b);
    if (ra.strands() != rb.strands()) return false;
    std::vector<Correction> corr;
    if (!core(ca, cb, corr, 0)) return false;
    return equal(apply(ra, corr), rb);
  }

 private:
  struct Correction {
    BraidWord p;
    std::size_t offset;
  };

  static std::pair<BraidWord, Term> split(const Term& t) {
    if (t.is_braid()) return {t.word(), t.body()};
    return {BraidWord::identity(width(t)), t};
  }

  static BraidWord apply(BraidWord t, const std::vector<Correction>& corr) {
    for (const auto& c : corr) t = compose(t, embed(c.p, c.offset, t.strands()));
    return t;
  }

  bool same_var(const Variable& x, const Variable& y) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      const bool lx = it->first == x;
      const bool ly = it->second == y;
      if (lx || ly) return lx && ly;
    }
    return x == y;
  }

  bool core(const Term& a, const Term& b, std::vector<Correction>& corr, std::size_t offset) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Var:
        return same_var(a.variable(), b.variable());
      case Term::Kind::App:
        return core(a.fun(), b.fun(), corr, offset) &&
               core(a.arg(), b.arg(), corr, offset + width(a.fun()));
      case Term::Kind::Braid:
        return false;  // not canonical here
      case Term::Kind::Lam:
        break;
    }
    const auto depth = env_.size();
    const Term* pa = &a;
    const Term* pb = &b;
    std::size_t k = 0;
    while (pa->is_lam() && pb->is_lam()) {
      env_.emplace_back(pa->variable(), pb->variable());
      pa = &pa->body();
      pb = &pb->body();
      ++k;
    }
    bool ok = !pa->is_lam() && !pb->is_lam();
    if (ok) {
      auto [ta, ca] = split(*pa);
      auto [tb, cb] = split(*pb);
      std::vector<Correction> inner;
      ok = ta.strands() == tb.strands() && core(ca, cb, inner, 0);
      if (ok) {
        const std::size_t m = ta.strands() - k;
        auto d = compose(apply(ta, inner), inverse(tb));
        ok = parabolic_member(d, m);
        if (ok) corr.push_back({delete_strands(d, m), offset});
      }
    }
    env_.resize(depth);
    return ok;
  }

  std::vector<std::pair<Variable, Variable>> env_;
};

// ---------------------------------------------------------------------------
// Redex search and contraction on canonical terms. Paths: 0 = fun/body,
// 1 = arg.

using Path = std::vector<int>;

struct Redexes {
  std::vector<Path> preorder;
  std::vector<Path> postorder;
  std::vector<Path> outermost;
};

void collect(const Term& t, Path& path, bool under_redex, Redexes& out) {
  const bool here = t.is_app() && t.fun().is_lam();
  if (here) {
    out.preorder.push_back(path);
    if (!under_redex) out.outermost.push_back(path);
  }
  switch (t.kind()) {
    case Term::Kind::Var:
      break;
    case Term::Kind::App:
      path.push_back(0);
      collect(t.fun(), path, under_redex || here, out);
      path.back() = 1;
      collect(t.arg(), path, under_redex || here, out);
      path.pop_back();
      break;
    case Term::Kind::Lam:
    case Term::Kind::Braid:
      path.push_back(0);
      collect(t.body(), path, under_redex || here, out);
      path.pop_back();
      break;
  }
  if (here) out.postorder.push_back(path);
}

const Term& at(const Term& t, const Path& path) {
  const Term* cur = &t;
  for (int step : path) {
    if (cur->is_app()) cur = step == 0 ? &cur->fun() : &cur->arg();
    else cur = &cur->body();
  }
  return *cur;
}

Term replace(const Term& t, const Path& path, std::size_t i, const Term& with) {
  if (i == path.size()) return with;
  switch (t.kind()) {
    case Term::Kind::App:
      if (path[i] == 0) return Term::app(replace(t.fun(), path, i + 1, with), t.arg());
      return Term::app(t.fun(), replace(t.arg(), path, i + 1, with));
    case Term::Kind::Lam:
      return Term::lam(t.variable(), replace(t.body(), path, i + 1, with));
    case Term::Kind::Braid:
      return Term::braid(t.word(), replace(t.body(), path, i + 1, with));
    case Term::Kind::Var:
      break;
  }
  throw TermError("replace: invalid path");
}

Term contract(const Term& redex) {
  const Term& lam = redex.fun();
  return subst(lam.body(), lam.variable(), freshen(redex.arg()));
}

std::optional<Path> choose(const Redexes& r, Strategy strategy) {
  switch (strategy) {
    case Strategy::LeftmostOutermost:
      if (!r.preorder.empty()) return r.preorder.front();
      break;
    case Strategy::LeftmostInnermost:
      if (!r.postorder.empty()) return r.postorder.front();
      break;
    case Strategy::RightmostOutermost:
      if (!r.outermost.empty()) return r.outermost.back();
      break;
  }
  return std::nullopt;
}

// Eta: spine \x1..xk. [t](P xk) with t in B_{m+k-1} (x) id_1.
std::optional<Term> eta_at(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return std::nullopt;
    case Term::Kind::App: {
      if (auto f = eta_at(t.fun())) return Term::app(*f, t.arg());
      if (auto a = eta_at(t.arg())) return Term::app(t.fun(), *a);
      return std::nullopt;
    }
    case Term::Kind::Braid: {
      if (auto b = eta_at(t.body())) return Term::braid(t.word(), *b);
      return std::nullopt;
    }
    case Term::Kind::Lam:
      break;
  }
  VarList binders;
  const Term* cur = &t;
  while (cur->is_lam()) {
    binders.push_back(cur->variable());
    cur = &cur->body();
  }
  const Term* body = cur->is_braid() ? &cur->body() : cur;
  if (body->is_app() && body->arg().is_var() && body->arg().variable() == binders.back()) {
    const std::size_t n = width(*cur);
    BraidWord s = cur->is_braid() ? cur->word() : BraidWord::identity(n);
    if (parabolic_member(s, n - 1)) {
      binders.pop_back();
      return lambdas(binders, wrap(delete_strands(s, n - 1), body->fun()));
    }
  }
  auto inner = eta_at(*cur);
  if (!inner) return std::nullopt;
  return lambdas(binders, *inner);
}

void require_well_formed(const Term& t) {
  auto r = check(t);
  if (!r.ok) throw WellFormednessError(r.diagnostics.empty() ? "ill-formed term" : r.diagnostics.front());
}

}  // namespace

Term canonicalize(const Term& m) {
  auto [braid, core] = hoist(m);
  braid = free_reduce(braid);
  if (!braid.empty() && is_trivial(braid)) braid = BraidWord::identity(braid.strands());
  return wrap(braid, std::move(core));
}

bool equal_str(const Term& m, const Term& n) {
  if (!check(m).ok || !check(n).ok) return false;
  if (cxt(m) != cxt(n)) return false;
  return GaugeCompare().root(canonicalize(m), canonicalize(n));
}

std::optional<Term> beta_step(const Term& m, Strategy strategy) {
  auto c = canonicalize(m);
  Redexes r;
  Path path;
  collect(c, path, false, r);
  auto chosen = choose(r, strategy);
  if (!chosen) return std::nullopt;
  return canonicalize(replace(c, *chosen, 0, contract(at(c, *chosen))));
}

std::optional<Term> eta_step(const Term& m) {
  auto c = canonicalize(m);
  auto r = eta_at(c);
  if (!r) return std::nullopt;
  return canonicalize(*r);
}

NormalizeResult normalize_counted(const Term& m, Mode mode, Strategy strategy) {
  require_well_formed(m);
  NormalizeResult out{canonicalize(freshen(m)), 0, 0};
  while (auto next = beta_step(out.term, strategy)) {
    out.term = std::move(*next);
    ++out.beta_steps;
  }
  if (mode == Mode::BetaEta) {
    while (auto next = eta_step(out.term)) {
      out.term = std::move(*next);
      ++out.eta_steps;
    }
  }
  return out;
}

Term normalize(const Term& m, Mode mode) { return normalize_counted(m, mode).term; }

bool equal_betaeta(const Term& m, const Term& n) {
  require_well_formed(m);
  require_well_formed(n);
  if (cxt(m) != cxt(n)) return false;
  return equal_str(normalize(m), normalize(n));
}

// ---------------------------------------------------------------------------
// Plain linear calculus.

namespace {

void require_linear(const Term& t) {
  if (!braid_free(t)) throw TermError("term contains braid nodes");
  auto r = check_linear(t);
  if (!r.ok) throw TermError(r.diagnostics.empty() ? "term is not linear" : r.diagnostics.front());
}

std::optional<Term> linear_beta_at(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return std::nullopt;
    case Term::Kind::Lam:
      if (auto b = linear_beta_at(t.body())) return Term::lam(t.variable(), *b);
      return std::nullopt;
    case Term::Kind::Braid:
      if (auto b = linear_beta_at(t.body())) return Term::braid(t.word(), *b);
      return std::nullopt;
    case Term::Kind::App:
      if (t.fun().is_lam()) return contract(t);
      if (auto f = linear_beta_at(t.fun())) return Term::app(*f, t.arg());
      if (auto a = linear_beta_at(t.arg())) return Term::app(t.fun(), *a);
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Term> linear_eta_at(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return std::nullopt;
    case Term::Kind::Lam: {
      const Term& b = t.body();
      if (b.is_app() && b.arg().is_var() && b.arg().variable() == t.variable() &&
          !occurs_free(b.fun(), t.variable())) {
        return b.fun();
      }
      if (auto r = linear_eta_at(b)) return Term::lam(t.variable(), *r);
      return std::nullopt;
    }
    case Term::Kind::Braid:
      if (auto b = linear_eta_at(t.body())) return Term::braid(t.word(), *b);
      return std::nullopt;
    case Term::Kind::App:
      if (auto f = linear_eta_at(t.fun())) return Term::app(*f, t.arg());
      if (auto a = linear_eta_at(t.arg())) return Term::app(t.fun(), *a);
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Term> linear_beta_step(const Term& m) { return linear_beta_at(m); }
std::optional<Term> linear_eta_step(const Term& m) { return linear_eta_at(m); }

Term linear_normalize(const Term& m, Mode mode) {
  require_linear(m);
  Term t = freshen(m);
  while (auto next = linear_beta_at(t)) t = std::move(*next);
  if (mode == Mode::BetaEta)
    while (auto next = linear_eta_at(t)) t = std::move(*next);
  return t;
}

bool linear_equal_betaeta(const Term& m, const Term& n) {
  return alpha_equal(linear_normalize(m), linear_normalize(n));
}

}  // namespace blc
