// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "blc/braid.hpp"
#include "blc/combinator.hpp"
#include "blc/group.hpp"
#include "blc/rewrite.hpp"
#include "blc/semantics.hpp"
#include "blc/term.hpp"
#include "support.hpp"

using namespace blc;
using namespace blc::testing;

namespace {

// Pinned limits.
constexpr double kBraidSeconds = 2.0;
constexpr double kNormalizeSeconds = 30.0;
constexpr double kTreeModelSeconds = 60.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void fail(const std::string& why) {
    if (out_.pass) out_.detail = why;
    out_.pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome done() {
    if (out_.pass) out_.detail = notes_;
    return out_;
  }

 private:
  Outcome out_;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

Term P(const char* s) { return parse_term(s); }
BraidWord W(const char* s) { return parse_braid(s); }

VarList free_ctx(int n) {
  VarList v;
  for (int i = 0; i < n; ++i) v.push_back(Variable::free("a" + std::to_string(i)));
  return v;
}

// ------------------------------------------------------------------ 1
Outcome braid_engine() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 2; n <= 6; ++n)
    for (int i = 1; i < static_cast<int>(n); ++i)
      for (int j = 1; j < static_cast<int>(n); ++j) {
        if (std::abs(i - j) >= 2)
          r.check(is_trivial(BraidWord(n, {{i, 1}, {j, 1}, {i, -1}, {j, -1}})), "far commutation");
        if (j == i + 1)
          r.check(is_trivial(BraidWord(n, {{i, 1}, {j, 1}, {i, 1}, {j, -1}, {i, -1}, {j, -1}})), "braid relation");
      }
  Rng rng(kSeed + 1);
  for (int k = 0; k < 500; ++k) {
    auto s = random_braid(rng, static_cast<std::size_t>(uniform(rng, 2, 6)), 10);
    r.check(is_trivial(compose(s, inverse(s))), "s s^-1 not trivial: " + to_string(s));
  }
  double dt = seconds_since(t0);
  r.check(dt < kBraidSeconds, "took " + fmt(dt) + " s");
  r.note("500 random words, " + fmt(dt) + " s");
  return r.done();
}

// ------------------------------------------------------------------ 2
Outcome substitution_map() {
  Report r;
  for (int j = 1; j <= 4; ++j) {
    BraidWord s(static_cast<std::size_t>(j + 1), {{j, 1}});
    BraidWord want(static_cast<std::size_t>(j + 3), {{j + 2, 1}, {j + 1, 1}, {j, 1}});
    r.check(substitute(s, static_cast<std::size_t>(j), 3) == want, "s_j[j:=3]");
    r.check(substitute(s, static_cast<std::size_t>(j), 0) == BraidWord::identity(static_cast<std::size_t>(j)),
            "s_j[j:=0]");
  }
  Rng rng(kSeed + 2);
  int failures = 0;
  for (int k = 0; k < 300; ++k) {
    auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    auto s = random_braid(rng, n, 8);
    auto s2 = relation_rewrite(rng, s);
    for (std::size_t i = 1; i <= n; ++i) {
      if (!(substitute(s, i, 1) == s)) ++failures;
      for (std::size_t m = 0; m <= 3; ++m)
        if (!equal(substitute(s, i, m), substitute(s2, i, m)) ||
            !artin_equal(substitute(s, i, m), substitute(s2, i, m)))
          ++failures;
    }
  }
  r.check(failures == 0, std::to_string(failures) + " well-definedness failures");
  r.note("300 cases, 0 failures");
  return r.done();
}

// ------------------------------------------------------------------ 3
Outcome context_coherence() {
  Report r;
  Rng rng(kSeed + 3);
  const char* names[] = {"str_id", "str_comp", "str_app", "str_abs"};
  for (int which = 0; which < 4; ++which)
    for (int k = 0; k < 300; ++k) {
      auto inst = structural_instance(rng, which);
      r.check(names_of(cxt(inst.lhs)) == names_of(cxt(inst.rhs)), std::string(names[which]) + ": " + print(inst.lhs));
    }
  r.note("4 x 300 instances");
  return r.done();
}

// ------------------------------------------------------------------ 4
Outcome normalization() {
  Report r;
  Rng rng(kSeed + 4);
  TermGen g(rng);
  auto t0 = std::chrono::steady_clock::now();
  int done = 0, steps = 0;
  while (done < 300) {
    auto m = g.gen(free_ctx(uniform(rng, 0, 3)), uniform(rng, 3, 25));
    if (m.size() > 25) continue;
    ++done;
    auto sz = erase(m).size();
    auto a = normalize_counted(m, Mode::Beta, Strategy::LeftmostOutermost);
    auto b = normalize_counted(m, Mode::Beta, Strategy::LeftmostInnermost);
    auto c = normalize_counted(m, Mode::Beta, Strategy::RightmostOutermost);
    steps += static_cast<int>(a.beta_steps);
    for (const auto* x : {&a, &b, &c}) r.check(x->beta_steps <= sz * sz, "step bound exceeded: " + print(m));
    r.check(equal_str(a.term, b.term) && equal_str(b.term, c.term) && equal_str(a.term, c.term),
            "strategies disagree: " + print(m));
  }
  double dt = seconds_since(t0);
  r.check(dt < kNormalizeSeconds, "took " + fmt(dt) + " s");
  r.note("300 terms, " + std::to_string(steps) + " beta steps, " + fmt(dt) + " s");
  return r.done();
}

// ------------------------------------------------------------------ 5
Outcome decision_goldens() {
  Report r;
  r.check(equal_betaeta(ceiling(W("s1 s1' @2")), ceiling(BraidWord::identity(2))), "ceil(s1 s1') != ceil(e)");
  r.check(!equal_betaeta(P("\\y. [s1 s1 @2](x y)"), P("x")), "eta counterexample collapsed");
  r.check(equal_betaeta(ceiling(W("s1 @2")), P("\\f x y. [s2 @3](f y x)")), "ceil(s1) != C+");
  r.note("3 golden equalities");
  return r.done();
}

// ------------------------------------------------------------------ 6
Outcome completeness() {
  Report r;
  Rng rng(kSeed + 6);
  TermGen g(rng);
  int done = 0;
  while (done < 100) {
    auto m = g.closed(uniform(rng, 2, 20));
    if (m.size() > 20) continue;
    ++done;
    auto f = flat(m);
    r.check(comb_closed(f), "flat left variables: " + print(m));
    r.check(equal_betaeta(sharp(f), m), "round trip: " + print(m));
  }
  auto celtic = P("\\f x y z. [s2 s1' s3' s2 s1' s3' s2 s1' s3' s2 s1' s3' s2 @4](f y x z)");
  auto fc = flat(celtic);
  r.check(equal_betaeta(sharp(fc), celtic), "Celtic term does not round-trip");
  auto shown = parse_comb(
      "B C+ (C- (B (B C-)) (B C+ (C- (B (B C-)) (B C+ (C- (B (B C-)) (B C+ (C- (B (B C-)) C+)))))))");
  bool match = comb_equal(fc, shown);
  r.check(match, "Celtic flat is not equal to the displayed combinator (round trip ok)");
  r.note("100 closed terms; Celtic round trip ok");
  return r.done();
}

// ------------------------------------------------------------------ 7
Outcome ceiling_laws() {
  Report r;
  Rng rng(kSeed + 7);
  for (int k = 0; k < 100; ++k) {
    auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    auto s = random_braid(rng, n, 6), t = random_braid(rng, n, 6);
    auto B = sharp(CombTerm::B());
    r.check(equal_betaeta(ceiling(BraidWord::identity(n)), sharp(CombTerm::I())), "ceil(id) != I");
    r.check(equal_betaeta(ceiling(compose(s, t)), apply(B, {ceiling(s), ceiling(t)})),
            "ceil(st) != B ceil(s) ceil(t) for " + to_string(s) + " / " + to_string(t));
    r.check(equal_betaeta(ceiling(tensor(BraidWord::identity(1), s)), Term::app(B, ceiling(s))),
            "ceil(id (x) s) != B ceil(s) for " + to_string(s));
    r.check(equal_betaeta(ceiling(tensor(s, BraidWord::identity(1))), ceiling(s)),
            "ceil(s (x) id) != ceil(s) for " + to_string(s));
  }
  for (int k = 0; k < 100; ++k) {
    int i = uniform(rng, 1, 4), sign = coin(rng) ? 1 : -1;
    auto n = static_cast<std::size_t>(uniform(rng, i + 1, 5));
    CombTerm expect = sign > 0 ? CombTerm::CPlus() : CombTerm::CMinus();
    for (int q = 1; q < i; ++q) expect = CombTerm::app(CombTerm::B(), expect);
    r.check(equal_betaeta(ceiling(BraidWord(n, {{i, sign}})), sharp(expect)), "generator shape i=" + std::to_string(i));
  }
  r.note("4 x 100 law cases, 100 generator cases");
  return r.done();
}

// ------------------------------------------------------------------ 8
Outcome bci_axiomatization() {
  Report r;
  for (const auto& a : bci_axioms()) r.check(comb_equal(a.lhs, a.rhs), "axiom " + a.name);
  auto goal = parse_comb("B (B L M) N");
  auto proof = bci_prover(parse_comb("B L (B M N)"), goal, 12);
  r.check(proof.has_value(), "associativity not found within depth 12");
  if (proof) r.check(verify_proof(*proof, goal), "associativity proof does not replay");
  Rng rng(kSeed + 8);
  for (int k = 0; k < 100; ++k) {
    auto p = random_comb(rng, uniform(rng, 1, 8), false);
    r.check(comb_equal(flat_sym(sharp(p)), p), "sharp then flat round trip: " + print(p));
  }
  for (int k = 0; k < 100; ++k) {
    std::vector<std::string> vars{"u", "v"};
    vars.resize(static_cast<std::size_t>(uniform(rng, 0, 2)));
    vars.insert(vars.begin() + uniform(rng, 0, static_cast<int>(vars.size())), "x");
    auto p = random_comb(rng, uniform(rng, static_cast<int>(vars.size()), 7), false, vars);
    auto lhs = sharp(lambda_star("x", p, Flavour::Symmetric));
    r.check(linear_equal_betaeta(lhs, Term::lam(Variable::free("x"), sharp(p))), "abstraction: " + print(p));
  }
  std::size_t counter = 0;
  for (int k = 0; k < 100; ++k) {
    auto m = random_linear(rng, {}, uniform(rng, 2, 16), counter);
    r.check(linear_equal_betaeta(sharp(flat_sym(m)), m), "linear round trip: " + print(m));
  }
  if (proof) r.note("associativity in " + std::to_string(proof->steps.size()) + " steps");
  return r.done();
}

// ------------------------------------------------------------------ 9
Outcome braided_axioms_check() {
  Report r;
  for (const auto& a : braided_axioms()) r.check(comb_equal(a.lhs, a.rhs), "axiom " + a.name);
  auto block = [](const std::string& p, std::size_t n) {
    Term t = Term::var(p + "1");
    for (std::size_t i = 2; i <= n; ++i) t = Term::app(t, Term::var(p + std::to_string(i)));
    return t;
  };
  for (std::size_t l = 1; l <= 2; ++l)
    for (std::size_t m = 1; m <= 2; ++m)
      for (std::size_t n = 1; n <= 2; ++n) {
        auto L = block("l", l), M = block("m", m), N = block("n", n);
        auto b = block_braid(l, m, n);
        r.check(b.length() == m * n && exponent_sum(b) == static_cast<long>(m * n), "block braid shape");
        r.check(equal_betaeta(apply(c_plus_term(), {L, M, N}), Term::braid(b, apply(L, {N, M}))),
                "axiom (C) family l,m,n = " + std::to_string(l) + std::to_string(m) + std::to_string(n));
      }
  r.note("3 axioms, 8 block cases");
  return r.done();
}

// Closed forms of the two braided C denotations at bound h. The exponent is
// the valuation-preserving one.
Relation c_closed_form(TreeStore& s, bool plus, int h) {
  Relation rel;
  rel.in_arity = 0;
  const auto& G = *s.group();
  for (auto x : s.carrier(0))
    for (auto y : s.carrier(0))
      for (auto z : s.carrier(0)) {
        TreeId t;
        if (plus)
          t = s.node(s.node(s.node(z, s.action(G.inv(s.valuation(x)), y)), x), s.node(s.node(z, x), y));
        else
          t = s.node(s.node(s.node(z, y), s.action(s.valuation(y), x)), s.node(s.node(z, x), y));
        if (s.height(t) <= h) rel.rows.push_back({t});
      }
  rel.normalize();
  return rel;
}

// ------------------------------------------------------------------ 10
Outcome tree_model() {
  Report r;
  auto t0 = std::chrono::steady_clock::now();
  const InterpretOptions opts{1, 3};
  std::size_t rows3 = 0;
  for (auto name : {"z2", "s3"}) {
    TreeStore s(group_of_name(name), Model::T);
    for (bool plus : {true, false}) {
      auto term = plus ? c_plus_term() : c_minus_term();
      auto at1 = interpret(term, s, opts);
      r.check(at1 == c_closed_form(s, plus, opts.h_out), std::string(name) + ": C closed form at h_out");
      // The sets only become nonempty once the output bound admits height 3.
      auto at3 = interpret(term, s, {3, 3});
      r.check(at3 == c_closed_form(s, plus, 3), std::string(name) + ": C closed form at height 3");
      r.check(!at3.rows.empty(), "empty C denotation");
      rows3 += at3.rows.size();
      r.check(!check_morphism(s, at1).has_value() && !check_morphism(s, at3).has_value(), "C morphism");
    }
    auto c = denot_equal(P("\\y. x y"), P("x"), s, opts);
    r.check(c.verdict == Verdict::Differ, std::string(name) + ": eta not refuted");
    r.check(c.witness && s.is_leaf(c.witness->front()), std::string(name) + ": eta witness not a leaf");
    r.check(!check_morphism(s, c.first).has_value() && !check_morphism(s, c.second).has_value(), "eta morphism");
  }
  double dt = seconds_since(t0);
  r.check(dt < kTreeModelSeconds, "took " + fmt(dt) + " s");
  r.note(std::to_string(rows3) + " closed-form rows at height 3, eta witness is a leaf, " + fmt(dt) + " s");
  return r.done();
}

// ------------------------------------------------------------------ 11
Outcome d_model() {
  Report r;
  for (auto name : {"z2", "s3"}) {
    auto G = group_of_name(name);
    TreeStore d(G, Model::D);
    // Largest carrier under the cap, at most the internal bound.
    int h = 3;
    while (d.carrier_size(h) > static_cast<double>(TreeStore::kCarrierCap)) --h;
    for (auto t : d.carrier(h)) {
      auto [a, b] = psi_D(d, t);
      r.check(phi_D(d, a, b) == t, "phi(psi(t)) != t");
      r.check(dual_D(d, dual_D(d, t)) == t, "dual not an involution");
      r.check(valuation(d, dual_D(d, t)) == G->inv(valuation(d, t)), "dual does not invert valuation");
    }
    for (auto x : d.carrier(h - 1))
      for (auto y : d.carrier(h - 1)) r.check(psi_D(d, phi_D(d, x, y)) == std::make_pair(x, y), "psi(phi(x,y))");
    auto c = denot_equal(P("\\y. x y"), P("x"), d, {1, 3});
    r.check(c.verdict == Verdict::Agree, std::string(name) + ": eta not valid");
    r.note(std::string(name) + " carrier h=" + std::to_string(h) + " (" + std::to_string(d.carrier(h).size()) + ")");
  }
  return r.done();
}

// ------------------------------------------------------------------ 12
Outcome cross_validation() {
  Report r;
  Rng rng(kSeed + 12);
  TermGen g(rng, 0.3, 0.0);
  TreeStore s(group_of_name("z2"), Model::T);
  int agree = 0, inconclusive = 0, done = 0;
  while (done < 50) {
    // A closed redex (\x.P) Q placed in a small context.
    auto x = Variable::fresh("x");
    auto body = g.gen({x}, uniform(rng, 1, 5));
    auto q = g.closed(uniform(rng, 2, 5));
    auto redex = Term::app(Term::lam(x, body), q);
    auto contractum = subst(body, x, q);
    auto a = Variable::free("a");
    std::function<Term(const Term&)> wrap;
    switch (uniform(rng, 0, 3)) {
      case 0: wrap = [](const Term& t) { return t; }; break;
      case 1: wrap = [&](const Term& t) { return Term::app(Term::var(a), t); }; break;
      case 2: wrap = [&](const Term& t) { return Term::app(t, Term::var(a)); }; break;
      default: {
        wrap = [&](const Term& t) {
          auto y = Variable::fresh("y");
          return Term::lam(y, Term::app(Term::var(y), t));
        };
      }
    }
    auto m = wrap(redex), n = wrap(contractum);
    if (!check(m).ok) continue;
    ++done;
    auto c = denot_equal(m, n, s, {1, 3});
    if (c.verdict == Verdict::Agree) ++agree;
    if (c.verdict == Verdict::BoundaryInconclusive) ++inconclusive;
    r.check(c.verdict != Verdict::Differ, "differ on " + print(m) + " vs " + print(n));
  }
  r.note(std::to_string(agree) + " agree, " + std::to_string(inconclusive) + " inconclusive");
  return r.done();
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"braid engine", braid_engine},
      {"substitution map", substitution_map},
      {"context coherence", context_coherence},
      {"normalization", normalization},
      {"decision procedure goldens", decision_goldens},
      {"combinatory completeness", completeness},
      {"ceiling laws", ceiling_laws},
      {"BCI axiomatization", bci_axiomatization},
      {"braided Reidemeister / axiom (C)", braided_axioms_check},
      {"tree model", tree_model},
      {"extensional model", d_model},
      {"beta cross-validation", cross_validation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
