#pragma once

// Random generators and independent oracles shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "blc/braid.hpp"
#include "blc/combinator.hpp"
#include "blc/term.hpp"

namespace blc::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------- braids

inline BraidWord random_braid(Rng& rng, std::size_t n, std::size_t max_len) {
  std::vector<Letter> ls;
  if (n >= 2) {
    auto len = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(max_len)));
    for (std::size_t k = 0; k < len; ++k)
      ls.push_back({uniform(rng, 1, static_cast<int>(n) - 1), coin(rng) ? 1 : -1});
  }
  return BraidWord(n, ls);
}

/// Free group word over x_1..x_n; letters are +-j.
using FreeWord = std::vector<int>;

inline void push_reduced(FreeWord& w, int a) {
  if (!w.empty() && w.back() == -a)
    w.pop_back();
  else
    w.push_back(a);
}

inline FreeWord free_inverse(const FreeWord& w) {
  FreeWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

/// Artin's faithful action of B_n on the free group F_n. The braid is
/// trivial iff every generator is fixed.
inline std::vector<FreeWord> artin_images(const BraidWord& s) {
  const int n = static_cast<int>(s.strands());
  std::vector<FreeWord> img(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) img[static_cast<std::size_t>(j)] = {j + 1};
  for (const auto& l : s.letters()) {
    const int i = l.index, k = l.index + 1;
    std::map<int, FreeWord> sub;
    if (l.sign > 0) {
      sub[i] = {i, k, -i};
      sub[k] = {i};
    } else {
      sub[i] = {k};
      sub[k] = {-k, i, k};
    }
    for (auto& w : img) {
      FreeWord out;
      for (int a : w) {
        auto it = sub.find(a > 0 ? a : -a);
        if (it == sub.end()) {
          push_reduced(out, a);
          continue;
        }
        const FreeWord piece = a > 0 ? it->second : free_inverse(it->second);
        for (int b : piece) push_reduced(out, b);
      }
      w = std::move(out);
    }
  }
  return img;
}

inline bool artin_trivial(const BraidWord& s) {
  auto img = artin_images(s);
  for (std::size_t j = 0; j < img.size(); ++j)
    if (img[j] != FreeWord{static_cast<int>(j) + 1}) return false;
  return true;
}

inline bool artin_equal(const BraidWord& s, const BraidWord& t) {
  return s.strands() == t.strands() && artin_images(s) == artin_images(t);
}

/// Follows each strand from its left end: result[k-1] is the right-end
/// position of the strand starting at k.
inline std::vector<int> trace_strands(const BraidWord& s) {
  const auto n = s.strands();
  std::vector<int> at(n);  // at[p] = strand currently at position p+1
  for (std::size_t p = 0; p < n; ++p) at[p] = static_cast<int>(p) + 1;
  for (const auto& l : s.letters()) std::swap(at[static_cast<std::size_t>(l.index) - 1], at[static_cast<std::size_t>(l.index)]);
  std::vector<int> out(n);
  for (std::size_t p = 0; p < n; ++p) out[static_cast<std::size_t>(at[p]) - 1] = static_cast<int>(p) + 1;
  return out;
}

/// One random application of a defining relation (either direction) or an
/// insertion of a cancelling pair. The braid is unchanged.
inline BraidWord relation_rewrite(Rng& rng, const BraidWord& s) {
  auto ls = s.letters();
  const int n = static_cast<int>(s.strands());
  if (n < 2) return s;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int kind = uniform(rng, 0, 3);
    if (kind == 0) {  // insert s_i^e s_i^-e
      int i = uniform(rng, 1, n - 1), e = coin(rng) ? 1 : -1;
      auto pos = ls.begin() + uniform(rng, 0, static_cast<int>(ls.size()));
      ls.insert(pos, {Letter{i, e}, Letter{i, -e}});
      return BraidWord(s.strands(), ls);
    }
    if (ls.size() < 2) continue;
    if (kind == 1) {  // delete a cancelling pair
      for (std::size_t p = 0; p + 1 < ls.size(); ++p)
        if (ls[p + 1] == ls[p].inverse()) {
          ls.erase(ls.begin() + static_cast<long>(p), ls.begin() + static_cast<long>(p) + 2);
          return BraidWord(s.strands(), ls);
        }
      continue;
    }
    if (kind == 2) {  // far commutation
      std::vector<std::size_t> cands;
      for (std::size_t p = 0; p + 1 < ls.size(); ++p)
        if (std::abs(ls[p].index - ls[p + 1].index) >= 2) cands.push_back(p);
      if (cands.empty()) continue;
      auto p = cands[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cands.size()) - 1))];
      std::swap(ls[p], ls[p + 1]);
      return BraidWord(s.strands(), ls);
    }
    // braid relation s_i s_j s_i = s_j s_i s_j (|i-j| = 1, same signs)
    std::vector<std::size_t> cands;
    for (std::size_t p = 0; p + 2 < ls.size(); ++p)
      if (ls[p] == ls[p + 2] && std::abs(ls[p].index - ls[p + 1].index) == 1 && ls[p].sign == ls[p + 1].sign)
        cands.push_back(p);
    if (cands.empty()) {
      // introduce one: insert (s_i s_j s_i)(s_j s_i s_j)^-1
      if (n < 3) continue;
      int i = uniform(rng, 1, n - 2), e = coin(rng) ? 1 : -1;
      std::vector<Letter> block{{i, e}, {i + 1, e}, {i, e}, {i + 1, -e}, {i, -e}, {i + 1, -e}};
      ls.insert(ls.begin() + uniform(rng, 0, static_cast<int>(ls.size())), block.begin(), block.end());
      return BraidWord(s.strands(), ls);
    }
    auto p = cands[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cands.size()) - 1))];
    Letter a = ls[p], b = ls[p + 1];
    ls[p] = b;
    ls[p + 1] = a;
    ls[p + 2] = b;
    return BraidWord(s.strands(), ls);
  }
  return s;
}

// ----------------------------------------------------------------- terms

/// Random well-formed braided term whose context is exactly `ctx`.
/// `budget` bounds the number of non-braid nodes roughly.
class TermGen {
 public:
  explicit TermGen(Rng& rng, double braid_p = 0.3, double redex_p = 0.35)
      : rng_(rng), braid_p_(braid_p), redex_p_(redex_p) {}

  Term closed(int budget) { return gen({}, budget); }

  Term gen(const VarList& ctx, int budget) {
    const int n = static_cast<int>(ctx.size());
    if (n == 1 && (budget <= 1 || coin(rng_, 0.3))) return Term::var(ctx[0]);
    if (n >= 2 && budget > 2 && coin(rng_, braid_p_)) {
      auto s = random_braid(rng_, ctx.size(), 3);
      auto p = permutation(s);
      VarList inner(ctx.size());
      for (int k = 1; k <= n; ++k) inner[static_cast<std::size_t>(p(k)) - 1] = ctx[static_cast<std::size_t>(k) - 1];
      return Term::braid(s, gen(inner, budget - 1));
    }
    const bool forced = n >= 2 && budget < 3;
    if (forced || (n >= 1 && budget >= 3 && coin(rng_, n >= 2 ? 0.7 : 0.4))) {
      const int cut = forced ? uniform(rng_, 1, n - 1) : uniform(rng_, 0, n);
      VarList left(ctx.begin(), ctx.begin() + cut), right(ctx.begin() + cut, ctx.end());
      int lb = std::max(1, (budget - 1) / 2), rb = std::max(1, budget - 1 - lb);
      if (left.empty() || right.empty()) lb = rb = std::max(1, (budget - 1) / 2);
      if (!forced && coin(rng_, redex_p_)) {
        auto z = Variable::fresh(next_name());
        VarList inner = left;
        inner.push_back(z);
        return Term::app(Term::lam(z, gen(inner, lb - 1)), gen(right, rb));
      }
      return Term::app(gen(left, lb), gen(right, rb));
    }
    auto z = Variable::fresh(next_name());
    VarList inner = ctx;
    inner.push_back(z);
    return Term::lam(z, gen(inner, budget - 1));
  }

 private:
  std::string next_name() {
    static const char* names[] = {"x", "y", "z", "u", "v", "w"};
    return names[counter_++ % 6];
  }
  Rng& rng_;
  double braid_p_, redex_p_;
  std::size_t counter_ = 0;
};

/// Random braid-free linear term with exchange allowed; free variables are
/// exactly `vars` in any order.
inline Term random_linear(Rng& rng, const VarList& vars, int budget, std::size_t& counter) {
  if (vars.size() == 1 && (budget <= 1 || coin(rng, 0.3))) return Term::var(vars[0]);
  const bool forced = vars.size() >= 2 && budget < 3;
  if (forced || (!vars.empty() && budget >= 3 && coin(rng, vars.size() >= 2 ? 0.7 : 0.4))) {
    VarList l, r;
    for (const auto& v : vars) (coin(rng) ? l : r).push_back(v);
    if (forced && (l.empty() || r.empty())) {
      l.assign(vars.begin(), vars.begin() + 1);
      r.assign(vars.begin() + 1, vars.end());
    }
    const int lb = std::max(1, (budget - 1) / 2);
    return Term::app(random_linear(rng, l, lb, counter), random_linear(rng, r, std::max(1, budget - 1 - lb), counter));
  }
  auto z = Variable::fresh("v" + std::to_string(counter++));
  VarList inner = vars;
  inner.insert(inner.begin() + uniform(rng, 0, static_cast<int>(vars.size())), z);
  return Term::lam(z, random_linear(rng, inner, budget - 1, counter));
}

/// Random applicative combination of constants and the given variables (each
/// used once, in order). `braided` selects C+/C- over C.
inline CombTerm random_comb(Rng& rng, int leaves, bool braided, std::vector<std::string> vars = {}) {
  std::vector<CombTerm> atoms;
  for (auto& v : vars) atoms.push_back(CombTerm::var(v));
  while (static_cast<int>(atoms.size()) < leaves) {
    int k = uniform(rng, 0, 2);
    CombTerm c = k == 0 ? CombTerm::B() : k == 1 ? (braided ? (coin(rng) ? CombTerm::CPlus() : CombTerm::CMinus()) : CombTerm::C()) : CombTerm::I();
    atoms.insert(atoms.begin() + uniform(rng, 0, static_cast<int>(atoms.size())), c);
  }
  // Random binary bracketing that keeps the leaf order.
  while (atoms.size() > 1) {
    auto p = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(atoms.size()) - 2));
    atoms[p] = CombTerm::app(atoms[p], atoms[p + 1]);
    atoms.erase(atoms.begin() + static_cast<long>(p) + 1);
  }
  return atoms.front();
}

// ------------------------------------------------- structural congruence

/// A random instance of one structural axiom as (lhs, rhs). `which` picks
/// id, comp, app or abs.
struct AxiomInstance {
  Term lhs, rhs;
};

inline AxiomInstance structural_instance(Rng& rng, int which) {
  TermGen g(rng, 0.2, 0.2);
  auto fresh_ctx = [&](std::size_t n) {
    VarList v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Variable::free("a" + std::to_string(i)));
    return v;
  };
  switch (which) {
    case 0: {  // [id_n]M = M
      auto m = g.gen(fresh_ctx(static_cast<std::size_t>(uniform(rng, 0, 4))), 8);
      auto n = cxt(m).size();
      return {Term::braid(BraidWord::identity(n), m), m};
    }
    case 1: {  // [s]([t]M) = [st]M
      auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
      auto m = g.gen(fresh_ctx(n), 8);
      auto s = random_braid(rng, n, 4), t = random_braid(rng, n, 4);
      return {Term::braid(s, Term::braid(t, m)), Term::braid(compose(s, t), m)};
    }
    case 2: {  // ([s]M)([t]N) = [s (x) t](M N)
      auto n1 = static_cast<std::size_t>(uniform(rng, 1, 3)), n2 = static_cast<std::size_t>(uniform(rng, 1, 3));
      VarList c1, c2;
      for (std::size_t i = 0; i < n1; ++i) c1.push_back(Variable::free("p" + std::to_string(i)));
      for (std::size_t i = 0; i < n2; ++i) c2.push_back(Variable::free("q" + std::to_string(i)));
      auto m = g.gen(c1, 6), n = g.gen(c2, 6);
      auto s = random_braid(rng, n1, 3), t = random_braid(rng, n2, 3);
      return {Term::app(Term::braid(s, m), Term::braid(t, n)), Term::braid(tensor(s, t), Term::app(m, n))};
    }
    default: {  // \x.[s (x) id_1]M = [s](\x.M)
      auto n = static_cast<std::size_t>(uniform(rng, 1, 3));
      auto ctx = fresh_ctx(n);
      auto x = Variable::fresh("x");
      auto inner = ctx;
      inner.push_back(x);
      auto m = g.gen(inner, 8);
      auto s = random_braid(rng, n, 4);
      return {Term::lam(x, Term::braid(tensor(s, BraidWord::identity(1)), m)), Term::braid(s, Term::lam(x, m))};
    }
  }
}

inline std::vector<std::string> names_of(const VarList& vs) {
  std::vector<std::string> r;
  for (const auto& v : vs) r.push_back(v.name);
  return r;
}

}  // namespace blc::testing
