#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "blc/term.hpp"

namespace blc {

/// Structural canonical form. Braid nodes survive only at the root and as the
/// body of the innermost abstraction of each maximal lambda spine; every such
/// braid is one fused, freely reduced word. A spine braid lying entirely in
/// B_m (x) id_k is hoisted out.
Term canonicalize(const Term& m);

/// Decides structural congruence.
bool equal_str(const Term& m, const Term& n);

enum class Strategy {
  LeftmostOutermost,
  LeftmostInnermost,
  RightmostOutermost,
};

/// One beta step modulo structural congruence; nullopt iff beta-normal.
/// The result is canonical.
std::optional<Term> beta_step(const Term& m, Strategy strategy = Strategy::LeftmostOutermost);

/// Contracts an eta redex whose bound strand is disentangled from the rest;
/// nullopt if there is none.
std::optional<Term> eta_step(const Term& m);

enum class Mode { Beta, BetaEta };

struct NormalizeResult {
  Term term;
  std::size_t beta_steps = 0;
  std::size_t eta_steps = 0;
};

NormalizeResult normalize_counted(const Term& m, Mode mode = Mode::BetaEta,
                                  Strategy strategy = Strategy::LeftmostOutermost);
Term normalize(const Term& m, Mode mode = Mode::BetaEta);

/// Contexts agree and the beta-eta normal forms are structurally congruent.
/// Throws WellFormednessError on ill-formed input.
bool equal_betaeta(const Term& m, const Term& n);

// Plain linear lambda calculus (exchange allowed, no braid nodes).

std::optional<Term> linear_beta_step(const Term& m);
std::optional<Term> linear_eta_step(const Term& m);
Term linear_normalize(const Term& m, Mode mode = Mode::BetaEta);
/// Alpha-equality of beta-eta normal forms. Throws TermError if either side
/// contains a braid or is not linear.
bool linear_equal_betaeta(const Term& m, const Term& n);

}  // namespace blc
