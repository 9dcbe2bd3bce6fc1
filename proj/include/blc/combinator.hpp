#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blc/braid.hpp"
#include "blc/term.hpp"

namespace blc {

class CombError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Braided: B, C+, C-, I. Symmetric: B, C, I.
enum class Flavour { Braided, Symmetric };

/// Applicative term over the basis constants and variables.
class CombTerm {
 public:
  enum class Kind { B, C, CPlus, CMinus, I, Var, App };

  static CombTerm constant(Kind k);
  static CombTerm B() { return constant(Kind::B); }
  static CombTerm C() { return constant(Kind::C); }
  static CombTerm CPlus() { return constant(Kind::CPlus); }
  static CombTerm CMinus() { return constant(Kind::CMinus); }
  static CombTerm I() { return constant(Kind::I); }
  static CombTerm var(std::string name);
  static CombTerm app(CombTerm f, CombTerm a);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_constant() const { return !is_var() && !is_app(); }
  const std::string& name() const;
  const CombTerm& fun() const;
  const CombTerm& arg() const;

  /// Constants and variables.
  std::size_t leaves() const;

  friend bool operator==(const CombTerm& a, const CombTerm& b);

 private:
  struct Node;
  explicit CombTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Left-nested application.
CombTerm capply(CombTerm f, const std::vector<CombTerm>& args);

CombTerm parse_comb(std::string_view text);
std::string print(const CombTerm& p);

/// Variables in left-to-right order.
std::vector<std::string> comb_vars(const CombTerm& p);
bool comb_closed(const CombTerm& p);

/// Flavour determined by the constants present; nullopt if only B and I
/// occur. Throws CombError when C is mixed with C+ or C-.
std::optional<Flavour> flavour_of(const CombTerm& p);

/// \f x_{s(1)} ... x_{s(n)}. [id_1 (x) s](f x_1 ... x_n)
Term ceiling(const BraidWord& s);

/// e -> I, s_i^(+-1) -> B^(i-1) C^(+-), a word -> B c1 (B c2 (... cn)).
CombTerm ceiling_comb(const BraidWord& s);

/// Bracket abstraction. Throws CombError unless x occurs exactly once.
CombTerm lambda_star(const std::string& x, const CombTerm& p, Flavour flavour);

/// Braided translation of a well-formed braided term.
CombTerm flat(const Term& m);
/// Symmetric translation of a braid-free linear term.
CombTerm flat_sym(const Term& m);

/// Expands constants into lambda terms. C+ / C- are the braided C
/// combinators; C is the plain exchange combinator.
Term sharp(const CombTerm& p);

/// The C+ and C- lambda terms.
Term c_plus_term();
Term c_minus_term();

struct Axiom {
  std::string name;
  CombTerm lhs;
  CombTerm rhs;
};

/// The complete BCI axiomatization; L, M, N are pattern variables.
const std::vector<Axiom>& bci_axioms();
/// Braided Reidemeister II (both pairings) and III.
const std::vector<Axiom>& braided_axioms();

/// Braid of the braided C-family equation C+ L M N = [block](L N M) where
/// L, M, N have l, m, n free variables: the n-block crosses over the m-block.
BraidWord block_braid(std::size_t l, std::size_t m, std::size_t n);

struct ProofStep {
  std::string axiom;
  bool left_to_right = true;
  std::vector<int> position;  // 0 = fun, 1 = arg
  CombTerm result;
};

struct Proof {
  CombTerm start;
  std::vector<ProofStep> steps;
};

struct ProverLimits {
  std::size_t max_leaves = 40;
  std::size_t max_nodes = 400000;
};

/// Bounded bidirectional breadth-first search over the BCI axioms used as
/// rewrite rules in both directions under any context. The (I) row is used
/// left to right only. nullopt means "not found", which is inconclusive.
std::optional<Proof> bci_prover(const CombTerm& p, const CombTerm& q, std::size_t depth,
                                const ProverLimits& limits = {});

/// Applies one rewrite step; nullopt if the axiom does not match there.
std::optional<CombTerm> rewrite_at(const CombTerm& t, const Axiom& axiom, bool left_to_right,
                                   const std::vector<int>& position);

/// Replays a proof step by step; true iff every step is a valid rewrite and
/// the final term is `goal`.
bool verify_proof(const Proof& proof, const CombTerm& goal);

/// Equality via the lambda calculus: beta-eta equality of the sharp images
/// (plain linear calculus for the symmetric flavour).
bool comb_equal(const CombTerm& p, const CombTerm& q);

}  // namespace blc
