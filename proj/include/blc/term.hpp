#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blc/braid.hpp"

namespace blc {

/// A variable identity. Free variables written in source text have uid 0 and
/// are identified by name; every binder gets a fresh nonzero uid, so bound
/// variables never collide regardless of their surface names.
struct Variable {
  std::string name;
  std::uint64_t uid = 0;

  static Variable free(std::string name) { return {std::move(name), 0}; }
  static Variable fresh(std::string name);

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.uid == b.uid && a.name == b.name;
  }
};

using VarList = std::vector<Variable>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Term is not a well-formed braided term (non-linear, non-planar, or a braid
/// whose strand count does not match its body).
class WellFormednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable braided lambda term. Copies share structure.
class Term {
 public:
  enum class Kind { Var, Lam, App, Braid };

  static Term var(Variable v);
  static Term var(std::string name) { return var(Variable::free(std::move(name))); }
  static Term lam(Variable binder, Term body);
  static Term app(Term fun, Term arg);
  static Term braid(BraidWord s, Term body);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_braid() const { return kind() == Kind::Braid; }

  /// Var: the variable. Lam: the binder.
  const Variable& variable() const;
  /// Lam / Braid body.
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;
  const BraidWord& word() const;

  /// Nodes other than braid nodes.
  std::size_t size() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Left-nested application f a1 ... an.
Term apply(Term f, const std::vector<Term>& args);
/// Nested abstraction \x1 ... xn. body
Term lambdas(const VarList& binders, Term body);

struct ParseOptions {
  /// Rename a binder that shadows an enclosing binder instead of failing.
  bool allow_shadowing = false;
};

struct ParseResult {
  Term term;
  std::vector<std::string> warnings;
};

/// Grammar: term := lam | app;  lam := '\' ident+ '.' term;  app := atom+;
/// atom := ident | '(' term ')' | '[' braid ']' atom.
Term parse_term(std::string_view text, const ParseOptions& options = {});
ParseResult parse_term_with_warnings(std::string_view text, const ParseOptions& options = {});

/// Canonical printing. Bound variables whose names would clash are renamed.
std::string print(const Term& t);

/// Free variables in the order fixed by the typing rules. Throws
/// WellFormednessError on non-linear or non-planar input.
VarList cxt(const Term& t);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> diagnostics;  // "path: message"
};

/// Well-formedness as a braided term; diagnostics carry subterm paths
/// (`f`/`a` for function/argument, `b` for a binder or braid body).
CheckResult check(const Term& t);

/// Linearity only (each variable used exactly once), exchange allowed.
CheckResult check_linear(const Term& t);

/// Free variables in left-to-right occurrence order (no planarity needed).
VarList free_vars(const Term& t);
bool occurs_free(const Term& t, const Variable& x);

/// Deletes every braid node.
Term erase(const Term& t);
bool braid_free(const Term& t);

/// Capture-free linear substitution t[x := n]; braids on the path are cabled.
Term subst(const Term& t, const Variable& x, const Term& n);

/// Alpha-equivalence with literal braid-word comparison.
bool alpha_equal(const Term& a, const Term& b);

/// Replaces every binder by a fresh copy (keeps surface names).
Term freshen(const Term& t);

}  // namespace blc
