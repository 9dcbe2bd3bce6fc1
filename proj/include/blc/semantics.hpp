#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "blc/braid.hpp"
#include "blc/group.hpp"
#include "blc/term.hpp"

namespace blc {

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { T, D };

const char* model_name(Model m);

/// Element handle inside a TreeStore.
using TreeId = std::uint32_t;

/// Hash-consed G-labelled binary trees. Node(x, y) is x -o y. In the D model
/// every tree is kept in canonical form: Node(Leaf g, Leaf e) is collapsed to
/// Leaf g.
///
/// Not thread-safe; build carriers before sharing.
class TreeStore {
 public:
  static constexpr std::size_t kCarrierCap = 1000000;

  TreeStore(GroupPtr group, Model model);

  const GroupPtr& group() const { return group_; }
  Model model() const { return model_; }

  TreeId leaf(Group::Index g) const { return static_cast<TreeId>(g); }
  bool is_leaf(TreeId t) const { return t < group_->order(); }
  Group::Index label(TreeId t) const;
  TreeId left(TreeId t) const;
  TreeId right(TreeId t) const;
  int height(TreeId t) const { return nodes_[t].height; }

  /// Raw node, no canonicalization.
  TreeId node(TreeId l, TreeId r);

  /// Model-specific pairing and unpairing. T: phi = Node, psi undefined on
  /// leaves. D: phi canonicalizes, psi(Leaf g) = (Leaf g, Leaf e).
  TreeId phi(TreeId l, TreeId r);
  std::optional<std::pair<TreeId, TreeId>> psi(TreeId t) const;

  Group::Index valuation(TreeId t) const;
  TreeId action(Group::Index g, TreeId t);
  /// D only: swap the components of psi and pair again.
  TreeId dual(TreeId t);

  /// All elements of height <= h, sorted by id. Throws CapError above
  /// kCarrierCap elements.
  const std::vector<TreeId>& carrier(int h);
  /// |carrier(h)| without building it (may be huge).
  double carrier_size(int h) const;

  /// `g` / `(t -o t)`; leaves print as element indices.
  std::string to_string(TreeId t) const;

 private:
  struct Entry {
    TreeId l = 0, r = 0;
    int height = 0;
  };
  GroupPtr group_;
  Model model_;
  std::vector<Entry> nodes_;
  std::unordered_map<std::uint64_t, TreeId> intern_;
  std::vector<std::vector<TreeId>> carriers_;
};

// Free-function forms of the store operations.
Group::Index valuation(const TreeStore& s, TreeId t);
TreeId action(TreeStore& s, Group::Index g, TreeId t);
TreeId phi_T(TreeStore& s, TreeId x, TreeId y);
std::optional<std::pair<TreeId, TreeId>> psi_T(const TreeStore& s, TreeId t);
TreeId phi_D(TreeStore& s, TreeId x, TreeId y);
std::pair<TreeId, TreeId> psi_D(const TreeStore& s, TreeId t);
TreeId dual_D(TreeStore& s, TreeId t);
std::vector<TreeId> enumerate(TreeStore& s, int h);

/// A crossed G-set over a bounded carrier; `dual` inverts the valuation.
struct CrossedGSet {
  TreeStore* store = nullptr;
  int bound = 0;
  bool dual = false;

  const std::vector<TreeId>& elements() const { return store->carrier(bound); }
  Group::Index valuation(TreeId t) const;
  TreeId act(Group::Index g, TreeId t) const { return store->action(g, t); }
};

/// Checks |g.x| = g|x|g^-1 for every element and every g. Returns the first
/// failing description.
std::optional<std::string> check_crossed_law(const CrossedGSet& x);

/// Finite relation between tuples: each row lists in_arity inputs followed by
/// out_arity outputs. Rows are kept sorted and unique.
struct Relation {
  std::size_t in_arity = 0;
  std::size_t out_arity = 1;
  std::vector<std::vector<TreeId>> rows;
  // Bound metadata.
  Model model = Model::T;
  std::string group;
  int h_out = 0;
  int h_int = 0;

  void normalize();
  bool contains(const std::vector<TreeId>& row) const;
  friend bool operator==(const Relation& a, const Relation& b) { return a.rows == b.rows; }
};

/// Valuation preservation and closure under the diagonal action. Inputs and
/// outputs may carry dual flags (valuation inverted).
std::optional<std::string> check_morphism(TreeStore& s, const Relation& r,
                                          const std::vector<bool>& dual_inputs = {},
                                          const std::vector<bool>& dual_outputs = {});

/// The positive crossing {((a,b),(|a|.b, a))} over carrier(h)^2 and the
/// negative crossing {((a,b),(b, |b|^-1.a))}.
Relation braiding(TreeStore& s, int h);
Relation braiding_inverse(TreeStore& s, int h);
/// Relation of a braid word on carrier(h)^n, letter by letter.
Relation braid_relation(TreeStore& s, const BraidWord& w, int h);
/// Applies the braid bijection to one tuple (left end -> right end).
std::vector<TreeId> braid_apply(TreeStore& s, const BraidWord& w, std::vector<TreeId> tuple);
Relation compose(const Relation& a, const Relation& b);
Relation identity_relation(TreeStore& s, std::size_t n, int h);

struct InterpretOptions {
  int h_out = 1;  // bound on inputs and outputs of the result
  int h_int = 3;  // bound on existential application witnesses
};

/// Bounded denotation: all tuples with components of height <= h_out that
/// are derivable with application witnesses of height <= h_int. Inputs are
/// ordered as cxt(m).
Relation interpret(const Term& m, TreeStore& store, const InterpretOptions& options);

enum class Verdict { Agree, Differ, BoundaryInconclusive };
const char* verdict_name(Verdict v);

struct DenotComparison {
  Verdict verdict = Verdict::Agree;
  /// A row in exactly one of the two denotations; `in_first` says which.
  std::optional<std::vector<TreeId>> witness;
  bool in_first = false;
  Relation first, second;
};

/// Compares at h_int; on a mismatch recomputes at h_int + 1 and reports
/// Differ only when neither side changed.
DenotComparison denot_equal(const Term& m, const Term& n, TreeStore& store, const InterpretOptions& options);

/// One `(t1, ..., tn) -> t` line per row, sorted.
std::string dump_text(const TreeStore& s, const Relation& r);
/// JSON object with bound metadata and the rows as printed trees.
std::string dump_json(const TreeStore& s, const Relation& r);

}  // namespace blc
