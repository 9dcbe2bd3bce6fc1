#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blc {

/// Raised for malformed group names, tables, or mixed-group arithmetic.
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite group given by a dense multiplication table.
///
/// Elements are the indices 0..order-1. Tables are validated at construction
/// (closure, identity, inverses, associativity), so a constructed Group is
/// always a group. Instances are immutable and shared through
/// `std::shared_ptr<const Group>`.
class Group {
 public:
  using Index = std::uint32_t;

  static constexpr std::size_t kMaxOrder = 5040;

  /// Builds and validates a group from a row-major table (row i holds i*j).
  static std::shared_ptr<const Group> from_table(std::string name, std::size_t order,
                                                 std::vector<Index> table);

  /// Cyclic group of order n, elements are residues mod n.
  static std::shared_ptr<const Group> cyclic(std::size_t n);

  /// Symmetric group on n letters. Element 0 is the identity permutation.
  static std::shared_ptr<const Group> symmetric(std::size_t n);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Index identity() const { return identity_; }

  Index mul(Index a, Index b) const { return table_[a * order_ + b]; }
  Index inv(Index a) const { return inverse_[a]; }
  /// g h g^-1
  Index conj(Index g, Index h) const { return mul(mul(g, h), inv(g)); }

  bool is_abelian() const;

  /// Human-readable label of an element (cycle notation for symmetric groups).
  std::string label(Index a) const;

 private:
  Group() = default;
  void validate();

  std::string name_;
  std::size_t order_ = 0;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  Index identity_ = 0;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const Group>;

/// An element of a particular group. Arithmetic across groups throws.
class GroupElem {
 public:
  GroupElem(GroupPtr group, Group::Index index);

  const GroupPtr& group() const { return group_; }
  Group::Index index() const { return index_; }

  friend bool operator==(const GroupElem& a, const GroupElem& b) {
    return a.group_ == b.group_ && a.index_ == b.index_;
  }

 private:
  GroupPtr group_;
  Group::Index index_;
};

GroupElem mul(const GroupElem& a, const GroupElem& b);
GroupElem inv(const GroupElem& a);
GroupElem identity(const GroupPtr& group);

/// Resolves `z<n>` (cyclic) and `s<n>` (symmetric). Throws GroupError otherwise.
GroupPtr group_of_name(std::string_view name);

/// Reads the plain-text table format: first the order n, then n rows of n
/// indices where row i lists the products i*j.
GroupPtr read_group_table(std::istream& in, std::string name = "table");
GroupPtr load_group_file(const std::string& path);

}  // namespace blc
