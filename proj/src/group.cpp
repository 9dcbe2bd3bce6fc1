#include "blc/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace blc {

namespace {

// Exhaustive triple check below this order; Light's test over a generating
// set above it.
constexpr std::size_t kExhaustiveAssocOrder = 64;

std::vector<Group::Index> generating_set(std::size_t order, Group::Index identity,
                                         const std::vector<Group::Index>& table) {
  std::vector<Group::Index> gens;
  std::vector<char> in_span(order, 0);
  for (Group::Index a = 0; a < order; ++a) {
    if (in_span[a] || a == identity) continue;
    gens.push_back(a);
    // The monoid generated by gens is the subgroup they generate (finite group).
    std::fill(in_span.begin(), in_span.end(), 0);
    std::vector<Group::Index> span{identity};
    in_span[identity] = 1;
    for (std::size_t k = 0; k < span.size(); ++k) {
      for (auto g : gens) {
        auto p = table[span[k] * order + g];
        if (!in_span[p]) {
          in_span[p] = 1;
          span.push_back(p);
        }
      }
    }
  }
  return gens;
}

}  // namespace

std::shared_ptr<const Group> Group::from_table(std::string name, std::size_t order,
                                               std::vector<Index> table) {
  if (order == 0) throw GroupError("group order must be positive");
  if (order > kMaxOrder) {
    throw GroupError("group order " + std::to_string(order) + " exceeds cap " +
                     std::to_string(kMaxOrder));
  }
  if (table.size() != order * order) throw GroupError("table size does not match order");
  auto g = std::shared_ptr<Group>(new Group());
  g->name_ = std::move(name);
  g->order_ = order;
  g->table_ = std::move(table);
  g->validate();
  return g;
}

void Group::validate() {
  const auto n = order_;
  for (auto v : table_) {
    if (v >= n) throw GroupError("table entry out of range");
  }
  // Identity: the unique e with e*x = x*e = x.
  bool found = false;
  for (Index e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Index x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw GroupError("table has no two-sided identity");

  inverse_.assign(n, 0);
  for (Index a = 0; a < n; ++a) {
    bool has = false;
    for (Index b = 0; b < n; ++b) {
      if (mul(a, b) == identity_) {
        if (mul(b, a) != identity_) throw GroupError("inverse is not two-sided");
        inverse_[a] = b;
        has = true;
        break;
      }
    }
    if (!has) throw GroupError("element " + std::to_string(a) + " has no inverse");
  }

  if (n <= kExhaustiveAssocOrder) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw GroupError("table is not associative");
  } else {
    // Light's associativity test: it suffices to check (a g) c = a (g c) for g
    // ranging over a generating set.
    for (auto g : generating_set(n, identity_, table_))
      for (Index a = 0; a < n; ++a)
        for (Index c = 0; c < n; ++c)
          if (mul(mul(a, g), c) != mul(a, mul(g, c))) throw GroupError("table is not associative");
  }
}

bool Group::is_abelian() const {
  for (Index a = 0; a < order_; ++a)
    for (Index b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string Group::label(Index a) const {
  if (a < labels_.size()) return labels_[a];
  return std::to_string(a);
}

std::shared_ptr<const Group> Group::cyclic(std::size_t n) {
  if (n == 0) throw GroupError("cyclic group needs n >= 1");
  if (n > kMaxOrder) throw GroupError("cyclic group order exceeds cap");
  std::vector<Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Index>((a + b) % n);
  return from_table("z" + std::to_string(n), n, std::move(table));
}

std::shared_ptr<const Group> Group::symmetric(std::size_t n) {
  if (n == 0) throw GroupError("symmetric group needs n >= 1");
  std::size_t order = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    order *= k;
    if (order > kMaxOrder) throw GroupError("symmetric group order exceeds cap");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  // Lexicographic rank (Lehmer code) matches the next_permutation order.
  auto rank = [n](const std::vector<int>& q) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j) smaller += q[j] < q[i];
      r = r * (n - i) + smaller;
    }
    return static_cast<Index>(r);
  };

  std::vector<Index> table(order * order);
  std::vector<int> c(n);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      // (a*b)(i) = a(b(i))
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a * order + b] = rank(c);
    }
  }
  auto shared = from_table("s" + std::to_string(n), order, std::move(table));
  auto g = std::const_pointer_cast<Group>(shared);
  g->labels_.reserve(order);
  for (const auto& perm : perms) {
    // cycle notation, 1-based; identity prints as "()"
    std::string out;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i] || perm[i] == static_cast<int>(i)) continue;
      out += '(';
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = 1;
        if (!first) out += ' ';
        out += std::to_string(j + 1);
        first = false;
        j = static_cast<std::size_t>(perm[j]);
      }
      out += ')';
    }
    g->labels_.push_back(out.empty() ? "()" : out);
  }
  return shared;
}

GroupElem::GroupElem(GroupPtr group, Group::Index index) : group_(std::move(group)), index_(index) {
  if (!group_) throw GroupError("null group");
  if (index_ >= group_->order()) throw GroupError("element index out of range");
}

GroupElem mul(const GroupElem& a, const GroupElem& b) {
  if (a.group() != b.group()) throw GroupError("mul: elements of different groups");
  return GroupElem(a.group(), a.group()->mul(a.index(), b.index()));
}

GroupElem inv(const GroupElem& a) { return GroupElem(a.group(), a.group()->inv(a.index())); }

GroupElem identity(const GroupPtr& group) { return GroupElem(group, group->identity()); }

GroupPtr group_of_name(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'z' && name[0] != 's')) {
    throw GroupError("unknown group name '" + std::string(name) + "' (expected z<n> or s<n>)");
  }
  std::size_t n = 0;
  auto digits = name.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n == 0) {
    throw GroupError("unknown group name '" + std::string(name) + "'");
  }
  return name[0] == 'z' ? Group::cyclic(n) : Group::symmetric(n);
}

GroupPtr read_group_table(std::istream& in, std::string name) {
  long long order = 0;
  if (!(in >> order) || order <= 0) throw GroupError("group file: expected a positive order");
  if (static_cast<std::size_t>(order) > Group::kMaxOrder) throw GroupError("group file: order exceeds cap");
  const auto n = static_cast<std::size_t>(order);
  std::vector<Group::Index> table(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    long long v = 0;
    if (!(in >> v)) throw GroupError("group file: truncated table");
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw GroupError("group file: entry out of range");
    table[k] = static_cast<Group::Index>(v);
  }
  std::string extra;
  if (in >> extra) throw GroupError("group file: trailing data");
  return Group::from_table(std::move(name), n, std::move(table));
}

GroupPtr load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupError("cannot open group file '" + path + "'");
  return read_group_table(in, path);
}

}  // namespace blc
