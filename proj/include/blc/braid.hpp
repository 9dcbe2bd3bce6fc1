#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace blc {

class BraidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One Artin generator: sigma_index^sign, index is 1-based.
struct Letter {
  int index = 1;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {index, -sign}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A permutation of {1..n}. `(*this)(i)` is the image of i.
class Perm {
 public:
  explicit Perm(std::size_t n = 0);
  static Perm from_images(std::vector<int> images_one_based);

  std::size_t size() const { return image_.size(); }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i - 1)] + 1; }
  /// Preimage of i.
  int inverse_at(int i) const;
  bool is_identity() const;

  /// Image list, 1-based.
  std::vector<int> images() const;

  void swap_images_at(std::size_t pos0);  // internal helper for letter application

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<int> image_;  // 0-based
};

/// An element of the braid group B_n written as a word in Artin generators.
///
/// Strand 1 is the first variable of a context. Words compose left to right:
/// the diagram of `compose(s, t)` is the diagram of s followed by that of t,
/// and the permutation of a word sends the left end of each strand to its
/// right end.
class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(std::size_t strands) : strands_(strands) {}
  BraidWord(std::size_t strands, std::vector<Letter> letters);

  static BraidWord identity(std::size_t strands) { return BraidWord(strands); }
  static BraidWord generator(std::size_t strands, int index, int sign = 1);

  std::size_t strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Literal word equality (not group equality; see `equal`).
  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::size_t strands_ = 0;
  std::vector<Letter> letters_;
};

BraidWord compose(const BraidWord& s, const BraidWord& t);
BraidWord tensor(const BraidWord& s, const BraidWord& t);
BraidWord inverse(const BraidWord& s);
/// s repeated k times (k >= 0).
BraidWord power(const BraidWord& s, std::size_t k);

Perm permutation(const BraidWord& s);

/// Cancels adjacent s_j s_j^-1 pairs until none remain.
BraidWord free_reduce(const BraidWord& s);

/// Dehornoy handle reduction to a handle-free (sigma-reduced) word. The
/// result represents the same braid.
BraidWord handle_reduce(const BraidWord& s);

/// True iff s is the identity of B_n.
bool is_trivial(const BraidWord& s);
bool equal(const BraidWord& s, const BraidWord& t);

/// Exponent sum of the word; a homomorphism B_n -> Z.
long exponent_sum(const BraidWord& s);

/// Cabling substitution B_n -> B_{n+m-1}: strand i (counted at the left end
/// of the word) becomes m parallel strands. m = 0 deletes the strand.
BraidWord substitute(const BraidWord& s, std::size_t i, std::size_t m);

/// Removes strands whose left ends are m+1..n. Requires the permutation to
/// map {m+1..n} onto itself. Result lives in B_m.
BraidWord delete_strands(const BraidWord& s, std::size_t keep_prefix);

/// Decides s in B_m (x) id_{n-m}.
bool parabolic_member(const BraidWord& s, std::size_t m);

/// Crossing-by-crossing text diagram, strand 1 at the bottom.
std::string render_ascii(const BraidWord& s);

/// Text syntax: `s<j>` / `s<j>'` letters, `e` for the empty word, optional
/// trailing `@<n>` fixing the strand count. Without `@`, the strand count is
/// `default_strands` if given, else one more than the largest index.
BraidWord parse_braid(std::string_view text, std::optional<std::size_t> default_strands = std::nullopt);

/// Whether `text` carries an explicit `@<n>` suffix.
bool has_explicit_strands(std::string_view text);

/// Canonical text form, always with the `@n` suffix.
std::string to_string(const BraidWord& s);
/// Letters only (`s1 s2'` or `e`).
std::string letters_to_string(const BraidWord& s);

}  // namespace blc
