#include "blc/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace blc {

Perm::Perm(std::size_t n) : image_(n) { std::iota(image_.begin(), image_.end(), 0); }

Perm Perm::from_images(std::vector<int> images_one_based) {
  Perm p(images_one_based.size());
  std::vector<char> seen(images_one_based.size(), 0);
  for (std::size_t k = 0; k < images_one_based.size(); ++k) {
    const int v = images_one_based[k] - 1;
    if (v < 0 || static_cast<std::size_t>(v) >= images_one_based.size() || seen[v]) {
      throw BraidError("not a permutation");
    }
    seen[v] = 1;
    p.image_[k] = v;
  }
  return p;
}

int Perm::inverse_at(int i) const {
  for (std::size_t k = 0; k < image_.size(); ++k)
    if (image_[k] == i - 1) return static_cast<int>(k) + 1;
  throw BraidError("permutation preimage out of range");
}

bool Perm::is_identity() const {
  for (std::size_t k = 0; k < image_.size(); ++k)
    if (image_[k] != static_cast<int>(k)) return false;
  return true;
}

std::vector<int> Perm::images() const {
  std::vector<int> out(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) out[k] = image_[k] + 1;
  return out;
}

void Perm::swap_images_at(std::size_t pos0) { std::swap(image_[pos0], image_[pos0 + 1]); }

BraidWord::BraidWord(std::size_t strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.index < 1 || static_cast<std::size_t>(l.index) >= strands_) {
      throw BraidError("generator s" + std::to_string(l.index) + " out of range for " +
                       std::to_string(strands_) + " strands");
    }
    if (l.sign != 1 && l.sign != -1) throw BraidError("generator sign must be +1 or -1");
  }
}

BraidWord BraidWord::generator(std::size_t strands, int index, int sign) {
  return BraidWord(strands, {Letter{index, sign}});
}

BraidWord compose(const BraidWord& s, const BraidWord& t) {
  if (s.strands() != t.strands()) {
    throw BraidError("compose: strand mismatch (" + std::to_string(s.strands()) + " vs " +
                     std::to_string(t.strands()) + ")");
  }
  auto letters = s.letters();
  letters.insert(letters.end(), t.letters().begin(), t.letters().end());
  return BraidWord(s.strands(), std::move(letters));
}

BraidWord tensor(const BraidWord& s, const BraidWord& t) {
  auto letters = s.letters();
  const int shift = static_cast<int>(s.strands());
  for (auto l : t.letters()) letters.push_back({l.index + shift, l.sign});
  return BraidWord(s.strands() + t.strands(), std::move(letters));
}

BraidWord inverse(const BraidWord& s) {
  std::vector<Letter> letters;
  letters.reserve(s.length());
  for (auto it = s.letters().rbegin(); it != s.letters().rend(); ++it) letters.push_back(it->inverse());
  return BraidWord(s.strands(), std::move(letters));
}

BraidWord power(const BraidWord& s, std::size_t k) {
  BraidWord out(s.strands());
  for (std::size_t i = 0; i < k; ++i) out = compose(out, s);
  return out;
}

Perm permutation(const BraidWord& s) {
  // at[p] = strand (left-end position) currently at position p
  std::vector<int> at(s.strands());
  std::iota(at.begin(), at.end(), 1);
  for (const auto& l : s.letters()) std::swap(at[l.index - 1], at[l.index]);
  std::vector<int> images(s.strands());
  for (std::size_t p = 0; p < at.size(); ++p) images[at[p] - 1] = static_cast<int>(p) + 1;
  return Perm::from_images(std::move(images));
}

BraidWord free_reduce(const BraidWord& s) {
  std::vector<Letter> out;
  for (const auto& l : s.letters()) {
    if (!out.empty() && out.back().index == l.index && out.back().sign == -l.sign) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return BraidWord(s.strands(), std::move(out));
}

namespace {

// Locates the handle whose closing letter comes first. Such a handle never
// contains a handle of higher index, so it is permitted.
bool find_handle(const std::vector<Letter>& w, std::size_t strands, std::size_t& open,
                 std::size_t& close) {
  std::vector<long> last(strands + 1, -1);
  for (std::size_t q = 0; q < w.size(); ++q) {
    const int j = w[q].index;
    for (std::size_t i = static_cast<std::size_t>(j) + 1; i < last.size(); ++i) last[i] = -1;
    const long p = last[j];
    if (p >= 0 && w[static_cast<std::size_t>(p)].sign == -w[q].sign) {
      open = static_cast<std::size_t>(p);
      close = q;
      return true;
    }
    last[j] = static_cast<long>(q);
  }
  return false;
}

}  // namespace

BraidWord handle_reduce(const BraidWord& s) {
  std::vector<Letter> w = free_reduce(s).letters();
  std::size_t open = 0, close = 0;
  while (find_handle(w, s.strands(), open, close)) {
    const int j = w[open].index;
    const int e = w[open].sign;
    std::vector<Letter> next;
    next.reserve(w.size() + 2 * (close - open));
    next.insert(next.end(), w.begin(), w.begin() + static_cast<long>(open));
    for (std::size_t k = open + 1; k < close; ++k) {
      const auto& l = w[k];
      if (l.index == j + 1) {
        // s_j^e s_{j+1}^d s_j^-e = s_{j+1}^-e s_j^d s_{j+1}^e
        next.push_back({j + 1, -e});
        next.push_back({j, l.sign});
        next.push_back({j + 1, e});
      } else {
        next.push_back(l);
      }
    }
    next.insert(next.end(), w.begin() + static_cast<long>(close) + 1, w.end());
    w = free_reduce(BraidWord(s.strands(), std::move(next))).letters();
  }
  return BraidWord(s.strands(), std::move(w));
}

bool is_trivial(const BraidWord& s) {
  if (s.empty()) return true;
  if (!permutation(s).is_identity()) return false;
  if (exponent_sum(s) != 0) return false;
  // A nonempty handle-free word is sigma-positive or sigma-negative, hence
  // never the identity.
  return handle_reduce(s).empty();
}

bool equal(const BraidWord& s, const BraidWord& t) {
  if (s.strands() != t.strands()) {
    throw BraidError("equal: strand mismatch (" + std::to_string(s.strands()) + " vs " +
                     std::to_string(t.strands()) + ")");
  }
  if (s == t) return true;
  return is_trivial(compose(s, inverse(t)));
}

long exponent_sum(const BraidWord& s) {
  long sum = 0;
  for (const auto& l : s.letters()) sum += l.sign;
  return sum;
}

BraidWord substitute(const BraidWord& s, std::size_t i, std::size_t m) {
  const std::size_t n = s.strands();
  if (i < 1 || i > n) {
    throw BraidError("substitute: strand " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  }
  const int mm = static_cast<int>(m);
  int pos = static_cast<int>(i);  // position of the cabled strand before the current letter
  std::vector<Letter> out;
  for (const auto& l : s.letters()) {
    const int j = l.index;
    const int e = l.sign;
    if (pos <= j - 1) {
      out.push_back({j + mm - 1, e});
    } else if (pos >= j + 2) {
      out.push_back({j, e});
    } else if (pos == j) {
      // The block crosses the strand at j+1, which ends up at position j.
      for (int k = j + mm - 1; k >= j; --k) out.push_back({k, e});
      pos = j + 1;
    } else {
      // pos == j+1: the strand at j crosses the whole block upward.
      for (int k = j; k <= j + mm - 1; ++k) out.push_back({k, e});
      pos = j;
    }
  }
  return BraidWord(n + m - 1, std::move(out));
}

BraidWord delete_strands(const BraidWord& s, std::size_t keep_prefix) {
  const std::size_t n = s.strands();
  const std::size_t m = keep_prefix;
  if (m > n) throw BraidError("delete_strands: keep_prefix exceeds strand count");
  const auto p = permutation(s);
  for (std::size_t k = m + 1; k <= n; ++k) {
    if (static_cast<std::size_t>(p(static_cast<int>(k))) <= m) {
      throw BraidError("delete_strands: permutation does not preserve the deleted strands");
    }
  }
  std::vector<std::size_t> at(n);
  std::iota(at.begin(), at.end(), std::size_t{1});
  std::vector<Letter> out;
  for (const auto& l : s.letters()) {
    const auto a = at[l.index - 1];
    const auto b = at[l.index];
    if (a <= m && b <= m) {
      int rank = 0;
      for (int q = 0; q < l.index - 1; ++q) rank += at[q] <= m;
      out.push_back({rank + 1, l.sign});
    }
    std::swap(at[l.index - 1], at[l.index]);
  }
  return BraidWord(m, std::move(out));
}

bool parabolic_member(const BraidWord& s, std::size_t m) {
  const std::size_t n = s.strands();
  if (m > n) throw BraidError("parabolic_member: m exceeds strand count");
  if (m == n) return true;
  const auto p = permutation(s);
  for (std::size_t k = m + 1; k <= n; ++k)
    if (p(static_cast<int>(k)) != static_cast<int>(k)) return false;
  const auto head = delete_strands(s, m);
  return equal(s, tensor(head, BraidWord::identity(n - m)));
}

std::string render_ascii(const BraidWord& s) {
  const std::size_t n = s.strands();
  if (n == 0) return "(no strands)\n";
  // Row 2*(n-1) is strand 1; odd rows are gaps between adjacent strands.
  const std::size_t rows = 2 * n - 1;
  std::vector<std::string> lines(rows);
  auto row_of = [&](std::size_t strand) { return 2 * (n - strand); };
  const std::size_t label_width = std::to_string(n).size();
  for (std::size_t r = 0; r < rows; ++r) {
    if (r % 2 == 0) {
      auto label = std::to_string(n - r / 2);
      lines[r] = std::string(label_width - label.size(), ' ') + label + " --";
    } else {
      lines[r] = std::string(label_width + 3, ' ');
    }
  }
  for (const auto& l : s.letters()) {
    const std::size_t lower = row_of(static_cast<std::size_t>(l.index));
    const std::size_t upper = lower - 2;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == upper) {
        lines[r] += "\\ /";
      } else if (r == lower) {
        lines[r] += "/ \\";
      } else if (r == lower - 1) {
        // Positive crossing: the strand rising from `lower` passes over.
        lines[r] += l.sign > 0 ? " / " : " \\ ";
      } else if (r % 2 == 0) {
        lines[r] += "---";
      } else {
        lines[r] += "   ";
      }
      lines[r] += r % 2 == 0 ? "--" : "  ";
    }
  }
  std::string out;
  for (auto& line : lines) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

namespace {

std::size_t parse_count(std::string_view digits, std::string_view token) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw BraidError("malformed braid token '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool has_explicit_strands(std::string_view text) { return text.find('@') != std::string_view::npos; }

BraidWord parse_braid(std::string_view text, std::optional<std::size_t> default_strands) {
  std::vector<Letter> letters;
  std::optional<std::size_t> strands;
  bool saw_e = false;
  for (auto token : split_ws(text)) {
    if (strands) throw BraidError("braid: tokens after '@n' suffix");
    if (token == "e") {
      saw_e = true;
    } else if (token.front() == '@') {
      strands = parse_count(token.substr(1), token);
    } else if (token.front() == 's') {
      auto body = token.substr(1);
      int sign = 1;
      if (!body.empty() && body.back() == '\'') {
        sign = -1;
        body.remove_suffix(1);
      }
      auto idx = parse_count(body, token);
      if (idx == 0) throw BraidError("braid: generator index must be >= 1");
      letters.push_back({static_cast<int>(idx), sign});
    } else {
      throw BraidError("malformed braid token '" + std::string(token) + "'");
    }
  }
  if (saw_e && !letters.empty()) throw BraidError("braid: 'e' cannot be mixed with generators");
  if (!saw_e && letters.empty() && !strands) throw BraidError("braid: empty word (write 'e')");
  std::size_t needed = 0;
  for (const auto& l : letters) needed = std::max(needed, static_cast<std::size_t>(l.index) + 1);
  std::size_t n = strands ? *strands : default_strands ? *default_strands : std::max<std::size_t>(needed, 1);
  return BraidWord(n, std::move(letters));
}

std::string letters_to_string(const BraidWord& s) {
  if (s.empty()) return "e";
  std::string out;
  for (const auto& l : s.letters()) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(l.index);
    if (l.sign < 0) out += '\'';
  }
  return out;
}

std::string to_string(const BraidWord& s) { return letters_to_string(s) + " @" + std::to_string(s.strands()); }

}  // namespace blc
