#include "blc/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "json.hpp"

namespace blc {

const char* model_name(Model m) { return m == Model::T ? "T" : "D"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Agree:
      return "agree";
    case Verdict::Differ:
      return "differ";
    case Verdict::BoundaryInconclusive:
      return "boundary-inconclusive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// TreeStore

TreeStore::TreeStore(GroupPtr group, Model model) : group_(std::move(group)), model_(model) {
  if (!group_) throw GroupError("null group");
  nodes_.resize(group_->order());
}

Group::Index TreeStore::label(TreeId t) const {
  if (!is_leaf(t)) throw std::invalid_argument("label(): not a leaf");
  return static_cast<Group::Index>(t);
}

TreeId TreeStore::left(TreeId t) const {
  if (is_leaf(t)) throw std::invalid_argument("left(): leaf");
  return nodes_[t].l;
}

TreeId TreeStore::right(TreeId t) const {
  if (is_leaf(t)) throw std::invalid_argument("right(): leaf");
  return nodes_[t].r;
}

TreeId TreeStore::node(TreeId l, TreeId r) {
  const std::uint64_t key = (static_cast<std::uint64_t>(l) << 32) | r;
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  const auto id = static_cast<TreeId>(nodes_.size());
  nodes_.push_back({l, r, 1 + std::max(nodes_[l].height, nodes_[r].height)});
  intern_.emplace(key, id);
  return id;
}

TreeId TreeStore::phi(TreeId l, TreeId r) {
  if (model_ == Model::D && is_leaf(l) && r == leaf(group_->identity())) return l;
  return node(l, r);
}

std::optional<std::pair<TreeId, TreeId>> TreeStore::psi(TreeId t) const {
  if (!is_leaf(t)) return std::make_pair(nodes_[t].l, nodes_[t].r);
  if (model_ == Model::D) return std::make_pair(t, leaf(group_->identity()));
  return std::nullopt;
}

Group::Index TreeStore::valuation(TreeId t) const {
  if (is_leaf(t)) return label(t);
  return group_->mul(valuation(nodes_[t].l), group_->inv(valuation(nodes_[t].r)));
}

TreeId TreeStore::action(Group::Index g, TreeId t) {
  if (g == group_->identity()) return t;
  if (is_leaf(t)) return leaf(group_->conj(g, label(t)));
  const auto l = action(g, nodes_[t].l);
  const auto r = action(g, nodes_[t].r);
  // Conjugation fixes e, so D-canonical shape is preserved.
  return node(l, r);
}

TreeId TreeStore::dual(TreeId t) {
  if (model_ != Model::D) throw std::invalid_argument("dual(): D model only");
  auto [a, b] = *psi(t);
  return phi(b, a);
}

double TreeStore::carrier_size(int h) const {
  const double k = static_cast<double>(group_->order());
  double c = k;
  for (int i = 1; i <= h; ++i) c = model_ == Model::T ? k + c * c : c * c;
  return c;
}

const std::vector<TreeId>& TreeStore::carrier(int h) {
  if (h < 0) throw std::invalid_argument("carrier(): negative height");
  if (carrier_size(h) > static_cast<double>(kCarrierCap)) {
    throw CapError("carrier of height " + std::to_string(h) + " over " + group_->name() + " has " +
                   std::to_string(static_cast<long double>(carrier_size(h))) + " elements, above the cap of " +
                   std::to_string(kCarrierCap));
  }
  if (carriers_.empty()) {
    std::vector<TreeId> leaves(group_->order());
    for (std::size_t g = 0; g < leaves.size(); ++g) leaves[g] = static_cast<TreeId>(g);
    carriers_.push_back(std::move(leaves));
  }
  while (static_cast<int>(carriers_.size()) <= h) {
    const auto prev = carriers_.back();
    std::vector<TreeId> next(carriers_.front());
    next.reserve(prev.size() * prev.size() + next.size());
    for (auto x : prev)
      for (auto y : prev) next.push_back(phi(x, y));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    carriers_.push_back(std::move(next));
  }
  return carriers_[static_cast<std::size_t>(h)];
}

std::string TreeStore::to_string(TreeId t) const {
  if (is_leaf(t)) return std::to_string(t);
  return "(" + to_string(nodes_[t].l) + " -o " + to_string(nodes_[t].r) + ")";
}

Group::Index valuation(const TreeStore& s, TreeId t) { return s.valuation(t); }
TreeId action(TreeStore& s, Group::Index g, TreeId t) { return s.action(g, t); }

TreeId phi_T(TreeStore& s, TreeId x, TreeId y) {
  if (s.model() != Model::T) throw std::invalid_argument("phi_T on a D store");
  return s.phi(x, y);
}

std::optional<std::pair<TreeId, TreeId>> psi_T(const TreeStore& s, TreeId t) {
  if (s.model() != Model::T) throw std::invalid_argument("psi_T on a D store");
  return s.psi(t);
}

TreeId phi_D(TreeStore& s, TreeId x, TreeId y) {
  if (s.model() != Model::D) throw std::invalid_argument("phi_D on a T store");
  return s.phi(x, y);
}

std::pair<TreeId, TreeId> psi_D(const TreeStore& s, TreeId t) {
  if (s.model() != Model::D) throw std::invalid_argument("psi_D on a T store");
  return *s.psi(t);
}

TreeId dual_D(TreeStore& s, TreeId t) { return s.dual(t); }

std::vector<TreeId> enumerate(TreeStore& s, int h) { return s.carrier(h); }

Group::Index CrossedGSet::valuation(TreeId t) const {
  auto v = store->valuation(t);
  return dual ? store->group()->inv(v) : v;
}

std::optional<std::string> check_crossed_law(const CrossedGSet& x) {
  const auto& G = *x.store->group();
  for (auto t : x.elements()) {
    for (Group::Index g = 0; g < G.order(); ++g) {
      if (x.valuation(x.act(g, t)) != G.conj(g, x.valuation(t))) {
        return "crossed law fails for g=" + std::to_string(g) + " at " + x.store->to_string(t);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Relations

void Relation::normalize() {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

bool Relation::contains(const std::vector<TreeId>& row) const {
  return std::binary_search(rows.begin(), rows.end(), row);
}

std::optional<std::string> check_morphism(TreeStore& s, const Relation& r,
                                          const std::vector<bool>& dual_inputs,
                                          const std::vector<bool>& dual_outputs) {
  const auto& G = *s.group();
  auto value = [&](TreeId t, bool dual) {
    auto v = s.valuation(t);
    return dual ? G.inv(v) : v;
  };
  for (const auto& row : r.rows) {
    auto in = G.identity();
    auto out = G.identity();
    for (std::size_t i = 0; i < r.in_arity; ++i)
      in = G.mul(in, value(row[i], i < dual_inputs.size() && dual_inputs[i]));
    for (std::size_t j = 0; j < r.out_arity; ++j)
      out = G.mul(out, value(row[r.in_arity + j], j < dual_outputs.size() && dual_outputs[j]));
    if (in != out) {
      std::string text;
      for (auto t : row) text += s.to_string(t) + " ";
      return "valuation not preserved by row " + text;
    }
    for (Group::Index g = 0; g < G.order(); ++g) {
      std::vector<TreeId> moved(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) moved[i] = s.action(g, row[i]);
      if (!r.contains(moved)) return "not closed under the action of " + std::to_string(g);
    }
  }
  return std::nullopt;
}

namespace {

// Letter maps from the left end to the right end of a crossing, and back.
void cross(TreeStore& s, std::vector<TreeId>& t, const Letter& l, bool invert) {
  auto& a = t[static_cast<std::size_t>(l.index - 1)];
  auto& b = t[static_cast<std::size_t>(l.index)];
  const bool positive = (l.sign > 0) != invert;
  const auto& G = *s.group();
  if (positive) {
    const TreeId na = s.action(s.valuation(a), b);
    b = a;
    a = na;
  } else {
    const TreeId na = b;
    b = s.action(G.inv(s.valuation(b)), a);
    a = na;
  }
}

std::vector<TreeId> braid_unapply(TreeStore& s, const BraidWord& w, std::vector<TreeId> tuple) {
  const auto& ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) cross(s, tuple, *it, true);
  return tuple;
}

void product_rows(const std::vector<TreeId>& carrier, std::size_t n, std::vector<TreeId>& cur,
                  const std::function<void(const std::vector<TreeId>&)>& emit) {
  if (cur.size() == n) {
    emit(cur);
    return;
  }
  for (auto t : carrier) {
    cur.push_back(t);
    product_rows(carrier, n, cur, emit);
    cur.pop_back();
  }
}

Relation make_relation(const TreeStore& s, std::size_t in, std::size_t out, int h) {
  Relation r;
  r.in_arity = in;
  r.out_arity = out;
  r.model = s.model();
  r.group = s.group()->name();
  r.h_out = h;
  r.h_int = h;
  return r;
}

}  // namespace

std::vector<TreeId> braid_apply(TreeStore& s, const BraidWord& w, std::vector<TreeId> tuple) {
  if (tuple.size() != w.strands()) throw BraidError("braid_apply: tuple size does not match strands");
  for (const auto& l : w.letters()) cross(s, tuple, l, false);
  return tuple;
}

Relation braid_relation(TreeStore& s, const BraidWord& w, int h) {
  const auto n = w.strands();
  auto r = make_relation(s, n, n, h);
  const auto carrier = s.carrier(h);
  std::vector<TreeId> cur;
  product_rows(carrier, n, cur, [&](const std::vector<TreeId>& in) {
    auto row = in;
    auto out = braid_apply(s, w, in);
    row.insert(row.end(), out.begin(), out.end());
    r.rows.push_back(std::move(row));
  });
  r.normalize();
  return r;
}

Relation braiding(TreeStore& s, int h) { return braid_relation(s, BraidWord::generator(2, 1, 1), h); }
Relation braiding_inverse(TreeStore& s, int h) { return braid_relation(s, BraidWord::generator(2, 1, -1), h); }

Relation identity_relation(TreeStore& s, std::size_t n, int h) { return braid_relation(s, BraidWord::identity(n), h); }

Relation compose(const Relation& a, const Relation& b) {
  if (a.out_arity != b.in_arity) throw std::invalid_argument("compose: arity mismatch");
  std::map<std::vector<TreeId>, std::vector<std::size_t>> by_input;
  for (std::size_t i = 0; i < b.rows.size(); ++i)
    by_input[std::vector<TreeId>(b.rows[i].begin(), b.rows[i].begin() + static_cast<long>(b.in_arity))].push_back(i);
  Relation r = a;
  r.out_arity = b.out_arity;
  r.rows.clear();
  for (const auto& row : a.rows) {
    std::vector<TreeId> mid(row.begin() + static_cast<long>(a.in_arity), row.end());
    auto it = by_input.find(mid);
    if (it == by_input.end()) continue;
    for (auto j : it->second) {
      std::vector<TreeId> out(row.begin(), row.begin() + static_cast<long>(a.in_arity));
      out.insert(out.end(), b.rows[j].begin() + static_cast<long>(b.in_arity), b.rows[j].end());
      r.rows.push_back(std::move(out));
    }
  }
  r.normalize();
  return r;
}

// ---------------------------------------------------------------------------
// Bounded interpretation.
//
// Every subterm is evaluated against constraints on its inputs and output, so
// that only the part of a denotation that can contribute to the final box is
// ever built. Constraints over-approximate; exact filtering happens at
// variables and when braids and abstractions map values back.

namespace {

struct Constraint;
using CPtr = std::shared_ptr<const Constraint>;

struct Constraint {
  enum class Kind { Any, Pair, Set } kind = Kind::Any;
  int h = 0;
  CPtr l, r;
  std::vector<TreeId> set;  // sorted

  static CPtr any(int h) {
    auto c = std::make_shared<Constraint>();
    c->h = h;
    return c;
  }
  static CPtr pair(CPtr l, CPtr r) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::Pair;
    c->l = std::move(l);
    c->r = std::move(r);
    return c;
  }
  static CPtr of(std::vector<TreeId> s) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::Set;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    c->set = std::move(s);
    return c;
  }
};

using Row = std::vector<TreeId>;  // inputs..., output
using Rows = std::vector<Row>;

class Evaluator {
 public:
  Evaluator(TreeStore& store, int witness_bound) : s_(store), w_(witness_bound) {}

  Rows eval(const Term& m, const std::vector<CPtr>& ins, const CPtr& out) {
    switch (m.kind()) {
      case Term::Kind::Var:
        return eval_var(ins, out);
      case Term::Kind::Lam:
        return eval_lam(m, ins, out);
      case Term::Kind::App:
        return eval_app(m, ins, out);
      case Term::Kind::Braid:
        return eval_braid(m, ins, out);
    }
    return {};
  }

 private:
  double size(const CPtr& c) const {
    switch (c->kind) {
      case Constraint::Kind::Any:
        return s_.carrier_size(c->h);
      case Constraint::Kind::Pair:
        return size(c->l) * size(c->r);
      case Constraint::Kind::Set:
        return static_cast<double>(c->set.size());
    }
    return 0;
  }

  bool contains(const CPtr& c, TreeId t) const {
    switch (c->kind) {
      case Constraint::Kind::Any:
        return s_.height(t) <= c->h;
      case Constraint::Kind::Pair: {
        auto p = s_.psi(t);
        return p && contains(c->l, p->first) && contains(c->r, p->second);
      }
      case Constraint::Kind::Set:
        return std::binary_search(c->set.begin(), c->set.end(), t);
    }
    return false;
  }

  std::vector<TreeId> elements(const CPtr& c) {
    if (size(c) > static_cast<double>(TreeStore::kCarrierCap)) {
      throw CapError("bounded interpretation needs to enumerate more than " +
                     std::to_string(TreeStore::kCarrierCap) + " elements");
    }
    switch (c->kind) {
      case Constraint::Kind::Any:
        return s_.carrier(c->h);
      case Constraint::Kind::Pair: {
        auto ls = elements(c->l);
        auto rs = elements(c->r);
        std::vector<TreeId> out;
        out.reserve(ls.size() * rs.size());
        for (auto b : ls)
          for (auto a : rs) out.push_back(s_.phi(b, a));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      }
      case Constraint::Kind::Set:
        return c->set;
    }
    return {};
  }

  std::vector<TreeId> meet(const CPtr& a, const CPtr& b) {
    const bool a_small = size(a) <= size(b);
    const CPtr& small = a_small ? a : b;
    const CPtr& other = a_small ? b : a;
    std::vector<TreeId> out;
    for (auto t : elements(small))
      if (contains(other, t)) out.push_back(t);
    return out;
  }

  CPtr closure(const CPtr& c) {
    switch (c->kind) {
      case Constraint::Kind::Any:
        return c;
      case Constraint::Kind::Pair:
        return Constraint::pair(closure(c->l), closure(c->r));
      case Constraint::Kind::Set: {
        std::vector<TreeId> orbit;
        const auto order = s_.group()->order();
        for (auto t : c->set)
          for (Group::Index g = 0; g < order; ++g) orbit.push_back(s_.action(g, t));
        return Constraint::of(std::move(orbit));
      }
    }
    return c;
  }

  // Output constraint of an abstraction split into body output / binder.
  std::pair<CPtr, CPtr> split(const CPtr& c) {
    switch (c->kind) {
      case Constraint::Kind::Any: {
        if (s_.model() == Model::T && c->h == 0) return {nullptr, nullptr};
        auto sub = Constraint::any(std::max(c->h - 1, 0));
        return {sub, sub};
      }
      case Constraint::Kind::Pair:
        return {c->l, c->r};
      case Constraint::Kind::Set: {
        std::vector<TreeId> ls, rs;
        for (auto t : c->set) {
          if (auto p = s_.psi(t)) {
            ls.push_back(p->first);
            rs.push_back(p->second);
          }
        }
        return {Constraint::of(std::move(ls)), Constraint::of(std::move(rs))};
      }
    }
    return {nullptr, nullptr};
  }

  Rows eval_var(const std::vector<CPtr>& ins, const CPtr& out) {
    Rows rows;
    for (auto a : meet(ins.at(0), out)) rows.push_back({a, a});
    return rows;
  }

  Rows eval_lam(const Term& m, const std::vector<CPtr>& ins, const CPtr& out) {
    auto [body_out, binder] = split(out);
    if (!body_out) return {};
    auto body_ins = ins;
    body_ins.push_back(binder);
    Rows rows;
    for (auto& row : eval(m.body(), body_ins, body_out)) {
      const TreeId b = row.back();
      row.pop_back();
      const TreeId a = row.back();
      row.pop_back();
      const TreeId v = s_.phi(b, a);
      if (!contains(out, v)) continue;
      row.push_back(v);
      rows.push_back(std::move(row));
    }
    return rows;
  }

  static bool head_is_var(const Term& m) {
    const Term* cur = &m;
    while (cur->is_app() || cur->is_braid()) cur = cur->is_app() ? &cur->fun() : &cur->body();
    return cur->is_var();
  }

  Rows eval_app(const Term& m, const std::vector<CPtr>& ins, const CPtr& out) {
    const auto k = cxt(m.fun()).size();
    std::vector<CPtr> ins_m(ins.begin(), ins.begin() + static_cast<long>(k));
    std::vector<CPtr> ins_n(ins.begin() + static_cast<long>(k), ins.end());
    Rows rows_m, rows_n;
    if (head_is_var(m.fun())) {
      rows_m = eval(m.fun(), ins_m, Constraint::pair(out, Constraint::any(w_)));
      std::vector<TreeId> witnesses;
      for (const auto& r : rows_m) witnesses.push_back(s_.psi(r.back())->second);
      rows_n = eval(m.arg(), ins_n, Constraint::of(std::move(witnesses)));
    } else {
      rows_n = eval(m.arg(), ins_n, Constraint::any(w_));
      std::vector<TreeId> witnesses;
      for (const auto& r : rows_n) witnesses.push_back(r.back());
      rows_m = eval(m.fun(), ins_m, Constraint::pair(out, Constraint::of(std::move(witnesses))));
    }
    std::unordered_map<TreeId, std::vector<std::size_t>> by_output;
    for (std::size_t i = 0; i < rows_n.size(); ++i) by_output[rows_n[i].back()].push_back(i);
    Rows rows;
    for (const auto& rm : rows_m) {
      auto [b, a] = *s_.psi(rm.back());
      auto it = by_output.find(a);
      if (it == by_output.end()) continue;
      for (auto j : it->second) {
        Row row(rm.begin(), rm.end() - 1);
        row.insert(row.end(), rows_n[j].begin(), rows_n[j].end() - 1);
        row.push_back(b);
        rows.push_back(std::move(row));
      }
    }
    return rows;
  }

  Rows eval_braid(const Term& m, const std::vector<CPtr>& ins, const CPtr& out) {
    const auto& w = m.word();
    auto inner = ins;
    for (const auto& l : w.letters()) {
      auto& a = inner[static_cast<std::size_t>(l.index - 1)];
      auto& b = inner[static_cast<std::size_t>(l.index)];
      if (l.sign > 0) {
        auto na = closure(b);
        b = a;
        a = na;
      } else {
        auto na = b;
        b = closure(a);
        a = na;
      }
    }
    Rows rows;
    for (auto& row : eval(m.body(), inner, out)) {
      const TreeId v = row.back();
      row.pop_back();
      auto outer = braid_unapply(s_, w, std::move(row));
      bool ok = true;
      for (std::size_t i = 0; i < outer.size() && ok; ++i) ok = contains(ins[i], outer[i]);
      if (!ok) continue;
      outer.push_back(v);
      rows.push_back(std::move(outer));
    }
    return rows;
  }

  TreeStore& s_;
  int w_;
};

}  // namespace

Relation interpret(const Term& m, TreeStore& store, const InterpretOptions& options) {
  if (options.h_out < 0 || options.h_int < options.h_out)
    throw std::invalid_argument("interpret: need 0 <= h_out <= h_int");
  const auto n = cxt(m).size();
  std::vector<CPtr> ins(n, Constraint::any(options.h_out));
  Evaluator ev(store, options.h_int);
  Relation r;
  r.in_arity = n;
  r.out_arity = 1;
  r.model = store.model();
  r.group = store.group()->name();
  r.h_out = options.h_out;
  r.h_int = options.h_int;
  r.rows = ev.eval(m, ins, Constraint::any(options.h_out));
  r.normalize();
  return r;
}

DenotComparison denot_equal(const Term& m, const Term& n, TreeStore& store, const InterpretOptions& options) {
  if (cxt(m).size() != cxt(n).size()) throw std::invalid_argument("denot_equal: contexts differ in length");
  DenotComparison out;
  out.first = interpret(m, store, options);
  out.second = interpret(n, store, options);
  if (out.first == out.second) return out;

  auto first_difference = [](const Relation& a, const Relation& b) {
    std::vector<std::vector<TreeId>> only_a, only_b;
    std::set_difference(a.rows.begin(), a.rows.end(), b.rows.begin(), b.rows.end(), std::back_inserter(only_a));
    if (!only_a.empty()) return std::make_pair(only_a.front(), true);
    std::set_difference(b.rows.begin(), b.rows.end(), a.rows.begin(), a.rows.end(), std::back_inserter(only_b));
    return std::make_pair(only_b.front(), false);
  };
  auto [row, in_first] = first_difference(out.first, out.second);
  out.witness = row;
  out.in_first = in_first;

  InterpretOptions wider = options;
  wider.h_int += 1;
  try {
    auto m2 = interpret(m, store, wider);
    auto n2 = interpret(n, store, wider);
    out.verdict = (m2 == out.first && n2 == out.second) ? Verdict::Differ : Verdict::BoundaryInconclusive;
  } catch (const CapError&) {
    out.verdict = Verdict::BoundaryInconclusive;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dumps

namespace {

std::vector<std::string> row_lines(const TreeStore& s, const Relation& r) {
  std::vector<std::string> lines;
  for (const auto& row : r.rows) {
    std::string line = "(";
    for (std::size_t i = 0; i < r.in_arity; ++i) {
      if (i) line += ", ";
      line += s.to_string(row[i]);
    }
    line += ") -> ";
    if (r.out_arity == 1) {
      line += s.to_string(row[r.in_arity]);
    } else {
      line += "(";
      for (std::size_t j = 0; j < r.out_arity; ++j) {
        if (j) line += ", ";
        line += s.to_string(row[r.in_arity + j]);
      }
      line += ")";
    }
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

std::string dump_text(const TreeStore& s, const Relation& r) {
  std::string out;
  for (const auto& line : row_lines(s, r)) out += line + "\n";
  return out;
}

std::string dump_json(const TreeStore& s, const Relation& r) {
  nlohmann::json j;
  j["model"] = model_name(r.model);
  j["group"] = r.group;
  j["h_out"] = r.h_out;
  j["h_int"] = r.h_int;
  j["in_arity"] = r.in_arity;
  j["out_arity"] = r.out_arity;
  nlohmann::json labels = nlohmann::json::array();
  for (Group::Index g = 0; g < s.group()->order(); ++g) labels.push_back(s.group()->label(g));
  j["labels"] = labels;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json in = nlohmann::json::array();
    nlohmann::json outs = nlohmann::json::array();
    for (std::size_t i = 0; i < r.in_arity; ++i) in.push_back(s.to_string(row[i]));
    for (std::size_t k = 0; k < r.out_arity; ++k) outs.push_back(s.to_string(row[r.in_arity + k]));
    rows.push_back({{"inputs", in}, {"outputs", outs}});
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace blc
