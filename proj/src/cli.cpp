#include "blc/cli.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "blc/braid.hpp"
#include "blc/combinator.hpp"
#include "blc/group.hpp"
#include "blc/rewrite.hpp"
#include "blc/semantics.hpp"
#include "blc/term.hpp"
#include "json.hpp"

namespace blc::cli {
namespace {

struct Io {
  std::ostringstream out, err;
  int code = 0;
};

struct ModelFlags {
  std::string model = "t";
  std::string group = "z2";
  std::string group_file;
  int bound = 1;
  int internal = 3;
  bool json = false;
};

void add_model_flags(CLI::App* sub, ModelFlags& f) {
  sub->add_option("--model", f.model, "t or d")->check(CLI::IsMember({"t", "d"}));
  sub->add_option("--group", f.group, "z<n> or s<n>");
  sub->add_option("--group-file", f.group_file, "multiplication table file");
  sub->add_option("--bound", f.bound, "height bound on inputs and outputs")->check(CLI::Range(0, 8));
  sub->add_option("--internal", f.internal, "height bound on application witnesses")->check(CLI::Range(0, 8));
  sub->add_flag("--json", f.json, "machine-readable output");
}

GroupPtr resolve_group(const ModelFlags& f) {
  return f.group_file.empty() ? group_of_name(f.group) : load_group_file(f.group_file);
}

std::string tuple_string(const TreeStore& s, const std::vector<TreeId>& row) {
  std::string r = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) r += ", ";
    r += s.to_string(row[i]);
  }
  return r + ")";
}

std::string context_string(const Term& m) {
  std::string r;
  for (const auto& v : cxt(m)) {
    if (!r.empty()) r += ' ';
    r += v.name;
  }
  return r;
}

Strategy strategy_of(const std::string& s) {
  if (s == "li") return Strategy::LeftmostInnermost;
  if (s == "ro") return Strategy::RightmostOutermost;
  return Strategy::LeftmostOutermost;
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
  Io io;
  CLI::App app{"braided linear lambda calculus toolkit", "blc"};
  app.require_subcommand(1);

  std::string t1, t2, text;
  bool beta_only = false, symmetric = false, do_normalize = false;
  std::string strategy = "lo";
  ModelFlags mf;
  std::function<void()> action;

  auto* check_cmd = app.add_subcommand("check", "well-formedness check");
  check_cmd->add_option("term", t1)->required();
  check_cmd->callback([&] {
    action = [&] {
      auto parsed = parse_term_with_warnings(t1);
      for (const auto& w : parsed.warnings) io.err << "warning: " << w << '\n';
      auto r = check(parsed.term);
      if (r.ok) {
        io.out << "ok\n";
        return;
      }
      for (const auto& d : r.diagnostics) io.err << d << '\n';
      io.code = kExitInput;
    };
  });

  auto* cxt_cmd = app.add_subcommand("cxt", "print the ordered context");
  cxt_cmd->add_option("term", t1)->required();
  cxt_cmd->callback([&] { action = [&] { io.out << context_string(parse_term(t1)) << '\n'; }; });

  auto* norm_cmd = app.add_subcommand("normalize", "beta-eta normal form");
  norm_cmd->add_option("term", t1)->required();
  norm_cmd->add_flag("--beta-only", beta_only);
  norm_cmd->add_option("--strategy", strategy, "lo, li or ro")->check(CLI::IsMember({"lo", "li", "ro"}));
  norm_cmd->callback([&] {
    action = [&] {
      auto m = parse_term(t1);
      auto r = normalize_counted(m, beta_only ? Mode::Beta : Mode::BetaEta, strategy_of(strategy));
      io.out << print(r.term) << '\n';
    };
  });

  auto* eq_cmd = app.add_subcommand("eq", "beta-eta equality; exit 0 equal, 1 unequal");
  eq_cmd->add_option("m", t1)->required();
  eq_cmd->add_option("n", t2)->required();
  eq_cmd->callback([&] {
    action = [&] {
      bool e = equal_betaeta(parse_term(t1), parse_term(t2));
      io.out << (e ? "equal" : "unequal") << '\n';
      io.code = e ? 0 : 1;
    };
  });

  auto* erase_cmd = app.add_subcommand("erase", "delete braid nodes");
  erase_cmd->add_option("term", t1)->required();
  erase_cmd->callback([&] { action = [&] { io.out << print(erase(parse_term(t1))) << '\n'; }; });

  auto* to_comb = app.add_subcommand("to-comb", "translate to combinators");
  to_comb->add_option("term", t1)->required();
  to_comb->add_flag("--symmetric", symmetric, "plain BCI translation of a braid-free term");
  to_comb->callback([&] {
    action = [&] {
      auto m = parse_term(t1);
      io.out << print(symmetric ? flat_sym(m) : flat(m)) << '\n';
    };
  });

  auto* from_comb = app.add_subcommand("from-comb", "expand combinators into a term");
  from_comb->add_option("combterm", t1)->required();
  from_comb->add_flag("--normalize", do_normalize);
  from_comb->callback([&] {
    action = [&] {
      auto p = parse_comb(t1);
      auto m = sharp(p);
      if (do_normalize) m = flavour_of(p) == Flavour::Symmetric ? linear_normalize(m) : normalize(m);
      io.out << print(m) << '\n';
    };
  });

  // braid ...
  auto* braid_cmd = app.add_subcommand("braid", "braid group operations");
  braid_cmd->require_subcommand(1);
  std::string b1, b2;
  std::size_t strand = 1, width = 1;
  auto two_words = [&](CLI::App* s) {
    s->add_option("s", b1)->required();
    s->add_option("t", b2)->required();
  };
  auto* beq = braid_cmd->add_subcommand("eq", "group equality; exit 0 equal, 1 unequal");
  two_words(beq);
  beq->callback([&] {
    action = [&] {
      bool e = equal(parse_braid(b1), parse_braid(b2));
      io.out << (e ? "equal" : "unequal") << '\n';
      io.code = e ? 0 : 1;
    };
  });
  auto* btriv = braid_cmd->add_subcommand("triv", "triviality; exit 0 trivial, 1 not");
  btriv->add_option("s", b1)->required();
  btriv->callback([&] {
    action = [&] {
      bool t = is_trivial(parse_braid(b1));
      io.out << (t ? "trivial" : "nontrivial") << '\n';
      io.code = t ? 0 : 1;
    };
  });
  auto* bperm = braid_cmd->add_subcommand("perm", "underlying permutation (images of 1..n)");
  bperm->add_option("s", b1)->required();
  bperm->callback([&] {
    action = [&] {
      auto img = permutation(parse_braid(b1)).images();
      for (std::size_t i = 0; i < img.size(); ++i) io.out << (i ? " " : "") << img[i];
      io.out << '\n';
    };
  });
  auto* bsubst = braid_cmd->add_subcommand("subst", "cable strand i into m strands");
  bsubst->add_option("s", b1)->required();
  bsubst->add_option("i", strand)->required();
  bsubst->add_option("m", width)->required();
  bsubst->callback([&] { action = [&] { io.out << to_string(substitute(parse_braid(b1), strand, width)) << '\n'; }; });
  auto* brender = braid_cmd->add_subcommand("render", "ascii diagram");
  brender->add_option("s", b1)->required();
  brender->callback([&] { action = [&] { io.out << render_ascii(parse_braid(b1)); }; });
  auto* bcomp = braid_cmd->add_subcommand("compose", "s then t");
  two_words(bcomp);
  bcomp->callback([&] {
    action = [&] {
      auto s = parse_braid(b1);
      auto t = parse_braid(b2, has_explicit_strands(b2) ? std::nullopt : std::optional(s.strands()));
      if (!has_explicit_strands(b1) && t.strands() > s.strands()) s = parse_braid(b1, t.strands());
      io.out << to_string(compose(s, t)) << '\n';
    };
  });
  auto* btens = braid_cmd->add_subcommand("tensor", "s beside t");
  two_words(btens);
  btens->callback([&] { action = [&] { io.out << to_string(tensor(parse_braid(b1), parse_braid(b2))) << '\n'; }; });
  auto* binv = braid_cmd->add_subcommand("inverse", "inverse word");
  binv->add_option("s", b1)->required();
  binv->callback([&] { action = [&] { io.out << to_string(inverse(parse_braid(b1))) << '\n'; }; });

  // semantics
  auto* interp_cmd = app.add_subcommand("interp", "bounded denotation");
  interp_cmd->add_option("term", t1)->required();
  add_model_flags(interp_cmd, mf);
  interp_cmd->callback([&] {
    action = [&] {
      auto m = parse_term(t1);
      TreeStore store(resolve_group(mf), mf.model == "t" ? Model::T : Model::D);
      auto r = interpret(m, store, {mf.bound, mf.internal});
      if (mf.json) {
        io.out << dump_json(store, r) << '\n';
        return;
      }
      io.out << "# cxt: " << context_string(m) << '\n' << dump_text(store, r);
    };
  });

  auto* deq_cmd = app.add_subcommand("denot-eq", "compare denotations; exit 0 agree, 1 differ, 2 inconclusive");
  deq_cmd->add_option("m", t1)->required();
  deq_cmd->add_option("n", t2)->required();
  add_model_flags(deq_cmd, mf);
  deq_cmd->callback([&] {
    action = [&] {
      auto m = parse_term(t1), n = parse_term(t2);
      TreeStore store(resolve_group(mf), mf.model == "t" ? Model::T : Model::D);
      auto c = denot_equal(m, n, store, {mf.bound, mf.internal});
      io.code = c.verdict == Verdict::Agree ? 0 : c.verdict == Verdict::Differ ? 1 : 2;
      if (mf.json) {
        nlohmann::json j;
        j["verdict"] = verdict_name(c.verdict);
        j["model"] = model_name(store.model());
        j["group"] = store.group()->name();
        j["h_out"] = mf.bound;
        j["h_int"] = mf.internal;
        if (c.witness) {
          std::vector<std::string> w;
          for (auto t : *c.witness) w.push_back(store.to_string(t));
          j["witness"] = w;
          j["witness_in"] = c.in_first ? "first" : "second";
        }
        io.out << j.dump(2) << '\n';
        return;
      }
      io.out << verdict_name(c.verdict) << '\n';
      if (c.witness)
        io.out << "witness " << tuple_string(store, *c.witness) << " only in " << (c.in_first ? "first" : "second")
               << '\n';
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int c = app.exit(e, o, er);
    CliResult r{c == 0 ? 0 : kExitUsage, o.str(), er.str()};
    return r;
  }

  try {
    if (action) action();
  } catch (const CapError& e) {
    io.err << "error: " << e.what() << '\n';
    io.code = kExitCap;
  } catch (const std::exception& e) {
    // Parse, well-formedness, braid, group and combinator errors.
    io.err << "error: " << e.what() << '\n';
    io.code = kExitInput;
  }
  return {io.code, io.out.str(), io.err.str()};
}

}  // namespace blc::cli
