// regsat: satisfiability and emptiness for data-aware logics.
//
// Exit codes: 0 Sat / NonEmpty / true / accepted / suite passed,
//             1 Unsat / Empty / false / rejected / suite failed,
//             2 usage or input error, 3 search budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "regsat/oracle.hpp"

using namespace regsat;

namespace {

constexpr int kYes = 0, kNo = 1, kUsage = 2, kExhausted = 3;

struct Input {
  std::string inline_text;
  std::string file;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string formula_text(const Input& in) {
  if (!in.file.empty() && !in.inline_text.empty()) throw std::runtime_error("give either -f FILE or an inline formula, not both");
  if (!in.file.empty()) return slurp(in.file);
  if (in.inline_text.empty()) throw std::runtime_error("no formula given");
  return in.inline_text;
}

SearchOptions search_options(std::size_t maxSteps, double seconds) {
  SearchOptions o;
  o.maxSteps = maxSteps;
  o.seconds = seconds;
  return o;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::NonEmpty: return kYes;
    case Verdict::Empty: return kNo;
    case Verdict::ResourceExhausted: return kExhausted;
  }
  return kUsage;
}

int verification_failed(const std::string& what) {
  std::cerr << "error: witness verification failed: " << what << "\n";
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regsat: satisfiability of freeze LTL and forward XPath on data words and trees"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  Input in;
  bool ordered = false, witness = false, noVerify = false;
  std::size_t maxSteps = 0;
  double timeout = 0;
  std::string dtdFile, automatonFile, wordText, treeText, structureFile;
  std::vector<std::string> keys;
  std::uint64_t seed = 1;
  std::size_t count = 50;
  int maxNodes = 4, maxData = 3;
  std::string kind;

  auto formula_opts = [&](CLI::App* c) {
    c->add_option("formula", in.inline_text, "inline formula");
    c->add_option("-f,--file", in.file, "read the formula from FILE");
  };
  auto search_opts = [&](CLI::App* c) {
    c->add_flag("--witness", witness, "print a witness");
    c->add_flag("--no-verify", noVerify, "skip re-verifying the witness");
    c->add_option("--max-steps", maxSteps, "closure step budget (exit 3 when exhausted)");
    c->add_option("--timeout", timeout, "wall-clock budget in seconds (exit 3 when exhausted)");
  };
  auto structure_opts = [&](CLI::App* c, bool tree) {
    if (tree) c->add_option("--tree", treeText, "data tree, e.g. \"a@1(b@2)\"");
    else c->add_option("--word", wordText, "data word, e.g. \"a@1 b@2\"");
    c->add_option("--input", structureFile, "read the structure from FILE");
  };

  auto* satLtl = app.add_subcommand("sat-ltl", "satisfiability of a freeze LTL formula");
  formula_opts(satLtl);
  search_opts(satLtl);
  satLtl->add_flag("--ordered", ordered, "ordered data (lt, gt)");

  auto* satXpath = app.add_subcommand("sat-xpath", "satisfiability of an XPath node expression");
  formula_opts(satXpath);
  search_opts(satXpath);
  satXpath->add_option("--dtd", dtdFile, "DTD file");
  satXpath->add_option("--key", keys, "key constraint on LABEL (repeatable)");

  auto* evalLtl = app.add_subcommand("eval-ltl", "evaluate a freeze LTL formula on a data word");
  formula_opts(evalLtl);
  structure_opts(evalLtl, false);

  auto* evalXpath = app.add_subcommand("eval-xpath", "evaluate an XPath node expression at the root of a data tree");
  formula_opts(evalXpath);
  structure_opts(evalXpath, true);

  auto* trLtl = app.add_subcommand("translate-ltl", "print the register automaton of a formula");
  formula_opts(trLtl);
  trLtl->add_flag("--ordered", ordered, "ordered data (lt, gt)");

  auto* trXpath = app.add_subcommand("translate-xpath", "print the tree register automaton of a node expression");
  formula_opts(trXpath);

  auto* empty = app.add_subcommand("empty", "emptiness of an automaton");
  empty->add_option("--automaton", automatonFile, "automaton file")->required();
  search_opts(empty);

  auto* run = app.add_subcommand("run", "membership of a word or tree");
  run->add_option("--automaton", automatonFile, "automaton file")->required();
  run->add_option("--word", wordText, "data word");
  run->add_option("--tree", treeText, "data tree");
  run->add_option("--input", structureFile, "read the word or tree from FILE");

  auto* cross = app.add_subcommand("crosscheck", "randomized oracle suites");
  cross->add_option("kind", kind,
                    "ltl | xpath | ara | atra | rdc-ara | rdc-atra | subsumption | embedding | path-dfa")
      ->required();
  cross->add_option("--seed", seed, "random seed (default 1)");
  cross->add_option("--count", count, "number of cases (default 50)");
  cross->add_option("--max-nodes", maxNodes, "enumeration bound on positions or nodes (default 4)");
  cross->add_option("--max-data", maxData, "enumeration bound on distinct data (default 3)");
  cross->add_flag("--ordered", ordered, "ordered data (ltl, ara)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto structure_text = [&](const std::string& direct) {
    if (!structureFile.empty()) return slurp(structureFile);
    if (direct.empty()) throw std::runtime_error("no input structure given");
    return direct;
  };

  try {
    if (satLtl->parsed()) {
      LtlP raw = parse_ltl(formula_text(in));
      LtlP f = nnf_ltl(raw);
      LtlSatResult r = sat_ltl(f, ordered || uses_order(f), search_options(maxSteps, timeout));
      if (r.verdict == Verdict::ResourceExhausted) {
        std::cout << "ResourceExhausted\n";
        return kExhausted;
      }
      bool sat = r.verdict == Verdict::NonEmpty;
      if (sat && !noVerify) {
        DataWord w = parse_word(to_string(*r.witness));
        if (!eval_ltl(w, raw)) return verification_failed(to_string(w));
      }
      std::cout << (sat ? "Sat" : "Unsat") << "\n";
      if (sat && witness) std::cout << to_string(*r.witness) << "\n";
      return sat ? kYes : kNo;
    }
    if (satXpath->parsed()) {
      XNodeP f = parse_xpath(formula_text(in));
      std::optional<Dtd> dtd;
      if (!dtdFile.empty()) dtd = parse_dtd(slurp(dtdFile));
      XpathSatResult r = sat_xpath(f, dtd, keys, search_options(maxSteps, timeout));
      if (r.verdict == Verdict::ResourceExhausted) {
        std::cout << "ResourceExhausted\n";
        return kExhausted;
      }
      bool sat = r.verdict == Verdict::NonEmpty;
      if (sat && !noVerify) {
        DataTree t = parse_tree(to_string(*r.witness));
        if (!satisfies(t, f)) return verification_failed(to_string(t) + " does not satisfy the formula");
        for (const auto& k : keys)
          if (!satisfies(t, key_formula(k))) return verification_failed(to_string(t) + " violates key(" + k + ")");
        if (dtd && !conforms(*dtd, t)) return verification_failed(to_string(t) + " does not conform to the DTD");
      }
      std::cout << (sat ? "Sat" : "Unsat") << "\n";
      if (sat && witness) std::cout << to_string(*r.witness) << "\n";
      return sat ? kYes : kNo;
    }
    if (evalLtl->parsed()) {
      LtlP f = parse_ltl(formula_text(in));
      bool v = eval_ltl(parse_word(structure_text(wordText)), f);
      std::cout << (v ? "true" : "false") << "\n";
      return v ? kYes : kNo;
    }
    if (evalXpath->parsed()) {
      XNodeP f = parse_xpath(formula_text(in));
      bool v = satisfies(parse_tree(structure_text(treeText)), f);
      std::cout << (v ? "true" : "false") << "\n";
      return v ? kYes : kNo;
    }
    if (trLtl->parsed()) {
      LtlP f = nnf_ltl(parse_ltl(formula_text(in)));
      std::cout << to_string(ltl_to_ara(f, ordered || uses_order(f)));
      return kYes;
    }
    if (trXpath->parsed()) {
      std::cout << to_string(xpath_to_atra(parse_xpath(formula_text(in))));
      return kYes;
    }
    if (empty->parsed()) {
      Automaton a = parse_automaton(slurp(automatonFile));
      SearchOptions so = search_options(maxSteps, timeout);
      if (a.kind == AutKind::Word) {
        AraResult r = ara_emptiness(a, so);
        std::cout << verdict_name(r.verdict) << "\n";
        if (r.verdict == Verdict::NonEmpty) {
          if (!noVerify && !ara_membership(a, parse_word(to_string(*r.witness))))
            return verification_failed(to_string(*r.witness));
          if (witness) std::cout << to_string(*r.witness) << "\n";
        }
        return verdict_exit(r.verdict);
      }
      AtraResult r = atra_emptiness(a, so);
      std::cout << verdict_name(r.verdict) << "\n";
      if (r.verdict == Verdict::NonEmpty) {
        if (!noVerify && !atra_membership(a, parse_tree(to_string(*r.witness))))
          return verification_failed(to_string(*r.witness));
        if (witness) std::cout << to_string(*r.witness) << "\n";
      }
      return verdict_exit(r.verdict);
    }
    if (run->parsed()) {
      Automaton a = parse_automaton(slurp(automatonFile));
      bool ok;
      if (a.kind == AutKind::Word) ok = ara_membership(a, parse_word(structure_text(wordText)));
      else ok = atra_membership(a, parse_tree(structure_text(treeText)));
      std::cout << (ok ? "accepted" : "rejected") << "\n";
      return ok ? kYes : kNo;
    }
    if (cross->parsed()) {
      EnumBounds b;
      b.maxSize = maxNodes;
      b.maxData = maxData;
      b.alphabet = {"a", "b"};
      b.validate();
      CrosscheckReport rep;
      if (auto ck = check_kind(kind)) {
        CrosscheckOptions o;
        o.kind = *ck;
        o.seed = seed;
        o.count = count;
        o.bounds = b;
        o.ordered = ordered;
        rep = crosscheck(o);
      } else if (kind == "rdc-ara" || kind == "rdc-atra") {
        Rng r(seed);
        for (std::size_t i = 0; i < count; ++i) {
          Automaton a = kind == "rdc-ara" ? random_ara(r, 4, b.alphabet, ordered) : random_atra(r, 4, b.alphabet);
          rep.merge(rdc_probe(a, 100, seed + i));
        }
        rep.kind = kind;
        rep.seed = seed;
      } else if (kind == "subsumption") {
        rep = subsumption_probe(count, seed, ordered);
      } else if (kind == "embedding") {
        rep = embedding_probe(count, seed);
      } else if (kind == "path-dfa") {
        rep = path_dfa_probe(count, seed, b);
      } else {
        std::cerr << "error: unknown crosscheck kind '" << kind << "'\n";
        return kUsage;
      }
      std::cout << rep.to_text(false);
      std::cerr << "elapsed: " << rep.elapsed << " s\n";
      return rep.passed() ? kYes : kNo;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
