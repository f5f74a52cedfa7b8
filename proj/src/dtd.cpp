#include "regsat/dtd.hpp"

#include <algorithm>
#include <functional>

#include "regsat/lexer.hpp"

namespace regsat {

namespace {

class DtdParser {
 public:
  explicit DtdParser(const std::string& text) : ts_(lex(text, false)) {}

  Dtd run() {
    Dtd d;
    ts_.expect("dtd");
    ts_.expect("{");
    ts_.expect("root");
    ts_.expect(":");
    d.root = ts_.expect_word("a root label").text;
    ts_.expect(";");
    std::vector<std::pair<std::string, Token>> refs;
    while (!ts_.is("}")) {
      Token name = ts_.expect_word("a label");
      if (d.rules.count(name.text)) ts_.fail_at(name, "duplicate rule for '" + name.text + "'");
      ts_.expect("->");
      LabelRegex r = alt(refs);
      ts_.expect(";");
      d.labels.push_back(name.text);
      d.rules.emplace(name.text, std::move(r));
    }
    ts_.expect("}");
    if (!ts_.at_end()) ts_.fail("unexpected input after dtd");
    if (!d.rules.count(d.root)) throw Error(ErrorKind::UnknownLabel, "root label '" + d.root + "' has no rule");
    for (const auto& [l, tok] : refs)
      if (!d.rules.count(l)) ts_.fail_at(tok, "label '" + l + "' has no rule", ErrorKind::UnknownLabel);
    return d;
  }

 private:
  TokenStream ts_;

  LabelRegex alt(std::vector<std::pair<std::string, Token>>& refs) {
    LabelRegex r = cat(refs);
    while (ts_.accept("|")) r = LabelRegex::alt(std::move(r), cat(refs));
    return r;
  }

  LabelRegex cat(std::vector<std::pair<std::string, Token>>& refs) {
    LabelRegex r = post(refs);
    while (!ts_.is(";") && !ts_.is(")") && !ts_.is("|") && !ts_.at_end()) r = LabelRegex::cat(std::move(r), post(refs));
    return r;
  }

  LabelRegex post(std::vector<std::pair<std::string, Token>>& refs) {
    LabelRegex r = atom(refs);
    for (;;) {
      if (ts_.accept("*")) r = LabelRegex::star(std::move(r));
      else if (ts_.accept("+")) r = LabelRegex::cat(r, LabelRegex::star(r));
      else if (ts_.accept("?")) r = LabelRegex::alt(std::move(r), LabelRegex::eps());
      else return r;
    }
  }

  LabelRegex atom(std::vector<std::pair<std::string, Token>>& refs) {
    if (ts_.accept("(")) {
      LabelRegex r = alt(refs);
      ts_.expect(")");
      return r;
    }
    Token t = ts_.expect_word("a label, 'eps' or '('");
    if (t.text == "eps") return LabelRegex::eps();
    refs.emplace_back(t.text, t);
    return LabelRegex::symbol(t.text);
  }
};

}  // namespace

Dtd parse_dtd(const std::string& text) { return DtdParser(text).run(); }

std::string to_string(const Dtd& d) {
  std::string out = "dtd { root: " + d.root + ";";
  for (const auto& l : d.labels) out += " " + l + " -> " + to_string(d.rules.at(l)) + ";";
  return out + " }";
}

bool conforms(const Dtd& d, const DataTree& t) {
  if (t.nodes.empty() || t.nodes[0].label != d.root) return false;
  std::map<std::string, LabelDfa> dfas;
  for (const auto& l : d.labels) dfas.emplace(l, regex_to_dfa(d.rules.at(l), d.labels));
  for (const auto& n : t.nodes) {
    auto it = dfas.find(n.label);
    if (it == dfas.end()) return false;
    std::vector<std::string> word;
    for (int c : n.children) word.push_back(t.nodes[static_cast<std::size_t>(c)].label);
    if (!it->second.accepts(word)) return false;
  }
  return true;
}

AtraAutomaton dtd_to_atra(const Dtd& d, const std::vector<std::string>& extraLabels) {
  std::vector<std::string> alphabet = d.labels;
  for (const auto& l : extraLabels)
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end()) alphabet.push_back(l);
  AutomatonBuilder b(AutKind::Tree, false, alphabet);
  int init = b.state("root");
  std::map<std::string, int> node;
  for (const auto& l : d.labels) node[l] = b.state("N_" + l);
  for (const auto& l : d.labels) {
    LabelDfa dfa = regex_to_dfa(d.rules.at(l), d.labels);
    // states from which an accepting state is reachable
    std::vector<bool> live = dfa.accepting;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < dfa.size(); ++s)
        for (int t : dfa.next[s])
          if (!live[s] && live[static_cast<std::size_t>(t)]) live[s] = changed = true;
    }
    std::map<int, int> walk;
    std::function<int(int)> walker = [&](int s) {
      auto it = walk.find(s);
      if (it != walk.end()) return it->second;
      int q = b.state("W_" + l + "_" + std::to_string(s));
      walk[s] = q;
      std::vector<ExprP> alts;
      for (std::size_t c = 0; c < d.labels.size(); ++c) {
        int t = dfa.next[static_cast<std::size_t>(s)][c];
        if (!live[static_cast<std::size_t>(t)]) continue;
        ExprP stop = dfa.accepting[static_cast<std::size_t>(t)] ? e_type(TypeCond::NoNext) : e_false();
        ExprP go = e_and(e_type(TypeCond::Next), e_move(e_ref(walker(t))));
        alts.push_back(e_and(e_ref(node[d.labels[c]]), e_or(stop, go)));
      }
      b.define(q, e_or_all(alts));
      return q;
    };
    ExprP leaf = dfa.accepting[static_cast<std::size_t>(dfa.initial)] ? e_type(TypeCond::NoChild) : e_false();
    ExprP inner = live[static_cast<std::size_t>(dfa.initial)]
                      ? e_and(e_type(TypeCond::Child), e_down(e_ref(walker(dfa.initial))))
                      : e_false();
    b.define(node[l], e_and(e_letter(b.letter(l)), e_or(leaf, inner)));
  }
  b.define(init, e_ref(node[d.root]));
  return normalize_automaton(b, init);
}

}  // namespace regsat
