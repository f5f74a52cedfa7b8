#include "util.hpp"

using namespace regsat;
using namespace testutil;

namespace {

bool root_holds(const std::string& tree, const std::string& f) { return satisfies(parse_tree(tree), parse_xpath(f)); }

std::string nnf_text(const std::string& f) { return to_string(nnf_xpath(parse_xpath(f))); }

void same_denotation(const XNodeP& f, const XNodeP& g, int maxNodes) {
  EnumBounds b{maxNodes, 2, {"a", "b"}, false};
  enum_trees(b, [&](const DataTree& t) {
    CHECK_MESSAGE(eval_xpath(t, f) == eval_xpath(t, g), to_string(f), " vs ", to_string(g), " on ", to_string(t));
    return true;
  });
}

// DFA acceptance against the path denotation on every fcns pair
void dfa_matches(const std::string& path, int maxNodes) {
  XPathP p = fcns_path(parse_xpath_path(path));
  PathDfa d = build_path_dfa(p);
  EnumBounds b{maxNodes, 2, {"a", "b"}, false};
  enum_trees(b, [&](const DataTree& t) {
    auto rel = eval_xpath(t, p);
    int n = static_cast<int>(t.size());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (fcns_leq_id(t, x, y)) CHECK_MESSAGE(d.accepts_str(t, x, y) == bool(rel[x][y]), path, " on ", to_string(t));
    return true;
  });
}

Verdict sat(const std::string& f, const std::optional<Dtd>& dtd = std::nullopt, std::vector<std::string> keys = {}) {
  XNodeP eta = parse_xpath(f);
  XpathSatResult r = sat_xpath(eta, dtd, keys);
  if (r.verdict == Verdict::NonEmpty) {
    REQUIRE(r.witness);
    CHECK(satisfies(*r.witness, eta));
    for (const auto& k : keys) CHECK(satisfies(*r.witness, key_formula(k)));
    if (dtd) CHECK(conforms(*dtd, *r.witness));
  }
  return r.verdict;
}

const char* kDuplicate = "<down[a and <eps = right/right*[a]>]>";

}  // namespace

TEST_SUITE("xpath") {

TEST_CASE("parse examples") {
  XNodeP f = parse_xpath("<down*[b and <down[b] != down[b]>]>");
  CHECK(f->kind == XNode::Some);
  XNodeP g = parse_xpath("a and !a");
  CHECK(g->kind == XNode::And);
  CHECK(error_of([] { parse_xpath("<down ="); }) == ErrorKind::Syntax);
  for (const char* s : {"<down*[b and <down[b] != down[b]>]>", "a or (b and !<right*>)", "<(down/right)*[a] = eps>",
                        "<down | right[b] = eps>"})
    CHECK(to_string(parse_xpath(to_string(parse_xpath(s)))) == to_string(parse_xpath(s)));
}

TEST_CASE("nnf rewrite rules") {
  CHECK(nnf_text("!(a and <down>)") == to_string(xnode(XNode::Or, nnf_xpath(parse_xpath("!a")),
                                                          nnf_xpath(parse_xpath("!<down>")))));
  CHECK(nnf_text("!(a or b)") == nnf_text("!a and !b"));
  CHECK(nnf_text("!!<down[a]>") == nnf_text("<down[a]>"));
  CHECK(nnf_xpath(parse_xpath("!<down = right>"))->kind == XNode::NotEq);
  CHECK(nnf_xpath(parse_xpath("!<down != right>"))->kind == XNode::NotNeq);
  CHECK(nnf_xpath(parse_xpath("!<down>"))->kind == XNode::NotSome);
  CHECK(nnf_text("!<down[!!a] = eps>") == nnf_text("!<down[a] = eps>"));
  CHECK(is_nnf(nnf_xpath(parse_xpath("!(a and !<down[!b] != right>)"))));
}

TEST_CASE("normalization examples") {
  XNodeP f = nnf_xpath(parse_xpath("<down[a] = eps>"));
  XNodeP n = normalize_paths(f);
  CHECK(is_normalized(n));
  CHECK_FALSE(is_normalized(f));
  same_denotation(f, n, 5);

  XNodeP lead = nnf_xpath(parse_xpath("<[b]/down/down = right>"));
  XNodeP ln = normalize_paths(lead);
  CHECK(is_normalized(ln));
  CHECK(ln->kind == XNode::And);
  same_denotation(lead, ln, 5);

  XNodeP star = nnf_xpath(parse_xpath("<(down)*[a] = down[b]>"));
  XNodeP sn = normalize_paths(star);
  CHECK(is_normalized(sn));
  CHECK(sn->kind == XNode::Or);
  same_denotation(star, sn, 5);
}

TEST_CASE("nnf and normalization preserve denotations") {
  Rng r(5);
  for (int i = 0; i < 60; ++i) {
    XNodeP f = random_xpath(r, 2, {"a", "b"});
    XNodeP n = nnf_xpath(f);
    CHECK(is_nnf(n));
    CHECK(to_string(nnf_xpath(n)) == to_string(n));
    XNodeP m = normalize_paths(n);
    CHECK(is_normalized(m));
    same_denotation(f, m, 4);
  }
}

TEST_CASE("eval examples") {
  DataTree t = parse_tree("a@1(b@2 b@2)");
  auto id = eval_xpath(t, parse_xpath_path("eps"));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(bool(id[x][y]) == (x == y));
  CHECK(root_holds("a@1(b@2 b@2)", "<down/right*[b] = down/right*[b]>"));
  CHECK(root_holds("a@1(b@2 b@3)", "<down[b] = down[b]>"));
  CHECK_FALSE(root_holds("a@1(b@2 b@3)", "<eps = down[b]>"));
  CHECK(root_holds("a@1(b@2 b@3)", "<down[b] != down[b]>"));
  CHECK_FALSE(root_holds("a@1(b@2 b@2)", "<down[b] != down[b]>"));
  CHECK(root_holds("a@1(b@2(a@1))", "<eps = down*[a]/down/down*>"));
  CHECK(root_holds("a@1(b@2 a@3)", "<down[b]/right[a]>"));
  CHECK_FALSE(root_holds("a@1(b@2 a@3)", "<down[a]/right[b]>"));
}

TEST_CASE("key_formula") {
  XNodeP k = key_formula("a");
  CHECK(satisfies(parse_tree("r@0(a@1 a@2)"), k));
  CHECK_FALSE(satisfies(parse_tree("r@0(a@1 a@1)"), k));
  CHECK(satisfies(parse_tree("r@0(b@1 b@1)"), k));
  CHECK_FALSE(satisfies(parse_tree("a@1(b@0(a@1))"), k));
  CHECK_FALSE(satisfies(parse_tree("r@0(b@0(a@1) a@1)"), k));
  CHECK_FALSE(satisfies(parse_tree("r@0(b@0(a@1) b@0(a@1))"), k));
  for (const auto& t : all_trees({4, 3, {"a", "b"}, false})) {
    std::vector<Datum> seen;
    bool distinct = true;
    for (const auto& n : t.nodes)
      if (n.label == "a") {
        if (std::find(seen.begin(), seen.end(), n.datum) != seen.end()) distinct = false;
        seen.push_back(n.datum);
      }
    CHECK(satisfies(t, k) == distinct);
  }
}

TEST_CASE("path DFA examples") {
  PathDfa e = build_path_dfa(fcns_path(parse_xpath_path("eps")));
  CHECK(e.states[0].accepting);
  CHECK(e.states[0].moving);
  dfa_matches("eps", 4);
  dfa_matches("right[a]", 4);
  dfa_matches("down[b]", 4);
  dfa_matches("down/right*[b]", 4);
  dfa_matches("(down | right[a])*/right", 4);
  dfa_matches("down/down*[<down[a]>]/right*", 4);
  CHECK(error_of([] { build_path_dfa(parse_xpath_path("[a]/right")); }) == ErrorKind::NotNormalized);
}

TEST_CASE("xpath_to_atra soundness on fixed formulas") {
  const char* fs[] = {"a", "<down[b] = down/right*[a]>", "!<down[a] = down[a]>", "<down* [b] != eps>",
                      "!<down != right*>", kDuplicate};
  EnumBounds b{4, 3, {"a", "b"}, false};
  auto trees = all_trees(b);
  for (const char* s : fs) {
    XNodeP f = parse_xpath(s);
    Automaton m = xpath_to_atra(f, b.alphabet);
    for (const auto& t : trees)
      if (satisfies(t, f)) CHECK_MESSAGE(atra_membership(m, t), s, " on ", to_string(t));
  }
  Automaton a = xpath_to_atra(parse_xpath("a"), {"a", "b"});
  for (const auto& t : all_trees({3, 1, {"a", "b"}, false})) CHECK(atra_membership(a, t) == (t.nodes[0].label == "a"));
}

TEST_CASE("sat examples") {
  CHECK(sat("<down[<down/right*[a] = right/right*[b]>]>") == Verdict::NonEmpty);
  CHECK(sat("<down/right*[a] = right/right*[b]>") == Verdict::Empty);
  CHECK(sat("a and !a") == Verdict::Empty);
  CHECK(sat(to_string(key_formula("a"))) == Verdict::NonEmpty);
  CHECK(sat("<down*[a]>", std::nullopt, {"a"}) == Verdict::NonEmpty);
  CHECK(sat(kDuplicate) == Verdict::NonEmpty);
  CHECK(sat(kDuplicate, std::nullopt, {"a"}) == Verdict::Empty);
  CHECK(sat("true", parse_dtd("dtd { root: a; a -> a; }")) == Verdict::Empty);
  CHECK(sat("<down/right*[a]>", parse_dtd("dtd { root: r; r -> b*; b -> eps; }")) == Verdict::Empty);
  CHECK(sat("<down[a] != down[a]>", parse_dtd("dtd { root: r; r -> a a; a -> eps; }"), {"a"}) == Verdict::NonEmpty);
  CHECK(sat("<down[b] = down/right[b]>", parse_dtd("dtd { root: r; r -> b b; b -> eps; }")) == Verdict::NonEmpty);
}

}  // TEST_SUITE
