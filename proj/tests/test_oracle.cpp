#include "util.hpp"

using namespace regsat;
using namespace testutil;

namespace {

long long stirling2(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

long long catalan(int n) { return n == 0 ? 1 : catalan(n - 1) * 2 * (2 * n - 1) / (n + 1); }

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long data_patterns(int n, int maxData, bool ordered) {
  long long s = 0;
  for (int k = 1; k <= maxData; ++k) s += (ordered ? factorial(k) : 1) * stirling2(n, k);
  return s;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::string> texts(const std::vector<DataWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(to_string(w));
  return out;
}

XPathP break_path(const XPathP& p);

// a wrong NNF: the negated equality test becomes an inequality test
XNodeP break_node(const XNodeP& f) {
  if (!f) return f;
  XNode n = *f;
  n.l = break_node(f->l);
  n.r = break_node(f->r);
  n.a = break_path(f->a);
  n.b = break_path(f->b);
  if (n.kind == XNode::NotEq) n.kind = XNode::Neq;
  return std::make_shared<const XNode>(n);
}

XPathP break_path(const XPathP& p) {
  if (!p) return p;
  XPath q = *p;
  q.test = break_node(p->test);
  q.l = break_path(p->l);
  q.r = break_path(p->r);
  return std::make_shared<const XPath>(q);
}

// applies any Spread2 at once, whatever the other threads are doing
std::vector<Config> eager_spread(const Automaton& a, const Config& c, const std::vector<Datum>& pool) {
  for (std::size_t i = 0; i < c.threads.size(); ++i) {
    const Instr& in = a.delta[c.threads[i].state];
    if (in.op != Op::Spread2) continue;
    Config d = c;
    d.threads.erase(d.threads.begin() + static_cast<std::ptrdiff_t>(i));
    for (const auto& t : c.threads)
      if (t.state == in.a) d.threads.push_back({in.b, t.datum});
    d.normalize();
    return {d};
  }
  return eps_successors(a, c, pool);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("enumeration examples") {
  CHECK(texts(all_words({1, 1, {"a"}, false})) == std::vector<std::string>{"a@1"});
  CHECK(texts(all_words({2, 2, {"a"}, false})) == std::vector<std::string>{"a@1", "a@1 a@1", "a@1 a@2"});
  std::vector<std::string> ts;
  for (const auto& t : all_trees({2, 1, {"a"}, false})) ts.push_back(to_string(t));
  CHECK(ts == std::vector<std::string>{"a@1", "a@1(a@1)"});
  CHECK(error_of([] { all_words({0, 1, {"a"}, false}); }) == ErrorKind::Contract);
  CHECK(error_of([] { all_trees({2, 1, {}, false}); }) == ErrorKind::Contract);
}

TEST_CASE("enumeration counts match closed forms") {
  for (bool ordered : {false, true})
    for (int n = 1; n <= 3; ++n)
      for (int d = 1; d <= 2; ++d)
        for (int k = 1; k <= 2; ++k) {
          std::vector<std::string> al(k == 1 ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"});
          long long words = 0, trees = 0;
          for (int m = 1; m <= n; ++m) {
            words += ipow(k, m) * data_patterns(m, d, ordered);
            trees += catalan(m - 1) * ipow(k, m) * data_patterns(m, d, ordered);
          }
          EnumBounds b{n, d, al, ordered};
          CHECK(static_cast<long long>(all_words(b).size()) == words);
          CHECK(static_cast<long long>(all_trees(b).size()) == trees);
        }
  for (int n = 1; n <= 6; ++n) CHECK(static_cast<long long>(tree_shapes(n).size()) == catalan(n - 1));
}

TEST_CASE("enumeration is duplicate free up to data isomorphism") {
  std::set<std::string> seen;
  for (const auto& t : all_trees({4, 3, {"a", "b"}, false})) {
    std::map<Datum, Datum> ren;
    DataTree c = t;
    for (auto& n : c.nodes) n.datum = ren.emplace(n.datum, static_cast<Datum>(ren.size() + 1)).first->second;
    CHECK(seen.insert(to_string(c)).second);
  }
}

TEST_CASE("bounded_sat examples") {
  auto w = bounded_sat(parse_ltl("freeze eq"), {4, 3, {}, false});
  REQUIRE(w);
  CHECK(w->size() == 1);
  CHECK_FALSE(bounded_sat(parse_xpath("a and !a"), {4, 3, {}, false}));
  XNodeP dup = xnode(XNode::And, key_formula("a"), parse_xpath("<down[a and <eps = right/right*[a]>]>"));
  CHECK_FALSE(bounded_sat(dup, {5, 3, {}, false}));
  auto m = bounded_sat(parse_xpath("<down[a and <eps = right/right*[a]>]>"), {5, 3, {}, false});
  REQUIRE(m);
  CHECK(m->size() == 3);
}

TEST_CASE("shrinking") {
  DataWord w = shrink_word(parse_word("a@1 b@2 a@3 b@2 a@4"), [](const DataWord& x) {
    int b = 0;
    for (const auto& it : x.items) b += it.label == "b";
    return b >= 2;
  });
  CHECK(to_string(w) == "b@2 b@2");
  DataTree t = shrink_tree(parse_tree("r@1(a@2(b@3) c@4(a@5 a@6))"), [](const DataTree& x) {
    int a = 0;
    for (const auto& n : x.nodes) a += n.label == "a";
    return a >= 2;
  });
  CHECK(t.size() == 4);   // subtree deletion cannot lift the nested a
}

TEST_CASE("crosscheck suites pass") {
  for (CheckKind k : {CheckKind::Ltl, CheckKind::Xpath, CheckKind::Ara, CheckKind::Atra}) {
    CrosscheckOptions o;
    o.kind = k;
    o.count = 20;
    o.seed = 7;
    CrosscheckReport r = crosscheck(o);
    CHECK_MESSAGE(r.passed(), r.to_text());
    CHECK(r.casesRun == 20);
  }
  CrosscheckOptions o;
  o.kind = CheckKind::Ara;
  o.ordered = true;
  o.count = 20;
  CHECK(crosscheck(o).passed());
  CHECK(check_kind("xpath") == CheckKind::Xpath);
  CHECK_FALSE(check_kind("nope"));
}

TEST_CASE("reports are deterministic") {
  for (CheckKind k : {CheckKind::Ltl, CheckKind::Xpath, CheckKind::Ara, CheckKind::Atra}) {
    CrosscheckOptions o;
    o.kind = k;
    o.count = 8;
    o.seed = 99;
    CHECK(crosscheck(o).to_text(false) == crosscheck(o).to_text(false));
  }
  Automaton a = random_ara(*std::make_unique<Rng>(5), 4, {"a", "b"});
  CHECK(rdc_probe(a, 100, 3).to_text(false) == rdc_probe(a, 100, 3).to_text(false));
  CHECK(subsumption_probe(200, 4, false).to_text(false) == subsumption_probe(200, 4, false).to_text(false));
}

TEST_CASE("a broken xpath nnf yields a minimized counterexample") {
  CrosscheckOptions o;
  o.kind = CheckKind::Xpath;
  o.count = 60;
  o.seed = 3;
  o.satisfiability = false;
  o.xpathNnf = [](const XNodeP& f) { return break_node(nnf_xpath(f)); };
  CrosscheckReport r = crosscheck(o);
  REQUIRE_FALSE(r.passed());
  bool sawTree = false;
  for (const auto& d : r.disagreements) {
    if (d.what != "nnf changes the denotation") continue;
    sawTree = true;
    XNodeP raw = parse_xpath(d.subject);
    XNodeP bad = break_node(nnf_xpath(raw));
    DataTree t = parse_tree(d.counterexample);
    CHECK(eval_xpath(t, raw) != eval_xpath(t, bad));
    // no single deletion or data merge still fails
    CHECK(shrink_tree(t, [&](const DataTree& x) { return eval_xpath(x, raw) != eval_xpath(x, bad); }) == t);
  }
  CHECK(sawTree);
  CHECK(r.to_text().find("DISAGREE") != std::string::npos);
}

TEST_CASE("a broken ltl nnf is caught") {
  CrosscheckOptions o;
  o.kind = CheckKind::Ltl;
  o.count = 40;
  o.satisfiability = false;
  o.ltlNnf = [](const LtlP& f) {
    LtlP n = nnf_ltl(f);
    return n->kind == Ltl::Or ? ltl(Ltl::And, n->l, n->r) : n;
  };
  CHECK_FALSE(crosscheck(o).passed());
}

TEST_CASE("rdc probe") {
  Automaton s = aut("ara { alphabet: a; initial: q0; q0 := u & s; u := store(p); s := spread(p, r); p := next p; r := neq; }");
  CHECK(rdc_probe(s, 300, 1).passed());
  CrosscheckReport bad = rdc_probe(s, 300, 1, eager_spread);
  CHECK_FALSE(bad.passed());

  Rng r(17);
  std::size_t triples = 0;
  for (int i = 0; i < 10; ++i) {
    CrosscheckReport a = rdc_probe(random_ara(r, 4, {"a", "b"}), 100, i);
    CrosscheckReport t = rdc_probe(random_atra(r, 4, {"a", "b"}), 100, i);
    CHECK(a.passed());
    CHECK(t.passed());
    triples += a.checks;
  }
  CHECK(triples >= 500);
}

TEST_CASE("order probes") {
  CHECK(subsumption_probe(2000, 1, false).passed());
  CHECK(subsumption_probe(2000, 1, true).passed());
  CHECK(embedding_probe(2000, 1).passed());
  CHECK(path_dfa_probe(10, 1, {4, 2, {"a", "b"}, false}).passed());
}

TEST_CASE("report merge adds up") {
  CrosscheckReport a, b;
  a.casesRun = 2;
  a.agreements = 2;
  a.checks = 5;
  b.casesRun = 3;
  b.agreements = 2;
  b.checks = 7;
  b.disagreements.push_back({1, "x", "s", ""});
  a.merge(b);
  CHECK(a.casesRun == 5);
  CHECK(a.agreements == 4);
  CHECK(a.checks == 12);
  CHECK(a.disagreements.size() == 1);
  CHECK_FALSE(a.passed());
}

}  // TEST_SUITE
