#include "util.hpp"

using namespace regsat;
using namespace testutil;

namespace {

bool holds(const std::string& word, const std::string& f) { return eval_ltl(parse_word(word), parse_ltl(f)); }

std::string nnf_text(const std::string& f) { return to_string(nnf_ltl(parse_ltl(f))); }

Verdict sat(const std::string& f, bool ordered = false) {
  LtlP raw = parse_ltl(f);
  LtlSatResult r = sat_ltl(nnf_ltl(raw), ordered);
  if (r.verdict == Verdict::NonEmpty) {
    REQUIRE(r.witness);
    CHECK(eval_ltl(*r.witness, raw));
  }
  return r.verdict;
}

}  // namespace

TEST_SUITE("ltl") {

TEST_CASE("parse examples") {
  LtlP g = parse_ltl("G(!a | freeze F(b & eq))");
  CHECK(g->kind == Ltl::R);
  LtlP f = parse_ltl("freeze eq");
  CHECK(f->kind == Ltl::Freeze);
  CHECK(f->l->kind == Ltl::Up);
  CHECK(error_of([] { parse_ltl("U(a"); }) == ErrorKind::Syntax);
  for (const char* s : {"G(!a | freeze F(b & eq))", "AprevIf(a, freeze lt)", "Efut(wX b) & X true", "R(a, false)"})
    CHECK(to_string(parse_ltl(to_string(parse_ltl(s)))) == to_string(parse_ltl(s)));
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_ltl("a &\n  & b");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Syntax);
    CHECK(e.line() == 2);
    CHECK(e.col() == 3);
  }
}

TEST_CASE("nnf examples") {
  CHECK(nnf_text("!!a") == nnf_text("a"));
  CHECK(nnf_text("!U(a, b)") == nnf_text("R(!a, !b)"));
  CHECK(nnf_text("!X a") == nnf_text("wX !a"));
  CHECK(nnf_text("!freeze eq") == to_string(ltl(Ltl::Freeze, ltl(Ltl::NotUp))));
  CHECK(nnf_text("!(a & b)") == nnf_text("!a | !b"));
  CHECK(is_nnf(nnf_ltl(parse_ltl("!G(a | !freeze X !eq)"))));
}

TEST_CASE("negated quantifiers are rejected") {
  CHECK(error_of([] { nnf_ltl(parse_ltl("!Aprev a")); }) == ErrorKind::NegatedQuantifier);
  CHECK(error_of([] { nnf_ltl(parse_ltl("!(b & AprevIf(a, b))")); }) == ErrorKind::NegatedQuantifier);
  CHECK(error_of([] { nnf_ltl(parse_ltl("!X Efut eq")); }) == ErrorKind::NegatedQuantifier);
  CHECK(is_nnf(nnf_ltl(parse_ltl("!!Aprev a"))));
}

TEST_CASE("ordered complements") {
  std::vector<std::string> words = {"a@1 a@0", "a@0 a@1", "a@1 a@1", "a@2 a@0 a@1"};
  for (const auto& w : words) {
    CHECK(holds(w, "freeze X !lt") == holds(w, "freeze X (gt | eq)"));
    CHECK(holds(w, "freeze X !gt") == holds(w, "freeze X (lt | eq)"));
    CHECK(eval_ltl(parse_word(w), nnf_ltl(parse_ltl("freeze X !lt"))) == holds(w, "freeze X (gt | eq)"));
  }
}

TEST_CASE("eval examples") {
  CHECK(holds("a@1 b@1", "freeze X eq"));
  CHECK_FALSE(holds("a@1 b@2", "freeze X eq"));
  CHECK(holds("a@1", "wX false"));
  CHECK_FALSE(holds("a@1", "X true"));
  CHECK(holds("a@1 a@0", "freeze X gt"));
  CHECK_FALSE(holds("a@1 a@2", "freeze X gt"));
  CHECK(holds("a@1 a@2", "freeze X lt"));
  CHECK(holds("a@1 b@2 b@1", "G(!a | freeze F(b & eq))"));
  CHECK_FALSE(holds("a@1 b@2", "G(!a | freeze F(b & eq))"));
  CHECK(holds("a@1 a@2 b@1", "X X Aprev (a | b)"));
  CHECK(holds("a@1 a@2 b@1", "X X Efut (eq & b)"));
  CHECK_FALSE(holds("a@1 a@1 b@1", "X X Efut (eq & a & X true)"));
  CHECK(error_of([] { eval_ltl(parse_word("a@1"), 2, 1, parse_ltl("a")); }) == ErrorKind::UnknownPosition);
}

TEST_CASE("finite-word until and release") {
  CHECK(holds("a@1 a@1 b@1", "U(b, a)"));
  CHECK_FALSE(holds("a@1 a@1", "U(b, a)"));
  CHECK(holds("a@1 a@1", "R(a, false)"));
  CHECK_FALSE(holds("a@1 b@1", "G a"));
  CHECK(holds("b@1 b@1", "R(b, a)"));
}

TEST_CASE("ltl_to_ara of an atom") {
  LtlP a = parse_ltl("a");
  Automaton m = ltl_to_ara(a, false, {"b"});
  for (const auto& w : all_words({3, 2, {"a", "b"}, false})) CHECK(ara_membership(m, w) == eval_ltl(w, a));
  CHECK(error_of([] { ltl_to_ara(parse_ltl("!!a"), false); }) == ErrorKind::NotNormalized);
  CHECK(error_of([] { ltl_to_ara(parse_ltl("freeze X gt"), false); }) == ErrorKind::OrderedMismatch);
}

TEST_CASE("capture on fixed formulas") {
  const char* fs[] = {
      "G(!a | freeze F(b & eq))", "freeze X X !eq", "Aprev (a | freeze X eq)", "AprevIf(X b, b)",
      "Efut (a & X b)", "freeze G(eq | b)", "R(freeze X eq, a)", "F(b & Aprev !eq)",
  };
  EnumBounds b{4, 3, {"a", "b"}, false};
  auto words = all_words(b);
  for (const char* s : fs) {
    LtlP f = nnf_ltl(parse_ltl(s));
    Automaton m = ltl_to_ara(f, false, b.alphabet);
    for (const auto& w : words) CHECK_MESSAGE(ara_membership(m, w) == eval_ltl(w, f), s, " on ", to_string(w));
  }
}

TEST_CASE("sat examples") {
  CHECK(sat("G(!a | freeze F(b & eq))") == Verdict::NonEmpty);
  CHECK(sat("Efut(freeze false)") == Verdict::Empty);
  CHECK_FALSE(bounded_sat(parse_ltl("Efut(freeze false)"), {4, 3, {}, false}));
  CHECK(sat("freeze (eq & !eq)") == Verdict::Empty);
  CHECK(sat("freeze X gt", true) == Verdict::NonEmpty);
  CHECK(sat("freeze (lt | gt)", true) == Verdict::Empty);
  CHECK(sat("a & G(!a | X b)") == Verdict::NonEmpty);
}

TEST_CASE("nnf properties on random formulas") {
  Rng r(21);
  EnumBounds b{3, 2, {"a", "b"}, false};
  auto words = all_words(b);
  for (int i = 0; i < 200; ++i) {
    LtlP f = random_ltl(r, 3, b.alphabet);
    REQUIRE(is_nnf(f));
    CHECK(to_string(nnf_ltl(f)) == to_string(f));
    LtlP neg = ltl(Ltl::Not, f);
    LtlP n;
    try {
      n = nnf_ltl(neg);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NegatedQuantifier);
      continue;
    }
    CHECK(to_string(nnf_ltl(n)) == to_string(n));
    for (const auto& w : words) CHECK(eval_ltl(w, n) == !eval_ltl(w, f));
  }
}

}  // TEST_SUITE
