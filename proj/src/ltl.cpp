#include "regsat/ltl.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regsat/lexer.hpp"

namespace regsat {

LtlP ltl(Ltl::Kind k, LtlP l, LtlP r) {
  auto f = std::make_shared<Ltl>();
  f->kind = k;
  f->l = std::move(l);
  f->r = std::move(r);
  return f;
}

LtlP ltl_atom(const std::string& a, bool negated) {
  auto f = std::make_shared<Ltl>();
  f->kind = negated ? Ltl::NotAtom : Ltl::Atom;
  f->label = a;
  return f;
}

// ---- parser

namespace {

const std::set<std::string> kKeywords = {"true", "false", "eq",  "lt",    "gt",      "freeze", "X", "wX",
                                         "U",    "R",     "F",   "G",     "Aprev",   "AprevIf", "Efut"};

class LtlParser {
 public:
  explicit LtlParser(const std::string& text) : ts_(lex(text, false)) {}

  LtlP run() {
    if (ts_.at_end()) ts_.fail("empty formula");
    LtlP f = disj();
    if (!ts_.at_end()) ts_.fail("unexpected '" + ts_.peek().text + "'");
    return f;
  }

 private:
  TokenStream ts_;

  static LtlP at(LtlP f, const Token& t) {
    auto g = std::make_shared<Ltl>(*f);
    g->line = t.line;
    g->col = t.col;
    return g;
  }

  LtlP disj() {
    LtlP f = conj();
    while (ts_.is("|")) {
      Token t = ts_.next();
      f = at(ltl(Ltl::Or, f, conj()), t);
    }
    return f;
  }

  LtlP conj() {
    LtlP f = unary();
    while (ts_.is("&")) {
      Token t = ts_.next();
      f = at(ltl(Ltl::And, f, unary()), t);
    }
    return f;
  }

  std::pair<LtlP, LtlP> args() {
    ts_.expect("(");
    LtlP a = disj();
    ts_.expect(",");
    LtlP b = disj();
    ts_.expect(")");
    return {a, b};
  }

  LtlP unary() {
    Token t = ts_.peek();
    if (t.kind == Token::End) ts_.fail("unexpected end of formula");
    if (ts_.accept("!")) return at(ltl(Ltl::Not, unary()), t);
    if (ts_.accept("(")) {
      LtlP f = disj();
      ts_.expect(")");
      return f;
    }
    if (t.kind != Token::Word) ts_.fail("unexpected '" + t.text + "'");
    ts_.next();
    const std::string& w = t.text;
    if (w == "true") return at(ltl(Ltl::True), t);
    if (w == "false") return at(ltl(Ltl::False), t);
    if (w == "eq") return at(ltl(Ltl::Up), t);
    if (w == "lt") return at(ltl(Ltl::UpLt), t);
    if (w == "gt") return at(ltl(Ltl::UpGt), t);
    if (w == "freeze") return at(ltl(Ltl::Freeze, unary()), t);
    if (w == "X") return at(ltl(Ltl::X, unary()), t);
    if (w == "wX") return at(ltl(Ltl::WX, unary()), t);
    if (w == "F") return at(ltl(Ltl::U, unary(), ltl(Ltl::True)), t);
    if (w == "G") return at(ltl(Ltl::R, unary(), ltl(Ltl::False)), t);
    if (w == "Aprev") return at(ltl(Ltl::Aprev, unary()), t);
    if (w == "Efut") return at(ltl(Ltl::Efut, unary()), t);
    if (w == "U" || w == "R" || w == "AprevIf") {
      auto [a, b] = args();
      Ltl::Kind k = w == "U" ? Ltl::U : w == "R" ? Ltl::R : Ltl::AprevIf;
      return at(ltl(k, a, b), t);
    }
    return at(ltl_atom(w), t);
  }
};

}  // namespace

LtlP parse_ltl(const std::string& text) { return LtlParser(text).run(); }

std::string to_string(const LtlP& f) {
  switch (f->kind) {
    case Ltl::True: return "true";
    case Ltl::False: return "false";
    case Ltl::Atom: return f->label;
    case Ltl::NotAtom: return "!" + f->label;
    case Ltl::Up: return "eq";
    case Ltl::NotUp: return "!eq";
    case Ltl::UpLt: return "lt";
    case Ltl::UpGt: return "gt";
    case Ltl::Not: return "!" + to_string(f->l);
    case Ltl::Freeze: return "freeze " + to_string(f->l);
    case Ltl::X: return "X " + to_string(f->l);
    case Ltl::WX: return "wX " + to_string(f->l);
    case Ltl::U: return "U(" + to_string(f->l) + ", " + to_string(f->r) + ")";
    case Ltl::R: return "R(" + to_string(f->l) + ", " + to_string(f->r) + ")";
    case Ltl::And: return "(" + to_string(f->l) + " & " + to_string(f->r) + ")";
    case Ltl::Or: return "(" + to_string(f->l) + " | " + to_string(f->r) + ")";
    case Ltl::Aprev: return "Aprev " + to_string(f->l);
    case Ltl::AprevIf: return "AprevIf(" + to_string(f->l) + ", " + to_string(f->r) + ")";
    case Ltl::Efut: return "Efut " + to_string(f->l);
  }
  return "";
}

bool is_nnf(const LtlP& f) {
  if (f->kind == Ltl::Not) return false;
  return (!f->l || is_nnf(f->l)) && (!f->r || is_nnf(f->r));
}

namespace {

LtlP nnf(const LtlP& f, bool neg) {
  auto keep = [&](LtlP g) {
    auto h = std::make_shared<Ltl>(*g);
    h->line = f->line;
    h->col = f->col;
    return LtlP(h);
  };
  auto quantifier = [&](const char* name) {
    throw Error(ErrorKind::NegatedQuantifier,
                std::string("negated ") + name + " is not supported (the dual quantifier is undecidable)", f->line,
                f->col);
  };
  switch (f->kind) {
    case Ltl::True: return keep(ltl(neg ? Ltl::False : Ltl::True));
    case Ltl::False: return keep(ltl(neg ? Ltl::True : Ltl::False));
    case Ltl::Atom:
    case Ltl::NotAtom: return keep(ltl_atom(f->label, neg == (f->kind == Ltl::Atom)));
    case Ltl::Up: return keep(ltl(neg ? Ltl::NotUp : Ltl::Up));
    case Ltl::NotUp: return keep(ltl(neg ? Ltl::Up : Ltl::NotUp));
    case Ltl::UpLt: return neg ? keep(ltl(Ltl::Or, ltl(Ltl::UpGt), ltl(Ltl::Up))) : f;
    case Ltl::UpGt: return neg ? keep(ltl(Ltl::Or, ltl(Ltl::UpLt), ltl(Ltl::Up))) : f;
    case Ltl::Not: return nnf(f->l, !neg);
    case Ltl::Freeze: return keep(ltl(Ltl::Freeze, nnf(f->l, neg)));
    case Ltl::X:
    case Ltl::WX: {
      bool strong = (f->kind == Ltl::X) != neg;
      return keep(ltl(strong ? Ltl::X : Ltl::WX, nnf(f->l, neg)));
    }
    case Ltl::U:
    case Ltl::R: {
      bool until = (f->kind == Ltl::U) != neg;
      return keep(ltl(until ? Ltl::U : Ltl::R, nnf(f->l, neg), nnf(f->r, neg)));
    }
    case Ltl::And:
    case Ltl::Or: {
      bool conj = (f->kind == Ltl::And) != neg;
      return keep(ltl(conj ? Ltl::And : Ltl::Or, nnf(f->l, neg), nnf(f->r, neg)));
    }
    case Ltl::Aprev:
      if (neg) quantifier("Aprev");
      return keep(ltl(Ltl::Aprev, nnf(f->l, false)));
    case Ltl::Efut:
      if (neg) quantifier("Efut");
      return keep(ltl(Ltl::Efut, nnf(f->l, false)));
    case Ltl::AprevIf:
      if (neg) quantifier("AprevIf");
      nnf(f->r, true);   // the condition is also used negatively
      return keep(ltl(Ltl::AprevIf, nnf(f->l, false), nnf(f->r, false)));
  }
  return f;
}

}  // namespace

LtlP nnf_ltl(const LtlP& f) { return nnf(f, false); }

void ltl_labels(const LtlP& f, std::vector<std::string>& out) {
  if ((f->kind == Ltl::Atom || f->kind == Ltl::NotAtom) && std::find(out.begin(), out.end(), f->label) == out.end())
    out.push_back(f->label);
  if (f->l) ltl_labels(f->l, out);
  if (f->r) ltl_labels(f->r, out);
}

bool uses_order(const LtlP& f) {
  if (f->kind == Ltl::UpLt || f->kind == Ltl::UpGt) return true;
  return (f->l && uses_order(f->l)) || (f->r && uses_order(f->r));
}

int ltl_size(const LtlP& f) { return 1 + (f->l ? ltl_size(f->l) : 0) + (f->r ? ltl_size(f->r) : 0); }

// ---- semantics

bool eval_ltl(const DataWord& w, int i, Datum d, const LtlP& f) {
  int n = static_cast<int>(w.items.size());
  if (i < 1 || i > n) throw Error(ErrorKind::UnknownPosition, "position " + std::to_string(i) + " out of range");
  const Item& it = w.at(i);
  switch (f->kind) {
    case Ltl::True: return true;
    case Ltl::False: return false;
    case Ltl::Atom: return it.label == f->label;
    case Ltl::NotAtom: return it.label != f->label;
    case Ltl::Up: return d == it.datum;
    case Ltl::NotUp: return d != it.datum;
    case Ltl::UpLt: return d < it.datum;
    case Ltl::UpGt: return d > it.datum;
    case Ltl::Not: return !eval_ltl(w, i, d, f->l);
    case Ltl::Freeze: return eval_ltl(w, i, it.datum, f->l);
    case Ltl::X: return i < n && eval_ltl(w, i + 1, d, f->l);
    case Ltl::WX: return i == n || eval_ltl(w, i + 1, d, f->l);
    case Ltl::U:
      for (int j = i; j <= n; ++j) {
        if (eval_ltl(w, j, d, f->l)) return true;
        if (!eval_ltl(w, j, d, f->r)) return false;
      }
      return false;
    case Ltl::R:
      for (int j = i; j <= n; ++j) {
        if (!eval_ltl(w, j, d, f->l)) return false;
        if (eval_ltl(w, j, d, f->r)) return true;
      }
      return true;
    case Ltl::And: return eval_ltl(w, i, d, f->l) && eval_ltl(w, i, d, f->r);
    case Ltl::Or: return eval_ltl(w, i, d, f->l) || eval_ltl(w, i, d, f->r);
    case Ltl::Aprev:
      for (int j = 1; j <= i; ++j)
        if (!eval_ltl(w, i, w.at(j).datum, f->l)) return false;
      return true;
    case Ltl::AprevIf:
      for (int j = 1; j <= i; ++j) {
        Datum e = w.at(j).datum;
        if (eval_ltl(w, j, e, f->r) && !eval_ltl(w, i, e, f->l)) return false;
      }
      return true;
    case Ltl::Efut:
      for (int j = i; j <= n; ++j)
        if (eval_ltl(w, i, w.at(j).datum, f->l)) return true;
      return false;
  }
  return false;
}

bool eval_ltl(const DataWord& w, const LtlP& f) { return eval_ltl(w, 1, w.at(1).datum, f); }

// ---- compilation

namespace {

// Saved data of one collector. The main collector keeps every datum; a
// filtered one keeps the data of positions where its condition held.
// At the last position a saved datum turns into one hold thread per check
// kind. A check thread (pc) spreads a comparison over its hold threads, and a
// hold thread fails if it fires while a check of its kind is pending, so
// every check runs before the saved data disappear.
struct Collector {
  LtlP cond;
  int save = -1, keep = -1, last = -1;
  std::vector<int> hold, pc;
};

class LtlCompiler {
 public:
  LtlCompiler(bool ordered, std::vector<std::string> alphabet)
      : ordered_(ordered), b_(AutKind::Word, ordered, std::move(alphabet)) {}

  Automaton run(const LtlP& f) {
    if (!is_nnf(f)) throw Error(ErrorKind::NotNormalized, "formula is not in negation normal form");
    if (!ordered_ && uses_order(f))
      throw Error(ErrorKind::OrderedMismatch, "lt/gt need ordered data (use --ordered)");
    int init = b_.state("init");
    int top = state(f);
    if (collectors_.empty()) {
      b_.define(init, e_ref(top));
    } else {
      int col = b_.state("col");
      std::vector<ExprP> parts = {e_store(e_ref(collectors_[0].save)),
                                  e_or(e_type(TypeCond::NoNext), e_move(e_ref(col)))};
      for (std::size_t k = 1; k < collectors_.size(); ++k) {
        const Collector& c = collectors_[k];
        int yes = state(c.cond);
        int no = state(nnf(c.cond, true));
        parts.push_back(e_or(e_store(e_ref(no)), e_and(e_store(e_ref(yes)), e_store(e_ref(c.save)))));
      }
      b_.define(col, e_and_all(parts));
      b_.define(init, e_and(e_ref(col), e_ref(top)));
    }
    return normalize_automaton(b_, init);
  }

 private:
  bool ordered_;
  AutomatonBuilder b_;
  std::map<std::string, int> memo_;
  std::vector<Collector> collectors_;
  int counter_ = 0;

  ExprP test(Op unordered, Op ord) { return e_test(ordered_ ? ord : unordered); }
  ExprP t_eq() { return test(Op::Eq, Op::TestEq); }
  ExprP t_neq() { return test(Op::Neq, Op::TestNeq); }
  // register below / above the current datum
  ExprP t_reg_lt() { return e_test(Op::TestGt); }
  ExprP t_reg_gt() { return e_test(Op::TestLt); }

  // check kinds: unordered {eq, neq}; ordered {reg >= cur, reg <= cur, neq}
  std::vector<ExprP> kind_tests(bool filtered) {
    std::vector<ExprP> k;
    if (ordered_) {
      k = {e_or(t_reg_gt(), t_eq()), e_or(t_reg_lt(), t_eq())};
      if (filtered) k.push_back(t_neq());
    } else {
      k = {t_eq()};
      if (filtered) k.push_back(t_neq());
    }
    return k;
  }

  Collector& collector(const LtlP& cond) {
    std::string key = cond ? to_string(cond) : "";
    if (collectors_.empty()) make_collector(nullptr);
    for (auto& c : collectors_)
      if ((c.cond ? to_string(c.cond) : "") == key) return c;
    return make_collector(cond);
  }

  Collector& make_collector(const LtlP& cond) {
    Collector c;
    c.cond = cond;
    std::string tag = cond ? std::to_string(collectors_.size()) : "";
    c.save = b_.state("save" + tag);
    c.keep = b_.state("keep" + tag);
    c.last = b_.state("last" + tag);
    std::vector<ExprP> tests = kind_tests(cond != nullptr);
    for (std::size_t k = 0; k < tests.size(); ++k) {
      c.hold.push_back(b_.state("hold" + tag + "_" + std::to_string(k)));
      c.pc.push_back(b_.state("check" + tag + "_" + std::to_string(k)));
    }
    b_.define(c.save, e_or(e_ref(c.keep), e_ref(c.last)));
    b_.define(c.keep, e_move(e_ref(c.save)));
    std::vector<ExprP> holds = {e_type(TypeCond::NoNext)};
    for (std::size_t k = 0; k < tests.size(); ++k) {
      holds.push_back(e_ref(c.hold[k]));
      b_.define(c.hold[k], e_spread2(c.pc[k], e_false()));
      b_.define(c.pc[k], e_spread2(c.hold[k], tests[k]));
    }
    b_.define(c.last, e_and_all(holds));
    collectors_.push_back(std::move(c));
    return collectors_.back();
  }

  int state(const LtlP& f) {
    std::string key = to_string(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    int q = b_.fresh("f" + std::to_string(counter_++));
    memo_[key] = q;
    b_.define(q, body(f, q));
    return q;
  }

  ExprP ref(const LtlP& f) { return e_ref(state(f)); }

  ExprP body(const LtlP& f, int self) {
    switch (f->kind) {
      case Ltl::True: return e_true();
      case Ltl::False: return e_false();
      case Ltl::Atom:
      case Ltl::NotAtom: {
        int a = b_.letter(f->label);
        if (a < 0) return f->kind == Ltl::Atom ? e_false() : e_true();
        return f->kind == Ltl::Atom ? e_letter(a) : e_not_letter(a);
      }
      case Ltl::Up: return t_eq();
      case Ltl::NotUp: return t_neq();
      case Ltl::UpLt: return t_reg_lt();
      case Ltl::UpGt: return t_reg_gt();
      case Ltl::Not: throw Error(ErrorKind::NotNormalized, "negation inside a compiled formula");
      case Ltl::Freeze: return e_store(ref(f->l));
      case Ltl::X: return e_move(ref(f->l));
      case Ltl::WX: return e_or(e_type(TypeCond::NoNext), e_move(ref(f->l)));
      case Ltl::U: return e_or(ref(f->l), e_and(ref(f->r), e_move(e_ref(self))));
      case Ltl::R: return e_and(ref(f->l), e_or_all({ref(f->r), e_type(TypeCond::NoNext), e_move(e_ref(self))}));
      case Ltl::And: return e_and(ref(f->l), ref(f->r));
      case Ltl::Or: return e_or(ref(f->l), ref(f->r));
      case Ltl::Efut: {
        int tail = b_.fresh("seen");
        b_.define(tail, e_or(t_eq(), e_move(e_ref(tail))));
        return e_guess(e_and(ref(f->l), e_ref(tail)));
      }
      case Ltl::Aprev:
      case Ltl::AprevIf: return quantifier(f);
    }
    return e_false();
  }

  ExprP quantifier(const LtlP& f) {
    bool filtered = f->kind == Ltl::AprevIf;
    int phi = state(f->l);
    std::size_t idx = &collector(filtered ? f->r : nullptr) - collectors_.data();
    const Collector& c = collectors_[idx];
    ExprP here = filtered ? e_spread2(c.keep, e_ref(phi)) : e_and(e_spread2(c.keep, e_ref(phi)), e_store(e_ref(phi)));
    ExprP inner = e_and(e_type(TypeCond::Next), here);
    // at the last position the register only matters through its comparison
    // with the current datum, so each comparison class is checked once
    std::vector<ExprP> last = {e_type(TypeCond::NoNext)};
    auto guessed = [&](ExprP cmp) { return e_guess(e_and(cmp, e_ref(phi))); };
    if (ordered_) {
      last.push_back(e_or(e_ref(c.pc[0]), guessed(t_reg_lt())));
      last.push_back(e_or(e_ref(c.pc[1]), guessed(t_reg_gt())));
      last.push_back(filtered ? e_or(e_ref(c.pc[2]), e_store(e_ref(phi))) : e_store(e_ref(phi)));
    } else {
      last.push_back(e_or(e_ref(c.pc[0]), guessed(t_neq())));
      last.push_back(filtered ? e_or(e_ref(c.pc[1]), e_store(e_ref(phi))) : e_store(e_ref(phi)));
    }
    return e_or(inner, e_and_all(last));
  }

 public:
  static LtlP nnf(const LtlP& f, bool neg) { return neg ? nnf_ltl(ltl(Ltl::Not, f)) : f; }
};

}  // namespace

AraAutomaton ltl_to_ara(const LtlP& f, bool ordered, const std::vector<std::string>& alphabet) {
  std::vector<std::string> labels;
  ltl_labels(f, labels);
  for (const auto& a : alphabet)
    if (std::find(labels.begin(), labels.end(), a) == labels.end()) labels.push_back(a);
  if (labels.empty()) labels.push_back("a");
  return LtlCompiler(ordered, labels).run(f);
}

std::string fresh_label(const std::vector<std::string>& used) {
  for (char c = 'a'; c <= 'z'; ++c) {
    std::string s(1, c);
    if (std::find(used.begin(), used.end(), s) == used.end()) return s;
  }
  for (int k = 0;; ++k) {
    std::string s = "l" + std::to_string(k);
    if (std::find(used.begin(), used.end(), s) == used.end()) return s;
  }
}

LtlSatResult sat_ltl(const LtlP& f, bool ordered, const SearchOptions& opt) {
  LtlP g = is_nnf(f) ? f : nnf_ltl(f);
  std::vector<std::string> labels;
  ltl_labels(g, labels);
  labels.push_back(fresh_label(labels));
  AraAutomaton a = ltl_to_ara(g, ordered, labels);
  AraResult r = ara_emptiness(a, opt);
  LtlSatResult out;
  out.verdict = r.verdict;
  out.witness = r.witness;
  out.explored = r.explored;
  return out;
}

}  // namespace regsat
