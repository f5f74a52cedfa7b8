#include "regsat/automaton.hpp"

#include <functional>
#include <map>
#include <set>

#include "regsat/lexer.hpp"

namespace regsat {

int Automaton::letter_index(const std::string& name) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return static_cast<int>(i);
  return -1;
}

int Automaton::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<int>(i);
  return -1;
}

void Automaton::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorKind::Contract, m); };
  if (alphabet.empty()) bad("empty alphabet");
  if (delta.size() != states.size()) bad("delta is not total");
  int n = static_cast<int>(states.size());
  if (initial < 0 || initial >= n) bad("initial state out of range");
  if (ordered && kind == AutKind::Tree) bad("ordered tests are only available on words");
  auto st = [&](int q) {
    if (q < 0 || q >= n) bad("state reference out of range");
  };
  for (const Instr& in : delta) {
    switch (in.op) {
      case Op::Letter:
      case Op::NotLetter:
        if (in.a < 0 || in.a >= static_cast<int>(alphabet.size())) bad("letter out of range");
        break;
      case Op::TypeTest: {
        auto c = static_cast<TypeCond>(in.a);
        if (kind == AutKind::Word && (c == TypeCond::Child || c == TypeCond::NoChild))
          bad("child tests need a tree automaton");
        break;
      }
      case Op::Eq:
      case Op::Neq:
        if (ordered) throw Error(ErrorKind::OrderedMismatch, "eq/neq in an ordered automaton; use the ordered tests");
        break;
      case Op::TestLt:
      case Op::TestGt:
      case Op::TestEq:
      case Op::TestNeq:
        if (!ordered) throw Error(ErrorKind::OrderedMismatch, "ordered test in an unordered automaton");
        break;
      case Op::Down:
        if (kind == AutKind::Word) bad("down move in a word automaton");
        st(in.a);
        break;
      case Op::And:
      case Op::Or:
      case Op::Spread2:
        st(in.a);
        st(in.b);
        break;
      case Op::Store:
      case Op::Move:
      case Op::Guess:
      case Op::Spread1:
        st(in.a);
        break;
    }
  }
}

// ---- expressions

static ExprP mk(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprP e_ref(int q) {
  Expr e;
  e.kind = Expr::Ref;
  e.arg = q;
  return mk(e);
}

ExprP e_and(ExprP a, ExprP b) {
  if (a->kind == Expr::True) return b;
  if (b->kind == Expr::True) return a;
  if (a->kind == Expr::False || b->kind == Expr::False) return e_false();
  Expr e;
  e.kind = Expr::And;
  e.l = std::move(a);
  e.r = std::move(b);
  return mk(e);
}

ExprP e_or(ExprP a, ExprP b) {
  if (a->kind == Expr::False) return b;
  if (b->kind == Expr::False) return a;
  if (a->kind == Expr::True || b->kind == Expr::True) return e_true();
  Expr e;
  e.kind = Expr::Or;
  e.l = std::move(a);
  e.r = std::move(b);
  return mk(e);
}

ExprP e_and_all(const std::vector<ExprP>& xs) {
  ExprP r = e_true();
  for (const auto& x : xs) r = e_and(r, x);
  return r;
}

ExprP e_or_all(const std::vector<ExprP>& xs) {
  ExprP r = e_false();
  for (const auto& x : xs) r = e_or(r, x);
  return r;
}

ExprP e_true() {
  static ExprP t = [] {
    Expr e;
    e.kind = Expr::True;
    return mk(e);
  }();
  return t;
}

ExprP e_false() {
  static ExprP f = [] {
    Expr e;
    e.kind = Expr::False;
    return mk(e);
  }();
  return f;
}

ExprP e_test(Op op, int arg) {
  Expr e;
  e.kind = Expr::Test;
  e.op = op;
  e.arg = arg;
  return mk(e);
}

ExprP e_letter(int a) { return e_test(Op::Letter, a); }
ExprP e_not_letter(int a) { return e_test(Op::NotLetter, a); }
ExprP e_type(TypeCond c) { return e_test(Op::TypeTest, static_cast<int>(c)); }

ExprP e_unary(Op op, ExprP body) {
  Expr e;
  e.kind = Expr::Unary;
  e.op = op;
  e.l = std::move(body);
  return mk(e);
}

ExprP e_store(ExprP body) { return e_unary(Op::Store, std::move(body)); }
ExprP e_move(ExprP body) { return e_unary(Op::Move, std::move(body)); }
ExprP e_down(ExprP body) { return e_unary(Op::Down, std::move(body)); }
ExprP e_guess(ExprP body) { return e_unary(Op::Guess, std::move(body)); }
ExprP e_spread1(ExprP body) { return e_unary(Op::Spread1, std::move(body)); }

ExprP e_spread2(int source, ExprP body) {
  Expr e;
  e.kind = Expr::Spread2;
  e.arg = source;
  e.l = std::move(body);
  return mk(e);
}

// ---- builder

AutomatonBuilder::AutomatonBuilder(AutKind kind, bool ordered, std::vector<std::string> alphabet)
    : kind_(kind), ordered_(ordered), alphabet_(std::move(alphabet)) {}

int AutomatonBuilder::state(const std::string& name) {
  auto it = byName_.find(name);
  if (it != byName_.end()) return it->second;
  int q = static_cast<int>(names_.size());
  names_.push_back(name);
  byName_[name] = q;
  defs_.push_back(nullptr);
  return q;
}

int AutomatonBuilder::fresh(const std::string& hint) {
  std::string n = hint;
  for (int k = 1; byName_.count(n); ++k) n = hint + "_" + std::to_string(k);
  return state(n);
}

bool AutomatonBuilder::has_state(const std::string& name) const { return byName_.count(name) > 0; }

void AutomatonBuilder::define(int q, ExprP body) { defs_.at(q) = std::move(body); }

bool AutomatonBuilder::defined(int q) const { return defs_.at(q) != nullptr; }

int AutomatonBuilder::letter(const std::string& name) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i)
    if (alphabet_[i] == name) return static_cast<int>(i);
  return -1;
}

Automaton AutomatonBuilder::build(int initial) const { return normalize_automaton(*this, initial); }

namespace {

struct Flattener {
  Automaton& out;
  std::set<std::string> taken;
  std::map<const Expr*, int> memo;
  int trueQ = -1, falseQ = -1, tyA = -1, tyB = -1;

  int add(const std::string& hint) {
    std::string n = hint;
    for (int k = 1; taken.count(n); ++k) n = hint + "_" + std::to_string(k);
    taken.insert(n);
    out.states.push_back(n);
    out.delta.push_back(Instr{});
    return static_cast<int>(out.states.size()) - 1;
  }
  void type_pair() {
    if (tyA >= 0) return;
    bool tree = out.kind == AutKind::Tree;
    tyA = add("ty");
    out.delta[tyA] = {Op::TypeTest, static_cast<int>(tree ? TypeCond::Child : TypeCond::Next)};
    tyB = add("ty");
    out.delta[tyB] = {Op::TypeTest, static_cast<int>(tree ? TypeCond::NoChild : TypeCond::NoNext)};
  }
  int true_state() {
    if (trueQ < 0) {
      type_pair();
      trueQ = add("top");
      out.delta[trueQ] = {Op::Or, tyA, tyB};
    }
    return trueQ;
  }
  int false_state() {
    if (falseQ < 0) {
      type_pair();
      falseQ = add("bot");
      out.delta[falseQ] = {Op::And, tyA, tyB};
    }
    return falseQ;
  }
  int st(const ExprP& e, const std::string& hint) {
    if (e->kind == Expr::Ref) return e->arg;
    if (e->kind == Expr::True) return true_state();
    if (e->kind == Expr::False) return false_state();
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    int q = add(hint);
    memo[e.get()] = q;
    Instr in = compile(e, hint);
    out.delta[q] = in;
    return q;
  }
  Instr compile(const ExprP& e, const std::string& hint) {
    switch (e->kind) {
      case Expr::Ref: return {Op::And, e->arg, e->arg};
      case Expr::True: return out.delta[true_state()];
      case Expr::False: return out.delta[false_state()];
      case Expr::And: return {Op::And, st(e->l, hint), st(e->r, hint)};
      case Expr::Or: return {Op::Or, st(e->l, hint), st(e->r, hint)};
      case Expr::Test: return {e->op, e->arg, -1};
      case Expr::Unary: return {e->op, st(e->l, hint), -1};
      case Expr::Spread2: return {Op::Spread2, e->arg, st(e->l, hint)};
    }
    return {};
  }
};

}  // namespace

Automaton normalize_automaton(const AutomatonBuilder& b, int initial) {
  Automaton out;
  out.kind = b.kind();
  out.ordered = b.ordered();
  out.alphabet = b.alphabet();
  Flattener f{out, {}, {}};
  const auto& names = b.names();
  // declared states keep their indices; auxiliary states follow
  for (const auto& n : names) f.add(n);
  for (std::size_t q = 0; q < names.size(); ++q) {
    if (!b.def(static_cast<int>(q)))
      throw Error(ErrorKind::UnknownState, "state '" + names[q] + "' is used but never defined");
  }
  for (std::size_t q = 0; q < names.size(); ++q)
    out.delta[q] = f.compile(b.def(static_cast<int>(q)), names[q]);
  out.initial = initial;
  out.validate();
  return out;
}

// ---- text format

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "eq", "neq", "lt", "gt", "true", "false", "store", "guess", "spread", "next", "down", "right",
      "next?", "end?", "child?", "nochild?", "right?", "noright?", "alphabet", "initial"};
  return k;
}

struct RawE {
  enum K { Name, Not, And, Or, Kw, Call, Move } k = Name;
  std::string text;                // name or keyword
  std::vector<RawE> kids;
  Token tok;
};

class AutParser {
 public:
  explicit AutParser(const std::string& text) : ts_(lex(text, true)) {}

  Automaton parse() {
    Token kindTok = ts_.expect_word("'ara' or 'atra'");
    AutKind kind;
    if (kindTok.text == "ara") kind = AutKind::Word;
    else if (kindTok.text == "atra") kind = AutKind::Tree;
    else ts_.fail_at(kindTok, "expected 'ara' or 'atra'");
    bool ordered = false;
    if (ts_.is("ordered")) {
      Token o = ts_.next();
      if (kind == AutKind::Tree) ts_.fail_at(o, "ordered tests are only available on words", ErrorKind::OrderedMismatch);
      ordered = true;
    }
    ts_.expect("{");
    std::vector<std::string> alphabet;
    std::string initial;
    Token initialTok;
    std::vector<std::pair<Token, RawE>> defs;
    bool sawAlphabet = false;
    while (!ts_.is("}")) {
      if (ts_.at_end()) ts_.fail("missing '}'");
      if (ts_.is("alphabet") && ts_.is(":", 1)) {
        ts_.next();
        ts_.next();
        sawAlphabet = true;
        while (!ts_.is(";")) {
          Token l = ts_.expect_word("letter");
          if (keywords().count(l.text)) ts_.fail_at(l, "'" + l.text + "' is reserved");
          alphabet.push_back(l.text);
        }
        ts_.next();
        continue;
      }
      if (ts_.is("initial") && ts_.is(":", 1)) {
        ts_.next();
        ts_.next();
        initialTok = ts_.expect_word("state");
        initial = initialTok.text;
        ts_.expect(";");
        continue;
      }
      Token name = ts_.expect_word("state definition");
      if (keywords().count(name.text)) ts_.fail_at(name, "'" + name.text + "' is reserved");
      ts_.expect(":=");
      RawE body = parse_or();
      ts_.expect(";");
      defs.emplace_back(name, std::move(body));
    }
    ts_.next();
    if (!ts_.at_end()) ts_.fail("trailing input after automaton");
    if (!sawAlphabet || alphabet.empty()) ts_.fail_at(kindTok, "missing or empty alphabet");
    if (initial.empty()) ts_.fail_at(kindTok, "missing initial state");

    AutomatonBuilder b(kind, ordered, alphabet);
    for (auto& [tok, _] : defs) {
      if (b.letter(tok.text) >= 0) ts_.fail_at(tok, "'" + tok.text + "' is both a letter and a state");
      if (b.has_state(tok.text) && b.defined(b.state(tok.text)))
        ts_.fail_at(tok, "state '" + tok.text + "' defined twice");
      int q = b.state(tok.text);
      b.define(q, e_true());   // placeholder so redefinition is caught
      (void)q;
    }
    std::set<std::string> definedNames;
    for (auto& [tok, _] : defs) definedNames.insert(tok.text);
    for (auto& [tok, body] : defs) b.define(b.state(tok.text), resolve(b, body, definedNames));
    if (!definedNames.count(initial)) ts_.fail_at(initialTok, "initial state '" + initial + "' is not defined", ErrorKind::UnknownState);
    return b.build(b.state(initial));
  }

 private:
  TokenStream ts_;

  RawE parse_or() {
    RawE l = parse_and();
    while (ts_.is("|")) {
      Token t = ts_.next();
      RawE r = parse_and();
      RawE n;
      n.k = RawE::Or;
      n.tok = t;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  RawE parse_and() {
    RawE l = parse_unary();
    while (ts_.is("&")) {
      Token t = ts_.next();
      RawE r = parse_unary();
      RawE n;
      n.k = RawE::And;
      n.tok = t;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  RawE parse_unary() {
    if (ts_.is("(")) {
      ts_.next();
      RawE e = parse_or();
      ts_.expect(")");
      return e;
    }
    if (ts_.is("!")) {
      Token t = ts_.next();
      Token l = ts_.expect_word("letter after '!'");
      RawE n;
      n.k = RawE::Not;
      n.text = l.text;
      n.tok = l;
      (void)t;
      return n;
    }
    Token w = ts_.expect_word("instruction");
    RawE n;
    n.tok = w;
    n.text = w.text;
    if (w.text == "store" || w.text == "guess" || w.text == "spread") {
      n.k = RawE::Call;
      ts_.expect("(");
      n.kids.push_back(parse_or());
      if (w.text == "spread" && ts_.accept(",")) n.kids.push_back(parse_or());
      ts_.expect(")");
      return n;
    }
    if (w.text == "next" || w.text == "down" || w.text == "right") {
      n.k = RawE::Move;
      n.kids.push_back(parse_unary());
      return n;
    }
    if (keywords().count(w.text)) {
      n.k = RawE::Kw;
      return n;
    }
    n.k = RawE::Name;
    return n;
  }

  [[noreturn]] void fail(const Token& t, const std::string& m, ErrorKind k = ErrorKind::Syntax) {
    ts_.fail_at(t, m, k);
  }

  ExprP resolve(const AutomatonBuilder& b, const RawE& e, const std::set<std::string>& defined) {
    bool tree = b.kind() == AutKind::Tree;
    switch (e.k) {
      case RawE::Name: {
        int a = b.letter(e.text);
        if (a >= 0) return e_letter(a);
        if (!defined.count(e.text)) fail(e.tok, "unknown state or letter '" + e.text + "'", ErrorKind::UnknownState);
        return e_ref(const_cast<AutomatonBuilder&>(b).state(e.text));
      }
      case RawE::Not: {
        int a = b.letter(e.text);
        if (a < 0) fail(e.tok, "'!' must be followed by a letter of the alphabet", ErrorKind::UnknownLabel);
        return e_not_letter(a);
      }
      case RawE::And: return e_and(resolve(b, e.kids[0], defined), resolve(b, e.kids[1], defined));
      case RawE::Or: return e_or(resolve(b, e.kids[0], defined), resolve(b, e.kids[1], defined));
      case RawE::Kw: {
        const std::string& k = e.text;
        if (k == "true") return e_true();
        if (k == "false") return e_false();
        if (k == "eq") return e_test(b.ordered() ? Op::TestEq : Op::Eq);
        if (k == "neq") return e_test(b.ordered() ? Op::TestNeq : Op::Neq);
        if (k == "lt" || k == "gt") {
          if (!b.ordered()) fail(e.tok, "'" + k + "' needs an ordered automaton", ErrorKind::OrderedMismatch);
          return e_test(k == "lt" ? Op::TestLt : Op::TestGt);
        }
        if (!tree && k == "next?") return e_type(TypeCond::Next);
        if (!tree && k == "end?") return e_type(TypeCond::NoNext);
        if (tree && k == "right?") return e_type(TypeCond::Next);
        if (tree && k == "noright?") return e_type(TypeCond::NoNext);
        if (tree && k == "child?") return e_type(TypeCond::Child);
        if (tree && k == "nochild?") return e_type(TypeCond::NoChild);
        fail(e.tok, "'" + k + "' is not available in this automaton kind");
      }
      case RawE::Call: {
        if (e.text == "store") return e_store(resolve(b, e.kids[0], defined));
        if (e.text == "guess") return e_guess(resolve(b, e.kids[0], defined));
        if (e.kids.size() == 1) return e_spread1(resolve(b, e.kids[0], defined));
        const RawE& src = e.kids[0];
        if (src.k != RawE::Name || !defined.count(src.text))
          fail(src.tok, "the first argument of a two-argument spread must be a state");
        return e_spread2(const_cast<AutomatonBuilder&>(b).state(src.text), resolve(b, e.kids[1], defined));
      }
      case RawE::Move: {
        ExprP body = resolve(b, e.kids[0], defined);
        if (e.text == "next") {
          if (tree) fail(e.tok, "use 'right' or 'down' in a tree automaton");
          return e_move(body);
        }
        if (!tree) fail(e.tok, "'" + e.text + "' is only available in tree automata");
        return e.text == "down" ? e_down(body) : e_move(body);
      }
    }
    fail(e.tok, "bad expression");
  }
};

}  // namespace

Automaton parse_automaton(const std::string& text) { return AutParser(text).parse(); }

std::string instr_to_string(const Automaton& a, const Instr& in) {
  bool tree = a.kind == AutKind::Tree;
  auto q = [&](int s) { return a.states.at(s); };
  switch (in.op) {
    case Op::Letter: return a.alphabet.at(in.a);
    case Op::NotLetter: return "!" + a.alphabet.at(in.a);
    case Op::TypeTest:
      switch (static_cast<TypeCond>(in.a)) {
        case TypeCond::Next: return tree ? "right?" : "next?";
        case TypeCond::NoNext: return tree ? "noright?" : "end?";
        case TypeCond::Child: return "child?";
        case TypeCond::NoChild: return "nochild?";
      }
      return "?";
    case Op::Store: return "store(" + q(in.a) + ")";
    case Op::Eq: return "eq";
    case Op::Neq: return "neq";
    case Op::And: return q(in.a) + " & " + q(in.b);
    case Op::Or: return q(in.a) + " | " + q(in.b);
    case Op::Move: return (tree ? "right " : "next ") + q(in.a);
    case Op::Down: return "down " + q(in.a);
    case Op::Guess: return "guess(" + q(in.a) + ")";
    case Op::Spread2: return "spread(" + q(in.a) + ", " + q(in.b) + ")";
    case Op::Spread1: return "spread(" + q(in.a) + ")";
    case Op::TestLt: return "lt";
    case Op::TestGt: return "gt";
    case Op::TestEq: return "eq";
    case Op::TestNeq: return "neq";
  }
  return "?";
}

std::string to_string(const Automaton& a) {
  std::string s = a.kind == AutKind::Tree ? "atra" : "ara";
  if (a.ordered) s += " ordered";
  s += " {\n  alphabet:";
  for (const auto& l : a.alphabet) s += " " + l;
  s += ";\n  initial: " + a.states.at(a.initial) + ";\n";
  for (std::size_t q = 0; q < a.states.size(); ++q)
    s += "  " + a.states[q] + " := " + instr_to_string(a, a.delta[q]) + ";\n";
  s += "}\n";
  return s;
}

Automaton combine(const Automaton& a, const Automaton& b, CombineMode mode) {
  if (a.kind != b.kind) throw Error(ErrorKind::Contract, "cannot combine a word automaton with a tree automaton");
  if (a.ordered != b.ordered) throw Error(ErrorKind::OrderedMismatch, "cannot combine ordered and unordered automata");
  Automaton out;
  out.kind = a.kind;
  out.ordered = a.ordered;
  out.alphabet = a.alphabet;
  for (const auto& l : b.alphabet)
    if (out.letter_index(l) < 0) out.alphabet.push_back(l);
  out.states.push_back("init");
  out.delta.push_back({});
  auto append = [&](const Automaton& src, const std::string& prefix) {
    int base = static_cast<int>(out.states.size());
    for (const auto& n : src.states) out.states.push_back(prefix + n);
    for (Instr in : src.delta) {
      switch (in.op) {
        case Op::Letter:
        case Op::NotLetter:
          in.a = out.letter_index(src.alphabet[in.a]);
          break;
        case Op::TypeTest:
        case Op::Eq:
        case Op::Neq:
        case Op::TestLt:
        case Op::TestGt:
        case Op::TestEq:
        case Op::TestNeq:
          break;
        case Op::And:
        case Op::Or:
        case Op::Spread2:
          in.a += base;
          in.b += base;
          break;
        default:
          in.a += base;
          break;
      }
      out.delta.push_back(in);
    }
    return base + src.initial;
  };
  int ia = append(a, "l_");
  int ib = append(b, "r_");
  out.delta[0] = {mode == CombineMode::Union ? Op::Or : Op::And, ia, ib};
  out.initial = 0;
  out.validate();
  return out;
}

Automaton accept_all(AutKind kind, bool ordered, std::vector<std::string> alphabet) {
  AutomatonBuilder b(kind, ordered, std::move(alphabet));
  int q = b.state("all");
  b.define(q, e_true());
  return b.build(q);
}

}  // namespace regsat
