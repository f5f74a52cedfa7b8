#include "regsat/xpath.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "regsat/lexer.hpp"
#include "regsat/ltl.hpp"

namespace regsat {

XPathP xpath(XPath::Kind k, XPathP l, XPathP r) {
  auto p = std::make_shared<XPath>();
  p->kind = k;
  p->l = std::move(l);
  p->r = std::move(r);
  return p;
}

XPathP xpath_test(XNodeP f) {
  auto p = std::make_shared<XPath>();
  p->kind = XPath::Test;
  p->test = std::move(f);
  return p;
}

XNodeP xnode(XNode::Kind k, XNodeP l, XNodeP r) {
  auto f = std::make_shared<XNode>();
  f->kind = k;
  f->l = std::move(l);
  f->r = std::move(r);
  return f;
}

XNodeP xnode_label(const std::string& a, bool negated) {
  auto f = std::make_shared<XNode>();
  f->kind = negated ? XNode::NotLabel : XNode::Label;
  f->label = a;
  return f;
}

XNodeP xnode_data(XNode::Kind k, XPathP a, XPathP b) {
  auto f = std::make_shared<XNode>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

XNodeP xnode_and(XNodeP a, XNodeP b) {
  if (a->kind == XNode::False || b->kind == XNode::True) return a;
  if (b->kind == XNode::False || a->kind == XNode::True) return b;
  return xnode(XNode::And, std::move(a), std::move(b));
}

XNodeP xnode_or(XNodeP a, XNodeP b) {
  if (a->kind == XNode::True || b->kind == XNode::False) return a;
  if (b->kind == XNode::True || a->kind == XNode::False) return b;
  return xnode(XNode::Or, std::move(a), std::move(b));
}

// ---- parsing

namespace {

const std::set<std::string> kReserved = {"and", "or", "down", "right", "eps", "first", "true", "false"};

class XParser {
 public:
  explicit XParser(const std::string& text) : ts_(lex(text, false)) {}

  XNodeP run_node() {
    if (ts_.at_end()) ts_.fail("empty formula");
    XNodeP f = disj();
    if (!ts_.at_end()) ts_.fail("unexpected '" + ts_.peek().text + "'");
    return f;
  }

  XPathP run_path() {
    if (ts_.at_end()) ts_.fail("empty path");
    XPathP p = path();
    if (!ts_.at_end()) ts_.fail("unexpected '" + ts_.peek().text + "'");
    return p;
  }

 private:
  TokenStream ts_;

  static XNodeP at(XNodeP f, const Token& t) {
    auto g = std::make_shared<XNode>(*f);
    g->line = t.line;
    g->col = t.col;
    return g;
  }

  XNodeP disj() {
    XNodeP f = conj();
    while (ts_.is("or")) {
      Token t = ts_.next();
      f = at(xnode(XNode::Or, f, conj()), t);
    }
    return f;
  }

  XNodeP conj() {
    XNodeP f = unary();
    while (ts_.is("and")) {
      Token t = ts_.next();
      f = at(xnode(XNode::And, f, unary()), t);
    }
    return f;
  }

  XNodeP unary() {
    Token t = ts_.peek();
    if (t.kind == Token::End) ts_.fail("unexpected end of formula");
    if (ts_.accept("!")) return at(xnode(XNode::Not, unary()), t);
    if (ts_.accept("(")) {
      XNodeP f = disj();
      ts_.expect(")");
      return f;
    }
    if (ts_.accept("<")) {
      XPathP a = path();
      XNodeP f;
      if (ts_.accept("=")) f = xnode_data(XNode::Eq, a, path());
      else if (ts_.accept("!=")) f = xnode_data(XNode::Neq, a, path());
      else f = xnode_data(XNode::Some, a);
      ts_.expect(">");
      return at(f, t);
    }
    if (t.kind != Token::Word) ts_.fail("unexpected '" + t.text + "'");
    ts_.next();
    if (t.text == "true") return at(xnode(XNode::True), t);
    if (t.text == "false") return at(xnode(XNode::False), t);
    if (kReserved.count(t.text)) ts_.fail_at(t, "'" + t.text + "' is not a node expression");
    return at(xnode_label(t.text), t);
  }

  XPathP path() {
    XPathP p = cat();
    while (ts_.accept("|")) p = xpath(XPath::Union, p, cat());
    return p;
  }

  XPathP cat() {
    XPathP p = post();
    while (ts_.accept("/")) p = xpath(XPath::Concat, p, post());
    return p;
  }

  XPathP post() {
    XPathP p = step();
    while (ts_.is("[")) p = xpath(XPath::Concat, p, step());
    return p;
  }

  XPathP step() {
    Token t = ts_.peek();
    if (ts_.accept("[")) {
      XNodeP f = disj();
      ts_.expect("]");
      return xpath_test(f);
    }
    if (ts_.accept("(")) {
      XPathP p = path();
      ts_.expect(")");
      if (ts_.accept("*")) p = xpath(XPath::Star, p);
      return p;
    }
    if (t.kind != Token::Word) ts_.fail("expected a path step, got '" + t.text + "'");
    ts_.next();
    if (t.text == "down") return xpath(ts_.accept("*") ? XPath::DownStar : XPath::Down);
    if (t.text == "right") return xpath(ts_.accept("*") ? XPath::RightStar : XPath::Right);
    if (t.text == "first") return xpath(XPath::First);
    if (t.text == "eps") return xpath(XPath::Eps);
    ts_.fail_at(t, "unknown axis '" + t.text + "'");
  }
};

}  // namespace

XNodeP parse_xpath(const std::string& text) { return XParser(text).run_node(); }
XPathP parse_xpath_path(const std::string& text) { return XParser(text).run_path(); }

std::string to_string(const XPathP& p) {
  switch (p->kind) {
    case XPath::Down: return "down";
    case XPath::DownStar: return "down*";
    case XPath::Right: return "right";
    case XPath::RightStar: return "right*";
    case XPath::Eps: return "eps";
    case XPath::First: return "first";
    case XPath::Test: return "[" + to_string(p->test) + "]";
    case XPath::Concat: return to_string(p->l) + "/" + to_string(p->r);
    case XPath::Union: return "(" + to_string(p->l) + " | " + to_string(p->r) + ")";
    case XPath::Star: return "(" + to_string(p->l) + ")*";
  }
  return "";
}

std::string to_string(const XNodeP& f) {
  switch (f->kind) {
    case XNode::True: return "true";
    case XNode::False: return "false";
    case XNode::Label: return f->label;
    case XNode::NotLabel: return "!" + f->label;
    case XNode::And: return "(" + to_string(f->l) + " and " + to_string(f->r) + ")";
    case XNode::Or: return "(" + to_string(f->l) + " or " + to_string(f->r) + ")";
    case XNode::Not: return "!" + to_string(f->l);
    case XNode::Some: return "<" + to_string(f->a) + ">";
    case XNode::Eq: return "<" + to_string(f->a) + " = " + to_string(f->b) + ">";
    case XNode::Neq: return "<" + to_string(f->a) + " != " + to_string(f->b) + ">";
    case XNode::NotSome: return "!<" + to_string(f->a) + ">";
    case XNode::NotEq: return "!<" + to_string(f->a) + " = " + to_string(f->b) + ">";
    case XNode::NotNeq: return "!<" + to_string(f->a) + " != " + to_string(f->b) + ">";
  }
  return "";
}

namespace {

void path_labels(const XPathP& p, std::vector<std::string>& out) {
  if (p->test) xpath_labels(p->test, out);
  if (p->l) path_labels(p->l, out);
  if (p->r) path_labels(p->r, out);
}

int path_size(const XPathP& p) {
  int n = 1;
  if (p->test) n += xpath_size(p->test);
  if (p->l) n += path_size(p->l);
  if (p->r) n += path_size(p->r);
  return n;
}

}  // namespace

void xpath_labels(const XNodeP& f, std::vector<std::string>& out) {
  if ((f->kind == XNode::Label || f->kind == XNode::NotLabel) &&
      std::find(out.begin(), out.end(), f->label) == out.end())
    out.push_back(f->label);
  if (f->l) xpath_labels(f->l, out);
  if (f->r) xpath_labels(f->r, out);
  if (f->a) path_labels(f->a, out);
  if (f->b) path_labels(f->b, out);
}

int xpath_size(const XNodeP& f) {
  int n = 1;
  if (f->l) n += xpath_size(f->l);
  if (f->r) n += xpath_size(f->r);
  if (f->a) n += path_size(f->a);
  if (f->b) n += path_size(f->b);
  return n;
}

// ---- negation normal form

namespace {

XNodeP nnf(const XNodeP& f, bool neg);

XPathP nnf_path(const XPathP& p) {
  switch (p->kind) {
    case XPath::Test: return xpath_test(nnf(p->test, false));
    case XPath::Concat:
    case XPath::Union: return xpath(p->kind, nnf_path(p->l), nnf_path(p->r));
    case XPath::Star: return xpath(XPath::Star, nnf_path(p->l));
    default: return p;
  }
}

XNode::Kind flip(XNode::Kind k) {
  switch (k) {
    case XNode::Some: return XNode::NotSome;
    case XNode::Eq: return XNode::NotEq;
    case XNode::Neq: return XNode::NotNeq;
    case XNode::NotSome: return XNode::Some;
    case XNode::NotEq: return XNode::Eq;
    case XNode::NotNeq: return XNode::Neq;
    default: return k;
  }
}

XNodeP nnf(const XNodeP& f, bool neg) {
  XNodeP g;
  switch (f->kind) {
    case XNode::True:
    case XNode::False: {
      bool v = (f->kind == XNode::True) != neg;
      g = xnode(v ? XNode::True : XNode::False);
      break;
    }
    case XNode::Label:
    case XNode::NotLabel: g = xnode_label(f->label, (f->kind == XNode::NotLabel) != neg); break;
    case XNode::Not: return nnf(f->l, !neg);
    case XNode::And:
    case XNode::Or: {
      bool conj = (f->kind == XNode::And) != neg;
      g = xnode(conj ? XNode::And : XNode::Or, nnf(f->l, neg), nnf(f->r, neg));
      break;
    }
    default:
      g = xnode_data(neg ? flip(f->kind) : f->kind, nnf_path(f->a), f->b ? nnf_path(f->b) : nullptr);
      break;
  }
  auto h = std::make_shared<XNode>(*g);
  h->line = f->line;
  h->col = f->col;
  return h;
}

bool path_nnf(const XPathP& p) {
  if (p->test && !is_nnf(p->test)) return false;
  return (!p->l || path_nnf(p->l)) && (!p->r || path_nnf(p->r));
}

}  // namespace

XNodeP nnf_xpath(const XNodeP& f) { return nnf(f, false); }

bool is_nnf(const XNodeP& f) {
  if (f->kind == XNode::Not) return false;
  if (f->l && !is_nnf(f->l)) return false;
  if (f->r && !is_nnf(f->r)) return false;
  if (f->a && !path_nnf(f->a)) return false;
  if (f->b && !path_nnf(f->b)) return false;
  return true;
}

// ---- path normal form

namespace {

XPathP cat(XPathP a, XPathP b) {
  if (!a) return b;
  if (!b) return a;
  return xpath(XPath::Concat, std::move(a), std::move(b));
}

bool starts_with_step(const XPathP& p) {
  switch (p->kind) {
    case XPath::First:
    case XPath::Right: return true;
    case XPath::Concat: return starts_with_step(p->l);
    default: return false;
  }
}

bool shaped(const XPathP& p) { return p->kind == XPath::Eps || starts_with_step(p); }

// α ≡ ⋃ [tests] rest, where rest is empty (ε) or starts with a step
struct Head {
  std::vector<XNodeP> tests;
  XPathP rest;
};

std::string head_key(const Head& h) {
  std::vector<std::string> ts;
  for (const auto& t : h.tests) ts.push_back(to_string(t));
  std::sort(ts.begin(), ts.end());
  std::string k;
  for (const auto& s : ts) k += s + ";";
  return k + "|" + (h.rest ? to_string(h.rest) : "");
}

std::vector<Head> dedupe(std::vector<Head> hs) {
  std::vector<Head> out;
  std::set<std::string> seen;
  for (auto& h : hs) {
    std::set<std::string> ts;
    std::vector<XNodeP> uniq;
    for (auto& t : h.tests)
      if (ts.insert(to_string(t)).second) uniq.push_back(t);
    h.tests = std::move(uniq);
    if (seen.insert(head_key(h)).second) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Head> heads(const XPathP& p) {
  switch (p->kind) {
    case XPath::First:
    case XPath::Right: return {{{}, p}};
    case XPath::Eps: return {{{}, nullptr}};
    case XPath::Test: return {{{p->test}, nullptr}};
    case XPath::RightStar: return {{{}, nullptr}, {{}, cat(xpath(XPath::Right), p)}};
    case XPath::Union: {
      auto a = heads(p->l);
      auto b = heads(p->r);
      a.insert(a.end(), b.begin(), b.end());
      return dedupe(std::move(a));
    }
    case XPath::Concat: {
      std::vector<Head> out;
      std::vector<Head> hb;
      bool hbDone = false;
      for (auto& h : heads(p->l)) {
        if (h.rest) {
          out.push_back({h.tests, cat(h.rest, p->r)});
          continue;
        }
        if (!hbDone) {
          hb = heads(p->r);
          hbDone = true;
        }
        for (const auto& g : hb) {
          Head n = h;
          n.tests.insert(n.tests.end(), g.tests.begin(), g.tests.end());
          n.rest = g.rest;
          out.push_back(std::move(n));
        }
      }
      return dedupe(std::move(out));
    }
    case XPath::Star: {
      // iterations that do not move only add tests at the start node, so they are subsumed
      std::vector<Head> out = {{{}, nullptr}};
      for (auto& h : heads(p->l))
        if (h.rest) out.push_back({h.tests, cat(h.rest, p)});
      return dedupe(std::move(out));
    }
    case XPath::Down:
    case XPath::DownStar: return heads(fcns_path(p));
  }
  return {};
}

XNodeP conj_all(const std::vector<XNodeP>& fs) {
  XNodeP r = xnode(XNode::True);
  for (const auto& f : fs) r = xnode_and(r, f);
  return r;
}

XNodeP neg_normalized(const XNodeP& f) { return normalize_paths(nnf_xpath(xnode(XNode::Not, f))); }

XNodeP disj_negs(const std::vector<XNodeP>& fs) {
  XNodeP r = xnode(XNode::False);
  for (const auto& f : fs) r = xnode_or(r, neg_normalized(f));
  return r;
}

std::vector<Head> shape(const XPathP& p) {
  if (shaped(p)) return {{{}, p}};
  auto hs = heads(p);
  for (auto& h : hs)
    if (!h.rest) h.rest = xpath(XPath::Eps);
  return hs;
}

bool path_normalized(const XPathP& p) {
  if (p->kind == XPath::Down || p->kind == XPath::DownStar) return false;
  if (p->test && !is_normalized(p->test)) return false;
  return (!p->l || path_normalized(p->l)) && (!p->r || path_normalized(p->r));
}

}  // namespace

XPathP fcns_path(const XPathP& p) {
  switch (p->kind) {
    case XPath::Down: return cat(xpath(XPath::First), xpath(XPath::RightStar));
    case XPath::DownStar: return xpath(XPath::Star, cat(xpath(XPath::First), xpath(XPath::RightStar)));
    case XPath::Test: return xpath_test(normalize_paths(p->test));
    case XPath::Concat:
    case XPath::Union: return xpath(p->kind, fcns_path(p->l), fcns_path(p->r));
    case XPath::Star: return xpath(XPath::Star, fcns_path(p->l));
    default: return p;
  }
}

XNodeP normalize_paths(const XNodeP& f) {
  switch (f->kind) {
    case XNode::True:
    case XNode::False:
    case XNode::Label:
    case XNode::NotLabel: return f;
    case XNode::Not: return xnode(XNode::Not, normalize_paths(f->l));
    case XNode::And:
    case XNode::Or: return xnode(f->kind, normalize_paths(f->l), normalize_paths(f->r));
    default: break;
  }
  bool unary = f->kind == XNode::Some || f->kind == XNode::NotSome;
  bool positive = f->kind == XNode::Some || f->kind == XNode::Eq || f->kind == XNode::Neq;
  auto ha = shape(fcns_path(f->a));
  std::vector<Head> hb = unary ? std::vector<Head>{{{}, nullptr}} : shape(fcns_path(f->b));
  XNodeP out = xnode(positive ? XNode::False : XNode::True);
  for (const auto& x : ha)
    for (const auto& y : hb) {
      std::vector<XNodeP> tests = x.tests;
      tests.insert(tests.end(), y.tests.begin(), y.tests.end());
      XNodeP test = xnode_data(f->kind, x.rest, unary ? nullptr : y.rest);
      if (positive) out = xnode_or(out, xnode_and(conj_all(tests), test));
      else out = xnode_and(out, xnode_or(disj_negs(tests), test));
    }
  return out;
}

bool is_normalized(const XNodeP& f) {
  if (f->l && !is_normalized(f->l)) return false;
  if (f->r && !is_normalized(f->r)) return false;
  for (const auto& p : {f->a, f->b}) {
    if (!p) continue;
    if (!shaped(p) || !path_normalized(p)) return false;
  }
  return true;
}

// ---- semantics

namespace {

using Rel = std::vector<std::vector<char>>;

class Evaluator {
 public:
  explicit Evaluator(const DataTree& t) : t_(t), n_(static_cast<int>(t.size())) {}

  const std::vector<char>& node(const XNodeP& f) {
    auto it = nodes_.find(f.get());
    if (it != nodes_.end()) return it->second;
    std::vector<char> s(n_, 0);
    switch (f->kind) {
      case XNode::True: std::fill(s.begin(), s.end(), 1); break;
      case XNode::False: break;
      case XNode::Label:
      case XNode::NotLabel:
        for (int x = 0; x < n_; ++x) s[x] = (t_.nodes[x].label == f->label) == (f->kind == XNode::Label);
        break;
      case XNode::Not: {
        const auto& a = node(f->l);
        for (int x = 0; x < n_; ++x) s[x] = !a[x];
        break;
      }
      case XNode::And:
      case XNode::Or: {
        const auto a = node(f->l);
        const auto& b = node(f->r);
        for (int x = 0; x < n_; ++x) s[x] = f->kind == XNode::And ? (a[x] && b[x]) : (a[x] || b[x]);
        break;
      }
      case XNode::Some:
      case XNode::NotSome: {
        const Rel& a = path(f->a);
        for (int x = 0; x < n_; ++x) {
          bool any = std::find(a[x].begin(), a[x].end(), 1) != a[x].end();
          s[x] = any == (f->kind == XNode::Some);
        }
        break;
      }
      default: {
        const Rel a = path(f->a);
        const Rel& b = path(f->b);
        bool wantEq = f->kind == XNode::Eq || f->kind == XNode::NotEq;
        bool positive = f->kind == XNode::Eq || f->kind == XNode::Neq;
        for (int x = 0; x < n_; ++x) {
          bool hit = false;
          for (int y = 0; y < n_ && !hit; ++y) {
            if (!a[x][y]) continue;
            for (int z = 0; z < n_ && !hit; ++z)
              if (b[x][z] && (t_.nodes[y].datum == t_.nodes[z].datum) == wantEq) hit = true;
          }
          s[x] = hit == positive;
        }
        break;
      }
    }
    return nodes_[f.get()] = std::move(s);
  }

  const Rel& path(const XPathP& p) {
    auto it = paths_.find(p.get());
    if (it != paths_.end()) return it->second;
    Rel r(n_, std::vector<char>(n_, 0));
    switch (p->kind) {
      case XPath::Down:
        for (int x = 0; x < n_; ++x)
          for (int c : t_.nodes[x].children) r[x][c] = 1;
        break;
      case XPath::First:
        for (int x = 0; x < n_; ++x)
          if (int c = t_.first_child(x); c >= 0) r[x][c] = 1;
        break;
      case XPath::Right:
        for (int x = 0; x < n_; ++x)
          if (int c = t_.next_sibling(x); c >= 0) r[x][c] = 1;
        break;
      case XPath::DownStar: r = star(path(xpath(XPath::Down))); break;
      case XPath::RightStar: r = star(path(xpath(XPath::Right))); break;
      case XPath::Eps:
        for (int x = 0; x < n_; ++x) r[x][x] = 1;
        break;
      case XPath::Test: {
        const auto& s = node(p->test);
        for (int x = 0; x < n_; ++x) r[x][x] = s[x];
        break;
      }
      case XPath::Concat: {
        const Rel a = path(p->l);
        const Rel& b = path(p->r);
        for (int x = 0; x < n_; ++x)
          for (int y = 0; y < n_; ++y)
            if (a[x][y])
              for (int z = 0; z < n_; ++z) r[x][z] |= b[y][z];
        break;
      }
      case XPath::Union: {
        const Rel a = path(p->l);
        const Rel& b = path(p->r);
        for (int x = 0; x < n_; ++x)
          for (int y = 0; y < n_; ++y) r[x][y] = a[x][y] || b[x][y];
        break;
      }
      case XPath::Star: r = star(path(p->l)); break;
    }
    keep_.push_back(p);
    return paths_[p.get()] = std::move(r);
  }

 private:
  const DataTree& t_;
  int n_;
  std::unordered_map<const XNode*, std::vector<char>> nodes_;
  std::unordered_map<const XPath*, Rel> paths_;
  std::vector<XPathP> keep_;   // temporaries stay alive while keyed by address

  Rel star(Rel m) const {
    for (int x = 0; x < n_; ++x) m[x][x] = 1;
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (m[i][k])
          for (int j = 0; j < n_; ++j) m[i][j] |= m[k][j];
    return m;
  }
};

}  // namespace

std::vector<char> eval_xpath(const DataTree& t, const XNodeP& f) { return Evaluator(t).node(f); }
std::vector<std::vector<char>> eval_xpath(const DataTree& t, const XPathP& p) { return Evaluator(t).path(p); }
bool satisfies(const DataTree& t, const XNodeP& f) { return !t.nodes.empty() && eval_xpath(t, f)[0]; }

XNodeP key_formula(const std::string& a) {
  auto la = [&] { return xpath_test(xnode_label(a)); };
  auto down_plus = cat(xpath(XPath::Down), xpath(XPath::DownStar));
  auto right_plus = cat(xpath(XPath::Right), xpath(XPath::RightStar));
  XNodeP self = xnode_data(XNode::Eq, cat(xpath(XPath::Eps), la()), cat(down_plus, la()));
  XNodeP side = xnode_data(XNode::Eq, cat(xpath(XPath::DownStar), la()),
                           cat(cat(right_plus, xpath(XPath::DownStar)), la()));
  XPathP inner = cat(xpath(XPath::DownStar), xpath_test(xnode(XNode::Or, self, side)));
  return xnode(XNode::Not, xnode_data(XNode::Some, inner));
}

// ---- path automata

namespace {

class Glushkov {
 public:
  enum Sym { FirstSym, RightSym, TestSym };
  struct Info {
    bool nullable = false;
    std::vector<int> first, last;
  };
  std::vector<Sym> sym;
  std::vector<int> test;   // TestSym: index into tests
  std::vector<std::set<int>> follow;
  std::vector<XNodeP> tests;
  std::map<std::string, int> testIndex;

  Info build(const XPathP& p) {
    switch (p->kind) {
      case XPath::First: return leaf(FirstSym, -1);
      case XPath::Right: return leaf(RightSym, -1);
      case XPath::Test: {
        std::string k = to_string(p->test);
        auto it = testIndex.find(k);
        int ti;
        if (it == testIndex.end()) {
          ti = static_cast<int>(tests.size());
          testIndex[k] = ti;
          tests.push_back(p->test);
        } else {
          ti = it->second;
        }
        return leaf(TestSym, ti);
      }
      case XPath::Eps: return {true, {}, {}};
      case XPath::RightStar: return build(xpath(XPath::Star, xpath(XPath::Right)));
      case XPath::Down:
      case XPath::DownStar: return build(fcns_path(p));
      case XPath::Concat: {
        Info a = build(p->l), b = build(p->r);
        for (int x : a.last) follow[x].insert(b.first.begin(), b.first.end());
        Info r;
        r.nullable = a.nullable && b.nullable;
        r.first = a.first;
        if (a.nullable) r.first.insert(r.first.end(), b.first.begin(), b.first.end());
        r.last = b.last;
        if (b.nullable) r.last.insert(r.last.end(), a.last.begin(), a.last.end());
        return r;
      }
      case XPath::Union: {
        Info a = build(p->l), b = build(p->r);
        a.nullable = a.nullable || b.nullable;
        a.first.insert(a.first.end(), b.first.begin(), b.first.end());
        a.last.insert(a.last.end(), b.last.begin(), b.last.end());
        return a;
      }
      case XPath::Star: {
        Info a = build(p->l);
        for (int x : a.last) follow[x].insert(a.first.begin(), a.first.end());
        a.nullable = true;
        return a;
      }
    }
    return {};
  }

 private:
  Info leaf(Sym s, int ti) {
    int id = static_cast<int>(sym.size());
    sym.push_back(s);
    test.push_back(ti);
    follow.emplace_back();
    return {false, {id}, {id}};
  }
};

constexpr int kStart = -1;
constexpr std::size_t kMaxTests = 16;

}  // namespace

int PathDfa::step_test(int s, const std::vector<char>& holds) const {
  const State& st = states[s];
  std::size_t mask = 0;
  for (std::size_t k = 0; k < st.tests.size(); ++k)
    if (holds[st.tests[k]]) mask |= std::size_t(1) << k;
  return st.next[mask];
}

std::optional<std::vector<std::pair<bool, int>>> fcns_steps(const DataTree& t, int x, int y) {
  std::vector<std::pair<bool, int>> out;
  int cur = y;
  while (cur != x) {
    int p = t.nodes[cur].parent;
    if (p < 0) return std::nullopt;
    int k = t.index_in_parent(cur);
    out.push_back({k == 0, cur});
    cur = k == 0 ? p : t.nodes[p].children[k - 1];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool PathDfa::accepts_str(const DataTree& t, int x, int y) const {
  auto steps = fcns_steps(t, x, y);
  if (!steps) return false;
  std::vector<std::vector<char>> holds;
  for (const auto& f : tests) holds.push_back(eval_xpath(t, f));
  int s = 0;
  for (const auto& [down, node] : *steps) {
    s = down ? states[s].down : states[s].right;
    std::vector<char> h(tests.size());
    for (std::size_t k = 0; k < tests.size(); ++k) h[k] = holds[k][node];
    s = step_test(s, h);
  }
  return states[s].accepting;
}

PathDfa build_path_dfa(const XPathP& alpha) {
  Glushkov g;
  auto info = g.build(alpha);
  for (int p : info.first)
    if (g.sym[p] == Glushkov::TestSym)
      throw Error(ErrorKind::NotNormalized, "path starts with a test: " + to_string(alpha));
  std::set<int> lastSet(info.last.begin(), info.last.end());
  PathDfa d;
  d.tests = g.tests;

  auto follow_of = [&](const std::vector<int>& r) {
    std::set<int> out;
    for (int p : r) {
      if (p == kStart) out.insert(info.first.begin(), info.first.end());
      else out.insert(g.follow[p].begin(), g.follow[p].end());
    }
    return out;
  };
  auto has_step = [&](int p) {
    for (int q : g.follow[p])
      if (g.sym[q] != Glushkov::TestSym) return true;
    return false;
  };

  std::map<std::pair<bool, std::vector<int>>, int> ids;
  std::vector<std::pair<bool, std::vector<int>>> keys;
  auto intern = [&](bool moving, std::vector<int> set) {
    if (moving) {
      // only positions that can end the path or continue with a step matter
      std::vector<int> kept;
      for (int p : set)
        if (p == kStart || lastSet.count(p) || has_step(p)) kept.push_back(p);
      set = std::move(kept);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto key = std::make_pair(moving, set);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(d.states.size());
    ids[key] = id;
    keys.push_back(key);
    PathDfa::State st;
    st.moving = moving;
    st.sink = set.empty();
    if (moving)
      for (int p : set)
        if ((p == kStart && info.nullable) || (p != kStart && lastSet.count(p))) st.accepting = true;
    d.states.push_back(st);
    return id;
  };

  intern(true, {kStart});
  for (std::size_t s = 0; s < d.states.size(); ++s) {
    auto [moving, set] = keys[s];
    if (moving) {
      auto fol = follow_of(set);
      std::vector<int> dn, rt;
      for (int q : fol) {
        if (g.sym[q] == Glushkov::FirstSym) dn.push_back(q);
        if (g.sym[q] == Glushkov::RightSym) rt.push_back(q);
      }
      int a = intern(false, dn);
      int b = intern(false, rt);
      d.states[s].down = a;
      d.states[s].right = b;
      continue;
    }
    // testing: tests reachable through chains of test positions
    std::set<int> reach(set.begin(), set.end());
    std::vector<int> todo(set.begin(), set.end());
    std::set<int> rel;
    while (!todo.empty()) {
      int p = todo.back();
      todo.pop_back();
      for (int q : g.follow[p])
        if (g.sym[q] == Glushkov::TestSym) {
          rel.insert(g.test[q]);
          if (reach.insert(q).second) todo.push_back(q);
        }
    }
    std::vector<int> tests(rel.begin(), rel.end());
    if (tests.size() > kMaxTests) throw Error(ErrorKind::Contract, "too many tests at one path step");
    std::vector<int> next(std::size_t(1) << tests.size());
    for (std::size_t mask = 0; mask < next.size(); ++mask) {
      std::set<int> r(set.begin(), set.end());
      std::vector<int> work(set.begin(), set.end());
      while (!work.empty()) {
        int p = work.back();
        work.pop_back();
        for (int q : g.follow[p]) {
          if (g.sym[q] != Glushkov::TestSym) continue;
          std::size_t k = std::lower_bound(tests.begin(), tests.end(), g.test[q]) - tests.begin();
          if (!(mask >> k & 1)) continue;
          if (r.insert(q).second) work.push_back(q);
        }
      }
      next[mask] = intern(true, std::vector<int>(r.begin(), r.end()));
    }
    d.states[s].tests = std::move(tests);
    d.states[s].next = std::move(next);
  }
  return d;
}

// ---- translation

namespace {

// masks whose target differs from every mask with one test fewer; the others
// are implied by a smaller mask (targets grow monotonically with the mask)
template <class Target>
std::vector<std::size_t> relevant_masks(std::size_t nbits, Target target) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < (std::size_t(1) << nbits); ++m) {
    bool keep = true;
    for (std::size_t k = 0; k < nbits && keep; ++k)
      if ((m >> k & 1) && target(m & ~(std::size_t(1) << k)) == target(m)) keep = false;
    if (keep) out.push_back(m);
  }
  return out;
}

class XCompiler {
 public:
  XCompiler(std::vector<std::string> alphabet) : b_(AutKind::Tree, false, std::move(alphabet)) {}

  Automaton run(const XNodeP& eta) {
    int init = node_state(eta);
    return b_.build(init);
  }

 private:
  AutomatonBuilder b_;
  std::map<std::string, int> nodeMemo_;
  std::map<std::string, int> pathIds_;
  std::deque<PathDfa> dfas_;   // stable references while states are added
  std::map<std::string, int> memo_;
  std::map<std::string, XNodeP> negs_;

  int path_id(const XPathP& p) {
    std::string k = to_string(p);
    auto it = pathIds_.find(k);
    if (it != pathIds_.end()) return it->second;
    int id = static_cast<int>(dfas_.size());
    pathIds_[k] = id;
    dfas_.push_back(build_path_dfa(p));
    return id;
  }

  XNodeP neg(const XNodeP& f) {
    std::string k = to_string(f);
    auto it = negs_.find(k);
    if (it != negs_.end()) return it->second;
    return negs_[k] = normalize_paths(nnf_xpath(xnode(XNode::Not, f)));
  }

  // state lookup: returns {state, isNew}
  std::pair<int, bool> slot(const std::string& key, const std::string& hint) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return {it->second, false};
    int q = b_.fresh(hint);
    memo_[key] = q;
    return {q, true};
  }

  ExprP node(const XNodeP& f) { return e_ref(node_state(f)); }

  int node_state(const XNodeP& f) {
    auto [q, fresh] = slot("n:" + to_string(f), "f" + std::to_string(memo_.size()));
    if (!fresh) return q;
    b_.define(q, node_body(f));
    return q;
  }

  ExprP node_body(const XNodeP& f) {
    switch (f->kind) {
      case XNode::True: return e_true();
      case XNode::False: return e_false();
      case XNode::Label: return e_letter(b_.letter(f->label));
      case XNode::NotLabel: return e_not_letter(b_.letter(f->label));
      case XNode::And: return e_and(node(f->l), node(f->r));
      case XNode::Or: return e_or(node(f->l), node(f->r));
      case XNode::Not: throw Error(ErrorKind::NotNormalized, "negation must be pushed to labels first");
      case XNode::Some: return e_guess(exists(path_id(f->a), Op::Eq, 0));
      case XNode::Eq: return e_guess(e_and(exists(path_id(f->a), Op::Eq, 0), exists(path_id(f->b), Op::Eq, 0)));
      case XNode::Neq: return e_guess(e_and(exists(path_id(f->a), Op::Eq, 0), exists(path_id(f->b), Op::Neq, 0)));
      case XNode::NotSome: {
        int a = path_id(f->a);
        return pair(a, a, 0, 0);
      }
      case XNode::NotEq: return pair(path_id(f->a), path_id(f->b), 0, 0);
      case XNode::NotNeq: {
        int a = path_id(f->a), b = path_id(f->b);
        return e_or_all({pair(a, a, 0, 0), pair(b, b, 0, 0),
                         e_guess(e_and(forall(a, Op::Eq, 0), forall(b, Op::Eq, 0)))});
      }
    }
    return e_false();
  }

  static const char* op_tag(Op o) { return o == Op::Eq ? "eq" : "ne"; }

  // some path from here in state s ends at a node whose datum relates to the register by `fin`
  ExprP exists(int pid, Op fin, int s) {
    const PathDfa::State& st = dfas_[pid].states[s];
    if (st.sink) return e_false();
    std::string tag = std::string("e") + op_tag(fin) + std::to_string(pid) + "_" + std::to_string(s);
    auto [q, fresh] = slot(tag, tag);
    if (!fresh) return e_ref(q);
    std::vector<ExprP> alts;
    if (st.moving) {
      if (!dfas_[pid].states[st.down].sink) alts.push_back(e_down(exists(pid, fin, st.down)));
      if (!dfas_[pid].states[st.right].sink) alts.push_back(e_move(exists(pid, fin, st.right)));
      if (st.accepting) alts.push_back(e_test(fin));
    } else {
      auto masks = relevant_masks(st.tests.size(), [&](std::size_t m) { return st.next[m]; });
      for (std::size_t m : masks) {
        int t = st.next[m];
        if (dfas_[pid].states[t].sink) continue;
        std::vector<ExprP> parts;
        for (std::size_t k = 0; k < st.tests.size(); ++k)
          if (m >> k & 1) parts.push_back(node(dfas_[pid].tests[st.tests[k]]));
        parts.push_back(exists(pid, fin, t));
        alts.push_back(e_and_all(parts));
      }
    }
    b_.define(q, e_or_all(alts));
    return e_ref(q);
  }

  // every path from here in state s ends at a node whose datum relates to the register by `fin`
  ExprP forall(int pid, Op fin, int s) {
    const PathDfa::State& st = dfas_[pid].states[s];
    if (st.sink) return e_true();
    std::string tag = std::string("a") + op_tag(fin) + std::to_string(pid) + "_" + std::to_string(s);
    auto [q, fresh] = slot(tag, tag);
    if (!fresh) return e_ref(q);
    std::vector<ExprP> parts;
    if (st.moving) {
      if (!dfas_[pid].states[st.down].sink)
        parts.push_back(e_or(e_type(TypeCond::NoChild), e_down(forall(pid, fin, st.down))));
      if (!dfas_[pid].states[st.right].sink)
        parts.push_back(e_or(e_type(TypeCond::NoNext), e_move(forall(pid, fin, st.right))));
      if (st.accepting) parts.push_back(e_test(fin));
    } else {
      auto masks = relevant_masks(st.tests.size(), [&](std::size_t m) { return st.next[m]; });
      for (std::size_t m : masks) {
        int t = st.next[m];
        if (dfas_[pid].states[t].sink) continue;
        std::vector<ExprP> alts;
        for (std::size_t k = 0; k < st.tests.size(); ++k)
          if (m >> k & 1) alts.push_back(node(neg(dfas_[pid].tests[st.tests[k]])));
        alts.push_back(forall(pid, fin, t));
        parts.push_back(e_or_all(alts));
      }
    }
    b_.define(q, e_and_all(parts));
    return e_ref(q);
  }

  // no α-endpoint (from i) and β-endpoint (from j) share a datum
  ExprP pair(int pa, int pb, int i, int j) {
    const PathDfa& A = dfas_[pa];
    const PathDfa& B = dfas_[pb];
    const auto& si = A.states[i];
    const auto& sj = B.states[j];
    if (si.sink || sj.sink) return e_true();
    std::string tag = "p" + std::to_string(pa) + "_" + std::to_string(pb) + "_" + std::to_string(i) + "_" + std::to_string(j);
    auto [q, fresh] = slot(tag, tag);
    if (!fresh) return e_ref(q);
    std::vector<ExprP> parts;
    if (si.moving) {
      parts.push_back(e_spread1(e_or(forall(pa, Op::Neq, i), forall(pb, Op::Neq, j))));
      if (!A.states[si.down].sink && !B.states[sj.down].sink)
        parts.push_back(e_or(e_type(TypeCond::NoChild), e_down(pair(pa, pb, si.down, sj.down))));
      if (!A.states[si.right].sink && !B.states[sj.right].sink)
        parts.push_back(e_or(e_type(TypeCond::NoNext), e_move(pair(pa, pb, si.right, sj.right))));
      if (si.accepting) parts.push_back(e_store(forall(pb, Op::Neq, j)));
      if (sj.accepting) parts.push_back(e_store(forall(pa, Op::Neq, i)));
    } else {
      // joint test alphabet: tests of both sides
      std::vector<std::string> keys;
      std::vector<XNodeP> forms;
      std::vector<int> ka, kb;
      auto add = [&](const XNodeP& f) {
        std::string k = to_string(f);
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it != keys.end()) return static_cast<int>(it - keys.begin());
        keys.push_back(k);
        forms.push_back(f);
        return static_cast<int>(keys.size() - 1);
      };
      for (int t : si.tests) ka.push_back(add(A.tests[t]));
      for (int t : sj.tests) kb.push_back(add(B.tests[t]));
      if (forms.size() > kMaxTests) throw Error(ErrorKind::Contract, "too many tests at one path step");
      auto target = [&](std::size_t m) {
        std::size_t ma = 0, mb = 0;
        for (std::size_t k = 0; k < ka.size(); ++k)
          if (m >> ka[k] & 1) ma |= std::size_t(1) << k;
        for (std::size_t k = 0; k < kb.size(); ++k)
          if (m >> kb[k] & 1) mb |= std::size_t(1) << k;
        return std::make_pair(si.next[ma], sj.next[mb]);
      };
      for (std::size_t m : relevant_masks(forms.size(), target)) {
        auto [ti, tj] = target(m);
        if (A.states[ti].sink || B.states[tj].sink) continue;
        std::vector<ExprP> alts;
        for (std::size_t k = 0; k < forms.size(); ++k)
          if (m >> k & 1) alts.push_back(node(neg(forms[k])));
        alts.push_back(pair(pa, pb, ti, tj));
        parts.push_back(e_or_all(alts));
      }
    }
    b_.define(q, e_and_all(parts));
    return e_ref(q);
  }
};

}  // namespace

AtraAutomaton xpath_to_atra(const XNodeP& eta, const std::vector<std::string>& extraLabels) {
  XNodeP f = normalize_paths(nnf_xpath(eta));
  std::vector<std::string> alphabet;
  xpath_labels(f, alphabet);
  for (const auto& l : extraLabels)
    if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end()) alphabet.push_back(l);
  if (alphabet.empty()) alphabet.push_back("a");
  return XCompiler(alphabet).run(f);
}

XpathSatResult sat_xpath(const XNodeP& eta, const std::optional<Dtd>& dtd, const std::vector<std::string>& keys,
                         const SearchOptions& opt) {
  XNodeP full = eta;
  for (const auto& k : keys) full = xnode(XNode::And, full, key_formula(k));
  std::vector<std::string> labels;
  xpath_labels(full, labels);
  std::vector<std::string> alphabet = labels;
  if (dtd) {
    for (const auto& l : dtd->labels)
      if (std::find(alphabet.begin(), alphabet.end(), l) == alphabet.end()) alphabet.push_back(l);
  } else {
    alphabet.push_back(fresh_label(labels));
  }
  AtraAutomaton a = xpath_to_atra(full, alphabet);
  if (dtd) a = combine(a, dtd_to_atra(*dtd, alphabet), CombineMode::Intersection);
  AtraResult r = atra_emptiness(a, opt);
  return {r.verdict, r.witness, r.explored};
}

}  // namespace regsat
