#include "regsat/model.hpp"

#include <charconv>
#include <functional>

#include "regsat/lexer.hpp"

namespace regsat {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::EmptyChildList: return "EmptyChildList";
    case ErrorKind::Unbalanced: return "Unbalanced";
    case ErrorKind::UnknownPosition: return "UnknownPosition";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::OrderedMismatch: return "OrderedMismatch";
    case ErrorKind::NegatedQuantifier: return "NegatedQuantifier";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::Contract: return "Contract";
  }
  return "?";
}

static std::string decorate(ErrorKind kind, const std::string& msg, int line, int col) {
  std::string s = error_kind_name(kind);
  if (line > 0) s += " at " + std::to_string(line) + ":" + std::to_string(col);
  return s + ": " + msg;
}

Error::Error(ErrorKind kind, const std::string& msg, int line, int col)
    : std::runtime_error(decorate(kind, msg, line, col)), kind_(kind), line_(line), col_(col) {}

const Item& DataWord::at(int pos) const {
  if (pos < 1 || pos > static_cast<int>(items.size()))
    throw Error(ErrorKind::UnknownPosition, "word position " + std::to_string(pos));
  return items[pos - 1];
}

int DataTree::first_child(int id) const {
  const auto& ch = nodes[id].children;
  return ch.empty() ? -1 : ch.front();
}

int DataTree::next_sibling(int id) const {
  int p = nodes[id].parent;
  if (p < 0) return -1;
  const auto& ch = nodes[p].children;
  int k = index_in_parent(id);
  return k + 1 < static_cast<int>(ch.size()) ? ch[k + 1] : -1;
}

int DataTree::index_in_parent(int id) const {
  int p = nodes[id].parent;
  if (p < 0) return 0;
  const auto& ch = nodes[p].children;
  for (std::size_t k = 0; k < ch.size(); ++k)
    if (ch[k] == id) return static_cast<int>(k);
  return -1;
}

Position DataTree::position_of(int id) const {
  Position p;
  while (nodes[id].parent >= 0) {
    p.push_back(index_in_parent(id) + 1);
    id = nodes[id].parent;
  }
  return Position(p.rbegin(), p.rend());
}

int DataTree::node_at(const Position& p) const {
  if (nodes.empty()) throw Error(ErrorKind::UnknownPosition, "empty tree");
  int id = 0;
  for (int k : p) {
    const auto& ch = nodes[id].children;
    if (k < 1 || k > static_cast<int>(ch.size()))
      throw Error(ErrorKind::UnknownPosition, "tree position " + to_string(p));
    id = ch[k - 1];
  }
  return id;
}

bool DataTree::operator==(const DataTree& o) const {
  if (nodes.size() != o.nodes.size()) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& a = nodes[i];
    const auto& b = o.nodes[i];
    if (a.label != b.label || a.datum != b.datum || a.parent != b.parent || a.children != b.children)
      return false;
  }
  return true;
}

DataTree DataTree::leaf(std::string label, Datum d) {
  DataTree t;
  t.nodes.push_back({std::move(label), d, -1, {}});
  return t;
}

int DataTree::add_child(int parent, std::string label, Datum d) {
  int id = static_cast<int>(nodes.size());
  nodes.push_back({std::move(label), d, parent, {}});
  nodes[parent].children.push_back(id);
  return id;
}

namespace {

Datum parse_datum(TokenStream& ts) {
  Token t = ts.expect_word("data value");
  if (!is_uint(t.text)) ts.fail_at(t, "data value must be a non-negative integer, found '" + t.text + "'");
  Datum v = 0;
  auto r = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (r.ec != std::errc()) ts.fail_at(t, "data value out of range");
  return v;
}

Item parse_item(TokenStream& ts) {
  Token l = ts.expect_word("label");
  ts.expect("@");
  return {l.text, parse_datum(ts)};
}

void parse_subtree(TokenStream& ts, DataTree& t, int parent) {
  Item it = parse_item(ts);
  int id;
  if (parent < 0) {
    t.nodes.push_back({it.label, it.datum, -1, {}});
    id = 0;
  } else {
    id = t.add_child(parent, it.label, it.datum);
  }
  if (ts.is("(")) {
    Token open = ts.next();
    if (ts.is(")")) ts.fail_at(ts.peek(), "empty child list", ErrorKind::EmptyChildList);
    while (!ts.is(")")) {
      if (ts.at_end()) ts.fail_at(open, "unbalanced parentheses: '(' never closed", ErrorKind::Unbalanced);
      parse_subtree(ts, t, id);
    }
    ts.next();
  }
}

}  // namespace

DataWord parse_word(const std::string& text) {
  TokenStream ts(lex(text, false));
  if (ts.at_end()) throw Error(ErrorKind::EmptyWord, "a data word needs at least one position");
  DataWord w;
  while (!ts.at_end()) w.items.push_back(parse_item(ts));
  return w;
}

DataTree parse_tree(const std::string& text) {
  TokenStream ts(lex(text, false));
  if (ts.at_end()) ts.fail("empty tree");
  DataTree t;
  parse_subtree(ts, t, -1);
  if (ts.is(")")) ts.fail_at(ts.peek(), "unbalanced parentheses: unexpected ')'", ErrorKind::Unbalanced);
  if (!ts.at_end()) ts.fail("trailing input after tree");
  return t;
}

std::string to_string(const DataWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.items.size(); ++i) {
    if (i) s += ' ';
    s += w.items[i].label + "@" + std::to_string(w.items[i].datum);
  }
  return s;
}

std::string to_string(const DataTree& t) {
  std::string s;
  std::function<void(int)> rec = [&](int id) {
    const auto& n = t.nodes[id];
    s += n.label + "@" + std::to_string(n.datum);
    if (!n.children.empty()) {
      s += '(';
      for (std::size_t k = 0; k < n.children.size(); ++k) {
        if (k) s += ' ';
        rec(n.children[k]);
      }
      s += ')';
    }
  };
  if (!t.nodes.empty()) rec(0);
  return s;
}

std::string to_string(const Position& p) {
  if (p.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

WordType type_of(const DataWord& w, int pos) {
  w.at(pos);
  return {pos < static_cast<int>(w.size())};
}

TreeType type_of_node(const DataTree& t, int id) {
  return {t.first_child(id) >= 0, t.next_sibling(id) >= 0};
}

TreeType type_of(const DataTree& t, const Position& p) { return type_of_node(t, t.node_at(p)); }

bool fcns_leq_id(const DataTree& t, int x, int y) {
  // walk up from y: fcns parent is the left sibling, or the parent for a first child
  while (y >= 0) {
    if (y == x) return true;
    int p = t.nodes[y].parent;
    if (p < 0) return false;
    int k = t.index_in_parent(y);
    y = k == 0 ? p : t.nodes[p].children[k - 1];
  }
  return false;
}

bool fcns_leq(const DataTree& t, const Position& x, const Position& y) {
  return fcns_leq_id(t, t.node_at(x), t.node_at(y));
}

std::vector<Position> positions(const DataTree& t) {
  std::vector<Position> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back(t.position_of(static_cast<int>(i)));
  return out;
}

}  // namespace regsat
