#include "regsat/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace regsat {

void EnumBounds::validate() const {
  if (maxSize < 1 || maxData < 1) throw Error(ErrorKind::Contract, "enumeration bounds must be at least 1");
  if (alphabet.empty()) throw Error(ErrorKind::Contract, "enumeration needs a non-empty alphabet");
}

// ---- enumeration

namespace {

// Data patterns of length n with values from 1.
bool each_data(int n, int maxData, bool ordered, const std::function<bool(const std::vector<Datum>&)>& f) {
  std::vector<Datum> v(static_cast<std::size_t>(n), 1);
  if (!ordered) {
    std::function<bool(int, Datum)> rec = [&](int i, Datum top) -> bool {
      if (i == n) return f(v);
      for (Datum d = 1; d <= std::min<Datum>(top + 1, maxData); ++d) {
        v[static_cast<std::size_t>(i)] = d;
        if (!rec(i + 1, std::max(top, d))) return false;
      }
      return true;
    };
    return rec(0, 0);
  }
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      std::vector<char> used(static_cast<std::size_t>(maxData) + 1, 0);
      Datum top = 0;
      for (Datum d : v) {
        used[static_cast<std::size_t>(d)] = 1;
        top = std::max(top, d);
      }
      for (Datum d = 1; d <= top; ++d)
        if (!used[static_cast<std::size_t>(d)]) return true;
      return f(v);
    }
    for (Datum d = 1; d <= maxData; ++d) {
      v[static_cast<std::size_t>(i)] = d;
      if (!rec(i + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

bool each_labels(int n, std::size_t k, const std::function<bool(const std::vector<int>&)>& f) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  while (true) {
    if (!f(v)) return false;
    int i = n - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] + 1 == static_cast<int>(k)) v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return true;
    ++v[static_cast<std::size_t>(i)];
  }
}

DataTree tree_from(const std::vector<int>& parent, const std::vector<std::string>& labels, const std::vector<Datum>& data) {
  DataTree t;
  t.nodes.resize(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    t.nodes[i].label = labels[i];
    t.nodes[i].datum = data[i];
    t.nodes[i].parent = parent[i];
    if (parent[i] >= 0) t.nodes[static_cast<std::size_t>(parent[i])].children.push_back(static_cast<int>(i));
  }
  return t;
}

}  // namespace

std::vector<std::vector<int>> tree_shapes(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  std::vector<int> parent = {-1};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(parent.size()) == n) {
      out.push_back(parent);
      return;
    }
    // the new node hangs off the rightmost path, deepest first
    for (int p = static_cast<int>(parent.size()) - 1; p >= 0; p = parent[static_cast<std::size_t>(p)]) {
      parent.push_back(p);
      rec();
      parent.pop_back();
    }
  };
  rec();
  return out;
}

void enum_words(const EnumBounds& b, const std::function<bool(const DataWord&)>& visit) {
  b.validate();
  for (int n = 1; n <= b.maxSize; ++n) {
    bool go = each_labels(n, b.alphabet.size(), [&](const std::vector<int>& ls) {
      return each_data(n, b.maxData, b.ordered, [&](const std::vector<Datum>& ds) {
        DataWord w;
        for (int i = 0; i < n; ++i)
          w.items.push_back({b.alphabet[static_cast<std::size_t>(ls[static_cast<std::size_t>(i)])], ds[static_cast<std::size_t>(i)]});
        return visit(w);
      });
    });
    if (!go) return;
  }
}

void enum_trees(const EnumBounds& b, const std::function<bool(const DataTree&)>& visit) {
  b.validate();
  for (int n = 1; n <= b.maxSize; ++n) {
    for (const auto& shape : tree_shapes(n)) {
      bool go = each_labels(n, b.alphabet.size(), [&](const std::vector<int>& ls) {
        std::vector<std::string> labels;
        for (int l : ls) labels.push_back(b.alphabet[static_cast<std::size_t>(l)]);
        return each_data(n, b.maxData, b.ordered, [&](const std::vector<Datum>& ds) { return visit(tree_from(shape, labels, ds)); });
      });
      if (!go) return;
    }
  }
}

std::vector<DataWord> all_words(const EnumBounds& b) {
  std::vector<DataWord> out;
  enum_words(b, [&](const DataWord& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::vector<DataTree> all_trees(const EnumBounds& b) {
  std::vector<DataTree> out;
  enum_trees(b, [&](const DataTree& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::optional<DataWord> bounded_sat(const LtlP& f, EnumBounds b) {
  if (b.alphabet.empty()) {
    ltl_labels(f, b.alphabet);
    b.alphabet.push_back(fresh_label(b.alphabet));
  }
  std::optional<DataWord> found;
  enum_words(b, [&](const DataWord& w) {
    if (eval_ltl(w, f)) found = w;
    return !found;
  });
  return found;
}

std::optional<DataTree> bounded_sat(const XNodeP& f, EnumBounds b) {
  if (b.alphabet.empty()) {
    xpath_labels(f, b.alphabet);
    b.alphabet.push_back(fresh_label(b.alphabet));
  }
  std::optional<DataTree> found;
  enum_trees(b, [&](const DataTree& t) {
    if (satisfies(t, f)) found = t;
    return !found;
  });
  return found;
}

// ---- literal run search

namespace {

bool all_moving(const Automaton& a, const std::vector<Thread>& th) {
  if (th.empty()) return false;
  for (const auto& t : th)
    if (!a.is_moving(t.state)) return false;
  return true;
}

}  // namespace

bool literal_ara_membership(const Automaton& a, const DataWord& w, std::size_t maxConfigs) {
  int n = static_cast<int>(w.size());
  if (n == 0) throw Error(ErrorKind::EmptyWord, "empty word");
  std::vector<int> letters;
  std::vector<Datum> data;
  for (const auto& it : w.items) {
    int l = a.letter_index(it.label);
    if (l < 0) throw Error(ErrorKind::UnknownLabel, "letter '" + it.label + "' is not in the alphabet");
    letters.push_back(l);
    data.push_back(it.datum);
  }
  std::vector<Datum> vals = data, pool;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (a.ordered) {
    for (auto& d : data) d = 2 * (std::lower_bound(vals.begin(), vals.end(), d) - vals.begin()) + 1;
    for (Datum v = 0; v <= 2 * static_cast<Datum>(vals.size()); ++v) pool.push_back(v);
  } else {
    pool = vals;
    pool.push_back(vals.back() + 1);
  }
  using Key = std::pair<int, std::vector<Thread>>;
  std::set<Key> seen;
  std::vector<Key> stack = {{0, {{a.initial, data[0]}}}};
  seen.insert(stack.back());
  auto push = [&](int pos, std::vector<Thread> th) {
    Key k{pos, std::move(th)};
    if (seen.insert(k).second) stack.push_back(std::move(k));
    if (seen.size() > maxConfigs) throw ResourceExhausted();
  };
  while (!stack.empty()) {
    Key k = std::move(stack.back());
    stack.pop_back();
    auto [pos, th] = k;
    if (th.empty()) return true;
    std::uint8_t ty = pos + 1 < n ? kNext : 0;
    Config c{ty, letters[static_cast<std::size_t>(pos)], data[static_cast<std::size_t>(pos)], th};
    for (auto& e : eps_successors(a, c, pool)) push(pos, std::move(e.threads));
    if (pos + 1 < n && all_moving(a, th)) {
      std::uint8_t ty2 = pos + 2 < n ? kNext : 0;
      NextItem nx{letters[static_cast<std::size_t>(pos + 1)], data[static_cast<std::size_t>(pos + 1)], ty2};
      for (auto& m : move_successors(a, c, nx)) push(pos + 1, std::move(m.threads));
    }
  }
  return false;
}

bool literal_atra_membership(const Automaton& a, const DataTree& t, bool* unrelated, std::size_t maxConfigs) {
  std::size_t n = t.size();
  std::vector<int> letters(n);
  std::vector<Datum> pool;
  for (std::size_t i = 0; i < n; ++i) {
    int l = a.letter_index(t.nodes[i].label);
    if (l < 0) throw Error(ErrorKind::UnknownLabel, "label '" + t.nodes[i].label + "' is not in the alphabet");
    letters[i] = l;
    pool.push_back(t.nodes[i].datum);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  pool.push_back(pool.back() + 1);
  auto type_at = [&](int x) {
    TreeType tt = type_of_node(t, x);
    return static_cast<std::uint8_t>((tt.hasChild ? kChild : 0) | (tt.hasRight ? kNext : 0));
  };
  using Member = std::pair<int, std::vector<Thread>>;
  using TC = std::vector<Member>;
  std::set<TC> seen;
  std::vector<TC> stack;
  auto push = [&](TC s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (unrelated) {
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
          if (i != j && fcns_leq_id(t, s[i].first, s[j].first)) *unrelated = false;
    }
    if (seen.insert(s).second) stack.push_back(std::move(s));
    if (seen.size() > maxConfigs) throw ResourceExhausted();
  };
  push({{0, {{a.initial, t.nodes[0].datum}}}});
  while (!stack.empty()) {
    TC s = std::move(stack.back());
    stack.pop_back();
    bool accepting = true;
    for (const auto& m : s)
      if (!m.second.empty()) accepting = false;
    if (accepting) return true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& [x, th] = s[i];
      if (th.empty()) continue;
      TC rest = s;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      std::uint8_t ty = type_at(x);
      Config c{ty, letters[static_cast<std::size_t>(x)], t.nodes[static_cast<std::size_t>(x)].datum, th};
      for (auto& e : eps_successors(a, c, pool)) {
        TC nx = rest;
        nx.push_back({x, std::move(e.threads)});
        push(std::move(nx));
      }
      if (!all_moving(a, th)) continue;
      std::vector<Thread> down, right;
      for (const auto& u : th) {
        const Instr& in = a.delta[static_cast<std::size_t>(u.state)];
        (in.op == Op::Down ? down : right).push_back({in.a, u.datum});
      }
      std::sort(down.begin(), down.end());
      down.erase(std::unique(down.begin(), down.end()), down.end());
      std::sort(right.begin(), right.end());
      right.erase(std::unique(right.begin(), right.end()), right.end());
      if ((!down.empty() && !(ty & kChild)) || (!right.empty() && !(ty & kNext)) || ty == 0) continue;
      TC nx = rest;
      if (ty & kChild) nx.push_back({t.first_child(x), down});
      if (ty & kNext) nx.push_back({t.next_sibling(x), right});
      push(std::move(nx));
    }
  }
  return false;
}

// ---- reference orders

bool subsumes_bruteforce(const Canon& s, const Canon& b) {
  if (s.type != b.type || s.letter != b.letter || (s.star < 0) != (b.star < 0)) return false;
  std::size_t m = s.classes.size(), n = b.classes.size();
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == m) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if ((static_cast<int>(i) == s.star) != (static_cast<int>(j) == b.star)) continue;
      bool inc = true;
      for (int q : s.classes[i])
        if (std::find(b.classes[j].begin(), b.classes[j].end(), q) == b.classes[j].end()) inc = false;
      if (!inc) continue;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

bool embeds_dp(const Canon& s, const Canon& b) {
  if (s.type != b.type || s.letter != b.letter || (s.star < 0) != (b.star < 0)) return false;
  std::size_t m = s.classes.size(), n = b.classes.size();
  auto fits = [&](std::size_t i, std::size_t j) {
    if ((static_cast<int>(i) == s.star) != (static_cast<int>(j) == b.star)) return false;
    std::set<int> big(b.classes[j].begin(), b.classes[j].end());
    for (int q : s.classes[i])
      if (!big.count(q)) return false;
    return true;
  };
  // dp[i][j]: the first i classes of s embed into the first j classes of b
  std::vector<std::vector<char>> dp(m + 1, std::vector<char>(n + 1, 0));
  for (std::size_t j = 0; j <= n; ++j) dp[0][j] = 1;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= n; ++j) dp[i][j] = dp[i][j - 1] || (dp[i - 1][j - 1] && fits(i - 1, j - 1));
  return dp[m][n];
}

// ---- random generation

namespace {

template <class T>
const T& pick(Rng& r, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(r.below(static_cast<int>(v.size())))];
}

// weighted choice over (weight, value)
int weighted(Rng& r, const std::vector<std::pair<int, int>>& w) {
  int total = 0;
  for (auto& p : w) total += p.first;
  int x = r.below(total);
  for (auto& p : w) {
    if (x < p.first) return p.second;
    x -= p.first;
  }
  return w.back().second;
}

Automaton random_automaton(Rng& r, int maxStates, const std::vector<std::string>& alphabet, bool ordered, bool tree) {
  Automaton a;
  a.kind = tree ? AutKind::Tree : AutKind::Word;
  a.ordered = ordered;
  a.alphabet = alphabet;
  int n = 1 + r.below(maxStates);
  for (int q = 0; q < n; ++q) a.states.push_back("q" + std::to_string(q));
  a.initial = 0;
  std::vector<std::pair<int, int>> ops = {
      {10, int(Op::Letter)}, {5, int(Op::NotLetter)}, {8, int(Op::TypeTest)}, {8, int(Op::Store)},
      {10, int(Op::And)},    {12, int(Op::Or)},       {14, int(Op::Move)},    {7, int(Op::Guess)},
      {5, int(Op::Spread2)}, {5, int(Op::Spread1)},
  };
  if (ordered) {
    ops.push_back({4, int(Op::TestLt)});
    ops.push_back({4, int(Op::TestGt)});
    ops.push_back({4, int(Op::TestEq)});
    ops.push_back({3, int(Op::TestNeq)});
  } else {
    ops.push_back({8, int(Op::Eq)});
    ops.push_back({6, int(Op::Neq)});
  }
  if (tree) ops.push_back({12, int(Op::Down)});
  int k = static_cast<int>(alphabet.size());
  for (int q = 0; q < n; ++q) {
    Instr in;
    in.op = static_cast<Op>(weighted(r, ops));
    switch (in.op) {
      case Op::Letter:
      case Op::NotLetter: in.a = r.below(k); break;
      case Op::TypeTest: in.a = r.below(tree ? 4 : 2); break;
      case Op::And:
      case Op::Or:
      case Op::Spread2:
        in.a = r.below(n);
        in.b = r.below(n);
        break;
      case Op::Store:
      case Op::Move:
      case Op::Down:
      case Op::Guess:
      case Op::Spread1: in.a = r.below(n); break;
      default: break;
    }
    a.delta.push_back(in);
  }
  a.validate();
  return a;
}

LtlP random_ltl_raw(Rng& r, int depth, const std::vector<std::string>& alphabet, bool ordered) {
  enum { True, False, Atom, NotAtom, Up, NotUp, Lt, Gt, Freeze, X, WX, U, R, And, Or, Not, Aprev, AprevIf, Efut };
  std::vector<std::pair<int, int>> w = {{2, True}, {1, False}, {8, Atom}, {4, NotAtom}, {5, Up}, {3, NotUp}};
  if (ordered) {
    w.push_back({3, Lt});
    w.push_back({3, Gt});
  }
  if (depth > 0) {
    std::vector<std::pair<int, int>> in = {{9, Freeze}, {6, X}, {4, WX},  {6, U},     {5, R},
                                           {8, And},    {8, Or}, {3, Not}, {3, Aprev}, {2, AprevIf}, {3, Efut}};
    w.insert(w.end(), in.begin(), in.end());
  }
  auto sub = [&]() { return random_ltl_raw(r, depth - 1, alphabet, ordered); };
  switch (weighted(r, w)) {
    case True: return ltl(Ltl::True);
    case False: return ltl(Ltl::False);
    case Atom: return ltl_atom(pick(r, alphabet));
    case NotAtom: return ltl_atom(pick(r, alphabet), true);
    case Up: return ltl(Ltl::Up);
    case NotUp: return ltl(Ltl::NotUp);
    case Lt: return ltl(Ltl::UpLt);
    case Gt: return ltl(Ltl::UpGt);
    case Freeze: return ltl(Ltl::Freeze, sub());
    case X: return ltl(Ltl::X, sub());
    case WX: return ltl(Ltl::WX, sub());
    case U: {
      LtlP a = sub();
      return ltl(Ltl::U, a, sub());
    }
    case R: {
      LtlP a = sub();
      return ltl(Ltl::R, a, sub());
    }
    case And: {
      LtlP a = sub();
      return ltl(Ltl::And, a, sub());
    }
    case Or: {
      LtlP a = sub();
      return ltl(Ltl::Or, a, sub());
    }
    case Not: return ltl(Ltl::Not, sub());
    case Aprev: return ltl(Ltl::Aprev, sub());
    case AprevIf: {
      LtlP a = sub();
      return ltl(Ltl::AprevIf, a, sub());
    }
    default: return ltl(Ltl::Efut, sub());
  }
}

LtlP random_ltl_accepted(Rng& r, int depth, const std::vector<std::string>& alphabet, bool ordered, LtlP* raw) {
  while (true) {
    LtlP f = random_ltl_raw(r, depth, alphabet, ordered);
    try {
      LtlP g = nnf_ltl(f);
      if (raw) *raw = f;
      return g;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NegatedQuantifier) throw;
    }
  }
}

XNodeP random_node(Rng& r, int depth, const std::vector<std::string>& alphabet);

XPathP random_path(Rng& r, int depth, int size, const std::vector<std::string>& alphabet) {
  auto step = [&]() {
    static const XPath::Kind kinds[] = {XPath::Down, XPath::Down, XPath::Down, XPath::DownStar, XPath::Right,
                                        XPath::Right, XPath::RightStar, XPath::Eps};
    return xpath(kinds[r.below(8)]);
  };
  int k = size <= 0 ? 0 : r.below(10);
  XPathP p;
  if (k < 6) {
    p = step();
  } else if (k < 8) {
    XPathP a = random_path(r, depth, size - 1, alphabet);
    p = xpath(XPath::Concat, a, random_path(r, depth, size - 1, alphabet));
  } else if (k < 9) {
    XPathP a = random_path(r, depth, size - 1, alphabet);
    p = xpath(XPath::Union, a, random_path(r, depth, size - 1, alphabet));
  } else {
    p = xpath(XPath::Star, random_path(r, depth, size - 1, alphabet));
  }
  if (depth > 0 && r.chance(45)) p = xpath(XPath::Concat, p, xpath_test(random_node(r, depth - 1, alphabet)));
  return p;
}

XNodeP random_node(Rng& r, int depth, const std::vector<std::string>& alphabet) {
  enum { True, Label, NotLabel, And, Or, Not, Some, Eq, Neq };
  std::vector<std::pair<int, int>> w = {{1, True}, {8, Label}, {3, NotLabel}};
  if (depth > 0) {
    std::vector<std::pair<int, int>> in = {{4, And}, {3, Or}, {3, Not}, {4, Some}, {5, Eq}, {4, Neq}};
    w.insert(w.end(), in.begin(), in.end());
  }
  switch (weighted(r, w)) {
    case True: return xnode(XNode::True);
    case Label: return xnode_label(pick(r, alphabet));
    case NotLabel: return xnode_label(pick(r, alphabet), true);
    case And: {
      XNodeP a = random_node(r, depth - 1, alphabet);
      return xnode(XNode::And, a, random_node(r, depth - 1, alphabet));
    }
    case Or: {
      XNodeP a = random_node(r, depth - 1, alphabet);
      return xnode(XNode::Or, a, random_node(r, depth - 1, alphabet));
    }
    case Not: return xnode(XNode::Not, random_node(r, depth - 1, alphabet));
    case Some: return xnode_data(XNode::Some, random_path(r, depth, 2, alphabet));
    case Eq:
    case Neq: {
      XNode::Kind kind = XNode::Eq;
      if (w.size() > 3 && r.chance(45)) kind = XNode::Neq;
      XPathP a = random_path(r, depth, 2, alphabet);
      return xnode_data(kind, a, random_path(r, depth, 2, alphabet));
    }
  }
  return xnode(XNode::True);
}

}  // namespace

Automaton random_ara(Rng& r, int maxStates, const std::vector<std::string>& alphabet, bool ordered) {
  return random_automaton(r, maxStates, alphabet, ordered, false);
}

Automaton random_atra(Rng& r, int maxStates, const std::vector<std::string>& alphabet) {
  return random_automaton(r, maxStates, alphabet, false, true);
}

LtlP random_ltl(Rng& r, int depth, const std::vector<std::string>& alphabet, bool ordered) {
  return random_ltl_accepted(r, depth, alphabet, ordered, nullptr);
}

XNodeP random_xpath(Rng& r, int depth, const std::vector<std::string>& alphabet) { return random_node(r, depth, alphabet); }

XPathP random_xpath_path(Rng& r, int depth, const std::vector<std::string>& alphabet) {
  return random_path(r, depth, 2, alphabet);
}

Config random_config(Rng& r, int nstates, int nletters, bool tree, int maxThreads, int maxData) {
  Config c;
  c.type = static_cast<std::uint8_t>(r.below(tree ? 4 : 2));
  if (!tree && c.type) c.type = kNext;
  c.letter = r.below(nletters);
  c.datum = r.below(maxData);
  int k = r.below(maxThreads + 1);
  for (int i = 0; i < k; ++i) c.threads.push_back({r.below(nstates), static_cast<Datum>(r.below(maxData))});
  c.normalize();
  return c;
}

Config weaken(Rng& r, const Config& c, bool ordered, int dropPercent) {
  Config w = c;
  w.threads.clear();
  for (const auto& t : c.threads)
    if (!r.chance(dropPercent)) w.threads.push_back(t);
  std::vector<Datum> vals = w.data();
  std::vector<Datum> img(vals.size());
  if (ordered) {
    Datum at = -static_cast<Datum>(vals.size()) * kSpacing;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      at += kSpacing * (1 + r.below(3));
      img[i] = at;
    }
  } else {
    for (std::size_t i = 0; i < vals.size(); ++i) img[i] = 1000 + static_cast<Datum>(i);
    for (std::size_t i = img.size(); i > 1; --i) std::swap(img[i - 1], img[static_cast<std::size_t>(r.below(static_cast<int>(i)))]);
  }
  auto map = [&](Datum d) { return img[static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), d) - vals.begin())]; };
  w.datum = map(w.datum);
  for (auto& t : w.threads) t.datum = map(t.datum);
  w.normalize();
  return w;
}

// ---- shrinking

DataWord shrink_word(DataWord w, const std::function<bool(const DataWord&)>& fails) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && w.size() > 1 && !changed; ++i) {
      DataWord c = w;
      c.items.erase(c.items.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(c)) {
        w = std::move(c);
        changed = true;
      }
    }
    std::set<Datum> ds;
    for (const auto& it : w.items) ds.insert(it.datum);
    for (Datum u : ds) {
      for (Datum v : ds) {
        if (u == v || changed) continue;
        DataWord c = w;
        for (auto& it : c.items)
          if (it.datum == u) it.datum = v;
        if (fails(c)) {
          w = std::move(c);
          changed = true;
        }
      }
    }
  }
  return w;
}

namespace {

DataTree without_subtree(const DataTree& t, int cut) {
  DataTree out;
  std::function<void(int, int)> copy = [&](int id, int parent) {
    const auto& n = t.nodes[static_cast<std::size_t>(id)];
    int me;
    if (parent < 0) {
      out = DataTree::leaf(n.label, n.datum);
      me = 0;
    } else {
      me = out.add_child(parent, n.label, n.datum);
    }
    for (int k : n.children)
      if (k != cut) copy(k, me);
  };
  copy(0, -1);
  return out;
}

}  // namespace

DataTree shrink_tree(DataTree t, const std::function<bool(const DataTree&)>& fails) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = t.size(); i-- > 1 && !changed;) {
      DataTree c = without_subtree(t, static_cast<int>(i));
      if (fails(c)) {
        t = std::move(c);
        changed = true;
      }
    }
    std::set<Datum> ds;
    for (const auto& n : t.nodes) ds.insert(n.datum);
    for (Datum u : ds) {
      for (Datum v : ds) {
        if (u == v || changed) continue;
        DataTree c = t;
        for (auto& n : c.nodes)
          if (n.datum == u) n.datum = v;
        if (fails(c)) {
          t = std::move(c);
          changed = true;
        }
      }
    }
  }
  return t;
}

// ---- reports

void CrosscheckReport::merge(const CrosscheckReport& o) {
  casesRun += o.casesRun;
  agreements += o.agreements;
  skipped += o.skipped;
  checks += o.checks;
  disagreements.insert(disagreements.end(), o.disagreements.begin(), o.disagreements.end());
  lines.insert(lines.end(), o.lines.begin(), o.lines.end());
  for (const auto& [k, v] : o.counters) counters[k] += v;
  elapsed += o.elapsed;
}

std::string CrosscheckReport::to_text(bool timing) const {
  std::ostringstream os;
  for (const auto& l : lines) os << l << "\n";
  for (const auto& d : disagreements) {
    os << "DISAGREE case " << d.caseIndex << ": " << d.what << "\n";
    if (!d.subject.empty()) os << "  subject: " << d.subject << "\n";
    if (!d.counterexample.empty()) os << "  counterexample: " << d.counterexample << "\n";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", elapsed);
  os << "--- summary ---\n"
     << "kind: " << kind << "\n"
     << "seed: " << seed << "\n"
     << "cases: " << casesRun << "\n"
     << "checks: " << checks << "\n"
     << "agreements: " << agreements << "\n"
     << "skipped: " << skipped << "\n"
     << "disagreements: " << disagreements.size() << "\n";
  for (const auto& [k, v] : counters) os << k << ": " << v << "\n";
  if (timing) os << "elapsed_s: " << buf << "\n";
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::optional<CheckKind> check_kind(const std::string& s) {
  if (s == "ltl") return CheckKind::Ltl;
  if (s == "xpath") return CheckKind::Xpath;
  if (s == "ara") return CheckKind::Ara;
  if (s == "atra") return CheckKind::Atra;
  return std::nullopt;
}

// ---- crosscheck suites

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Case {
  CrosscheckReport& rep;
  std::size_t index;
  std::string subject;
  bool failed = false;
  bool skipped = false;
  void fail(const std::string& what, const std::string& cex = "") {
    failed = true;
    rep.disagreements.push_back({index, what, subject, cex});
  }
  void check(bool ok, const std::string& what, const std::function<std::string()>& cex = nullptr) {
    ++rep.checks;
    if (!ok) fail(what, cex ? cex() : "");
  }
  void close() {
    ++rep.casesRun;
    if (!failed) ++rep.agreements;
    if (skipped) ++rep.skipped;
    rep.lines.push_back("case " + std::to_string(index) + (failed ? " FAIL" : skipped ? " ok (pipeline skipped)" : " ok") +
                        ": " + subject);
  }
};

void run_ltl(const CrosscheckOptions& o, CrosscheckReport& rep) {
  Rng rng(o.seed);
  EnumBounds b = o.bounds;
  b.ordered = o.ordered;
  std::vector<DataWord> words = all_words(b);
  for (std::size_t i = 0; i < o.count; ++i) {
    LtlP raw;
    random_ltl_accepted(rng, 3, b.alphabet, o.ordered, &raw);
    LtlP f = o.ltlNnf ? o.ltlNnf(raw) : nnf_ltl(raw);
    Case c{rep, i, to_string(raw)};
    c.check(is_nnf(f), "nnf output is not in negation normal form");
    c.check(to_string(nnf_ltl(f)) == to_string(f), "nnf is not idempotent");
    AraAutomaton a = ltl_to_ara(f, o.ordered, b.alphabet);
    bool anyModel = false;
    for (const auto& w : words) {
      if (c.failed) break;
      bool e = eval_ltl(w, raw);
      anyModel = anyModel || e;
      c.check(e == eval_ltl(w, f), "nnf changes the meaning", [&] {
        return to_string(shrink_word(w, [&](const DataWord& x) { return eval_ltl(x, raw) != eval_ltl(x, f); }));
      });
      if (c.failed) break;
      c.check(e == ara_membership(a, w), "evaluation and automaton membership differ", [&] {
        return to_string(shrink_word(w, [&](const DataWord& x) { return eval_ltl(x, f) != ara_membership(a, x); }));
      });
    }
    if (anyModel) ++rep.counters["with_enumerated_model"];
    if (o.satisfiability && !c.failed) {
      SearchOptions so;
      so.seconds = o.satSeconds;
      LtlSatResult s = sat_ltl(f, o.ordered, so);
      ++rep.counters[std::string("verdict_") + verdict_name(s.verdict)];
      if (s.verdict == Verdict::ResourceExhausted) c.skipped = true;
      else if (s.verdict == Verdict::NonEmpty) c.check(s.witness && eval_ltl(*s.witness, raw), "sat witness does not satisfy the formula");
      else c.check(!anyModel, "unsat verdict contradicted by enumeration");
    }
    c.close();
  }
}

void run_ara(const CrosscheckOptions& o, CrosscheckReport& rep) {
  Rng rng(o.seed);
  EnumBounds b = o.bounds;
  b.ordered = o.ordered;
  std::vector<DataWord> words = all_words(b);
  for (std::size_t i = 0; i < o.count; ++i) {
    Automaton a = random_ara(rng, 4, b.alphabet, o.ordered);
    Case c{rep, i, to_string(a)};
    SearchOptions so;
    so.seconds = o.satSeconds;
    AraResult res = ara_emptiness(a, so);
    ++rep.counters[std::string("verdict_") + verdict_name(res.verdict)];
    if (res.verdict == Verdict::ResourceExhausted) c.skipped = true;
    bool anyAccepted = false;
    for (const auto& w : words) {
      if (c.failed) break;
      bool m = ara_membership(a, w);
      anyAccepted = anyAccepted || m;
      try {
        bool lit = literal_ara_membership(a, w);
        c.check(m == lit, "membership differs from the literal run search", [&] {
          return to_string(shrink_word(w, [&](const DataWord& x) {
            try {
              return ara_membership(a, x) != literal_ara_membership(a, x);
            } catch (const ResourceExhausted&) {
              return false;
            }
          }));
        });
      } catch (const ResourceExhausted&) {
        ++rep.counters["literal_exhausted"];
      }
      if (m && res.verdict == Verdict::Empty)
        c.check(false, "emptiness says Empty but an enumerated word is accepted", [&] {
          return to_string(shrink_word(w, [&](const DataWord& x) { return ara_membership(a, x); }));
        });
      else ++rep.checks;
    }
    if (anyAccepted) ++rep.counters["with_enumerated_model"];
    if (res.verdict == Verdict::NonEmpty) {
      c.check(res.witness && ara_membership(a, *res.witness), "witness rejected by membership",
              [&] { return res.witness ? to_string(*res.witness) : std::string("(none)"); });
      if (res.witness) {
        try {
          c.check(literal_ara_membership(a, *res.witness), "witness rejected by the literal run search",
                  [&] { return to_string(*res.witness); });
        } catch (const ResourceExhausted&) {
        }
      }
    }
    c.close();
  }
}

void run_atra(const CrosscheckOptions& o, CrosscheckReport& rep) {
  Rng rng(o.seed);
  EnumBounds b = o.bounds;
  b.ordered = false;
  std::vector<DataTree> trees = all_trees(b);
  for (std::size_t i = 0; i < o.count; ++i) {
    Automaton a = random_atra(rng, 4, b.alphabet);
    Case c{rep, i, to_string(a)};
    SearchOptions so;
    so.seconds = o.satSeconds;
    AtraResult res = atra_emptiness(a, so);
    ++rep.counters[std::string("verdict_") + verdict_name(res.verdict)];
    if (res.verdict == Verdict::ResourceExhausted) c.skipped = true;
    bool anyAccepted = false;
    for (const auto& t : trees) {
      if (c.failed) break;
      bool m = atra_membership(a, t);
      anyAccepted = anyAccepted || m;
      try {
        bool inv = true;
        bool lit = literal_atra_membership(a, t, &inv);
        c.check(inv, "a reachable tree configuration holds fcns-related members", [&] { return to_string(t); });
        c.check(m == lit, "membership differs from the literal run search", [&] {
          return to_string(shrink_tree(t, [&](const DataTree& x) {
            try {
              return atra_membership(a, x) != literal_atra_membership(a, x);
            } catch (const ResourceExhausted&) {
              return false;
            }
          }));
        });
      } catch (const ResourceExhausted&) {
        ++rep.counters["literal_exhausted"];
      }
      if (m && res.verdict == Verdict::Empty)
        c.check(false, "emptiness says Empty but an enumerated tree is accepted", [&] {
          return to_string(shrink_tree(t, [&](const DataTree& x) { return atra_membership(a, x); }));
        });
      else ++rep.checks;
    }
    if (anyAccepted) ++rep.counters["with_enumerated_model"];
    if (res.verdict == Verdict::NonEmpty)
      c.check(res.witness && atra_membership(a, *res.witness), "witness rejected by membership",
              [&] { return res.witness ? to_string(*res.witness) : std::string("(none)"); });
    c.close();
  }
}

void run_xpath(const CrosscheckOptions& o, CrosscheckReport& rep) {
  Rng rng(o.seed);
  EnumBounds b = o.bounds;
  b.ordered = false;
  std::vector<DataTree> trees = all_trees(b);
  for (std::size_t i = 0; i < o.count; ++i) {
    XNodeP raw = random_xpath(rng, 2, b.alphabet);
    XNodeP f = o.xpathNnf ? o.xpathNnf(raw) : nnf_xpath(raw);
    Case c{rep, i, to_string(raw)};
    c.check(is_nnf(f), "nnf output is not in negation normal form");
    XNodeP g = normalize_paths(f);
    c.check(is_normalized(g), "normalize_paths output is not normalized");
    AtraAutomaton a = xpath_to_atra(raw, b.alphabet);
    bool anyModel = false;
    for (const auto& t : trees) {
      if (c.failed) break;
      std::vector<char> e = eval_xpath(t, raw);
      anyModel = anyModel || e[0];
      c.check(e == eval_xpath(t, f), "nnf changes the denotation", [&] {
        return to_string(shrink_tree(t, [&](const DataTree& x) { return eval_xpath(x, raw) != eval_xpath(x, f); }));
      });
      if (c.failed) break;
      c.check(e == eval_xpath(t, g), "path normalization changes the denotation", [&] {
        return to_string(shrink_tree(t, [&](const DataTree& x) { return eval_xpath(x, f) != eval_xpath(x, g); }));
      });
      if (c.failed) break;
      if (e[0])
        c.check(atra_membership(a, t), "model rejected by the compiled automaton", [&] {
          return to_string(shrink_tree(t, [&](const DataTree& x) { return satisfies(x, raw) && !atra_membership(a, x); }));
        });
    }
    if (anyModel) ++rep.counters["with_enumerated_model"];
    if (o.satisfiability && !c.failed) {
      SearchOptions so;
      so.seconds = o.satSeconds;
      XpathSatResult s = sat_xpath(raw, std::nullopt, {}, so);
      ++rep.counters[std::string("verdict_") + verdict_name(s.verdict)];
      if (s.verdict == Verdict::ResourceExhausted) c.skipped = true;
      else if (s.verdict == Verdict::NonEmpty)
        c.check(s.witness && satisfies(*s.witness, raw), "sat witness does not satisfy the formula",
                [&] { return s.witness ? to_string(*s.witness) : std::string("(none)"); });
      else c.check(!anyModel, "unsat verdict contradicted by enumeration");
    }
    c.close();
  }
}

}  // namespace

CrosscheckReport crosscheck(const CrosscheckOptions& opt) {
  CrosscheckOptions o = opt;
  if (o.bounds.alphabet.empty()) o.bounds.alphabet = {"a", "b"};
  o.bounds.validate();
  CrosscheckReport rep;
  rep.seed = o.seed;
  auto t0 = Clock::now();
  switch (o.kind) {
    case CheckKind::Ltl: rep.kind = "ltl"; run_ltl(o, rep); break;
    case CheckKind::Ara: rep.kind = "ara"; run_ara(o, rep); break;
    case CheckKind::Atra: rep.kind = "atra"; run_atra(o, rep); break;
    case CheckKind::Xpath: rep.kind = "xpath"; run_xpath(o, rep); break;
  }
  rep.elapsed = since(t0);
  return rep;
}

// ---- rdc probes

namespace {

struct Succ {
  int dir;   // 0 ε, 1 ▷, 2 ▽
  Config c;
};

std::vector<Succ> one_step(const Automaton& a, const Config& c, const EpsFn& eps) {
  std::vector<Succ> out;
  for (auto& e : eps(a, c, emptiness_pool(c, a.ordered))) out.push_back({0, std::move(e)});
  // a thread-empty configuration moves vacuously
  if (!c.threads.empty() && !all_moving(a, c.threads)) return out;
  if (a.kind == AutKind::Word) {
    for (auto& m : move_successors(a, c)) out.push_back({1, std::move(m)});
  } else {
    MoveImages im = node_move_images(a, c);
    for (auto& m : im.right) out.push_back({1, std::move(m)});
    for (auto& m : im.down) out.push_back({2, std::move(m)});
  }
  return out;
}

Config initial_config(Rng& r, const Automaton& a) {
  Config c;
  c.type = static_cast<std::uint8_t>(r.below(a.kind == AutKind::Tree ? 4 : 2));
  if (a.kind == AutKind::Word && c.type) c.type = kNext;
  c.letter = r.below(static_cast<int>(a.alphabet.size()));
  c.datum = 0;
  c.threads = {{a.initial, 0}};
  return c;
}

}  // namespace

CrosscheckReport rdc_probe(const Automaton& a, std::size_t samples, std::uint64_t seed, EpsFn eps) {
  if (!eps) eps = eps_successors;
  CrosscheckReport rep;
  rep.kind = a.kind == AutKind::Word ? "rdc-ara" : "rdc-atra";
  rep.seed = seed;
  auto t0 = Clock::now();
  Rng r(seed);
  std::size_t walks = 0;
  Config c = initial_config(r, a);
  int len = 0;
  while (rep.checks < samples && walks < 50 * samples + 100) {
    std::vector<Succ> succ = one_step(a, c, eps_successors);
    if (succ.empty() || len > 12 || c.threads.empty()) {
      c = initial_config(r, a);
      len = 0;
      ++walks;
      continue;
    }
    Config cw = weaken(r, c, a.ordered, r.chance(15) ? 0 : 35);
    Canon kc = canonicalize(c, a.ordered).canon, kw = canonicalize(cw, a.ordered).canon;
    Case cs{rep, rep.casesRun, to_string(a, c) + " weakened to " + to_string(a, cw)};
    cs.check(subsumes(kw, kc, a.ordered), "weakened configuration is not below the original");
    std::vector<Succ> wsucc = one_step(a, cw, eps);
    std::vector<std::pair<int, Canon>> wk;
    for (const auto& s : wsucc) wk.push_back({s.dir, canonicalize(s.c, a.ordered).canon});
    for (const auto& d : succ) {
      Canon kd = canonicalize(d.c, a.ordered).canon;
      bool ok = subsumes(kw, kd, a.ordered);
      for (std::size_t j = 0; j < wk.size() && !ok; ++j) ok = wk[j].first == d.dir && subsumes(wk[j].second, kd, a.ordered);
      cs.check(ok, "no successor of the smaller configuration matches", [&] { return to_string(a, d.c); });
      if (cs.failed) break;
    }
    if (cs.failed) cs.close();
    else {
      ++rep.casesRun;
      ++rep.agreements;
    }
    c = succ[static_cast<std::size_t>(r.below(static_cast<int>(succ.size())))].c;
    ++len;
  }
  rep.lines.push_back("triples: " + std::to_string(rep.checks));
  rep.elapsed = since(t0);
  return rep;
}

namespace {

std::vector<Canon> canon_set(const TreeConfig& s) {
  std::vector<Canon> out;
  for (const auto& m : s) out.push_back(canonicalize(m, false).canon);
  return out;
}

// tree_step plus the vacuous moves of thread-empty members
std::vector<TreeConfig> tree_step_all(const Automaton& a, const TreeConfig& s) {
  std::vector<TreeConfig> out = tree_step(a, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].threads.empty() || s[i].type == 0) continue;
    MoveImages im = node_move_images(a, s[i]);
    TreeConfig rest = s;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const auto& d = (s[i].type & kChild) ? im.down : im.right;
    const auto& r = im.right;
    for (const auto& x : d) {
      if ((s[i].type & kChild) && (s[i].type & kNext)) {
        for (const auto& y : r) {
          TreeConfig n = rest;
          n.push_back(x);
          n.push_back(y);
          out.push_back(std::move(n));
        }
      } else {
        TreeConfig n = rest;
        n.push_back(x);
        out.push_back(std::move(n));
      }
    }
  }
  return out;
}

}  // namespace

CrosscheckReport rdc_probe_tree(const Automaton& a, std::size_t samples, std::uint64_t seed) {
  CrosscheckReport rep;
  rep.kind = "rdc-tree";
  rep.seed = seed;
  auto t0 = Clock::now();
  Rng r(seed);
  std::size_t walks = 0;
  TreeConfig s = {initial_config(r, a)};
  int len = 0;
  while (rep.checks < samples && walks < 20 * samples + 100) {
    std::vector<TreeConfig> succ = tree_step(a, s);
    if (succ.empty() || len > 6 || s.size() > 3) {
      s = {initial_config(r, a)};
      len = 0;
      ++walks;
      continue;
    }
    TreeConfig sw;
    for (const auto& m : s)
      if (!r.chance(25)) sw.push_back(weaken(r, m, false, 30));
    if (sw.empty()) sw.push_back(weaken(r, s[0], false, 30));
    TreeConfig target = succ[static_cast<std::size_t>(r.below(static_cast<int>(succ.size())))];
    std::vector<Canon> kt = canon_set(target);
    Case cs{rep, rep.casesRun, "tree configuration of " + std::to_string(s.size()) + " members"};
    // breadth-first over S' ↠* S''' for at most |S'| + 1 steps
    std::vector<TreeConfig> layer = {sw};
    bool found = false, capped = false;
    std::size_t explored = 0;
    for (std::size_t depth = 0; depth <= sw.size() + 1 && !found && !layer.empty(); ++depth) {
      std::vector<TreeConfig> next;
      for (const auto& x : layer) {
        if (majoring_subsumes(canon_set(x), kt)) {
          found = true;
          break;
        }
        if (depth == sw.size() + 1) continue;
        for (auto& y : tree_step_all(a, x)) {
          if (++explored > 4000) {
            capped = true;
            break;
          }
          next.push_back(std::move(y));
        }
        if (capped) break;
      }
      if (capped) break;
      layer = std::move(next);
    }
    if (!found && capped) {
      ++rep.skipped;
    } else {
      cs.check(found, "no bounded run of the smaller tree configuration reaches below the successor");
      if (cs.failed) cs.close();
      else {
        ++rep.casesRun;
        ++rep.agreements;
      }
    }
    s = target;
    ++len;
  }
  rep.lines.push_back("triples: " + std::to_string(rep.checks));
  rep.elapsed = since(t0);
  return rep;
}

// ---- order probes

CrosscheckReport subsumption_probe(std::size_t count, std::uint64_t seed, bool ordered) {
  CrosscheckReport rep;
  rep.kind = ordered ? "subsumption-ordered" : "subsumption";
  rep.seed = seed;
  auto t0 = Clock::now();
  Rng r(seed);
  auto canon = [&](const Config& c) { return canonicalize(c, ordered).canon; };
  auto base = [&](int maxData) {
    Config c = random_config(r, 4, 2, true, 5, maxData);
    if (ordered)
      for (auto& t : c.threads) t.datum *= kSpacing;
    if (ordered) c.datum *= kSpacing;
    return c;
  };
  auto reference = [&](const Canon& x, const Canon& y) { return ordered ? embeds_dp(x, y) : subsumes_bruteforce(x, y); };
  for (std::size_t i = 0; i < count; ++i) {
    Config c3 = base(4);
    Config c2 = weaken(r, c3, ordered);
    Config c1 = weaken(r, c2, ordered);
    Canon k1 = canon(c1), k2 = canon(c2), k3 = canon(c3);
    Case cs{rep, i, ""};
    auto show = [&] { return std::string("config #") + std::to_string(i); };
    cs.check(subsumes(k3, k3, ordered), "not reflexive", show);
    cs.check(subsumes(k1, k2, ordered) && subsumes(k2, k3, ordered), "weakening is not below the original", show);
    cs.check(subsumes(k1, k3, ordered), "not transitive along a weakening chain", show);
    // idempotence: re-canonicalizing the decoded canon
    Config back{k3.type, k3.letter, class_value(k3.star, ordered), decode_threads(k3, ordered)};
    cs.check(canon(back) == k3, "canonicalization is not idempotent", show);
    Canonical once = canonicalize(c3, ordered);
    cs.check(canonicalize(back, ordered).canon == once.canon, "canonical form of a decoded canon differs", show);
    // independent small configs: reference order, antisymmetry, transitivity
    Config x = base(3), y = base(3), z = base(3);
    y.type = x.type, z.type = x.type;
    y.letter = x.letter, z.letter = x.letter;
    Canon kx = canon(x), ky = canon(y), kz = canon(z);
    bool xy = subsumes(kx, ky, ordered), yx = subsumes(ky, kx, ordered), yz = subsumes(ky, kz, ordered);
    cs.check(xy == reference(kx, ky), "subsumption differs from the reference order", show);
    cs.check(!(xy && yx) || kx == ky, "mutual subsumption without equal canonical forms", show);
    cs.check(!(xy && yz) || subsumes(kx, kz, ordered), "not transitive", show);
    if (cs.failed) cs.close();
    else {
      ++rep.casesRun;
      ++rep.agreements;
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

CrosscheckReport embedding_probe(std::size_t count, std::uint64_t seed) {
  CrosscheckReport rep;
  rep.kind = "ordered-embedding";
  rep.seed = seed;
  auto t0 = Clock::now();
  Rng r(seed);
  auto seq = [&](int len) {
    Canon c;
    c.type = 1;
    c.letter = 0;
    c.star = r.below(len);
    for (int k = 0; k < len; ++k) {
      std::vector<int> cls;
      for (int q = 0; q < 4; ++q)
        if (r.chance(40)) cls.push_back(q);
      if (cls.empty() && k != c.star) cls.push_back(r.below(4));
      c.classes.push_back(cls);
    }
    c.finish();
    return c;
  };
  for (std::size_t i = 0; i < count; ++i) {
    Canon big = seq(1 + r.below(7));
    Canon small;
    if (r.chance(50)) {
      // derived: drop classes and states, keeping the star class
      small.type = big.type;
      small.letter = big.letter;
      for (std::size_t k = 0; k < big.classes.size(); ++k) {
        bool isStar = static_cast<int>(k) == big.star;
        if (!isStar && r.chance(40)) continue;
        std::vector<int> cls;
        for (int q : big.classes[k])
          if (!r.chance(30)) cls.push_back(q);
        if (cls.empty() && !isStar) cls = big.classes[k];
        if (r.chance(10)) cls.push_back(4);   // occasionally not below
        std::sort(cls.begin(), cls.end());
        cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
        if (isStar) small.star = static_cast<int>(small.classes.size());
        small.classes.push_back(cls);
      }
      small.finish();
    } else {
      small = seq(1 + r.below(5));
    }
    Case cs{rep, i, ""};
    bool got = subsumes(small, big, true), want = embeds_dp(small, big);
    cs.check(got == want, "ordered embedding differs from the reference DP", [&] {
      auto show = [](const Canon& c) {
        std::string s;
        for (std::size_t k = 0; k < c.classes.size(); ++k) {
          s += "{";
          if (static_cast<int>(k) == c.star) s += "*";
          for (int q : c.classes[k]) s += std::to_string(q);
          s += "}";
        }
        return s;
      };
      return show(small) + " vs " + show(big);
    });
    if (cs.failed) cs.close();
    else {
      ++rep.casesRun;
      ++rep.agreements;
    }
  }
  rep.elapsed = since(t0);
  return rep;
}

namespace {

void collect_paths(const XNodeP& f, std::vector<XPathP>& out);

void collect_paths(const XPathP& p, std::vector<XPathP>& out) {
  if (!p) return;
  if (p->kind == XPath::Test) collect_paths(p->test, out);
  collect_paths(p->l, out);
  collect_paths(p->r, out);
}

void collect_paths(const XNodeP& f, std::vector<XPathP>& out) {
  if (!f) return;
  switch (f->kind) {
    case XNode::Some:
    case XNode::Eq:
    case XNode::Neq:
    case XNode::NotSome:
    case XNode::NotEq:
    case XNode::NotNeq:
      for (const auto& p : {f->a, f->b}) {
        if (!p) continue;
        out.push_back(p);
        collect_paths(p, out);
      }
      break;
    default: break;
  }
  collect_paths(f->l, out);
  collect_paths(f->r, out);
}

}  // namespace

CrosscheckReport path_dfa_probe(std::size_t count, std::uint64_t seed, const EnumBounds& tb) {
  CrosscheckReport rep;
  rep.kind = "path-dfa";
  rep.seed = seed;
  auto t0 = Clock::now();
  Rng r(seed);
  EnumBounds b = tb;
  if (b.alphabet.empty()) b.alphabet = {"a", "b"};
  std::vector<DataTree> trees = all_trees(b);
  std::vector<XPathP> pool;
  std::set<std::string> seenPaths;
  while (rep.casesRun < count) {
    if (pool.empty()) {
      int depth = r.chance(30) ? 2 : 1;
      XPathP a = random_xpath_path(r, depth, b.alphabet);
      XNodeP f = r.chance(50) ? xnode_data(XNode::Eq, a, random_xpath_path(r, depth, b.alphabet)) : xnode_data(XNode::Some, a);
      collect_paths(normalize_paths(nnf_xpath(f)), pool);
      continue;
    }
    XPathP p = pool.back();
    pool.pop_back();
    if (!seenPaths.insert(to_string(p)).second) continue;
    PathDfa dfa = build_path_dfa(p);
    Case cs{rep, rep.casesRun, to_string(p)};
    for (const auto& t : trees) {
      auto rel = eval_xpath(t, p);
      int n = static_cast<int>(t.size());
      for (int x = 0; x < n && !cs.failed; ++x)
        for (int y = 0; y < n && !cs.failed; ++y) {
          auto show = [&] { return to_string(t) + " nodes " + to_string(t.position_of(x)) + " -> " + to_string(t.position_of(y)); };
          if (fcns_leq_id(t, x, y)) cs.check(dfa.accepts_str(t, x, y) == bool(rel[x][y]), "DFA acceptance differs from the path denotation", show);
          else cs.check(!rel[x][y], "path relates nodes that are not fcns-ordered", show);
        }
      if (cs.failed) break;
    }
    cs.close();
  }
  rep.elapsed = since(t0);
  return rep;
}

}  // namespace regsat
