#include "regsat/config.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace regsat {

void Config::normalize() {
  std::sort(threads.begin(), threads.end());
  threads.erase(std::unique(threads.begin(), threads.end()), threads.end());
}

std::vector<Datum> Config::data() const {
  std::vector<Datum> v;
  v.reserve(threads.size() + 1);
  v.push_back(datum);
  for (const auto& t : threads) v.push_back(t.datum);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

static std::string type_string(std::uint8_t type) {
  if (type == Canon::kOpen) return "*";
  std::string s;
  s += (type & kChild) ? "▽" : "▽̄";
  s += (type & kNext) ? "▷" : "▷̄";
  return s;
}

std::string to_string(const Automaton& a, const Config& c) {
  std::string s = "<" + type_string(c.type) + ", " + a.alphabet.at(c.letter) + "@" + std::to_string(c.datum) + ", {";
  for (std::size_t i = 0; i < c.threads.size(); ++i) {
    if (i) s += ", ";
    s += "(" + a.states.at(c.threads[i].state) + "," + std::to_string(c.threads[i].datum) + ")";
  }
  return s + "}>";
}

std::string to_string(const Automaton& a, const Canon& c) {
  std::string s = "<" + type_string(c.type) + ", " + (c.letter < 0 ? std::string("*") : a.alphabet.at(c.letter)) + ", [";
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    if (k) s += " ";
    s += "{";
    bool first = true;
    if (static_cast<int>(k) == c.star) {
      s += "★";
      first = false;
    }
    for (int q : c.classes[k]) {
      if (!first) s += ",";
      first = false;
      s += a.states.at(q);
    }
    s += "}";
  }
  return s + "]>";
}

void Canon::finish() {
  sigs.assign(classes.size(), 0);
  sig = 0;
  nthreads = 0;
  std::size_t h = std::hash<int>()(type) * 1000003u ^ std::hash<int>()(letter + 7) * 31u ^ std::hash<int>()(star + 3);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::uint64_t s = 0;
    for (int q : classes[k]) {
      s |= std::uint64_t(1) << (static_cast<unsigned>(q) & 63u);
      h = h * 1315423911u + static_cast<std::size_t>(q) + 1;
    }
    h = h * 2654435761u + 0x9e3779b9u;
    sigs[k] = s;
    sig |= s;
    nthreads += classes[k].size();
  }
  hash = h;
}

namespace {

Canonical build_canon(std::map<Datum, std::vector<int>>& byDatum, bool hasStar, Datum cur, bool ordered) {
  Canonical out;
  std::vector<std::pair<Datum, std::vector<int>>> cls(byDatum.begin(), byDatum.end());
  for (auto& [d, v] : cls) std::sort(v.begin(), v.end());
  if (!ordered) {
    std::vector<std::pair<Datum, std::vector<int>>> rest;
    std::optional<std::pair<Datum, std::vector<int>>> starCls;
    for (auto& p : cls) {
      if (hasStar && p.first == cur) starCls = std::move(p);
      else rest.push_back(std::move(p));
    }
    std::stable_sort(rest.begin(), rest.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    if (starCls) {
      out.canon.star = 0;
      out.canon.classes.push_back(starCls->second);
      out.classValue.push_back(starCls->first);
    }
    for (auto& p : rest) {
      out.canon.classes.push_back(p.second);
      out.classValue.push_back(p.first);
    }
  } else {
    for (auto& p : cls) {
      if (hasStar && p.first == cur) out.canon.star = static_cast<int>(out.canon.classes.size());
      out.canon.classes.push_back(p.second);
      out.classValue.push_back(p.first);
    }
  }
  return out;
}

}  // namespace

Canonical canonicalize(const Config& c, bool ordered) {
  std::map<Datum, std::vector<int>> byDatum;
  byDatum[c.datum];
  for (const auto& t : c.threads) byDatum[t.datum].push_back(t.state);
  for (auto& [d, v] : byDatum) v.erase(std::unique(v.begin(), v.end()), v.end());
  Canonical out = build_canon(byDatum, true, c.datum, ordered);
  out.canon.type = c.type;
  out.canon.letter = c.letter;
  out.canon.finish();
  return out;
}

Canonical canonicalize_threads(const std::vector<Thread>& threads, bool ordered) {
  std::map<Datum, std::vector<int>> byDatum;
  for (const auto& t : threads) byDatum[t.datum].push_back(t.state);
  for (auto& [d, v] : byDatum) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  Canonical out = build_canon(byDatum, false, 0, ordered);
  out.canon.finish();
  return out;
}

static bool included(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool subsumes(const Canon& s, const Canon& b, bool ordered) {
  if (s.type != b.type || s.letter != b.letter || (s.star < 0) != (b.star < 0)) return false;
  if (s.nthreads > b.nthreads || s.classes.size() > b.classes.size()) return false;
  if ((s.sig & ~b.sig) != 0) return false;
  auto compat = [&](std::size_t i, std::size_t j) {
    if ((static_cast<int>(i) == s.star) != (static_cast<int>(j) == b.star)) return false;
    if ((s.sigs[i] & ~b.sigs[j]) != 0) return false;
    return included(s.classes[i], b.classes[j]);
  };
  std::size_t m = s.classes.size(), n = b.classes.size();
  if (ordered) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < m; ++i) {
      while (j < n && !compat(i, j)) ++j;
      if (j == n) return false;
      ++j;
    }
    return true;
  }
  // bipartite matching (Kuhn), star class pinned to star class
  std::vector<int> matchB(n, -1);
  std::vector<char> seen;
  std::function<bool(std::size_t)> aug = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || !compat(i, j)) continue;
      seen[j] = 1;
      if (matchB[j] < 0 || aug(static_cast<std::size_t>(matchB[j]))) {
        matchB[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < m; ++i) {
    seen.assign(n, 0);
    if (!aug(i)) return false;
  }
  return true;
}

std::vector<Thread> decode_threads(const Canon& c, bool ordered) {
  std::vector<Thread> out;
  for (std::size_t k = 0; k < c.classes.size(); ++k)
    for (int q : c.classes[k]) out.push_back({q, class_value(static_cast<int>(k), ordered)});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Datum> representatives(const std::vector<Datum>& v, bool ordered, Datum fresh) {
  std::vector<Datum> out = v;
  if (!ordered) {
    out.push_back(fresh);
    return out;
  }
  if (v.empty()) {
    out.push_back(0);
    return out;
  }
  out.push_back(v.front() - kSpacing);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] - v[i] < 2) throw Error(ErrorKind::Contract, "ordered gap representatives exhausted");
    out.push_back(v[i] + (v[i + 1] - v[i]) / 2);
  }
  out.push_back(v.back() + kSpacing);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Datum> emptiness_pool(const Config& c, bool ordered) {
  std::vector<Datum> d = c.data();
  return representatives(d, ordered, d.back() + 1);
}

// ---- antichain

bool CanonAntichain::covered(const Canon& c) const {
  for (const auto& e : items_)
    if (e.alive && subsumes(e.c, c, ordered_)) return true;
  return false;
}

bool CanonAntichain::insert(const Canon& c, int payload, std::vector<int>* retired) {
  if (covered(c)) return false;
  for (auto& e : items_) {
    if (e.alive && subsumes(c, e.c, ordered_)) {
      e.alive = false;
      --live_;
      if (retired) retired->push_back(e.payload);
    }
  }
  items_.push_back({c, payload, true});
  ++live_;
  return true;
}

void CanonAntichain::clear() {
  items_.clear();
  live_ = 0;
}

// ---- single-step semantics

bool test_passes(const Automaton& a, const Config& c, const Thread& t) {
  const Instr& in = a.delta[t.state];
  switch (in.op) {
    case Op::Letter: return c.letter == in.a;
    case Op::NotLetter: return c.letter != in.a;
    case Op::TypeTest:
      switch (static_cast<TypeCond>(in.a)) {
        case TypeCond::Next: return (c.type & kNext) != 0;
        case TypeCond::NoNext: return (c.type & kNext) == 0;
        case TypeCond::Child: return (c.type & kChild) != 0;
        case TypeCond::NoChild: return (c.type & kChild) == 0;
      }
      return false;
    case Op::Eq:
    case Op::TestEq: return t.datum == c.datum;
    case Op::Neq:
    case Op::TestNeq: return t.datum != c.datum;
    case Op::TestLt: return c.datum < t.datum;
    case Op::TestGt: return c.datum > t.datum;
    default: return false;
  }
}

static bool is_test(Op op) {
  switch (op) {
    case Op::Letter:
    case Op::NotLetter:
    case Op::TypeTest:
    case Op::Eq:
    case Op::Neq:
    case Op::TestLt:
    case Op::TestGt:
    case Op::TestEq:
    case Op::TestNeq: return true;
    default: return false;
  }
}

static Config replace_thread(const Config& c, std::size_t i, std::initializer_list<Thread> add) {
  Config n = c;
  n.threads.erase(n.threads.begin() + static_cast<std::ptrdiff_t>(i));
  for (const auto& t : add) n.threads.push_back(t);
  n.normalize();
  return n;
}

std::vector<Config> eps_successors(const Automaton& a, const Config& c, const std::vector<Datum>& pool) {
  std::vector<Config> out;
  bool othersOk = true;   // spread precondition helper
  std::size_t nNonSettled = 0;
  for (const auto& t : c.threads)
    if (!a.is_moving(t.state) && !a.is_spread(t.state)) ++nNonSettled;
  othersOk = nNonSettled == 0;
  for (std::size_t i = 0; i < c.threads.size(); ++i) {
    const Thread& t = c.threads[i];
    const Instr& in = a.delta[t.state];
    if (is_test(in.op)) {
      if (test_passes(a, c, t)) out.push_back(replace_thread(c, i, {}));
      continue;
    }
    switch (in.op) {
      case Op::Store: out.push_back(replace_thread(c, i, {{in.a, c.datum}})); break;
      case Op::And: out.push_back(replace_thread(c, i, {{in.a, t.datum}, {in.b, t.datum}})); break;
      case Op::Or:
        out.push_back(replace_thread(c, i, {{in.a, t.datum}}));
        out.push_back(replace_thread(c, i, {{in.b, t.datum}}));
        break;
      case Op::Guess:
        for (Datum e : pool) out.push_back(replace_thread(c, i, {{in.a, e}}));
        break;
      case Op::Spread2:
      case Op::Spread1: {
        if (!othersOk) break;
        Config n = c;
        n.threads.erase(n.threads.begin() + static_cast<std::ptrdiff_t>(i));
        std::vector<Thread> add;
        for (const auto& u : n.threads) {
          if (in.op == Op::Spread1) add.push_back({in.a, u.datum});
          else if (u.state == in.a) add.push_back({in.b, u.datum});
        }
        n.threads.insert(n.threads.end(), add.begin(), add.end());
        n.normalize();
        out.push_back(std::move(n));
        break;
      }
      default: break;   // moves are not ε-steps
    }
  }
  std::sort(out.begin(), out.end(), [](const Config& x, const Config& y) { return x.threads < y.threads; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- closure

bool Closure::eager(Config& c) const {
  std::vector<Thread> leaves;
  std::set<Thread> done, onStack;
  // Decides a thread without branching when possible: 0 fails, 1 vanishes,
  // 2 undecided. A vanishing disjunct dominates its sibling; a failing one
  // leaves only the sibling.
  std::map<Thread, int> probed;
  std::set<Thread> probing;
  std::function<int(const Thread&)> probe = [&](const Thread& t) -> int {
    const Instr& in = a_.delta[t.state];
    if (is_test(in.op)) return test_passes(a_, c, t) ? 1 : 0;
    if (in.op != Op::Store && in.op != Op::And && in.op != Op::Or) return 2;
    auto it = probed.find(t);
    if (it != probed.end()) return it->second;
    if (!probing.insert(t).second) return 2;
    int r;
    if (in.op == Op::Store) {
      r = probe({in.a, c.datum});
    } else {
      int x = probe({in.a, t.datum});
      int y = (in.op == Op::And && x == 0) || (in.op == Op::Or && x == 1) ? x : probe({in.b, t.datum});
      if (in.op == Op::And) r = (x == 0 || y == 0) ? 0 : (x == 1 && y == 1) ? 1 : 2;
      else r = (x == 1 || y == 1) ? 1 : (x == 0 && y == 0) ? 0 : 2;
    }
    probing.erase(t);
    probed[t] = r;
    return r;
  };
  std::function<bool(const Thread&)> expand = [&](const Thread& t) -> bool {
    const Instr& in = a_.delta[t.state];
    if (is_test(in.op)) return test_passes(a_, c, t);
    auto child = [&](Thread u) -> bool {
      if (onStack.count(u)) return false;   // deterministic cycle: the thread never disappears
      if (done.count(u)) return true;
      onStack.insert(u);
      bool ok = expand(u);
      onStack.erase(u);
      done.insert(u);
      return ok;
    };
    switch (in.op) {
      case Op::Store: return child({in.a, c.datum});
      case Op::And: return child({in.a, t.datum}) && child({in.b, t.datum});
      case Op::Or: {
        int x = probe({in.a, t.datum});
        int y = x == 1 ? 1 : probe({in.b, t.datum});
        if (x == 1 || y == 1) return true;
        if (x == 0 && y == 0) return false;
        if (x == 0) return child({in.b, t.datum});
        if (y == 0) return child({in.a, t.datum});
        leaves.push_back(t);
        return true;
      }
      default: leaves.push_back(t); return true;
    }
  };
  for (const auto& t : c.threads) {
    if (done.count(t)) continue;
    onStack.insert(t);
    bool ok = expand(t);
    onStack.erase(t);
    done.insert(t);
    if (!ok) return false;
  }
  c.threads = std::move(leaves);
  c.normalize();
  return true;
}

Closure::Result Closure::run(const Config& start, const GuessPool& pool, Datum freshFrom, Budget* budget,
                             bool stopOnAccept) const {
  Result res;
  struct Item {
    Config c;
    Datum fresh;
  };
  Config c0 = start;
  c0.normalize();
  if (!eager(c0)) return res;
  std::vector<Item> stack;
  CanonAntichain seen(a_.ordered);
  std::unordered_set<Canon, CanonHash> exact;
  std::set<std::vector<Thread>> concrete;   // fixed pools: data identity matters
  auto push = [&](Config&& c, Datum fresh) {
    if (pool.fixed) {
      if (concrete.insert(c.threads).second) stack.push_back({std::move(c), fresh});
      return;
    }
    Canonical k = canonicalize(c, a_.ordered);
    if (!exact.insert(k.canon).second) return;
    if (!seen.insert(k.canon, 0)) return;
    stack.push_back({std::move(c), fresh});
  };
  push(std::move(c0), freshFrom);
  std::vector<Config> moving;
  while (!stack.empty()) {
    if (budget && !budget->tick()) throw ResourceExhausted();
    Item it = std::move(stack.back());
    stack.pop_back();
    const Config& c = it.c;
    if (c.threads.empty()) {
      res.accept = true;
      if (stopOnAccept) return res;
      continue;
    }
    std::size_t pick = c.threads.size();
    for (std::size_t i = 0; i < c.threads.size(); ++i) {
      Op op = a_.delta[c.threads[i].state].op;
      if (op == Op::Or || op == Op::Guess) {
        pick = i;
        break;
      }
    }
    if (pick < c.threads.size()) {
      const Thread t = c.threads[pick];
      const Instr& in = a_.delta[t.state];
      auto branch = [&](Thread u, Datum fresh) {
        Config n = c;
        n.threads.erase(n.threads.begin() + static_cast<std::ptrdiff_t>(pick));
        n.threads.push_back(u);
        n.normalize();
        if (eager(n)) push(std::move(n), fresh);
      };
      if (in.op == Op::Or) {
        branch({in.b, t.datum}, it.fresh);
        branch({in.a, t.datum}, it.fresh);
      } else if (pool.fixed) {
        for (auto v = pool.values.rbegin(); v != pool.values.rend(); ++v) branch({in.a, *v}, it.fresh);
      } else {
        std::vector<Datum> reps = representatives(c.data(), a_.ordered, it.fresh);
        for (auto v = reps.rbegin(); v != reps.rend(); ++v)
          branch({in.a, *v}, *v == it.fresh ? it.fresh + 1 : it.fresh);
      }
      continue;
    }
    bool anySpread = false;
    for (std::size_t i = 0; i < c.threads.size(); ++i) {
      const Thread& t = c.threads[i];
      const Instr& in = a_.delta[t.state];
      if (in.op != Op::Spread1 && in.op != Op::Spread2) continue;
      anySpread = true;
      Config n = c;
      n.threads.erase(n.threads.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<Thread> add;
      for (const auto& u : n.threads) {
        if (in.op == Op::Spread1) add.push_back({in.a, u.datum});
        else if (u.state == in.a) add.push_back({in.b, u.datum});
      }
      n.threads.insert(n.threads.end(), add.begin(), add.end());
      n.normalize();
      if (eager(n)) push(std::move(n), it.fresh);
    }
    if (!anySpread) moving.push_back(c);
  }
  if (pool.fixed) {
    // same node, so ≾ is thread inclusion
    std::vector<char> drop(moving.size(), 0);
    for (std::size_t i = 0; i < moving.size(); ++i)
      for (std::size_t j = 0; j < moving.size() && !drop[i]; ++j) {
        if (i == j || drop[j]) continue;
        const auto& a = moving[j].threads;
        const auto& b = moving[i].threads;
        if (a.size() <= b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()) && (a != b || j < i))
          drop[i] = 1;
      }
    for (std::size_t i = 0; i < moving.size(); ++i)
      if (!drop[i]) res.moving.push_back(std::move(moving[i]));
    return res;
  }
  // keep ≾-minimal moving configurations
  std::vector<Canonical> keys;
  keys.reserve(moving.size());
  for (const auto& m : moving) keys.push_back(canonicalize(m, a_.ordered));
  std::vector<char> drop(moving.size(), 0);
  for (std::size_t i = 0; i < moving.size(); ++i) {
    for (std::size_t j = 0; j < moving.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (subsumes(keys[j].canon, keys[i].canon, a_.ordered)) drop[i] = 1;
    }
  }
  for (std::size_t i = 0; i < moving.size(); ++i)
    if (!drop[i]) res.moving.push_back(std::move(moving[i]));
  return res;
}

}  // namespace regsat
