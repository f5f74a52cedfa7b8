#include "regsat/ara.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace regsat {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Empty: return "Empty";
    case Verdict::NonEmpty: return "NonEmpty";
    case Verdict::ResourceExhausted: return "ResourceExhausted";
  }
  return "?";
}

// ---- instantiation

int Instantiator::fresh() {
  int id = next_++;
  if (ordered_) order_.push_back(id);
  ranked_ = false;
  return id;
}

void Instantiator::insert_after(int pred, int id) {
  auto it = std::find(order_.begin(), order_.end(), pred);
  order_.insert(it == order_.end() ? it : it + 1, id);
}

void Instantiator::insert_before(int succ, int id) {
  auto it = std::find(order_.begin(), order_.end(), succ);
  order_.insert(it, id);
}

std::vector<int> Instantiator::resolve(const std::vector<int>& parent, const std::vector<Datum>& raws) {
  auto parent_class = [&](Datum r) -> int {
    if (!ordered_) return (r >= 0 && r < static_cast<Datum>(parent.size())) ? static_cast<int>(r) : -1;
    if (r < 0 || r % kSpacing != 0) return -1;
    Datum k = r / kSpacing;
    return k < static_cast<Datum>(parent.size()) ? static_cast<int>(k) : -1;
  };
  std::map<Datum, int> fresh;
  for (Datum r : raws)
    if (parent_class(r) < 0) fresh[r] = -1;
  for (auto& [r, id] : fresh) {
    id = next_++;
    ranked_ = false;
    if (!ordered_) continue;
    // nearest lower neighbour among parent classes and values placed in this step
    Datum bestLow = 0;
    int lowId = -1;
    for (std::size_t k = 0; k < parent.size(); ++k) {
      Datum v = class_value(static_cast<int>(k), true);
      if (v < r && (lowId < 0 || v > bestLow)) {
        bestLow = v;
        lowId = parent[k];
      }
    }
    for (auto& [r2, id2] : fresh) {
      if (r2 >= r) break;
      if (lowId < 0 || r2 > bestLow) {
        bestLow = r2;
        lowId = id2;
      }
    }
    if (lowId >= 0) {
      insert_after(lowId, id);
      continue;
    }
    int highId = -1;
    Datum bestHigh = 0;
    for (std::size_t k = 0; k < parent.size(); ++k) {
      Datum v = class_value(static_cast<int>(k), true);
      if (v > r && (highId < 0 || v < bestHigh)) {
        bestHigh = v;
        highId = parent[k];
      }
    }
    if (highId >= 0) insert_before(highId, id);
    else order_.push_back(id);
  }
  std::vector<int> out;
  out.reserve(raws.size());
  for (Datum r : raws) {
    int k = parent_class(r);
    out.push_back(k >= 0 ? parent[static_cast<std::size_t>(k)] : fresh[r]);
  }
  return out;
}

Datum Instantiator::value(int id) {
  if (!ordered_) return id + 1;
  if (!ranked_) {
    rank_.assign(static_cast<std::size_t>(next_), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) rank_[static_cast<std::size_t>(order_[i])] = static_cast<Datum>(i);
    ranked_ = true;
  }
  return rank_.at(static_cast<std::size_t>(id));
}

// ---- move successors

std::vector<Config> move_successors(const Automaton& a, const Config& c, std::optional<NextItem> next) {
  if (!(c.type & kNext)) return {};
  std::vector<Thread> moved;
  for (const auto& t : c.threads) {
    const Instr& in = a.delta[t.state];
    if (in.op != Op::Move) throw Error(ErrorKind::Contract, "move_successors on a non-moving configuration");
    moved.push_back({in.a, t.datum});
  }
  std::vector<Config> out;
  if (next) {
    Config n{next->type, next->letter, next->datum, moved};
    n.normalize();
    out.push_back(n);
    return out;
  }
  std::vector<Datum> vals;
  for (const auto& t : moved) vals.push_back(t.datum);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  Datum fresh = c.data().back() + 1;
  for (Datum d : representatives(vals, a.ordered, fresh)) {
    for (std::uint8_t ty : {std::uint8_t(kNext), std::uint8_t(0)}) {
      for (int l = 0; l < static_cast<int>(a.alphabet.size()); ++l) {
        Config n{ty, l, d, moved};
        n.normalize();
        out.push_back(n);
      }
    }
  }
  return out;
}

// ---- emptiness

namespace {

struct Choice {
  std::uint8_t type = 0;
  int letter = 0;
  Datum datum = 0;   // raw
};

struct Node {
  Canon canon;
  int parent = -1;
  Choice step;                  // choice made at the parent position
  std::vector<Datum> childRaw;  // raw value of each class of `canon`, in the parent's value space
  int depth = 0;
  bool alive = true;
};

DataWord replay(const Automaton& a, const std::vector<Node>& arena, int last, const Choice& final) {
  std::vector<int> chain;
  for (int n = last; n >= 0; n = arena[static_cast<std::size_t>(n)].parent) chain.push_back(n);
  std::reverse(chain.begin(), chain.end());
  Instantiator inst(a.ordered);
  std::vector<std::pair<int, int>> items;   // letter, concrete id
  std::vector<int> conc = {inst.fresh()};   // the root canon has exactly one class
  for (std::size_t i = 0; i + 1 <= chain.size(); ++i) {
    const Choice& ch = i + 1 < chain.size() ? arena[static_cast<std::size_t>(chain[i + 1])].step : final;
    std::vector<Datum> raws = {ch.datum};
    if (i + 1 < chain.size()) {
      const auto& cr = arena[static_cast<std::size_t>(chain[i + 1])].childRaw;
      raws.insert(raws.end(), cr.begin(), cr.end());
    }
    std::vector<int> ids = inst.resolve(conc, raws);
    items.emplace_back(ch.letter, ids[0]);
    conc.assign(ids.begin() + 1, ids.end());
  }
  if (final.type & kNext) items.emplace_back(0, inst.fresh());   // the run never looks at it
  DataWord w;
  for (auto [l, id] : items) w.items.push_back({a.alphabet[static_cast<std::size_t>(l)], inst.value(id)});
  return w;
}

}  // namespace

AraResult ara_emptiness(const Automaton& a, const SearchOptions& opt) {
  if (a.kind != AutKind::Word) throw Error(ErrorKind::Contract, "ara_emptiness needs a word automaton");
  a.validate();
  AraResult res;
  Budget budget;
  budget.maxSteps = opt.maxSteps;
  budget.seconds = opt.seconds;
  Closure closure(a);
  std::vector<Node> arena;
  CanonAntichain kept(a.ordered);
  std::unordered_set<Canon, CanonHash> exact;

  Node root;
  root.canon.star = 0;
  root.canon.classes = {{a.initial}};
  root.canon.finish();
  arena.push_back(root);
  kept.insert(root.canon, 0);
  exact.insert(root.canon);
  std::deque<int> queue = {0};

  try {
    while (!queue.empty()) {
      int n = queue.front();
      queue.pop_front();
      if (!arena[static_cast<std::size_t>(n)].alive) continue;
      Canon canon = arena[static_cast<std::size_t>(n)].canon;
      std::vector<Thread> threads = decode_threads(canon, a.ordered);
      int k = static_cast<int>(canon.classes.size());
      std::vector<Datum> classVals;
      for (int c = 0; c < k; ++c) classVals.push_back(class_value(c, a.ordered));
      std::vector<Datum> choices;
      if (canon.star >= 0) choices = {class_value(canon.star, a.ordered)};
      else choices = representatives(classVals, a.ordered, k);
      for (std::uint8_t ty : {std::uint8_t(0), std::uint8_t(kNext)}) {
        for (int l = 0; l < static_cast<int>(a.alphabet.size()); ++l) {
          for (Datum d : choices) {
            Config cfg{ty, l, d, threads};
            cfg.normalize();
            Closure::Result r = closure.run(cfg, GuessPool{}, static_cast<Datum>(k) + 1, &budget);
            if (r.accept) {
              res.verdict = Verdict::NonEmpty;
              res.witness = replay(a, arena, n, Choice{ty, l, d});
              res.explored = kept.size();
              return res;
            }
            if (!(ty & kNext)) continue;
            for (const Config& m : r.moving) {
              std::vector<Thread> moved;
              for (const auto& t : m.threads) moved.push_back({a.delta[static_cast<std::size_t>(t.state)].a, t.datum});
              Canonical ch = canonicalize_threads(moved, a.ordered);
              if (exact.count(ch.canon)) continue;
              int id = static_cast<int>(arena.size());
              std::vector<int> retired;
              if (!kept.insert(ch.canon, id, &retired)) continue;
              exact.insert(ch.canon);
              for (int r2 : retired) arena[static_cast<std::size_t>(r2)].alive = false;
              Node nn;
              nn.canon = ch.canon;
              nn.parent = n;
              nn.step = Choice{ty, l, d};
              nn.childRaw = ch.classValue;
              nn.depth = arena[static_cast<std::size_t>(n)].depth + 1;
              arena.push_back(std::move(nn));
              queue.push_back(id);
            }
          }
        }
      }
    }
  } catch (const ResourceExhausted&) {
    res.verdict = Verdict::ResourceExhausted;
    res.explored = kept.size();
    return res;
  }
  res.verdict = Verdict::Empty;
  res.explored = kept.size();
  return res;
}

// ---- membership

bool ara_membership(const Automaton& a, const DataWord& w) {
  if (a.kind != AutKind::Word) throw Error(ErrorKind::Contract, "ara_membership needs a word automaton");
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
  GuessPool pool;
  pool.fixed = true;
  {
    std::vector<Datum> vals = data;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (a.ordered) {
      // ranks become odd numbers so that every gap has an even representative
      for (auto& d : data) d = 2 * (std::lower_bound(vals.begin(), vals.end(), d) - vals.begin()) + 1;
      for (Datum v = 0; v <= 2 * static_cast<Datum>(vals.size()); ++v) pool.values.push_back(v);
    } else {
      pool.values = vals;
      pool.values.push_back(vals.back() + 1);
    }
  }
  Closure closure(a);
  std::vector<std::set<std::vector<Thread>>> failed(static_cast<std::size_t>(n));
  std::function<bool(int, const std::vector<Thread>&)> search = [&](int pos, const std::vector<Thread>& th) {
    if (th.empty()) return true;
    if (failed[static_cast<std::size_t>(pos)].count(th)) return false;
    std::uint8_t ty = pos + 1 < n ? kNext : 0;
    Config cfg{ty, letters[static_cast<std::size_t>(pos)], data[static_cast<std::size_t>(pos)], th};
    Closure::Result r = closure.run(cfg, pool, 0, nullptr);
    if (r.accept) return true;
    if (pos + 1 < n) {
      for (const Config& m : r.moving) {
        std::vector<Thread> next;
        for (const auto& t : m.threads) next.push_back({a.delta[static_cast<std::size_t>(t.state)].a, t.datum});
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (search(pos + 1, next)) return true;
      }
    }
    failed[static_cast<std::size_t>(pos)].insert(th);
    return false;
  };
  return search(0, {{a.initial, data[0]}});
}

// ---- regular languages

AraAutomaton dfa_to_ara(const LabelDfa& d) {
  if (!d.total()) throw Error(ErrorKind::Contract, "dfa_to_ara needs a total DFA");
  AutomatonBuilder b(AutKind::Word, false, d.alphabet);
  std::vector<int> qs;
  for (std::size_t s = 0; s < d.size(); ++s) qs.push_back(b.state("s" + std::to_string(s)));
  for (std::size_t s = 0; s < d.size(); ++s) {
    std::vector<ExprP> alts;
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
      int t = d.next[s][l];
      ExprP stop = d.accepting[static_cast<std::size_t>(t)] ? e_type(TypeCond::NoNext) : e_false();
      alts.push_back(e_and(e_letter(static_cast<int>(l)), e_or(stop, e_move(e_ref(qs[static_cast<std::size_t>(t)])))));
    }
    b.define(qs[s], e_or_all(alts));
  }
  return b.build(qs[static_cast<std::size_t>(d.initial)]);
}

}  // namespace regsat
