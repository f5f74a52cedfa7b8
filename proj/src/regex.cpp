#include "regsat/regex.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regsat/model.hpp"

namespace regsat {

std::string to_string(const LabelRegex& r) {
  switch (r.kind) {
    case LabelRegex::Eps: return "eps";
    case LabelRegex::Sym: return r.sym;
    case LabelRegex::Cat: return "(" + to_string(r.kids[0]) + " " + to_string(r.kids[1]) + ")";
    case LabelRegex::Alt: return "(" + to_string(r.kids[0]) + " | " + to_string(r.kids[1]) + ")";
    case LabelRegex::Star: return "(" + to_string(r.kids[0]) + ")*";
  }
  return "";
}

void collect_symbols(const LabelRegex& r, std::vector<std::string>& out) {
  if (r.kind == LabelRegex::Sym && std::find(out.begin(), out.end(), r.sym) == out.end()) out.push_back(r.sym);
  for (const auto& k : r.kids) collect_symbols(k, out);
}

bool LabelDfa::total() const {
  for (const auto& row : next) {
    if (row.size() != alphabet.size()) return false;
    for (int t : row)
      if (t < 0) return false;
  }
  return true;
}

bool LabelDfa::accepts(const std::vector<std::string>& word) const {
  int s = initial;
  for (const auto& l : word) {
    auto it = std::find(alphabet.begin(), alphabet.end(), l);
    if (it == alphabet.end()) return false;
    s = next[s][static_cast<std::size_t>(it - alphabet.begin())];
    if (s < 0) return false;
  }
  return accepting[s];
}

namespace {

struct Glushkov {
  std::vector<std::string> posSym;
  std::vector<std::set<int>> follow;

  struct Info {
    bool nullable = false;
    std::set<int> first, last;
  };

  Info walk(const LabelRegex& r) {
    Info out;
    switch (r.kind) {
      case LabelRegex::Eps: out.nullable = true; break;
      case LabelRegex::Sym: {
        int p = static_cast<int>(posSym.size());
        posSym.push_back(r.sym);
        follow.emplace_back();
        out.first = out.last = {p};
        break;
      }
      case LabelRegex::Cat: {
        Info a = walk(r.kids[0]);
        Info b = walk(r.kids[1]);
        for (int p : a.last) follow[p].insert(b.first.begin(), b.first.end());
        out.nullable = a.nullable && b.nullable;
        out.first = a.first;
        if (a.nullable) out.first.insert(b.first.begin(), b.first.end());
        out.last = b.last;
        if (b.nullable) out.last.insert(a.last.begin(), a.last.end());
        break;
      }
      case LabelRegex::Alt: {
        Info a = walk(r.kids[0]);
        Info b = walk(r.kids[1]);
        out.nullable = a.nullable || b.nullable;
        out.first = a.first;
        out.first.insert(b.first.begin(), b.first.end());
        out.last = a.last;
        out.last.insert(b.last.begin(), b.last.end());
        break;
      }
      case LabelRegex::Star: {
        Info a = walk(r.kids[0]);
        for (int p : a.last) follow[p].insert(a.first.begin(), a.first.end());
        out.nullable = true;
        out.first = a.first;
        out.last = a.last;
        break;
      }
    }
    return out;
  }
};

}  // namespace

LabelDfa regex_to_dfa(const LabelRegex& r, const std::vector<std::string>& alphabet) {
  Glushkov g;
  Glushkov::Info info = g.walk(r);
  constexpr int kStart = -1;
  LabelDfa d;
  d.alphabet = alphabet;
  std::map<std::set<int>, int> ids;
  std::vector<std::set<int>> sets;
  auto id_of = [&](const std::set<int>& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int k = static_cast<int>(sets.size());
    ids[s] = k;
    sets.push_back(s);
    return k;
  };
  d.initial = id_of({kStart});
  for (std::size_t k = 0; k < sets.size(); ++k) {
    std::set<int> cur = sets[k];
    std::vector<int> row(alphabet.size(), -1);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      std::set<int> tgt;
      for (int p : cur) {
        const std::set<int>& nx = p == kStart ? info.first : g.follow[static_cast<std::size_t>(p)];
        for (int q : nx)
          if (g.posSym[static_cast<std::size_t>(q)] == alphabet[a]) tgt.insert(q);
      }
      row[a] = id_of(tgt);
    }
    d.next.push_back(row);
  }
  for (const auto& s : sets) {
    bool acc = false;
    for (int p : s) {
      if (p == kStart ? info.nullable : info.last.count(p) > 0) acc = true;
    }
    d.accepting.push_back(acc);
  }
  return d;
}

}  // namespace regsat
