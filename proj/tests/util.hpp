#ifndef REGSAT_TEST_UTIL_HPP
#define REGSAT_TEST_UTIL_HPP

#include <doctest.h>

#include <set>

#include "regsat/oracle.hpp"

namespace testutil {

using namespace regsat;

inline Automaton aut(const std::string& text) { return parse_automaton(text); }

inline int st(const Automaton& a, const std::string& q) {
  int i = a.state_index(q);
  REQUIRE(i >= 0);
  return i;
}

inline Config cfg(const Automaton& a, std::uint8_t type, const std::string& letter, Datum d,
                  std::vector<std::pair<std::string, Datum>> threads) {
  Config c{type, a.letter_index(letter), d, {}};
  for (auto& [q, v] : threads) c.threads.push_back({st(a, q), v});
  c.normalize();
  return c;
}

struct CanonLess {
  bool operator()(const Canon& x, const Canon& y) const {
    return std::tie(x.type, x.letter, x.star, x.classes) < std::tie(y.type, y.letter, y.star, y.classes);
  }
};
using CanonSet = std::set<Canon, CanonLess>;

inline CanonSet canon_set(const std::vector<Config>& cs, bool ordered) {
  CanonSet s;
  for (const auto& c : cs) s.insert(canonicalize(c, ordered).canon);
  return s;
}

inline ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Contract;
}

// same verdict of two automata on every enumerated word / tree
inline bool same_words(const Automaton& x, const Automaton& y, const EnumBounds& b) {
  bool same = true;
  enum_words(b, [&](const DataWord& w) {
    if (ara_membership(x, w) != ara_membership(y, w)) same = false;
    return same;
  });
  return same;
}

inline bool same_trees(const Automaton& x, const Automaton& y, const EnumBounds& b) {
  bool same = true;
  enum_trees(b, [&](const DataTree& t) {
    if (atra_membership(x, t) != atra_membership(y, t)) same = false;
    return same;
  });
  return same;
}

}  // namespace testutil

#endif
