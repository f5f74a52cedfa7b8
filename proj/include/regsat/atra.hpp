#ifndef REGSAT_ATRA_HPP
#define REGSAT_ATRA_HPP

#include <optional>

#include "regsat/ara.hpp"

namespace regsat {

using TreeConfig = std::vector<Config>;

struct AtraResult {
  Verdict verdict = Verdict::Empty;
  std::optional<DataTree> witness;
  std::size_t explored = 0;
};

AtraResult atra_emptiness(const Automaton& a, const SearchOptions& opt = {});
bool atra_membership(const Automaton& a, const DataTree& t);

// Move images of an all-moving node configuration over representative
// (type, letter, datum) choices. Empty when the type forbids a needed move.
struct MoveImages {
  bool possible = false;
  std::vector<Config> down;    // present iff the type has a child
  std::vector<Config> right;   // present iff the type has a right sibling
};
MoveImages node_move_images(const Automaton& a, const Config& c);

// One ↠ step on a (position-abstracted) tree configuration, literally.
std::vector<TreeConfig> tree_step(const Automaton& a, const TreeConfig& s);

// S1 ≤℘ S2: every member of S1 is ≾ some member of S2.
bool majoring_subsumes(const std::vector<Canon>& s1, const std::vector<Canon>& s2, bool ordered = false);

}  // namespace regsat

#endif
