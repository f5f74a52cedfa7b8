#ifndef REGSAT_XPATH_HPP
#define REGSAT_XPATH_HPP

#include <optional>

#include "regsat/dtd.hpp"

namespace regsat {

// Forward regXPath with data tests. First is the internal leftmost-child
// step (▽); Right doubles as ▷. Down and DownStar only occur before
// normalization.
struct XNode;
struct XPath;
using XNodeP = std::shared_ptr<const XNode>;
using XPathP = std::shared_ptr<const XPath>;

struct XPath {
  enum Kind { Down, DownStar, Right, RightStar, Eps, First, Test, Concat, Union, Star } kind = Eps;
  XNodeP test;
  XPathP l, r;
};

struct XNode {
  enum Kind {
    True, False, Label, NotLabel, And, Or, Not,
    Some, Eq, Neq,              // ⟨α⟩, ⟨α=β⟩, ⟨α≠β⟩
    NotSome, NotEq, NotNeq,     // their negations in NNF
  } kind = True;
  std::string label;
  XNodeP l, r;
  XPathP a, b;
  int line = 0, col = 0;
};

XPathP xpath(XPath::Kind k, XPathP l = nullptr, XPathP r = nullptr);
XPathP xpath_test(XNodeP f);
XNodeP xnode(XNode::Kind k, XNodeP l = nullptr, XNodeP r = nullptr);
XNodeP xnode_label(const std::string& a, bool negated = false);
XNodeP xnode_data(XNode::Kind k, XPathP a, XPathP b = nullptr);
XNodeP xnode_and(XNodeP a, XNodeP b);   // simplifies true/false
XNodeP xnode_or(XNodeP a, XNodeP b);

XNodeP parse_xpath(const std::string& text);
XPathP parse_xpath_path(const std::string& text);
std::string to_string(const XNodeP& f);
std::string to_string(const XPathP& p);
void xpath_labels(const XNodeP& f, std::vector<std::string>& out);
int xpath_size(const XNodeP& f);

XNodeP nnf_xpath(const XNodeP& f);
bool is_nnf(const XNodeP& f);
// NNF input. Rewrites ↓ to ▽→*, ↓* to (▽→*)* and shapes every data-test
// operand to ε or a path starting with a step.
XNodeP normalize_paths(const XNodeP& f);
bool is_normalized(const XNodeP& f);
XPathP fcns_path(const XPathP& p);   // the axis rewrite alone (inner tests normalized)

// Direct semantics over node ids (preorder). Sets are indexed by node id;
// relations as rel[x][y].
std::vector<char> eval_xpath(const DataTree& t, const XNodeP& f);
std::vector<std::vector<char>> eval_xpath(const DataTree& t, const XPathP& p);
bool satisfies(const DataTree& t, const XNodeP& f);   // at the root

XNodeP key_formula(const std::string& a);

// Path automaton over alternating direction and test letters. Test letters
// are subsets of the state's relevant tests, given as bit masks.
struct PathDfa {
  struct State {
    bool moving = true;
    bool accepting = false;
    bool sink = false;
    int down = -1, right = -1;   // moving states
    std::vector<int> tests;      // testing states: indices into PathDfa::tests
    std::vector<int> next;       // testing states: indexed by mask over `tests`
  };
  std::vector<XNodeP> tests;
  std::vector<State> states;   // 0 is initial

  int step_test(int s, const std::vector<char>& holds) const;   // holds indexed like `tests`
  // acceptance of str(x, y) for x ⪯fcns y in t
  bool accepts_str(const DataTree& t, int x, int y) const;
};

PathDfa build_path_dfa(const XPathP& alpha);   // throws NotNormalized on a leading test
// (isDown, reached node) per step; nullopt unless x ⪯fcns y
std::optional<std::vector<std::pair<bool, int>>> fcns_steps(const DataTree& t, int x, int y);

AtraAutomaton xpath_to_atra(const XNodeP& eta, const std::vector<std::string>& extraLabels = {});

struct XpathSatResult {
  Verdict verdict = Verdict::Empty;
  std::optional<DataTree> witness;
  std::size_t explored = 0;
};

XpathSatResult sat_xpath(const XNodeP& eta, const std::optional<Dtd>& dtd = std::nullopt,
                         const std::vector<std::string>& keys = {}, const SearchOptions& opt = {});

}  // namespace regsat

#endif
