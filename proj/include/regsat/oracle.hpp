#ifndef REGSAT_ORACLE_HPP
#define REGSAT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "regsat/ltl.hpp"
#include "regsat/xpath.hpp"

namespace regsat {

// Brute-force machinery used as the test oracle for the engines.

struct EnumBounds {
  int maxSize = 4;   // positions or nodes
  int maxData = 3;   // distinct data values
  std::vector<std::string> alphabet;
  bool ordered = false;   // order-canonical data assignments
  void validate() const;
};

// Structures up to data isomorphism (unordered: restricted growth strings;
// ordered: surjections onto {1..k}), by size, then shape, labels, data.
// The visitor returns false to stop early.
void enum_words(const EnumBounds& b, const std::function<bool(const DataWord&)>& visit);
void enum_trees(const EnumBounds& b, const std::function<bool(const DataTree&)>& visit);
std::vector<DataWord> all_words(const EnumBounds& b);
std::vector<DataTree> all_trees(const EnumBounds& b);

// Parent arrays (preorder) of the ordered tree shapes with n nodes.
std::vector<std::vector<int>> tree_shapes(int n);

// First enumerated model; the alphabet defaults to the formula's labels plus a fresh one.
std::optional<DataWord> bounded_sat(const LtlP& f, EnumBounds b);
std::optional<DataTree> bounded_sat(const XNodeP& f, EnumBounds b);

// Literal run search over the single-step relations, without the closure
// shortcuts of the engines.
bool literal_ara_membership(const Automaton& a, const DataWord& w, std::size_t maxConfigs = 200000);
// Tree configurations with positions. Sets *unrelated to false if some
// reachable configuration holds two members at fcns-related nodes.
// Throws ResourceExhausted beyond maxConfigs.
bool literal_atra_membership(const Automaton& a, const DataTree& t, bool* unrelated = nullptr,
                             std::size_t maxConfigs = 200000);

// Reference orders.
bool subsumes_bruteforce(const Canon& small, const Canon& big);   // unordered, all injections
bool embeds_dp(const Canon& small, const Canon& big);             // ordered, quadratic DP

// ---- random generation (all randomness flows through Rng)

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(g_() % static_cast<std::uint64_t>(n)); }
  bool chance(int percent) { return below(100) < percent; }
  std::uint64_t raw() { return g_(); }

 private:
  std::mt19937_64 g_;
};

Automaton random_ara(Rng& r, int maxStates, const std::vector<std::string>& alphabet, bool ordered = false);
Automaton random_atra(Rng& r, int maxStates, const std::vector<std::string>& alphabet);
LtlP random_ltl(Rng& r, int depth, const std::vector<std::string>& alphabet, bool ordered = false);   // NNF
XNodeP random_xpath(Rng& r, int depth, const std::vector<std::string>& alphabet);
XPathP random_xpath_path(Rng& r, int depth, const std::vector<std::string>& alphabet);
Config random_config(Rng& r, int nstates, int nletters, bool tree, int maxThreads = 5, int maxData = 4);
// c' ≾ c by thread deletion and data renaming (order preserving when ordered)
Config weaken(Rng& r, const Config& c, bool ordered, int dropPercent = 30);

// ---- shrinking: greedy, structural, re-validating

DataWord shrink_word(DataWord w, const std::function<bool(const DataWord&)>& stillFails);
DataTree shrink_tree(DataTree t, const std::function<bool(const DataTree&)>& stillFails);

// ---- reports

struct Disagreement {
  std::size_t caseIndex = 0;
  std::string what;
  std::string subject;          // formula or automaton
  std::string counterexample;   // minimized structure, when there is one
};

struct CrosscheckReport {
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t casesRun = 0;
  std::size_t agreements = 0;
  std::size_t skipped = 0;   // budget exhausted; neither agreement nor disagreement
  std::size_t checks = 0;    // individual comparisons
  std::vector<Disagreement> disagreements;
  std::vector<std::string> lines;
  std::map<std::string, std::size_t> counters;   // e.g. verdict tallies
  double elapsed = 0;

  bool passed() const { return disagreements.empty(); }
  void merge(const CrosscheckReport& o);
  std::string to_text(bool timing = true) const;
};

enum class CheckKind { Ltl, Xpath, Ara, Atra };
std::optional<CheckKind> check_kind(const std::string& name);

struct CrosscheckOptions {
  CheckKind kind = CheckKind::Ltl;
  std::uint64_t seed = 1;
  std::size_t count = 50;
  EnumBounds bounds;        // alphabet defaults to {a, b}
  bool ordered = false;     // ltl and ara
  bool satisfiability = true;   // also run the emptiness/sat pipeline per case
  double satSeconds = 5;    // per-case limit for the pipeline
  // fault-injection hooks
  std::function<XNodeP(const XNodeP&)> xpathNnf;
  std::function<LtlP(const LtlP&)> ltlNnf;
};

CrosscheckReport crosscheck(const CrosscheckOptions& opt);

using EpsFn = std::function<std::vector<Config>(const Automaton&, const Config&, const std::vector<Datum>&)>;

// Samples reachable configurations c, builds c' ≾ c, and checks every
// one-step successor d of c against the successors of c' (or c' itself).
// `samples` counts (c', c, d) triples.
CrosscheckReport rdc_probe(const Automaton& a, std::size_t samples, std::uint64_t seed = 1, EpsFn eps = nullptr);
// Majoring-order lifting for tree configurations, within a bounded number of steps.
CrosscheckReport rdc_probe_tree(const Automaton& a, std::size_t samples, std::uint64_t seed = 1);

// Reflexivity, transitivity, antisymmetry up to canon equality, idempotence of
// canonicalization, and agreement with the reference orders.
CrosscheckReport subsumption_probe(std::size_t count, std::uint64_t seed, bool ordered);
// Ordered embedding against embeds_dp on random abs-sequence pairs.
CrosscheckReport embedding_probe(std::size_t count, std::uint64_t seed);
// DFA acceptance of str(x, y) against the path denotation on all fcns pairs.
CrosscheckReport path_dfa_probe(std::size_t count, std::uint64_t seed, const EnumBounds& trees);

}  // namespace regsat

#endif
