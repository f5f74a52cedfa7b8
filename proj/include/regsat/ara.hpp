#ifndef REGSAT_ARA_HPP
#define REGSAT_ARA_HPP

#include <optional>

#include "regsat/config.hpp"
#include "regsat/regex.hpp"

namespace regsat {

enum class Verdict { Empty, NonEmpty, ResourceExhausted };
const char* verdict_name(Verdict v);

struct SearchOptions {
  std::size_t maxSteps = 0;   // closure steps; 0 = unlimited
  double seconds = 0;         // wall-clock limit; 0 = unlimited
};

struct AraResult {
  Verdict verdict = Verdict::Empty;
  std::optional<DataWord> witness;
  std::size_t explored = 0;   // kept configurations
};

AraResult ara_emptiness(const Automaton& a, const SearchOptions& opt = {});
bool ara_membership(const Automaton& a, const DataWord& w);

// Successors of an all-moving configuration. Without `next`, ranges over all
// letters, both type flags and the representative data of Δ▷.
struct NextItem {
  int letter;
  Datum datum;
  std::uint8_t type;
};
std::vector<Config> move_successors(const Automaton& a, const Config& c, std::optional<NextItem> next = std::nullopt);

AraAutomaton dfa_to_ara(const LabelDfa& d);

// Concrete data for witnesses: fresh values are globally new; ordered data
// are kept as an order-maintenance list and ranked at the end.
class Instantiator {
 public:
  explicit Instantiator(bool ordered) : ordered_(ordered) {}
  int fresh();
  // Map raw values of one step to concrete ids. parent[k] is the concrete id
  // of the parent class whose raw value is class_value(k).
  std::vector<int> resolve(const std::vector<int>& parent, const std::vector<Datum>& raws);
  Datum value(int id);   // after all insertions

 private:
  bool ordered_;
  int next_ = 0;
  std::vector<int> order_;      // ordered: token ids in increasing data order
  std::vector<Datum> rank_;
  bool ranked_ = false;
  void insert_after(int pred, int id);
  void insert_before(int succ, int id);
};

}  // namespace regsat

#endif
