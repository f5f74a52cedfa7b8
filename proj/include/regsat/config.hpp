#ifndef REGSAT_CONFIG_HPP
#define REGSAT_CONFIG_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "regsat/automaton.hpp"

namespace regsat {

struct Thread {
  int state = 0;
  Datum datum = 0;
  auto operator<=>(const Thread&) const = default;
};

// A node/position configuration without its position.
struct Config {
  std::uint8_t type = 0;   // kNext | kChild bits
  int letter = 0;
  Datum datum = 0;
  std::vector<Thread> threads;   // sorted, no duplicates

  void normalize();
  std::vector<Datum> data() const;   // distinct values of threads and current datum, sorted
  bool operator==(const Config&) const = default;
};

std::string to_string(const Automaton& a, const Config& c);

// Canonical form. Unordered: the current-datum class first, the remaining
// classes sorted. Ordered: classes in data order. A canon can leave the
// type/letter/current datum open ("pending" member awaiting its node).
struct Canon {
  static constexpr std::uint8_t kOpen = 0xFF;
  std::uint8_t type = kOpen;
  int letter = -1;
  int star = -1;
  std::vector<std::vector<int>> classes;

  std::vector<std::uint64_t> sigs;
  std::uint64_t sig = 0;
  std::size_t nthreads = 0;
  std::size_t hash = 0;

  void finish();
  bool open() const { return type == kOpen; }
  bool empty_threads() const { return nthreads == 0; }
  bool operator==(const Canon& o) const {
    return hash == o.hash && type == o.type && letter == o.letter && star == o.star && classes == o.classes;
  }
};

struct CanonHash {
  std::size_t operator()(const Canon& c) const { return c.hash; }
};

struct Canonical {
  Canon canon;
  std::vector<Datum> classValue;   // concrete datum behind each class
};

Canonical canonicalize(const Config& c, bool ordered);
// threads only; the result has open type/letter/star
Canonical canonicalize_threads(const std::vector<Thread>& threads, bool ordered);

bool subsumes(const Canon& small, const Canon& big, bool ordered);
std::string to_string(const Automaton& a, const Canon& c);

// Raw data values used when a canon is expanded: class k becomes class_value(k).
constexpr Datum kSpacing = Datum(1) << 30;
inline Datum class_value(int k, bool ordered) { return ordered ? Datum(k) * kSpacing : Datum(k); }

// Threads of a canon with class_value data.
std::vector<Thread> decode_threads(const Canon& c, bool ordered);

// Representative data for a datum chosen next to existing values: each value,
// plus one fresh value (unordered) or one value per gap (ordered).
std::vector<Datum> representatives(const std::vector<Datum>& sortedValues, bool ordered, Datum fresh);

struct Budget {
  std::size_t maxSteps = 0;   // 0 = unlimited
  double seconds = 0;         // wall-clock limit, 0 = unlimited
  std::size_t steps = 0;
  bool exhausted = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool tick(std::size_t n = 1) {
    steps += n;
    if (maxSteps && steps > maxSteps) exhausted = true;
    if (seconds > 0 && (steps & 63) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > seconds)
      exhausted = true;
    return !exhausted;
  }
};

class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted() : std::runtime_error("search budget exhausted") {}
};

// Guess pool policy: fixed (membership) or derived from the configuration.
struct GuessPool {
  bool fixed = false;
  std::vector<Datum> values;   // used when fixed
};

// Antichain of canons; keeps ≾-minimal elements.
class CanonAntichain {
 public:
  explicit CanonAntichain(bool ordered) : ordered_(ordered) {}
  // false when some kept element subsumes c; otherwise inserts and retires larger elements
  bool insert(const Canon& c, int payload, std::vector<int>* retired = nullptr);
  bool covered(const Canon& c) const;
  std::size_t size() const { return live_; }
  void clear();

 private:
  struct Entry {
    Canon c;
    int payload;
    bool alive;
  };
  bool ordered_;
  std::vector<Entry> items_;
  std::size_t live_ = 0;
};

// ε-closure exploration. Deterministic instructions are applied eagerly,
// Or/Guess threads are resolved in a fixed order, and spreads fire one at a
// time once everything else is settled. Reports whether a thread-empty
// configuration is reachable and collects the reachable all-moving ones.
class Closure {
 public:
  explicit Closure(const Automaton& a) : a_(a) {}

  struct Result {
    bool accept = false;
    std::vector<Config> moving;
  };

  // freshFrom must exceed every datum of `start` (unordered dynamic pools).
  Result run(const Config& start, const GuessPool& pool, Datum freshFrom, Budget* budget,
             bool stopOnAccept = true) const;

  // Eager deterministic processing; false when the configuration dies.
  bool eager(Config& c) const;

 private:
  const Automaton& a_;
};

// Literal single-step relations (as oracles and for probes).
bool test_passes(const Automaton& a, const Config& c, const Thread& t);
std::vector<Config> eps_successors(const Automaton& a, const Config& c, const std::vector<Datum>& guessPool);
// guess pool for emptiness mode: data(c) plus fresh or gap representatives
std::vector<Datum> emptiness_pool(const Config& c, bool ordered);

}  // namespace regsat

#endif
