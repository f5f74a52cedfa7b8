#ifndef REGSAT_REGEX_HPP
#define REGSAT_REGEX_HPP

#include <memory>
#include <string>
#include <vector>

namespace regsat {

// Regular expressions over labels (DTD content models).
struct LabelRegex {
  enum Kind { Eps, Sym, Cat, Alt, Star } kind = Eps;
  std::string sym;
  std::vector<LabelRegex> kids;

  static LabelRegex eps() { return {}; }
  static LabelRegex symbol(std::string s) { return {Sym, std::move(s), {}}; }
  static LabelRegex cat(LabelRegex a, LabelRegex b) { return {Cat, "", {std::move(a), std::move(b)}}; }
  static LabelRegex alt(LabelRegex a, LabelRegex b) { return {Alt, "", {std::move(a), std::move(b)}}; }
  static LabelRegex star(LabelRegex a) { return {Star, "", {std::move(a)}}; }
};

std::string to_string(const LabelRegex& r);
void collect_symbols(const LabelRegex& r, std::vector<std::string>& out);

// Total DFA over an explicit alphabet.
struct LabelDfa {
  std::vector<std::string> alphabet;
  int initial = 0;
  std::vector<std::vector<int>> next;   // next[state][letter], -1 = partial
  std::vector<bool> accepting;

  std::size_t size() const { return next.size(); }
  bool total() const;
  bool accepts(const std::vector<std::string>& word) const;
};

// Glushkov position automaton, determinized and completed with a sink.
LabelDfa regex_to_dfa(const LabelRegex& r, const std::vector<std::string>& alphabet);

}  // namespace regsat

#endif
