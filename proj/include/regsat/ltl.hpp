#ifndef REGSAT_LTL_HPP
#define REGSAT_LTL_HPP

#include "regsat/ara.hpp"

namespace regsat {

// Freeze LTL with one register. Up is ↑ (register equals the current datum);
// UpLt / UpGt compare the register against the current datum (ordered data).
// Aprev is ∀≤↓, AprevIf the binary form, Efut is ∃≥↓.
struct Ltl;
using LtlP = std::shared_ptr<const Ltl>;

struct Ltl {
  enum Kind {
    True, False, Atom, NotAtom, Up, NotUp, UpLt, UpGt,
    Not, Freeze, X, WX, U, R, And, Or, Aprev, AprevIf, Efut,
  } kind = True;
  std::string label;
  LtlP l, r;   // AprevIf(l, r): for all earlier data satisfying r, l holds
  int line = 0, col = 0;
};

LtlP ltl(Ltl::Kind k, LtlP l = nullptr, LtlP r = nullptr);
LtlP ltl_atom(const std::string& a, bool negated = false);

LtlP parse_ltl(const std::string& text);
std::string to_string(const LtlP& f);
bool is_nnf(const LtlP& f);
LtlP nnf_ltl(const LtlP& f);   // throws NegatedQuantifier
void ltl_labels(const LtlP& f, std::vector<std::string>& out);
bool uses_order(const LtlP& f);
int ltl_size(const LtlP& f);

// Direct semantics; `pos` is 1-based. Handles raw formulas with Not as well.
bool eval_ltl(const DataWord& w, int pos, Datum reg, const LtlP& f);
bool eval_ltl(const DataWord& w, const LtlP& f);

// Compile an NNF formula. The alphabet is the formula's labels plus `alphabet`.
AraAutomaton ltl_to_ara(const LtlP& f, bool ordered, const std::vector<std::string>& alphabet = {});

struct LtlSatResult {
  Verdict verdict = Verdict::Empty;
  std::optional<DataWord> witness;
  std::size_t explored = 0;
};

// Words range over the formula's labels and one extra label that it never mentions.
LtlSatResult sat_ltl(const LtlP& f, bool ordered, const SearchOptions& opt = {});
std::string fresh_label(const std::vector<std::string>& used);

}  // namespace regsat

#endif
