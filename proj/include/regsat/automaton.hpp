#ifndef REGSAT_AUTOMATON_HPP
#define REGSAT_AUTOMATON_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "regsat/model.hpp"

namespace regsat {

// Move is ▷ (next position / right sibling), Down is ▽ (first child).
enum class Op : std::uint8_t {
  Letter, NotLetter, TypeTest, Store, Eq, Neq, And, Or, Move, Down, Guess,
  Spread2, Spread1, TestLt, TestGt, TestEq, TestNeq,
};

// ▷?, ▷̄?, ▽?, ▽̄?
enum class TypeCond : std::uint8_t { Next, NoNext, Child, NoChild };

// Instruction arguments: letter index or TypeCond in `a` for tests, states in
// `a`/`b` otherwise. Spread2(a=source q2, b=target q1).
struct Instr {
  Op op = Op::Eq;
  int a = -1;
  int b = -1;
  bool operator==(const Instr&) const = default;
};

enum class AutKind : std::uint8_t { Word, Tree };

// type flag bits shared by both engines
constexpr std::uint8_t kNext = 1;    // ▷
constexpr std::uint8_t kChild = 2;   // ▽

struct Automaton {
  AutKind kind = AutKind::Word;
  bool ordered = false;
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::vector<Instr> delta;

  int letter_index(const std::string& name) const;   // -1 when absent
  int state_index(const std::string& name) const;
  std::size_t num_states() const { return states.size(); }
  bool is_moving(int q) const {
    Op o = delta[q].op;
    return o == Op::Move || o == Op::Down;
  }
  bool is_spread(int q) const {
    Op o = delta[q].op;
    return o == Op::Spread1 || o == Op::Spread2;
  }
  void validate() const;
};

using AraAutomaton = Automaton;
using AtraAutomaton = Automaton;

// ---- positive boolean formulas used to define automata before flattening

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Expr {
  enum Kind { Ref, And, Or, True, False, Test, Unary, Spread2 } kind = True;
  Op op = Op::Eq;      // Test: Letter/NotLetter/TypeTest/Eq/Neq/Test*; Unary: Store/Move/Down/Guess/Spread1
  int arg = -1;        // Ref: state; Test: letter or TypeCond; Spread2: source state
  ExprP l, r;          // And/Or operands; Unary/Spread2 body in l
};

ExprP e_ref(int q);
ExprP e_and(ExprP a, ExprP b);
ExprP e_or(ExprP a, ExprP b);
ExprP e_and_all(const std::vector<ExprP>& xs);   // empty -> true
ExprP e_or_all(const std::vector<ExprP>& xs);    // empty -> false
ExprP e_true();
ExprP e_false();
ExprP e_test(Op op, int arg = -1);
ExprP e_letter(int a);
ExprP e_not_letter(int a);
ExprP e_type(TypeCond c);
ExprP e_unary(Op op, ExprP body);
ExprP e_store(ExprP body);
ExprP e_move(ExprP body);
ExprP e_down(ExprP body);
ExprP e_guess(ExprP body);
ExprP e_spread1(ExprP body);
ExprP e_spread2(int source, ExprP body);

// Collects state definitions as formulas and flattens them so that every
// delta entry is one instruction (normalize_automaton).
class AutomatonBuilder {
 public:
  AutomatonBuilder(AutKind kind, bool ordered, std::vector<std::string> alphabet);

  int state(const std::string& name);        // declare or look up
  int fresh(const std::string& hint);        // always a new, unused name
  bool has_state(const std::string& name) const;
  void define(int q, ExprP body);
  bool defined(int q) const;
  int letter(const std::string& name) const;
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  AutKind kind() const { return kind_; }
  bool ordered() const { return ordered_; }
  const std::vector<std::string>& names() const { return names_; }
  const ExprP& def(int q) const { return defs_.at(q); }

  Automaton build(int initial) const;

 private:
  AutKind kind_;
  bool ordered_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> byName_;
  std::vector<ExprP> defs_;
};

Automaton normalize_automaton(const AutomatonBuilder& b, int initial);

// text format
Automaton parse_automaton(const std::string& text);
std::string to_string(const Automaton& a);
std::string instr_to_string(const Automaton& a, const Instr& in);

enum class CombineMode { Union, Intersection };
Automaton combine(const Automaton& a, const Automaton& b, CombineMode mode);

// accept-all automaton over the given alphabet
Automaton accept_all(AutKind kind, bool ordered, std::vector<std::string> alphabet);

}  // namespace regsat

#endif
