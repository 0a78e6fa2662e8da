#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "wop/op_alphabet.hpp"

namespace wop {

// (from, symbol, to) for pushes and shifts; (from, stack-state, to) for pops.
using Triple = std::tuple<std::string, std::string, std::string>;

// Nondeterministic operator precedence automaton. The move type taken at
// each step is forced by the precedence relation between the stack top
// symbol (# when the stack is empty) and the lookahead.
class Opa {
 public:
  Opa() = default;

  void add_state(const std::string& q);
  void add_initial(const std::string& q);
  void add_final(const std::string& q);
  void add_push(const std::string& from, const std::string& sym, const std::string& to);
  void add_shift(const std::string& from, const std::string& sym, const std::string& to);
  void add_pop(const std::string& from, const std::string& stack, const std::string& to);

  const std::set<std::string>& states() const { return states_; }
  const std::set<std::string>& initial() const { return initial_; }
  const std::set<std::string>& final() const { return final_; }
  const std::set<Triple>& push() const { return push_; }
  const std::set<Triple>& shift() const { return shift_; }
  const std::set<Triple>& pop() const { return pop_; }

  bool has_state(const std::string& q) const { return states_.count(q) > 0; }

  // All transition symbols belong to alpha and all states are declared.
  void validate(const OpAlphabet& alpha) const;

 private:
  void require_state(const std::string& q) const;

  std::set<std::string> states_;
  std::set<std::string> initial_;
  std::set<std::string> final_;
  std::set<Triple> push_;
  std::set<Triple> shift_;
  std::set<Triple> pop_;
};

enum class MoveKind { kPush, kShift, kPop };

// One executed transition. For pushes and shifts `label` is the consumed
// input symbol; for pops it is the stack state that was removed.
struct Move {
  MoveKind kind;
  std::string from;
  std::string label;
  std::string to;

  Triple triple() const { return {from, label, to}; }
  friend auto operator<=>(const Move&, const Move&) = default;
};

using Run = std::vector<Move>;

std::string move_str(const Move& m);
std::string run_str(const Run& r);

// ((symbol, state) stack, current state, next unread position). pos ranges
// over 1..n+1; n+1 means only the closing # remains.
struct Configuration {
  std::vector<std::pair<std::string, std::string>> stack;
  std::string state;
  int pos = 1;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// All successor configurations of c, each with the move that produced it.
// The empty stack exposes # as top symbol, so the move table is total; an
// absent relation or missing transition just yields no successors.
std::vector<std::pair<Configuration, Move>> step(const OpAlphabet& alpha,
                                                 const Opa& a,
                                                 const Configuration& c,
                                                 const Word& w);

// All accepting runs, by depth-first search from <bottom, q_I, w#> to
// <bottom, q_F, #>. Throws a compatibility error for words outside
// (Sigma, M)+ so callers can distinguish "structurally impossible" from
// "zero runs".
std::vector<Run> enumerate_runs(const OpAlphabet& alpha, const Opa& a, const Word& w);

// True iff some accepting run exists. Incompatible words are simply
// rejected (the accepted language lives inside (Sigma, M)+).
bool accepts(const OpAlphabet& alpha, const Opa& a, const Word& w);

// Single initial state, push/shift functional in (state, symbol), pop
// functional in (state, stack-state).
bool is_deterministic(const Opa& a);

// Synchronous product over one OP alphabet: L(product) = L(a) n L(b).
// Product states are rendered "p*q".
Opa opa_product(const Opa& a, const Opa& b);

// One-state automaton accepting every compatible word.
Opa universal_opa(const OpAlphabet& alpha);

std::string product_state(const std::string& a, const std::string& b);

}  // namespace wop
