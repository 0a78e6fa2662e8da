#pragma once

#include <map>
#include <vector>

#include "wop/opa.hpp"
#include "wop/semiring.hpp"

namespace wop {

// Operator precedence automaton with a semiring weight on every transition.
// The weight maps are total on the transition sets by construction.
class WeightedOpa {
 public:
  WeightedOpa(Opa base, Semiring semiring)
      : base_(std::move(base)), semiring_(std::move(semiring)) {}

  // Adds the transition to the base automaton together with its weight.
  void add_push(const std::string& from, const std::string& sym,
                const std::string& to, const Weight& w);
  void add_shift(const std::string& from, const std::string& sym,
                 const std::string& to, const Weight& w);
  void add_pop(const std::string& from, const std::string& stack,
               const std::string& to, const Weight& w);

  const Opa& base() const { return base_; }
  Opa& base() { return base_; }
  const Semiring& semiring() const { return semiring_; }

  const Weight& weight(const Move& m) const;
  const std::map<Triple, Weight>& push_weights() const { return push_wt_; }
  const std::map<Triple, Weight>& shift_weights() const { return shift_wt_; }
  const std::map<Triple, Weight>& pop_weights() const { return pop_wt_; }

  // Every transition of the base has a weight in the declared semiring.
  void validate(const OpAlphabet& alpha) const;

 private:
  Opa base_;
  Semiring semiring_;
  std::map<Triple, Weight> push_wt_;
  std::map<Triple, Weight> shift_wt_;
  std::map<Triple, Weight> pop_wt_;
};

// The weight of one run: the ordered product of its transition weights.
Weight run_weight(const WeightedOpa& a, const Run& r);

// The behavior [[A]](w): the sum over all accepting runs of the ordered
// product of transition weights. Zero when there is no accepting run or the
// word is incompatible.
Weight behavior(const OpAlphabet& alpha, const WeightedOpa& a, const Word& w);

// True iff every pop weight equals one (vacuously true for no pops).
bool is_restricted(const WeightedOpa& a);

// The base automaton with weight one on every transition, so that behavior
// equals acceptance over the boolean semiring. Over other semirings a word
// with k accepting runs evaluates to the k-fold sum of one.
WeightedOpa lift_boolean(const Opa& a, const Semiring& semiring);

// A finite sum of weighted characteristic series k_i * 1_{L(A_i)} with
// deterministic part automata.
struct StepPart {
  Opa automaton;
  Weight weight;
};

class StepFunction {
 public:
  StepFunction(Semiring semiring, std::vector<StepPart> parts);

  const Semiring& semiring() const { return semiring_; }
  const std::vector<StepPart>& parts() const { return parts_; }

 private:
  Semiring semiring_;
  std::vector<StepPart> parts_;
};

// Sum of k_i over the parts whose automaton accepts w. When the parts truly
// partition the compatible words this is a single k_i.
Weight step_eval(const StepFunction& s, const OpAlphabet& alpha, const Word& w);

// Empirical partition check: every compatible word up to max_len is
// accepted by exactly one part.
bool step_is_partition(const StepFunction& s, const OpAlphabet& alpha, int max_len);

// Pointwise sum / product via pairwise products of the part languages with
// combined weights k_i + k'_j resp. k_i * k'_j.
StepFunction step_add(const StepFunction& s, const StepFunction& t);
StepFunction step_mul(const StepFunction& s, const StepFunction& t);

// A restricted weighted OPA with behavior pointwise equal to step_eval,
// assembled as the disjoint sum over parts of the constant-series automaton
// for k_i intersected with L_i.
WeightedOpa step_to_rwopa(const StepFunction& s, const OpAlphabet& alpha);

}  // namespace wop
