#pragma once

#include "wop/wopa.hpp"

namespace wop {

// Disjoint union; behavior is the pointwise sum. States are renamed
// "a.<q>" / "b.<q>" to keep the union disjoint and reproducible.
WeightedOpa sum(const WeightedOpa& a, const WeightedOpa& b);

// Product of a weighted automaton with a deterministic unweighted one,
// keeping a's weights: behavior(w) = [[a]](w) if b accepts w, else zero.
// Restrictedness is preserved.
WeightedOpa intersect_with_opl(const WeightedOpa& a, const Opa& b);

// Pointwise (Hadamard) product over a commutative semiring.
WeightedOpa hadamard(const WeightedOpa& a, const WeightedOpa& b);

// Image of the behavior under an OPM-preserving projection h: the result
// over `target` satisfies [[out]](v) = sum of [[a]](w) over h(w) = v.
// States Q x Sigma remember the last symbol read; pops keep the remembered
// symbol unchanged.
WeightedOpa project(const OpAlphabet& source, const WeightedOpa& a,
                    const SymbolMap& h, const OpAlphabet& target);

// Left-multiplies the behavior by k: fresh copies of the initial states
// whose outgoing pushes carry k * wt. Pop weights are untouched, so
// restrictedness is preserved.
WeightedOpa scalar_left_multiply(const Weight& k, const WeightedOpa& a);

// For commutative semirings: an equivalent restricted automaton over
// Q x Q x Q. The second and third components guess the pop transition
// matched by the next push, whose weight is pre-multiplied onto that push;
// accepting-run counts are preserved. The fixed final-guess state is the
// first state in canonical order.
WeightedOpa eliminate_pop_weights(const WeightedOpa& a);

// ---------------------------------------------------------------------------
// Weighted nested word (visibly pushdown) automata and their embedding.

enum class VpClass { kCall, kInternal, kReturn };

// Partition of a visibly pushdown alphabet.
struct VpPartition {
  std::vector<std::string> call;
  std::vector<std::string> internal;
  std::vector<std::string> ret;

  VpClass classify(const std::string& sym) const;
  std::vector<std::string> all_symbols() const;
};

// The complete OPM induced by a visibly pushdown alphabet: calls yield to
// calls and internals and are equal to returns; returns and internals take
// precedence over everything.
OpAlphabet vpl_opm(const VpPartition& partition);

using NwaReturn = std::tuple<std::string, std::string, std::string, std::string>;

class WeightedNwa {
 public:
  WeightedNwa(VpPartition partition, Semiring semiring)
      : partition_(std::move(partition)), semiring_(std::move(semiring)) {}

  void add_state(const std::string& q);
  void add_initial(const std::string& q);
  void add_final(const std::string& q);
  void add_call(const std::string& from, const std::string& sym,
                const std::string& to, const Weight& w);
  void add_internal(const std::string& from, const std::string& sym,
                    const std::string& to, const Weight& w);
  // (from, stack-state, sym, to): the stack state is the one pushed at the
  // matching call.
  void add_return(const std::string& from, const std::string& stack,
                  const std::string& sym, const std::string& to, const Weight& w);

  const VpPartition& partition() const { return partition_; }
  const Semiring& semiring() const { return semiring_; }
  const std::set<std::string>& states() const { return states_; }
  const std::set<std::string>& initial() const { return initial_; }
  const std::set<std::string>& final() const { return final_; }
  const std::map<Triple, Weight>& calls() const { return call_; }
  const std::map<Triple, Weight>& internals() const { return internal_; }
  const std::map<NwaReturn, Weight>& returns() const { return return_; }

 private:
  void require_state(const std::string& q) const;

  VpPartition partition_;
  Semiring semiring_;
  std::set<std::string> states_;
  std::set<std::string> initial_;
  std::set<std::string> final_;
  std::map<Triple, Weight> call_;
  std::map<Triple, Weight> internal_;
  std::map<NwaReturn, Weight> return_;
};

// True iff every return has a matching call and no call is left pending.
bool is_well_matched(const VpPartition& partition, const Word& w);

// Sum over accepting linear runs of the ordered product of transition
// weights. Calls push the current state; returns pop it into the
// hierarchical argument. Only defined on well-matched words.
Weight nwa_behavior(const WeightedNwa& n, const Word& w);

// The restricted weighted OPA over vpl_opm(partition) simulating n: calls
// become weighted pushes, internals a weighted push plus a weight-one pop,
// returns a weighted shift plus a weight-one pop.
WeightedOpa from_nwa(const WeightedNwa& n);

// ---------------------------------------------------------------------------
// Nivat decomposition of restricted automata.

// S = h([[b]] n L(lang)): a one-state restricted automaton b and an
// unweighted language automaton lang over the extended alphabet Q x Sigma x
// Q, projected back by the symbol map h.
struct NivatDecomposition {
  OpAlphabet extended;  // (Sigma', h^{-1}(M))
  SymbolMap h;          // Sigma' -> Sigma
  WeightedOpa b;        // one state, restricted
  Opa lang;             // relabelled copy of the input automaton
};

// Requires a restricted input. Sigma' is the full Q x Sigma x Q with
// symbols rendered "(q,a,p)".
NivatDecomposition nivat_decompose(const OpAlphabet& alpha, const WeightedOpa& a);

// Evaluates h([[b]] n L)(v) by enumerating the h-preimage of v fiber by
// fiber. Subtrees whose prefix the language automaton cannot consume are
// skipped; this keeps the evaluator independent of project().
Weight nivat_eval(const NivatDecomposition& d, const Word& v);

}  // namespace wop
