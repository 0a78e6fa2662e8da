#pragma once

#include "wop/constructions.hpp"
#include "wop/mso.hpp"
#include "wop/wopa.hpp"

namespace wop::fixtures {

// Arithmetic expressions over {n, +, x, (, )} with the usual precedence of
// products over sums.
OpAlphabet expr_opm();
// The deterministic four-state acceptor for those expressions.
Opa expr_opa();

// Calls, returns and interrupts: call < call, call = ret, call > int,
// int < int, int > call, ret > everything. "int ret" has no relation.
OpAlphabet penalty_opm();
// One state over the rationals; every pending call halves the weight.
WeightedOpa penalty();

// penalty_opm extended with the interval marker $: a < $ for a != $ and
// $ > a for all a.
OpAlphabet policy_opm();
// Three states over max-plus; behavior is the maximum over nondeterministic
// choices of one $-delimited interval of #call - #ret.
WeightedOpa policy();

// Two states over fin-lang(cipr); behavior collects the possible logs of a
// word, with a nontrivial pop weight (not restricted).
WeightedOpa log_automaton();

// {c, r} with c < c and c = r only.
OpAlphabet separation_opm();
// Over fin-lang(ab): maps c^n r to {a^n b a^n} (n >= 0) and everything else
// to the empty language. Separates weighted from restricted weighted
// automata; the pop weight {a} is essential.
WeightedOpa separation();

// Single symbol a with a < a.
OpAlphabet single_push_opm();
// One state, push weight 1/2, pop weight 1: w |-> (1/2)^|w|.
WeightedOpa single_push();

// Visibly pushdown fixture: call c, internal a, return r.
VpPartition car_partition();
// The four-transition chain on "a c a r" with distinct prime weights, handy
// for checking weight order.
WeightedNwa example_nwa();

// The weighted sentence equivalent (up to the documented caveat) to
// policy(): chi = sum_{X0} sum_{X1} sum_{X2} prod_x (beta (x) phi02 (x) phi1).
Formula::Ptr policy_chi();

// Deterministic acceptor of the compatible words whose first symbol is
// `first`, used to build step-function partitions.
Opa first_symbol_opa(const OpAlphabet& alpha, const std::string& first);

}  // namespace wop::fixtures
