#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wop/op_alphabet.hpp"
#include "wop/semiring.hpp"
#include "wop/wopa.hpp"

namespace wop {

// Immutable AST node of weighted MSO over an OP alphabet. The boolean layer
// is Lab_a(x), x <= y, x ~> y (chain), x in X, negation, disjunction and the
// two existential quantifiers; the weighted layer adds constants, oplus,
// otimes and the weighted quantifiers. Derived connectives (and, implies,
// iff, forall, =, +1, min, max, <, if-then-else) are expanded at
// construction time.
class Formula {
 public:
  enum class Op {
    kLab, kLe, kChain, kIn, kNot, kOr, kExists1, kExists2,
    kConst, kOplus, kOtimes, kSum1, kSum2, kProd1,
  };

  using Ptr = std::shared_ptr<const Formula>;

  // Boolean layer.
  static Ptr lab(const std::string& symbol, const std::string& x);
  static Ptr le(const std::string& x, const std::string& y);
  static Ptr chain(const std::string& x, const std::string& y);
  static Ptr in(const std::string& x, const std::string& X);
  static Ptr not_(Ptr f);
  static Ptr or_(Ptr l, Ptr r);
  static Ptr exists1(const std::string& x, Ptr f);
  static Ptr exists2(const std::string& X, Ptr f);

  // Weighted layer.
  static Ptr constant(const Weight& k);
  static Ptr oplus(Ptr l, Ptr r);
  static Ptr otimes(Ptr l, Ptr r);
  static Ptr sum1(const std::string& x, Ptr f);
  static Ptr sum2(const std::string& X, Ptr f);
  static Ptr prod1(const std::string& x, Ptr f);

  // Derived sugar, expanded immediately.
  static Ptr and_(Ptr l, Ptr r);
  static Ptr implies(Ptr l, Ptr r);
  static Ptr iff(Ptr l, Ptr r);
  static Ptr forall1(const std::string& x, Ptr f);
  static Ptr eq(const std::string& x, const std::string& y);
  static Ptr lt(const std::string& x, const std::string& y);
  static Ptr gt(const std::string& x, const std::string& y);
  static Ptr ne(const std::string& x, const std::string& y);
  static Ptr succ(const std::string& x, const std::string& y);  // y = x + 1
  static Ptr min(const std::string& x);
  static Ptr max(const std::string& x);
  static Ptr ite(Ptr cond, const Weight& k1, const Weight& k2);
  static Ptr true_();
  static Ptr false_();
  static Ptr big_or(std::vector<Ptr> fs);   // empty -> false
  static Ptr big_and(std::vector<Ptr> fs);  // empty -> true

  Op op() const { return op_; }
  const std::string& symbol() const { return symbol_; }  // kLab
  const std::string& var() const { return x_; }          // x of lab/le/chain/in, bound var
  const std::string& var2() const { return y_; }         // y of le/chain, X of in
  const Ptr& left() const { return l_; }
  const Ptr& right() const { return r_; }
  const Weight& weight() const { return *weight_; }      // kConst

  bool is_boolean_op() const { return op_ <= Op::kExists2; }

 private:
  Formula() = default;

  Op op_{};
  std::string symbol_;
  std::string x_, y_;
  Ptr l_, r_;
  std::optional<Weight> weight_;
};

struct FreeVars {
  std::set<std::string> first;
  std::set<std::string> second;

  bool contains(const FreeVars& other) const;
};

FreeVars free_vars(const Formula::Ptr& f);

// Maps first-order variables to positions and second-order variables to
// position sets. Bound boolean quantifiers range over 0..n+1 (delimiters
// included); weighted quantifiers and second-order sets range over 1..n.
struct Assignment {
  std::map<std::string, int> first;
  std::map<std::string, std::set<int>> second;

  Assignment with(const std::string& x, int i) const;
  Assignment with(const std::string& X, const std::set<int>& s) const;
  // Restriction to the given variables.
  Assignment restrict(const FreeVars& keep) const;
};

// Classical satisfaction of a boolean formula.
bool bool_eval(const OpAlphabet& alpha, const Formula::Ptr& f, const Word& w,
               const Assignment& sigma);

struct EvalOptions {
  // log2 of the largest allowed assignment space; enumerating a second-order
  // variable costs |w| bits, so deeply quantified formulas are rejected
  // instead of running forever.
  double budget_log2 = 24.0;
};

// Weighted semantics: booleans map to one/zero, oplus/otimes to the semiring
// operations, sum/product quantifiers to iterated sums and ordered products
// over positions 1..n, and second-order sums to sums over all subsets.
Weight mso_eval(const OpAlphabet& alpha, const Semiring& sr,
                const Formula::Ptr& f, const Word& w, const Assignment& sigma,
                const EvalOptions& opts = {});

struct Classification {
  bool is_boolean = false;
  bool is_almost_boolean = false;
  bool is_otimes_restricted = false;
  bool is_prod_restricted = false;
  bool is_restricted = false;
  std::vector<Weight> constants;
};

// Syntactic fragment checks; the commutation side condition of
// otimes-restrictedness is decided by multiplying the constant sets both
// ways.
Classification classify(const Formula::Ptr& f, const Semiring& sr);

// Evaluates f twice, under sigma and under sigma restricted to free(f), and
// reports whether the results agree.
bool consistency_check(const OpAlphabet& alpha, const Semiring& sr,
                       const Formula::Ptr& f, const Word& w,
                       const Assignment& sigma, const EvalOptions& opts = {});

// The restricted sentence with one second-order variable per transition
// whose semantics equals the behavior of a. Requires a restricted automaton
// or a commutative semiring.
Formula::Ptr automaton_to_formula(const OpAlphabet& alpha, const WeightedOpa& a);

}  // namespace wop
