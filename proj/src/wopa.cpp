#include "wop/wopa.hpp"

#include "wop/constructions.hpp"

namespace wop {

void WeightedOpa::add_push(const std::string& from, const std::string& sym,
                           const std::string& to, const Weight& w) {
  if (w.semiring_id() != semiring_.id()) {
    throw PreconditionError("semiring-mismatch",
                            "transition weight not in " + semiring_.id());
  }
  base_.add_push(from, sym, to);
  push_wt_.insert_or_assign(Triple{from, sym, to}, w);
}

void WeightedOpa::add_shift(const std::string& from, const std::string& sym,
                            const std::string& to, const Weight& w) {
  if (w.semiring_id() != semiring_.id()) {
    throw PreconditionError("semiring-mismatch",
                            "transition weight not in " + semiring_.id());
  }
  base_.add_shift(from, sym, to);
  shift_wt_.insert_or_assign(Triple{from, sym, to}, w);
}

void WeightedOpa::add_pop(const std::string& from, const std::string& stack,
                          const std::string& to, const Weight& w) {
  if (w.semiring_id() != semiring_.id()) {
    throw PreconditionError("semiring-mismatch",
                            "transition weight not in " + semiring_.id());
  }
  base_.add_pop(from, stack, to);
  pop_wt_.insert_or_assign(Triple{from, stack, to}, w);
}

const Weight& WeightedOpa::weight(const Move& m) const {
  const std::map<Triple, Weight>& table = m.kind == MoveKind::kPush ? push_wt_
                                          : m.kind == MoveKind::kShift
                                              ? shift_wt_
                                              : pop_wt_;
  auto it = table.find(m.triple());
  if (it == table.end()) {
    throw PreconditionError("bad-automaton", "unweighted transition: " + move_str(m));
  }
  return it->second;
}

void WeightedOpa::validate(const OpAlphabet& alpha) const {
  base_.validate(alpha);
  auto check = [&](const std::set<Triple>& transitions,
                   const std::map<Triple, Weight>& weights) {
    for (const auto& t : transitions) {
      if (!weights.count(t)) {
        throw ParseError("bad-automaton", "transition without weight");
      }
    }
  };
  check(base_.push(), push_wt_);
  check(base_.shift(), shift_wt_);
  check(base_.pop(), pop_wt_);
}

Weight run_weight(const WeightedOpa& a, const Run& r) {
  Weight acc = a.semiring().one();
  for (const Move& m : r) acc = a.semiring().mul(acc, a.weight(m));
  return acc;
}

Weight behavior(const OpAlphabet& alpha, const WeightedOpa& a, const Word& w) {
  for (const auto& t : w.tokens) {
    if (!alpha.has_symbol(t)) {
      throw PreconditionError("unknown-symbol", "symbol not in alphabet: " + t);
    }
  }
  if (!is_compatible(alpha, w)) return a.semiring().zero();
  Weight acc = a.semiring().zero();
  for (const Run& r : enumerate_runs(alpha, a.base(), w)) {
    acc = a.semiring().add(acc, run_weight(a, r));
  }
  return acc;
}

bool is_restricted(const WeightedOpa& a) {
  for (const auto& [t, w] : a.pop_weights()) {
    if (!a.semiring().is_one(w)) return false;
  }
  return true;
}

WeightedOpa lift_boolean(const Opa& a, const Semiring& semiring) {
  WeightedOpa out(Opa{}, semiring);
  for (const auto& q : a.states()) out.base().add_state(q);
  for (const auto& q : a.initial()) out.base().add_initial(q);
  for (const auto& q : a.final()) out.base().add_final(q);
  const Weight one = semiring.one();
  for (const auto& [f, s, t] : a.push()) out.add_push(f, s, t, one);
  for (const auto& [f, s, t] : a.shift()) out.add_shift(f, s, t, one);
  for (const auto& [f, s, t] : a.pop()) out.add_pop(f, s, t, one);
  return out;
}

StepFunction::StepFunction(Semiring semiring, std::vector<StepPart> parts)
    : semiring_(std::move(semiring)), parts_(std::move(parts)) {
  for (const StepPart& p : parts_) {
    if (p.weight.semiring_id() != semiring_.id()) {
      throw PreconditionError("semiring-mismatch",
                              "step part weight not in " + semiring_.id());
    }
    if (!is_deterministic(p.automaton)) {
      throw PreconditionError("determinism-required",
                              "step function parts must be deterministic");
    }
  }
}

Weight step_eval(const StepFunction& s, const OpAlphabet& alpha, const Word& w) {
  Weight acc = s.semiring().zero();
  for (const StepPart& p : s.parts()) {
    if (accepts(alpha, p.automaton, w)) acc = s.semiring().add(acc, p.weight);
  }
  return acc;
}

bool step_is_partition(const StepFunction& s, const OpAlphabet& alpha, int max_len) {
  for (const Word& w : compatible_words(alpha, max_len)) {
    int hits = 0;
    for (const StepPart& p : s.parts()) {
      if (accepts(alpha, p.automaton, w)) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

namespace {

StepFunction step_combine(const StepFunction& s, const StepFunction& t,
                          bool multiply) {
  if (!(s.semiring() == t.semiring())) {
    throw PreconditionError("semiring-mismatch",
                            "step functions over different semirings");
  }
  std::vector<StepPart> parts;
  for (const StepPart& a : s.parts()) {
    for (const StepPart& b : t.parts()) {
      Weight w = multiply ? s.semiring().mul(a.weight, b.weight)
                          : s.semiring().add(a.weight, b.weight);
      parts.push_back(StepPart{opa_product(a.automaton, b.automaton), w});
    }
  }
  return StepFunction(s.semiring(), std::move(parts));
}

}  // namespace

StepFunction step_add(const StepFunction& s, const StepFunction& t) {
  return step_combine(s, t, false);
}

StepFunction step_mul(const StepFunction& s, const StepFunction& t) {
  return step_combine(s, t, true);
}

WeightedOpa step_to_rwopa(const StepFunction& s, const OpAlphabet& alpha) {
  // k_i 1_{L_i} = [[k_i]] n L_i, summed disjointly over i. The constant
  // series [[k_i]] is the scalar-multiplied lift of the universal automaton.
  WeightedOpa acc(Opa{}, s.semiring());
  const Opa universal = universal_opa(alpha);
  bool first = true;
  for (const StepPart& p : s.parts()) {
    WeightedOpa constant =
        scalar_left_multiply(p.weight, lift_boolean(universal, s.semiring()));
    WeightedOpa piece = intersect_with_opl(constant, p.automaton);
    acc = first ? std::move(piece) : sum(acc, piece);
    first = false;
  }
  return acc;
}

}  // namespace wop
