#include "wop/mso.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace wop {

namespace {

Formula::Ptr make(Formula&& f) {
  return std::make_shared<const Formula>(std::move(f));
}

}  // namespace

// -- node construction -------------------------------------------------------

Formula::Ptr Formula::lab(const std::string& symbol, const std::string& x) {
  Formula f;
  f.op_ = Op::kLab;
  f.symbol_ = symbol;
  f.x_ = x;
  return make(std::move(f));
}

Formula::Ptr Formula::le(const std::string& x, const std::string& y) {
  Formula f;
  f.op_ = Op::kLe;
  f.x_ = x;
  f.y_ = y;
  return make(std::move(f));
}

Formula::Ptr Formula::chain(const std::string& x, const std::string& y) {
  Formula f;
  f.op_ = Op::kChain;
  f.x_ = x;
  f.y_ = y;
  return make(std::move(f));
}

Formula::Ptr Formula::in(const std::string& x, const std::string& X) {
  Formula f;
  f.op_ = Op::kIn;
  f.x_ = x;
  f.y_ = X;
  return make(std::move(f));
}

Formula::Ptr Formula::not_(Ptr body) {
  Formula f;
  f.op_ = Op::kNot;
  f.l_ = std::move(body);
  return make(std::move(f));
}

Formula::Ptr Formula::or_(Ptr l, Ptr r) {
  Formula f;
  f.op_ = Op::kOr;
  f.l_ = std::move(l);
  f.r_ = std::move(r);
  return make(std::move(f));
}

Formula::Ptr Formula::exists1(const std::string& x, Ptr body) {
  Formula f;
  f.op_ = Op::kExists1;
  f.x_ = x;
  f.l_ = std::move(body);
  return make(std::move(f));
}

Formula::Ptr Formula::exists2(const std::string& X, Ptr body) {
  Formula f;
  f.op_ = Op::kExists2;
  f.x_ = X;
  f.l_ = std::move(body);
  return make(std::move(f));
}

Formula::Ptr Formula::constant(const Weight& k) {
  Formula f;
  f.op_ = Op::kConst;
  f.weight_ = k;
  return make(std::move(f));
}

Formula::Ptr Formula::oplus(Ptr l, Ptr r) {
  Formula f;
  f.op_ = Op::kOplus;
  f.l_ = std::move(l);
  f.r_ = std::move(r);
  return make(std::move(f));
}

Formula::Ptr Formula::otimes(Ptr l, Ptr r) {
  Formula f;
  f.op_ = Op::kOtimes;
  f.l_ = std::move(l);
  f.r_ = std::move(r);
  return make(std::move(f));
}

Formula::Ptr Formula::sum1(const std::string& x, Ptr body) {
  Formula f;
  f.op_ = Op::kSum1;
  f.x_ = x;
  f.l_ = std::move(body);
  return make(std::move(f));
}

Formula::Ptr Formula::sum2(const std::string& X, Ptr body) {
  Formula f;
  f.op_ = Op::kSum2;
  f.x_ = X;
  f.l_ = std::move(body);
  return make(std::move(f));
}

Formula::Ptr Formula::prod1(const std::string& x, Ptr body) {
  Formula f;
  f.op_ = Op::kProd1;
  f.x_ = x;
  f.l_ = std::move(body);
  return make(std::move(f));
}

// -- sugar --------------------------------------------------------------------

Formula::Ptr Formula::and_(Ptr l, Ptr r) {
  return not_(or_(not_(std::move(l)), not_(std::move(r))));
}

Formula::Ptr Formula::implies(Ptr l, Ptr r) {
  return or_(not_(std::move(l)), std::move(r));
}

Formula::Ptr Formula::iff(Ptr l, Ptr r) {
  return and_(implies(l, r), implies(r, l));
}

Formula::Ptr Formula::forall1(const std::string& x, Ptr f) {
  return not_(exists1(x, not_(std::move(f))));
}

Formula::Ptr Formula::eq(const std::string& x, const std::string& y) {
  return and_(le(x, y), le(y, x));
}

Formula::Ptr Formula::lt(const std::string& x, const std::string& y) {
  return and_(le(x, y), not_(le(y, x)));
}

Formula::Ptr Formula::gt(const std::string& x, const std::string& y) {
  return lt(y, x);
}

Formula::Ptr Formula::ne(const std::string& x, const std::string& y) {
  return not_(eq(x, y));
}

Formula::Ptr Formula::succ(const std::string& x, const std::string& y) {
  // (y = x+1) = (x <= y) & !(y <= x) & forall z (z <= x | y <= z). The bound
  // variable is derived from x and y so it can never capture either.
  std::string z = "z#" + x + "#" + y;
  return and_(and_(le(x, y), not_(le(y, x))),
              forall1(z, or_(le(z, x), le(y, z))));
}

Formula::Ptr Formula::min(const std::string& x) {
  std::string y = "y#min#" + x;
  return forall1(y, le(x, y));
}

Formula::Ptr Formula::max(const std::string& x) {
  std::string y = "y#max#" + x;
  return forall1(y, le(y, x));
}

Formula::Ptr Formula::ite(Ptr cond, const Weight& k1, const Weight& k2) {
  Ptr then_part = otimes(cond, constant(k1));
  Ptr else_part = otimes(not_(std::move(cond)), constant(k2));
  return oplus(std::move(then_part), std::move(else_part));
}

Formula::Ptr Formula::false_() {
  return exists1("x#false", not_(le("x#false", "x#false")));
}

Formula::Ptr Formula::true_() { return not_(false_()); }

Formula::Ptr Formula::big_or(std::vector<Ptr> fs) {
  if (fs.empty()) return false_();
  Ptr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = or_(acc, fs[i]);
  return acc;
}

Formula::Ptr Formula::big_and(std::vector<Ptr> fs) {
  if (fs.empty()) return true_();
  Ptr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = and_(acc, fs[i]);
  return acc;
}

// -- free variables ----------------------------------------------------------

bool FreeVars::contains(const FreeVars& other) const {
  return std::includes(first.begin(), first.end(), other.first.begin(),
                       other.first.end()) &&
         std::includes(second.begin(), second.end(), other.second.begin(),
                       other.second.end());
}

namespace {

void collect_free(const Formula::Ptr& f, FreeVars& out) {
  switch (f->op()) {
    case Formula::Op::kLab:
      out.first.insert(f->var());
      return;
    case Formula::Op::kLe:
    case Formula::Op::kChain:
      out.first.insert(f->var());
      out.first.insert(f->var2());
      return;
    case Formula::Op::kIn:
      out.first.insert(f->var());
      out.second.insert(f->var2());
      return;
    case Formula::Op::kNot:
      collect_free(f->left(), out);
      return;
    case Formula::Op::kOr:
    case Formula::Op::kOplus:
    case Formula::Op::kOtimes:
      collect_free(f->left(), out);
      collect_free(f->right(), out);
      return;
    case Formula::Op::kExists1:
    case Formula::Op::kSum1:
    case Formula::Op::kProd1: {
      FreeVars inner;
      collect_free(f->left(), inner);
      inner.first.erase(f->var());
      out.first.insert(inner.first.begin(), inner.first.end());
      out.second.insert(inner.second.begin(), inner.second.end());
      return;
    }
    case Formula::Op::kExists2:
    case Formula::Op::kSum2: {
      FreeVars inner;
      collect_free(f->left(), inner);
      inner.second.erase(f->var());
      out.first.insert(inner.first.begin(), inner.first.end());
      out.second.insert(inner.second.begin(), inner.second.end());
      return;
    }
    case Formula::Op::kConst:
      return;
  }
}

}  // namespace

FreeVars free_vars(const Formula::Ptr& f) {
  FreeVars out;
  collect_free(f, out);
  return out;
}

// -- assignments ---------------------------------------------------------------

Assignment Assignment::with(const std::string& x, int i) const {
  Assignment out = *this;
  out.first[x] = i;
  return out;
}

Assignment Assignment::with(const std::string& X, const std::set<int>& s) const {
  Assignment out = *this;
  out.second[X] = s;
  return out;
}

Assignment Assignment::restrict(const FreeVars& keep) const {
  Assignment out;
  for (const auto& [k, v] : first) {
    if (keep.first.count(k)) out.first.emplace(k, v);
  }
  for (const auto& [k, v] : second) {
    if (keep.second.count(k)) out.second.emplace(k, v);
  }
  return out;
}

// -- evaluation ----------------------------------------------------------------

namespace {

// Evaluation runs over a compiled view: variable names are interned into
// slots once per call, position sets are bitmasks, and bindings mutate a
// slot vector with save/restore instead of copying maps.
class Evaluator {
 public:
  Evaluator(const OpAlphabet& alpha, const Word& w) : w_(w), n_(w.size()) {
    auto cs = chains(alpha, w);
    chain_.assign(static_cast<std::size_t>(n_ + 2) * (n_ + 2), 0);
    for (auto [i, j] : cs) {
      chain_[static_cast<std::size_t>(i) * (n_ + 2) + j] = 1;
    }
  }

  void intern(const Formula::Ptr& f) {
    switch (f->op()) {
      case Formula::Op::kLab:
        slot1(f->var());
        break;
      case Formula::Op::kLe:
      case Formula::Op::kChain:
        slot1(f->var());
        slot1(f->var2());
        break;
      case Formula::Op::kIn:
        slot1(f->var());
        slot2(f->var2());
        break;
      case Formula::Op::kConst:
        break;
      case Formula::Op::kNot:
        intern(f->left());
        break;
      case Formula::Op::kOr:
      case Formula::Op::kOplus:
      case Formula::Op::kOtimes:
        intern(f->left());
        intern(f->right());
        break;
      case Formula::Op::kExists1:
      case Formula::Op::kSum1:
      case Formula::Op::kProd1:
        slot1(f->var());
        intern(f->left());
        break;
      case Formula::Op::kExists2:
      case Formula::Op::kSum2:
        slot2(f->var());
        intern(f->left());
        break;
    }
  }

  // Seeds the environment from a user assignment; variables that do not
  // occur in the formula are irrelevant and skipped.
  void seed(const Assignment& sigma) {
    first_.assign(first_slot_.size(), kUnbound);
    second_.assign(second_slot_.size(), 0);
    second_bound_.assign(second_slot_.size(), 0);
    for (const auto& [name, value] : sigma.first) {
      auto it = first_slot_.find(name);
      if (it != first_slot_.end()) first_[it->second] = value;
    }
    for (const auto& [name, value] : sigma.second) {
      auto it = second_slot_.find(name);
      if (it == second_slot_.end()) continue;
      std::uint64_t mask = 0;
      for (int i : value) mask |= std::uint64_t{1} << i;
      second_[it->second] = mask;
      second_bound_[it->second] = 1;
    }
  }

  bool eval_bool(const Formula::Ptr& f) {
    switch (f->op()) {
      case Formula::Op::kLab:
        return w_.at(first_value(f->var())) == f->symbol();
      case Formula::Op::kLe:
        return first_value(f->var()) <= first_value(f->var2());
      case Formula::Op::kChain: {
        int i = first_value(f->var());
        int j = first_value(f->var2());
        return i < j && chain_[static_cast<std::size_t>(i) * (n_ + 2) + j] != 0;
      }
      case Formula::Op::kIn: {
        int i = first_value(f->var());
        std::size_t s = second_slot_.at(f->var2());
        if (!second_bound_[s]) {
          throw PreconditionError("unbound-variable",
                                  "unbound second-order variable: " + f->var2());
        }
        return (second_[s] >> i) & 1;
      }
      case Formula::Op::kNot:
        return !eval_bool(f->left());
      case Formula::Op::kOr:
        return eval_bool(f->left()) || eval_bool(f->right());
      case Formula::Op::kExists1: {
        // Bound first-order variables range over the delimiter positions too.
        std::size_t s = first_slot_.at(f->var());
        int saved = first_[s];
        bool hit = false;
        for (int i = 0; i <= n_ + 1 && !hit; ++i) {
          first_[s] = i;
          hit = eval_bool(f->left());
        }
        first_[s] = saved;
        return hit;
      }
      case Formula::Op::kExists2: {
        std::size_t s = second_slot_.at(f->var());
        std::uint64_t saved = second_[s];
        char saved_bound = second_bound_[s];
        second_bound_[s] = 1;
        bool hit = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_) && !hit;
             ++mask) {
          second_[s] = mask << 1;  // sets live on positions 1..n
          hit = eval_bool(f->left());
        }
        second_[s] = saved;
        second_bound_[s] = saved_bound;
        return hit;
      }
      default:
        throw PreconditionError("not-boolean",
                                "weighted construct inside a boolean formula");
    }
  }

  Weight eval_weighted(const Semiring& sr, const Formula::Ptr& f) {
    if (f->is_boolean_op()) {
      return eval_bool(f) ? sr.one() : sr.zero();
    }
    switch (f->op()) {
      case Formula::Op::kConst:
        if (f->weight().semiring_id() != sr.id()) {
          throw PreconditionError("semiring-mismatch",
                                  "formula constant not in semiring " + sr.id());
        }
        return f->weight();
      case Formula::Op::kOplus:
        return sr.add(eval_weighted(sr, f->left()), eval_weighted(sr, f->right()));
      case Formula::Op::kOtimes:
        return sr.mul(eval_weighted(sr, f->left()), eval_weighted(sr, f->right()));
      case Formula::Op::kSum1: {
        std::size_t s = first_slot_.at(f->var());
        int saved = first_[s];
        Weight acc = sr.zero();
        for (int i = 1; i <= n_; ++i) {
          first_[s] = i;
          acc = sr.add(acc, eval_weighted(sr, f->left()));
        }
        first_[s] = saved;
        return acc;
      }
      case Formula::Op::kProd1: {
        // Increasing position order; the fold order is observable for
        // non-commutative semirings.
        std::size_t s = first_slot_.at(f->var());
        int saved = first_[s];
        Weight acc = sr.one();
        for (int i = 1; i <= n_; ++i) {
          first_[s] = i;
          acc = sr.mul(acc, eval_weighted(sr, f->left()));
        }
        first_[s] = saved;
        return acc;
      }
      case Formula::Op::kSum2: {
        std::size_t s = second_slot_.at(f->var());
        std::uint64_t saved = second_[s];
        char saved_bound = second_bound_[s];
        second_bound_[s] = 1;
        Weight acc = sr.zero();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask) {
          second_[s] = mask << 1;
          acc = sr.add(acc, eval_weighted(sr, f->left()));
        }
        second_[s] = saved;
        second_bound_[s] = saved_bound;
        return acc;
      }
      default:
        throw std::logic_error("unreachable");
    }
  }

 private:
  static constexpr int kUnbound = -1000;

  void slot1(const std::string& name) {
    first_slot_.emplace(name, first_slot_.size());
  }
  void slot2(const std::string& name) {
    second_slot_.emplace(name, second_slot_.size());
  }

  int first_value(const std::string& name) {
    int v = first_[first_slot_.at(name)];
    if (v == kUnbound) {
      throw PreconditionError("unbound-variable",
                              "unbound first-order variable: " + name);
    }
    return v;
  }

  const Word& w_;
  int n_;
  std::vector<char> chain_;
  std::map<std::string, std::size_t> first_slot_;
  std::map<std::string, std::size_t> second_slot_;
  std::vector<int> first_;
  std::vector<std::uint64_t> second_;
  std::vector<char> second_bound_;
};

double assignment_space_log2(const Formula::Ptr& f, int n) {
  switch (f->op()) {
    case Formula::Op::kLab:
    case Formula::Op::kLe:
    case Formula::Op::kChain:
    case Formula::Op::kIn:
    case Formula::Op::kConst:
      return 0.0;
    case Formula::Op::kNot:
      return assignment_space_log2(f->left(), n);
    case Formula::Op::kOr:
    case Formula::Op::kOplus:
    case Formula::Op::kOtimes:
      return std::max(assignment_space_log2(f->left(), n),
                      assignment_space_log2(f->right(), n));
    case Formula::Op::kExists1:
      return std::log2(static_cast<double>(n) + 2.0) +
             assignment_space_log2(f->left(), n);
    case Formula::Op::kSum1:
    case Formula::Op::kProd1:
      return std::log2(std::max(n, 1)) + assignment_space_log2(f->left(), n);
    case Formula::Op::kExists2:
    case Formula::Op::kSum2:
      return static_cast<double>(n) + assignment_space_log2(f->left(), n);
  }
  return 0.0;
}

}  // namespace

bool bool_eval(const OpAlphabet& alpha, const Formula::Ptr& f, const Word& w,
               const Assignment& sigma) {
  Evaluator ev(alpha, w);
  ev.intern(f);
  ev.seed(sigma);
  return ev.eval_bool(f);
}

Weight mso_eval(const OpAlphabet& alpha, const Semiring& sr,
                const Formula::Ptr& f, const Word& w, const Assignment& sigma,
                const EvalOptions& opts) {
  double space = assignment_space_log2(f, w.size());
  if (space > opts.budget_log2) {
    throw PreconditionError(
        "budget-exceeded",
        "assignment space 2^" + std::to_string(space) + " exceeds budget 2^" +
            std::to_string(opts.budget_log2));
  }
  Evaluator ev(alpha, w);
  ev.intern(f);
  ev.seed(sigma);
  return ev.eval_weighted(sr, f);
}

// -- classification -------------------------------------------------------------

namespace {

bool all_boolean(const Formula::Ptr& f) {
  switch (f->op()) {
    case Formula::Op::kLab:
    case Formula::Op::kLe:
    case Formula::Op::kChain:
    case Formula::Op::kIn:
      return true;
    case Formula::Op::kNot:
    case Formula::Op::kExists1:
    case Formula::Op::kExists2:
      return all_boolean(f->left());
    case Formula::Op::kOr:
      return all_boolean(f->left()) && all_boolean(f->right());
    default:
      return false;
  }
}

bool almost_boolean(const Formula::Ptr& f) {
  if (all_boolean(f)) return true;
  switch (f->op()) {
    case Formula::Op::kConst:
      return true;
    case Formula::Op::kOplus:
    case Formula::Op::kOtimes:
      return almost_boolean(f->left()) && almost_boolean(f->right());
    default:
      return false;
  }
}

void collect_constants(const Formula::Ptr& f, std::vector<Weight>& out) {
  switch (f->op()) {
    case Formula::Op::kConst:
      if (std::find(out.begin(), out.end(), f->weight()) == out.end()) {
        out.push_back(f->weight());
      }
      return;
    case Formula::Op::kNot:
    case Formula::Op::kExists1:
    case Formula::Op::kExists2:
    case Formula::Op::kSum1:
    case Formula::Op::kSum2:
    case Formula::Op::kProd1:
      collect_constants(f->left(), out);
      return;
    case Formula::Op::kOr:
    case Formula::Op::kOplus:
    case Formula::Op::kOtimes:
      collect_constants(f->left(), out);
      collect_constants(f->right(), out);
      return;
    default:
      return;
  }
}

bool constants_commute(const Semiring& sr, const std::vector<Weight>& a,
                       const std::vector<Weight>& b) {
  for (const Weight& x : a) {
    for (const Weight& y : b) {
      if (!(sr.mul(x, y) == sr.mul(y, x))) return false;
    }
  }
  return true;
}

bool otimes_restricted(const Formula::Ptr& f, const Semiring& sr) {
  switch (f->op()) {
    case Formula::Op::kOtimes: {
      if (!otimes_restricted(f->left(), sr) || !otimes_restricted(f->right(), sr)) {
        return false;
      }
      if (almost_boolean(f->left())) return true;
      std::vector<Weight> cl, cr;
      collect_constants(f->left(), cl);
      collect_constants(f->right(), cr);
      return constants_commute(sr, cl, cr);
    }
    case Formula::Op::kNot:
    case Formula::Op::kExists1:
    case Formula::Op::kExists2:
    case Formula::Op::kSum1:
    case Formula::Op::kSum2:
    case Formula::Op::kProd1:
      return otimes_restricted(f->left(), sr);
    case Formula::Op::kOr:
    case Formula::Op::kOplus:
      return otimes_restricted(f->left(), sr) && otimes_restricted(f->right(), sr);
    default:
      return true;
  }
}

bool prod_restricted(const Formula::Ptr& f) {
  switch (f->op()) {
    case Formula::Op::kProd1:
      return almost_boolean(f->left()) && prod_restricted(f->left());
    case Formula::Op::kNot:
    case Formula::Op::kExists1:
    case Formula::Op::kExists2:
    case Formula::Op::kSum1:
    case Formula::Op::kSum2:
      return prod_restricted(f->left());
    case Formula::Op::kOr:
    case Formula::Op::kOplus:
    case Formula::Op::kOtimes:
      return prod_restricted(f->left()) && prod_restricted(f->right());
    default:
      return true;
  }
}

}  // namespace

Classification classify(const Formula::Ptr& f, const Semiring& sr) {
  Classification c;
  c.is_boolean = all_boolean(f);
  c.is_almost_boolean = almost_boolean(f);
  c.is_otimes_restricted = otimes_restricted(f, sr);
  c.is_prod_restricted = prod_restricted(f);
  c.is_restricted = c.is_otimes_restricted && c.is_prod_restricted;
  collect_constants(f, c.constants);
  return c;
}

bool consistency_check(const OpAlphabet& alpha, const Semiring& sr,
                       const Formula::Ptr& f, const Word& w,
                       const Assignment& sigma, const EvalOptions& opts) {
  Weight full = mso_eval(alpha, sr, f, w, sigma, opts);
  Weight restricted = mso_eval(alpha, sr, f, w, sigma.restrict(free_vars(f)), opts);
  return full == restricted;
}

// -- automaton -> formula ---------------------------------------------------------

namespace {

using F = Formula::Ptr;

std::string push_var(const Triple& t) {
  return "Xpush(" + std::get<0>(t) + "," + std::get<1>(t) + "," + std::get<2>(t) + ")";
}
std::string shift_var(const Triple& t) {
  return "Xshift(" + std::get<0>(t) + "," + std::get<1>(t) + "," + std::get<2>(t) + ")";
}
std::string pop_var(const Triple& t) {
  return "Xpop(" + std::get<0>(t) + "," + std::get<1>(t) + "," + std::get<2>(t) + ")";
}

// Builds the pieces of the run-encoding sentence. Bound helper variables get
// a numeric suffix from a shared counter so nested shortcuts never capture
// each other.
struct SentenceBuilder {
  const OpAlphabet& alpha;
  const WeightedOpa& a;
  int fresh_counter = 0;

  std::string fresh(const char* base) {
    return std::string(base) + std::to_string(fresh_counter++);
  }

  // x o y for a fixed precedence relation: a disjunction of label pairs over
  // Sigma u {#} whose matrix entry is o.
  F prec_atom(const std::string& x, const std::string& y, Prec p) {
    std::vector<F> disjuncts;
    std::vector<std::string> all = alpha.symbols();
    all.push_back(kDelim);
    for (const auto& sa : all) {
      for (const auto& sb : all) {
        auto r = alpha.lookup(sa, sb);
        if (r.has_value() && *r == p) {
          disjuncts.push_back(Formula::and_(Formula::lab(sa, x), Formula::lab(sb, y)));
        }
      }
    }
    return Formula::big_or(std::move(disjuncts));
  }

  // Tree(x,z,v,y): x ~> y spans a subtree whose handle starts at z and ends
  // at v.
  F tree(const std::string& x, const std::string& z, const std::string& v,
         const std::string& y) {
    std::string t1 = fresh("t");
    std::string t2 = fresh("t");
    F left_edge = Formula::or_(Formula::succ(x, z), Formula::chain(x, z));
    F left_tight = Formula::not_(Formula::exists1(
        t1, Formula::big_and({Formula::lt(z, t1), Formula::lt(t1, y),
                              Formula::chain(x, t1)})));
    F right_edge = Formula::or_(Formula::succ(v, y), Formula::chain(v, y));
    F right_tight = Formula::not_(Formula::exists1(
        t2, Formula::big_and({Formula::lt(x, t2), Formula::lt(t2, v),
                              Formula::chain(t2, y)})));
    return Formula::big_and({Formula::chain(x, y), left_edge, left_tight,
                             right_edge, right_tight});
  }

  // Succ_q(x,y): y = x+1 and the automaton reaches q reading position x, or
  // x is the start delimiter.
  F succ_state(const std::string& q, const std::string& x, const std::string& y) {
    std::vector<F> reach;
    for (const auto& t : a.base().push()) {
      if (std::get<2>(t) == q) reach.push_back(Formula::in(x, push_var(t)));
    }
    for (const auto& t : a.base().shift()) {
      if (std::get<2>(t) == q) reach.push_back(Formula::in(x, shift_var(t)));
    }
    reach.push_back(Formula::min(x));
    return Formula::and_(Formula::succ(x, y), Formula::big_or(std::move(reach)));
  }

  // Next_r(x,y): a pop closing the subtree between x and y reaches r.
  F next_state(const std::string& r, const std::string& x, const std::string& y) {
    std::string z = fresh("z");
    std::string v = fresh("v");
    std::vector<F> pops;
    for (const auto& t : a.base().pop()) {
      if (std::get<2>(t) == r) pops.push_back(Formula::in(v, pop_var(t)));
    }
    return Formula::exists1(
        z, Formula::exists1(
               v, Formula::and_(tree(x, z, v, y), Formula::big_or(std::move(pops)))));
  }

  F q_state(const std::string& q, const std::string& x, const std::string& y) {
    return Formula::or_(succ_state(q, x, y), next_state(q, x, y));
  }

  F tree_states(const std::string& p, const std::string& q, const std::string& x,
                const std::string& z, const std::string& v, const std::string& y) {
    return Formula::big_and({tree(x, z, v, y), q_state(p, v, y), q_state(q, x, z)});
  }

  F partition() {
    std::vector<std::string> vars;
    for (const auto& t : a.base().push()) vars.push_back(push_var(t));
    for (const auto& t : a.base().shift()) vars.push_back(shift_var(t));
    std::string x = fresh("x");
    std::vector<F> cases;
    // Quantifiers range over the delimiter positions as well; those carry #
    // and are exempt from the partition.
    cases.push_back(Formula::lab(kDelim, x));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::vector<F> conj{Formula::in(x, vars[i])};
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (j != i) conj.push_back(Formula::not_(Formula::in(x, vars[j])));
      }
      cases.push_back(Formula::big_and(std::move(conj)));
    }
    return Formula::forall1(x, Formula::big_or(std::move(cases)));
  }

  F unique_pops() {
    std::vector<std::string> vars;
    for (const auto& t : a.base().pop()) vars.push_back(pop_var(t));
    std::string x = fresh("x");
    std::vector<F> conj;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (i == j) continue;
        conj.push_back(Formula::not_(
            Formula::and_(Formula::in(x, vars[i]), Formula::in(x, vars[j]))));
      }
    }
    return Formula::forall1(x, Formula::big_and(std::move(conj)));
  }

  F init_final() {
    std::string x = fresh("x");
    std::string y = fresh("y");
    std::string x1 = fresh("x");
    std::string y1 = fresh("y");
    std::vector<F> first_push;
    for (const auto& t : a.base().push()) {
      if (a.base().initial().count(std::get<0>(t))) {
        first_push.push_back(Formula::in(x1, push_var(t)));
      }
    }
    std::vector<F> last_into_final;
    for (const auto& t : a.base().push()) {
      if (a.base().final().count(std::get<2>(t))) {
        last_into_final.push_back(Formula::in(y1, push_var(t)));
      }
    }
    for (const auto& t : a.base().shift()) {
      if (a.base().final().count(std::get<2>(t))) {
        last_into_final.push_back(Formula::in(y1, shift_var(t)));
      }
    }
    std::vector<F> outer;
    for (const auto& f : a.base().final()) {
      std::vector<F> conj{next_state(f, x, y)};
      for (const auto& j : a.base().states()) {
        if (j != f) conj.push_back(Formula::not_(next_state(j, x, y)));
      }
      outer.push_back(Formula::big_and(std::move(conj)));
    }
    F body = Formula::big_and(
        {Formula::min(x), Formula::max(y), Formula::succ(x, x1),
         Formula::succ(y1, y), Formula::big_or(std::move(first_push)),
         Formula::big_or(std::move(last_into_final)),
         Formula::big_or(std::move(outer))});
    return Formula::exists1(
        x, Formula::exists1(
               y, Formula::exists1(x1, Formula::exists1(y1, std::move(body)))));
  }

  F trans_push_shift(bool is_push) {
    std::string x = fresh("x");
    std::vector<F> conj;
    const auto& transitions = is_push ? a.base().push() : a.base().shift();
    for (const auto& t : transitions) {
      const auto& [p, sym, q] = t;
      std::string z = fresh("z");
      F context = Formula::exists1(
          z, Formula::and_(
                 prec_atom(z, x, is_push ? Prec::kYields : Prec::kEqual),
                 q_state(p, z, x)));
      F rhs = Formula::and_(Formula::lab(sym, x), std::move(context));
      conj.push_back(Formula::implies(
          Formula::in(x, is_push ? push_var(t) : shift_var(t)), std::move(rhs)));
    }
    return Formula::forall1(x, Formula::big_and(std::move(conj)));
  }

  F trans_pop() {
    std::string v = fresh("v");
    std::vector<F> conj;
    for (const auto& p : a.base().states()) {
      for (const auto& q : a.base().states()) {
        std::vector<F> lhs;
        for (const auto& t : a.base().pop()) {
          if (std::get<0>(t) == p && std::get<1>(t) == q) {
            lhs.push_back(Formula::in(v, pop_var(t)));
          }
        }
        std::string x = fresh("x");
        std::string y = fresh("y");
        std::string z = fresh("z");
        F rhs = Formula::exists1(
            x, Formula::exists1(
                   y, Formula::exists1(z, tree_states(p, q, x, z, v, y))));
        conj.push_back(Formula::iff(Formula::big_or(std::move(lhs)), std::move(rhs)));
      }
    }
    // Delimiter positions hold no stack symbol, so the biconditional only
    // constrains the symbol positions.
    return Formula::forall1(
        v, Formula::or_(Formula::lab(kDelim, v), Formula::big_and(std::move(conj))));
  }

  F weights() {
    std::string x = fresh("x");
    const Weight one = a.semiring().one();
    std::vector<F> factors;
    for (const auto& [t, w] : a.push_weights()) {
      factors.push_back(Formula::ite(Formula::in(x, push_var(t)), w, one));
    }
    for (const auto& [t, w] : a.shift_weights()) {
      factors.push_back(Formula::ite(Formula::in(x, shift_var(t)), w, one));
    }
    for (const auto& [t, w] : a.pop_weights()) {
      factors.push_back(Formula::ite(Formula::in(x, pop_var(t)), w, one));
    }
    F product = Formula::constant(one);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      product = i == 0 ? factors[i] : Formula::otimes(product, factors[i]);
    }
    return Formula::prod1(x, std::move(product));
  }
};

}  // namespace

Formula::Ptr automaton_to_formula(const OpAlphabet& alpha, const WeightedOpa& a) {
  if (!is_restricted(a) && !a.semiring().commutative()) {
    throw PreconditionError(
        "unsupported-case",
        "translation needs a restricted automaton or a commutative semiring");
  }
  SentenceBuilder b{alpha, a};
  F psi = Formula::big_and({b.partition(), b.unique_pops(), b.init_final(),
                            b.trans_push_shift(true), b.trans_push_shift(false),
                            b.trans_pop()});
  F theta = Formula::otimes(std::move(psi), b.weights());

  // One sum quantifier per transition variable, outermost first.
  std::vector<std::string> vars;
  for (const auto& t : a.base().push()) vars.push_back(push_var(t));
  for (const auto& t : a.base().shift()) vars.push_back(shift_var(t));
  for (const auto& t : a.base().pop()) vars.push_back(pop_var(t));
  F phi = std::move(theta);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    phi = Formula::sum2(*it, std::move(phi));
  }
  return phi;
}

}  // namespace wop
