#include "wop/constructions.hpp"

#include <algorithm>
#include <functional>

namespace wop {

namespace {

void require_same_semiring(const WeightedOpa& a, const WeightedOpa& b) {
  if (!(a.semiring() == b.semiring())) {
    throw PreconditionError("semiring-mismatch",
                            "automata over different semirings");
  }
}

void copy_states(const Opa& src, Opa& dst, const std::string& prefix) {
  for (const auto& q : src.states()) dst.add_state(prefix + q);
  for (const auto& q : src.initial()) dst.add_initial(prefix + q);
  for (const auto& q : src.final()) dst.add_final(prefix + q);
}

}  // namespace

WeightedOpa sum(const WeightedOpa& a, const WeightedOpa& b) {
  require_same_semiring(a, b);
  WeightedOpa out(Opa{}, a.semiring());
  copy_states(a.base(), out.base(), "a.");
  copy_states(b.base(), out.base(), "b.");
  for (const auto& [t, w] : a.push_weights()) {
    out.add_push("a." + std::get<0>(t), std::get<1>(t), "a." + std::get<2>(t), w);
  }
  for (const auto& [t, w] : a.shift_weights()) {
    out.add_shift("a." + std::get<0>(t), std::get<1>(t), "a." + std::get<2>(t), w);
  }
  for (const auto& [t, w] : a.pop_weights()) {
    out.add_pop("a." + std::get<0>(t), "a." + std::get<1>(t), "a." + std::get<2>(t), w);
  }
  for (const auto& [t, w] : b.push_weights()) {
    out.add_push("b." + std::get<0>(t), std::get<1>(t), "b." + std::get<2>(t), w);
  }
  for (const auto& [t, w] : b.shift_weights()) {
    out.add_shift("b." + std::get<0>(t), std::get<1>(t), "b." + std::get<2>(t), w);
  }
  for (const auto& [t, w] : b.pop_weights()) {
    out.add_pop("b." + std::get<0>(t), "b." + std::get<1>(t), "b." + std::get<2>(t), w);
  }
  return out;
}

WeightedOpa intersect_with_opl(const WeightedOpa& a, const Opa& b) {
  if (!is_deterministic(b)) {
    throw PreconditionError("determinism-required",
                            "intersection requires a deterministic OPA");
  }
  WeightedOpa out(Opa{}, a.semiring());
  for (const auto& qa : a.base().states()) {
    for (const auto& qb : b.states()) {
      out.base().add_state(product_state(qa, qb));
    }
  }
  for (const auto& qa : a.base().initial()) {
    for (const auto& qb : b.initial()) {
      out.base().add_initial(product_state(qa, qb));
    }
  }
  for (const auto& qa : a.base().final()) {
    for (const auto& qb : b.final()) {
      out.base().add_final(product_state(qa, qb));
    }
  }
  for (const auto& [ta, w] : a.push_weights()) {
    for (const auto& [fb, sb, tb] : b.push()) {
      if (std::get<1>(ta) != sb) continue;
      out.add_push(product_state(std::get<0>(ta), fb), sb,
                   product_state(std::get<2>(ta), tb), w);
    }
  }
  for (const auto& [ta, w] : a.shift_weights()) {
    for (const auto& [fb, sb, tb] : b.shift()) {
      if (std::get<1>(ta) != sb) continue;
      out.add_shift(product_state(std::get<0>(ta), fb), sb,
                    product_state(std::get<2>(ta), tb), w);
    }
  }
  for (const auto& [ta, w] : a.pop_weights()) {
    for (const auto& [fb, sb, tb] : b.pop()) {
      out.add_pop(product_state(std::get<0>(ta), fb),
                  product_state(std::get<1>(ta), sb),
                  product_state(std::get<2>(ta), tb), w);
    }
  }
  return out;
}

WeightedOpa hadamard(const WeightedOpa& a, const WeightedOpa& b) {
  require_same_semiring(a, b);
  if (!a.semiring().commutative()) {
    throw PreconditionError("commutativity-required",
                            "Hadamard product requires a commutative semiring");
  }
  WeightedOpa out(Opa{}, a.semiring());
  for (const auto& qa : a.base().states()) {
    for (const auto& qb : b.base().states()) {
      out.base().add_state(product_state(qa, qb));
    }
  }
  for (const auto& qa : a.base().initial()) {
    for (const auto& qb : b.base().initial()) {
      out.base().add_initial(product_state(qa, qb));
    }
  }
  for (const auto& qa : a.base().final()) {
    for (const auto& qb : b.base().final()) {
      out.base().add_final(product_state(qa, qb));
    }
  }
  const Semiring& sr = a.semiring();
  for (const auto& [ta, wa] : a.push_weights()) {
    for (const auto& [tb, wb] : b.push_weights()) {
      if (std::get<1>(ta) != std::get<1>(tb)) continue;
      out.add_push(product_state(std::get<0>(ta), std::get<0>(tb)),
                   std::get<1>(ta),
                   product_state(std::get<2>(ta), std::get<2>(tb)),
                   sr.mul(wa, wb));
    }
  }
  for (const auto& [ta, wa] : a.shift_weights()) {
    for (const auto& [tb, wb] : b.shift_weights()) {
      if (std::get<1>(ta) != std::get<1>(tb)) continue;
      out.add_shift(product_state(std::get<0>(ta), std::get<0>(tb)),
                    std::get<1>(ta),
                    product_state(std::get<2>(ta), std::get<2>(tb)),
                    sr.mul(wa, wb));
    }
  }
  for (const auto& [ta, wa] : a.pop_weights()) {
    for (const auto& [tb, wb] : b.pop_weights()) {
      out.add_pop(product_state(std::get<0>(ta), std::get<0>(tb)),
                  product_state(std::get<1>(ta), std::get<1>(tb)),
                  product_state(std::get<2>(ta), std::get<2>(tb)),
                  sr.mul(wa, wb));
    }
  }
  return out;
}

WeightedOpa project(const OpAlphabet& source, const WeightedOpa& a,
                    const SymbolMap& h, const OpAlphabet& target) {
  if (!is_opm_preserving(h, source, target)) {
    throw PreconditionError("map-domain", "projection is not OPM-preserving");
  }
  WeightedOpa out(Opa{}, a.semiring());
  auto name = [](const std::string& q, const std::string& sym) {
    return q + "*" + sym;
  };
  for (const auto& q : a.base().states()) {
    for (const auto& s : source.symbols()) out.base().add_state(name(q, s));
  }
  const std::string& a0 = source.symbols().front();
  for (const auto& q : a.base().initial()) out.base().add_initial(name(q, a0));
  for (const auto& q : a.base().final()) {
    for (const auto& s : source.symbols()) out.base().add_final(name(q, s));
  }
  // Pushes and shifts move to the image symbol and remember the source
  // symbol actually read; pops carry the remembered symbol through.
  for (const auto& [t, w] : a.push_weights()) {
    const auto& [q, read, q2] = t;
    for (const auto& s : source.symbols()) {
      out.add_push(name(q, s), h.at(read), name(q2, read), w);
    }
  }
  for (const auto& [t, w] : a.shift_weights()) {
    const auto& [q, read, q2] = t;
    for (const auto& s : source.symbols()) {
      out.add_shift(name(q, s), h.at(read), name(q2, read), w);
    }
  }
  for (const auto& [t, w] : a.pop_weights()) {
    const auto& [q, p, q2] = t;
    for (const auto& s : source.symbols()) {
      for (const auto& s2 : source.symbols()) {
        out.add_pop(name(q, s), name(p, s2), name(q2, s), w);
      }
    }
  }
  return out;
}

WeightedOpa scalar_left_multiply(const Weight& k, const WeightedOpa& a) {
  if (k.semiring_id() != a.semiring().id()) {
    throw PreconditionError("semiring-mismatch", "scalar not in the semiring");
  }
  WeightedOpa out(Opa{}, a.semiring());
  for (const auto& q : a.base().states()) out.base().add_state(q);
  for (const auto& q : a.base().final()) out.base().add_final(q);
  for (const auto& q : a.base().initial()) {
    out.base().add_state(q + "'");
    out.base().add_initial(q + "'");
  }
  for (const auto& [t, w] : a.push_weights()) {
    out.add_push(std::get<0>(t), std::get<1>(t), std::get<2>(t), w);
    // Every run starts with a push, so premultiplying the pushes out of the
    // fresh initial copies multiplies the whole behavior by k on the left.
    if (a.base().initial().count(std::get<0>(t))) {
      out.add_push(std::get<0>(t) + "'", std::get<1>(t), std::get<2>(t),
                   a.semiring().mul(k, w));
    }
  }
  for (const auto& [t, w] : a.shift_weights()) {
    out.add_shift(std::get<0>(t), std::get<1>(t), std::get<2>(t), w);
  }
  for (const auto& [t, w] : a.pop_weights()) {
    out.add_pop(std::get<0>(t), std::get<1>(t), std::get<2>(t), w);
    // The run's very first item stores the primed copy, so the pops that
    // eventually remove it mirror the originals.
    if (a.base().initial().count(std::get<1>(t))) {
      out.add_pop(std::get<0>(t), std::get<1>(t) + "'", std::get<2>(t), w);
    }
  }
  return out;
}

WeightedOpa eliminate_pop_weights(const WeightedOpa& a) {
  if (!a.semiring().commutative()) {
    throw PreconditionError("commutativity-required",
                            "pop-weight elimination requires a commutative semiring");
  }
  const Semiring& sr = a.semiring();
  if (a.base().states().empty()) {
    return WeightedOpa(Opa{}, sr);  // trivially zero, trivially restricted
  }
  auto name = [](const std::string& q1, const std::string& q2,
                 const std::string& q3) { return q1 + "*" + q2 + "*" + q3; };
  const std::string fixed = *a.base().states().begin();

  WeightedOpa out(Opa{}, sr);
  for (const auto& q1 : a.base().states()) {
    for (const auto& q2 : a.base().states()) {
      for (const auto& q3 : a.base().states()) {
        out.base().add_state(name(q1, q2, q3));
      }
    }
  }
  for (const auto& q1 : a.base().initial()) {
    for (const auto& q2 : a.base().states()) {
      for (const auto& q3 : a.base().states()) {
        out.base().add_initial(name(q1, q2, q3));
      }
    }
  }
  for (const auto& q1 : a.base().final()) {
    out.base().add_final(name(q1, fixed, fixed));
  }
  // A push in state (q1,q2,q3) stores q1; (q2,q3) is the standing guess that
  // the pop removing this item is (q2,q1,q3) of the original automaton, so
  // its weight rides along on the push. The fresh guess (r2,r3) is free.
  for (const auto& [t, wpush] : a.push_weights()) {
    const auto& [q1, sym, r1] = t;
    for (const auto& q2 : a.base().states()) {
      for (const auto& q3 : a.base().states()) {
        auto pop_it = a.pop_weights().find(Triple{q2, q1, q3});
        if (pop_it == a.pop_weights().end()) continue;
        Weight w = sr.mul(wpush, pop_it->second);
        for (const auto& r2 : a.base().states()) {
          for (const auto& r3 : a.base().states()) {
            out.add_push(name(q1, q2, q3), sym, name(r1, r2, r3), w);
          }
        }
      }
    }
  }
  for (const auto& [t, w] : a.shift_weights()) {
    const auto& [q1, sym, r1] = t;
    for (const auto& q2 : a.base().states()) {
      for (const auto& q3 : a.base().states()) {
        out.add_shift(name(q1, q2, q3), sym, name(r1, q2, q3), w);
      }
    }
  }
  const Weight one = sr.one();
  for (const auto& [t, w] : a.pop_weights()) {
    const auto& [q1, p1, r1] = t;
    for (const auto& q2 : a.base().states()) {
      for (const auto& q3 : a.base().states()) {
        out.add_pop(name(q1, q2, q3), name(p1, q1, r1), name(r1, q2, q3), one);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

VpClass VpPartition::classify(const std::string& sym) const {
  if (std::find(call.begin(), call.end(), sym) != call.end()) return VpClass::kCall;
  if (std::find(internal.begin(), internal.end(), sym) != internal.end()) {
    return VpClass::kInternal;
  }
  if (std::find(ret.begin(), ret.end(), sym) != ret.end()) return VpClass::kReturn;
  throw PreconditionError("unknown-symbol", "symbol not in the partition: " + sym);
}

std::vector<std::string> VpPartition::all_symbols() const {
  std::vector<std::string> out = call;
  out.insert(out.end(), internal.begin(), internal.end());
  out.insert(out.end(), ret.begin(), ret.end());
  return out;
}

OpAlphabet vpl_opm(const VpPartition& partition) {
  OpAlphabet alpha(partition.all_symbols());
  for (const auto& a : alpha.symbols()) {
    for (const auto& b : alpha.symbols()) {
      if (partition.classify(a) == VpClass::kCall) {
        alpha.set(a, b, partition.classify(b) == VpClass::kReturn ? Prec::kEqual
                                                                  : Prec::kYields);
      } else {
        alpha.set(a, b, Prec::kTakes);
      }
    }
  }
  return alpha;
}

void WeightedNwa::require_state(const std::string& q) const {
  if (!states_.count(q)) throw ParseError("bad-automaton", "undeclared state: " + q);
}

void WeightedNwa::add_state(const std::string& q) {
  if (q.empty()) throw ParseError("bad-automaton", "empty state name");
  states_.insert(q);
}

void WeightedNwa::add_initial(const std::string& q) {
  require_state(q);
  initial_.insert(q);
}

void WeightedNwa::add_final(const std::string& q) {
  require_state(q);
  final_.insert(q);
}

void WeightedNwa::add_call(const std::string& from, const std::string& sym,
                           const std::string& to, const Weight& w) {
  require_state(from);
  require_state(to);
  if (partition_.classify(sym) != VpClass::kCall) {
    throw ParseError("bad-automaton", "call transition on non-call symbol: " + sym);
  }
  call_.insert_or_assign(Triple{from, sym, to}, w);
}

void WeightedNwa::add_internal(const std::string& from, const std::string& sym,
                               const std::string& to, const Weight& w) {
  require_state(from);
  require_state(to);
  if (partition_.classify(sym) != VpClass::kInternal) {
    throw ParseError("bad-automaton",
                     "internal transition on non-internal symbol: " + sym);
  }
  internal_.insert_or_assign(Triple{from, sym, to}, w);
}

void WeightedNwa::add_return(const std::string& from, const std::string& stack,
                             const std::string& sym, const std::string& to,
                             const Weight& w) {
  require_state(from);
  require_state(stack);
  require_state(to);
  if (partition_.classify(sym) != VpClass::kReturn) {
    throw ParseError("bad-automaton", "return transition on non-return symbol: " + sym);
  }
  return_.insert_or_assign(NwaReturn{from, stack, sym, to}, w);
}

bool is_well_matched(const VpPartition& partition, const Word& w) {
  int depth = 0;
  for (const auto& sym : w.tokens) {
    switch (partition.classify(sym)) {
      case VpClass::kCall: ++depth; break;
      case VpClass::kReturn:
        if (depth == 0) return false;
        --depth;
        break;
      case VpClass::kInternal: break;
    }
  }
  return depth == 0;
}

Weight nwa_behavior(const WeightedNwa& n, const Word& w) {
  if (!is_well_matched(n.partition(), w)) {
    throw PreconditionError("unsupported-word",
                            "nested word automata are evaluated on well-matched words only");
  }
  const Semiring& sr = n.semiring();
  Weight total = sr.zero();

  // Linear runs: q_{i-1} --a_i--> q_i, with calls pushing the source state
  // and returns consuming the matching pushed state.
  std::vector<std::string> pushed;
  std::function<void(int, const std::string&, const Weight&)> dfs =
      [&](int i, const std::string& state, const Weight& acc) {
        if (i > w.size()) {
          if (n.final().count(state)) total = sr.add(total, acc);
          return;
        }
        const std::string& sym = w.at(i);
        switch (n.partition().classify(sym)) {
          case VpClass::kCall:
            for (const auto& [t, wt] : n.calls()) {
              if (std::get<0>(t) != state || std::get<1>(t) != sym) continue;
              pushed.push_back(state);
              dfs(i + 1, std::get<2>(t), sr.mul(acc, wt));
              pushed.pop_back();
            }
            break;
          case VpClass::kInternal:
            for (const auto& [t, wt] : n.internals()) {
              if (std::get<0>(t) != state || std::get<1>(t) != sym) continue;
              dfs(i + 1, std::get<2>(t), sr.mul(acc, wt));
            }
            break;
          case VpClass::kReturn: {
            const std::string hier = pushed.back();
            for (const auto& [t, wt] : n.returns()) {
              if (std::get<0>(t) != state || std::get<1>(t) != hier ||
                  std::get<2>(t) != sym) {
                continue;
              }
              pushed.pop_back();
              dfs(i + 1, std::get<3>(t), sr.mul(acc, wt));
              pushed.push_back(hier);
            }
            break;
          }
        }
      };
  for (const auto& q : n.initial()) dfs(1, q, sr.one());
  return total;
}

WeightedOpa from_nwa(const WeightedNwa& n) {
  const Semiring& sr = n.semiring();
  WeightedOpa out(Opa{}, sr);
  auto pair_name = [](const std::string& q, const std::string& r) {
    return q + "*" + r;
  };
  for (const auto& q : n.states()) out.base().add_state(q);
  for (const auto& q : n.states()) {
    for (const auto& r : n.states()) out.base().add_state(pair_name(q, r));
  }
  for (const auto& q : n.initial()) out.base().add_initial(q);
  for (const auto& q : n.final()) out.base().add_final(q);

  const Weight one = sr.one();
  for (const auto& [t, w] : n.calls()) {
    out.add_push(std::get<0>(t), std::get<1>(t), std::get<2>(t), w);
  }
  // An internal becomes a weighted push into (q, r) plus a weight-one pop;
  // a return becomes a weighted shift into (p, r) plus a weight-one pop.
  for (const auto& [t, w] : n.internals()) {
    const auto& [q, a, r] = t;
    out.add_push(q, a, pair_name(q, r), w);
    out.add_pop(pair_name(q, r), q, r, one);
  }
  for (const auto& [t, w] : n.returns()) {
    const auto& [q, p, a, r] = t;
    out.add_shift(q, a, pair_name(p, r), w);
    out.add_pop(pair_name(p, r), p, r, one);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string extended_symbol(const std::string& q, const std::string& a,
                            const std::string& p) {
  return "(" + q + "," + a + "," + p + ")";
}

// True iff some partial run consumes exactly `prefix` (reaching any
// configuration). Used to skip dead preimage subtrees.
bool can_consume_prefix(const OpAlphabet& alpha, const Opa& a,
                        const std::vector<std::string>& prefix) {
  std::function<bool(const Configuration&)> dfs = [&](const Configuration& c) {
    if (c.pos == static_cast<int>(prefix.size()) + 1) return true;
    const std::string& top = c.stack.empty() ? kDelim : c.stack.back().first;
    const std::string& next = prefix[static_cast<std::size_t>(c.pos - 1)];
    auto rel = alpha.lookup(top, next);
    if (!rel.has_value()) return false;
    switch (*rel) {
      case Prec::kYields:
        for (const auto& [from, sym, to] : a.push()) {
          if (from != c.state || sym != next) continue;
          Configuration succ = c;
          succ.stack.emplace_back(next, c.state);
          succ.state = to;
          succ.pos = c.pos + 1;
          if (dfs(succ)) return true;
        }
        return false;
      case Prec::kEqual:
        for (const auto& [from, sym, to] : a.shift()) {
          if (from != c.state || sym != next) continue;
          Configuration succ = c;
          succ.stack.back().first = next;
          succ.state = to;
          succ.pos = c.pos + 1;
          if (dfs(succ)) return true;
        }
        return false;
      case Prec::kTakes:
        for (const auto& [from, stack, to] : a.pop()) {
          if (from != c.state || stack != c.stack.back().second) continue;
          Configuration succ = c;
          succ.stack.pop_back();
          succ.state = to;
          if (dfs(succ)) return true;
        }
        return false;
    }
    return false;
  };
  for (const auto& q : a.initial()) {
    if (dfs(Configuration{{}, q, 1})) return true;
  }
  return false;
}

}  // namespace

NivatDecomposition nivat_decompose(const OpAlphabet& alpha, const WeightedOpa& a) {
  if (!is_restricted(a)) {
    throw PreconditionError("restricted-required",
                            "Nivat decomposition requires an automaton with pop weights one");
  }
  const Semiring& sr = a.semiring();

  // Extended alphabet: Q x Sigma x Q, pulled back along the middle
  // projection h.
  std::vector<std::string> ext_symbols;
  SymbolMap h;
  for (const auto& q : a.base().states()) {
    for (const auto& s : alpha.symbols()) {
      for (const auto& p : a.base().states()) {
        std::string sym = extended_symbol(q, s, p);
        ext_symbols.push_back(sym);
        h[sym] = s;
      }
    }
  }
  OpAlphabet extended = pullback_opm(h, alpha, ext_symbols);

  // One-state automaton b: universal over Sigma', with the push (shift)
  // weight of the symbol (q,a,p) equal to a's weight on that push (shift)
  // transition, and one where (q,a,p) is not a transition of that kind.
  WeightedOpa b(Opa{}, sr);
  b.base().add_state("q");
  b.base().add_initial("q");
  b.base().add_final("q");
  const Weight one = sr.one();
  for (const auto& q : a.base().states()) {
    for (const auto& s : alpha.symbols()) {
      for (const auto& p : a.base().states()) {
        std::string sym = extended_symbol(q, s, p);
        auto push_it = a.push_weights().find(Triple{q, s, p});
        b.add_push("q", sym, "q",
                   push_it == a.push_weights().end() ? one : push_it->second);
        auto shift_it = a.shift_weights().find(Triple{q, s, p});
        b.add_shift("q", sym, "q",
                    shift_it == a.shift_weights().end() ? one : shift_it->second);
      }
    }
  }
  b.add_pop("q", "q", "q", one);

  // Language automaton: a's transitions relabelled by their own names; pops
  // unchanged.
  Opa lang;
  for (const auto& q : a.base().states()) lang.add_state(q);
  for (const auto& q : a.base().initial()) lang.add_initial(q);
  for (const auto& q : a.base().final()) lang.add_final(q);
  for (const auto& [f, s, t] : a.base().push()) {
    lang.add_push(f, extended_symbol(f, s, t), t);
  }
  for (const auto& [f, s, t] : a.base().shift()) {
    lang.add_shift(f, extended_symbol(f, s, t), t);
  }
  for (const auto& [f, s, t] : a.base().pop()) lang.add_pop(f, s, t);

  return NivatDecomposition{std::move(extended), std::move(h), std::move(b),
                            std::move(lang)};
}

Weight nivat_eval(const NivatDecomposition& d, const Word& v) {
  const Semiring& sr = d.b.semiring();

  // Fibers h^{-1}(v_i), in deterministic order.
  std::vector<std::vector<std::string>> fibers(static_cast<std::size_t>(v.size()));
  for (const auto& [sym, image] : d.h) {
    for (int i = 0; i < v.size(); ++i) {
      if (image == v.at(i + 1)) {
        fibers[static_cast<std::size_t>(i)].push_back(sym);
      }
    }
  }

  Weight total = sr.zero();
  std::vector<std::string> candidate;
  std::function<void(int)> go = [&](int i) {
    if (!candidate.empty() &&
        !can_consume_prefix(d.extended, d.lang, candidate)) {
      return;  // no extension can reach L, so the whole fiber subtree is zero
    }
    if (i == v.size()) {
      Word wprime{candidate};
      if (!is_compatible(d.extended, wprime)) return;
      if (!enumerate_runs(d.extended, d.lang, wprime).empty()) {
        total = sr.add(total, behavior(d.extended, d.b, wprime));
      }
      return;
    }
    for (const auto& sym : fibers[static_cast<std::size_t>(i)]) {
      candidate.push_back(sym);
      go(i + 1);
      candidate.pop_back();
    }
  };
  go(0);
  return total;
}

}  // namespace wop
