#include "wop/opa.hpp"

#include <functional>
#include <map>

namespace wop {

void Opa::add_state(const std::string& q) {
  if (q.empty()) throw ParseError("bad-automaton", "empty state name");
  states_.insert(q);
}

void Opa::require_state(const std::string& q) const {
  if (!states_.count(q)) {
    throw ParseError("bad-automaton", "undeclared state: " + q);
  }
}

void Opa::add_initial(const std::string& q) {
  require_state(q);
  initial_.insert(q);
}

void Opa::add_final(const std::string& q) {
  require_state(q);
  final_.insert(q);
}

void Opa::add_push(const std::string& from, const std::string& sym,
                   const std::string& to) {
  require_state(from);
  require_state(to);
  push_.emplace(from, sym, to);
}

void Opa::add_shift(const std::string& from, const std::string& sym,
                    const std::string& to) {
  require_state(from);
  require_state(to);
  shift_.emplace(from, sym, to);
}

void Opa::add_pop(const std::string& from, const std::string& stack,
                  const std::string& to) {
  require_state(from);
  require_state(stack);
  pop_.emplace(from, stack, to);
}

void Opa::validate(const OpAlphabet& alpha) const {
  for (const auto& set : {push_, shift_}) {
    for (const auto& [from, sym, to] : set) {
      if (!alpha.has_symbol(sym)) {
        throw PreconditionError("unknown-symbol",
                                "transition symbol not in alphabet: " + sym);
      }
    }
  }
}

std::string move_str(const Move& m) {
  const char* kind = m.kind == MoveKind::kPush   ? "push"
                     : m.kind == MoveKind::kShift ? "shift"
                                                  : "pop";
  return std::string(kind) + "(" + m.from + "," + m.label + "," + m.to + ")";
}

std::string run_str(const Run& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ' ';
    out += move_str(r[i]);
  }
  return out;
}

std::vector<std::pair<Configuration, Move>> step(const OpAlphabet& alpha,
                                                 const Opa& a,
                                                 const Configuration& c,
                                                 const Word& w) {
  std::vector<std::pair<Configuration, Move>> out;
  const int n = w.size();
  const std::string& top = c.stack.empty() ? kDelim : c.stack.back().first;
  const std::string& next = c.pos <= n ? w.at(c.pos) : kDelim;
  auto rel = alpha.lookup(top, next);
  if (!rel.has_value()) return out;

  switch (*rel) {
    case Prec::kYields:
      if (c.pos > n) break;  // cannot push the closing delimiter
      for (const auto& [from, sym, to] : a.push()) {
        if (from != c.state || sym != next) continue;
        Configuration succ = c;
        succ.stack.emplace_back(next, c.state);
        succ.state = to;
        succ.pos = c.pos + 1;
        out.emplace_back(std::move(succ), Move{MoveKind::kPush, from, sym, to});
      }
      break;
    case Prec::kEqual:
      if (c.pos > n) break;
      for (const auto& [from, sym, to] : a.shift()) {
        if (from != c.state || sym != next) continue;
        Configuration succ = c;
        succ.stack.back().first = next;  // stored state is preserved
        succ.state = to;
        succ.pos = c.pos + 1;
        out.emplace_back(std::move(succ), Move{MoveKind::kShift, from, sym, to});
      }
      break;
    case Prec::kTakes:
      for (const auto& [from, stack, to] : a.pop()) {
        if (from != c.state || stack != c.stack.back().second) continue;
        Configuration succ = c;
        succ.stack.pop_back();
        succ.state = to;  // input does not advance
        out.emplace_back(std::move(succ), Move{MoveKind::kPop, from, stack, to});
      }
      break;
  }
  return out;
}

std::vector<Run> enumerate_runs(const OpAlphabet& alpha, const Opa& a,
                                const Word& w) {
  if (!is_compatible(alpha, w)) {
    throw PreconditionError("compatibility",
                            "word not compatible with the OPM: " + word_str(w));
  }
  std::vector<Run> runs;
  Run path;
  const int n = w.size();

  std::function<void(const Configuration&)> dfs = [&](const Configuration& c) {
    if (c.pos == n + 1 && c.stack.empty()) {
      if (a.final().count(c.state)) runs.push_back(path);
      return;  // (#, #) has no relation; no further moves exist
    }
    for (auto& [succ, move] : step(alpha, a, c, w)) {
      path.push_back(move);
      dfs(succ);
      path.pop_back();
    }
  };

  for (const auto& q : a.initial()) {
    dfs(Configuration{{}, q, 1});
  }
  return runs;
}

bool accepts(const OpAlphabet& alpha, const Opa& a, const Word& w) {
  for (const auto& t : w.tokens) {
    if (!alpha.has_symbol(t)) {
      throw PreconditionError("unknown-symbol", "symbol not in alphabet: " + t);
    }
  }
  if (!is_compatible(alpha, w)) return false;
  return !enumerate_runs(alpha, a, w).empty();
}

bool is_deterministic(const Opa& a) {
  if (a.initial().size() != 1) return false;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& set : {a.push(), a.shift()}) {
    seen.clear();
    for (const auto& [from, sym, to] : set) {
      if (!seen.emplace(from, sym).second) return false;
    }
  }
  seen.clear();
  for (const auto& [from, stack, to] : a.pop()) {
    if (!seen.emplace(from, stack).second) return false;
  }
  return true;
}

std::string product_state(const std::string& a, const std::string& b) {
  return a + "*" + b;
}

Opa opa_product(const Opa& a, const Opa& b) {
  Opa p;
  for (const auto& qa : a.states()) {
    for (const auto& qb : b.states()) p.add_state(product_state(qa, qb));
  }
  for (const auto& qa : a.initial()) {
    for (const auto& qb : b.initial()) p.add_initial(product_state(qa, qb));
  }
  for (const auto& qa : a.final()) {
    for (const auto& qb : b.final()) p.add_final(product_state(qa, qb));
  }
  for (const auto& [fa, sa, ta] : a.push()) {
    for (const auto& [fb, sb, tb] : b.push()) {
      if (sa == sb) p.add_push(product_state(fa, fb), sa, product_state(ta, tb));
    }
  }
  for (const auto& [fa, sa, ta] : a.shift()) {
    for (const auto& [fb, sb, tb] : b.shift()) {
      if (sa == sb) p.add_shift(product_state(fa, fb), sa, product_state(ta, tb));
    }
  }
  for (const auto& [fa, sa, ta] : a.pop()) {
    for (const auto& [fb, sb, tb] : b.pop()) {
      p.add_pop(product_state(fa, fb), product_state(sa, sb),
                product_state(ta, tb));
    }
  }
  return p;
}

Opa universal_opa(const OpAlphabet& alpha) {
  Opa u;
  u.add_state("u");
  u.add_initial("u");
  u.add_final("u");
  for (const auto& s : alpha.symbols()) {
    u.add_push("u", s, "u");
    u.add_shift("u", s, "u");
  }
  u.add_pop("u", "u", "u");
  return u;
}

}  // namespace wop
