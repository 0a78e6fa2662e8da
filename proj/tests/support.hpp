#pragma once

#include <optional>

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wop/constructions.hpp"
#include "wop/fixtures.hpp"
#include "wop/wopa.hpp"

namespace wop::testing {

// Independent chain oracle: a shift-reduce parser over the precedence
// relations. Pushes on <., shifts on =., and on .> pops one handle,
// recording the span (p, i) it closes, where p is the position below the
// handle. Returns nullopt when the parse gets stuck; for compatible words
// the recorded spans are exactly the chain relation.
inline std::optional<std::set<std::pair<int, int>>> stack_parser_chains(
    const OpAlphabet& alpha, const Word& w) {
  struct Item {
    int pos;
    char tag;  // '<' opens a handle, '=' continues one
  };
  std::vector<Item> st{{0, ' '}};
  std::set<std::pair<int, int>> out;
  const int n = w.size();
  int i = 1;
  while (!(st.size() == 1 && i == n + 1)) {
    auto rel = alpha.lookup(w.at(st.back().pos), w.at(i));
    if (!rel.has_value()) return std::nullopt;
    switch (*rel) {
      case Prec::kYields:
        st.push_back({i, '<'});
        ++i;
        break;
      case Prec::kEqual:
        st.push_back({i, '='});
        ++i;
        break;
      case Prec::kTakes: {
        while (st.back().tag == '=') st.pop_back();
        if (st.back().tag != '<') return std::nullopt;
        st.pop_back();
        out.emplace(st.back().pos, i);
        break;
      }
    }
  }
  return out;
}

// LIFO call matching with interrupts discarding every pending call. Returns
// the number of calls never answered by a return, or nullopt if some return
// arrives with no pending call (the penalty automaton has no run then).
inline std::optional<int> pending_calls(const Word& w) {
  int pending = 0;
  int lost = 0;
  for (const auto& t : w.tokens) {
    if (t == "call") {
      ++pending;
    } else if (t == "ret") {
      if (pending == 0) return std::nullopt;
      --pending;
    } else if (t == "int") {
      lost += pending;
      pending = 0;
    }
  }
  return lost + pending;
}

// Interval oracle for the policy automaton: the maximum over consecutive-$
// intervals of #call - #ret, as a max-plus weight. Words with fewer than
// two $ have no interval and evaluate to -inf.
inline Weight interval_scan(const Semiring& max_plus, const Word& w) {
  std::vector<int> dollars;
  for (int i = 1; i <= w.size(); ++i) {
    if (w.at(i) == "$") dollars.push_back(i);
  }
  Weight best = max_plus.zero();
  for (std::size_t d = 0; d + 1 < dollars.size(); ++d) {
    int value = 0;
    for (int i = dollars[d] + 1; i < dollars[d + 1]; ++i) {
      if (w.at(i) == "call") ++value;
      if (w.at(i) == "ret") --value;
    }
    best = max_plus.add(best, max_plus.from_rational(Rational(value)));
  }
  return best;
}

// Brute-force projection oracle: the sum of behaviors over the whole
// h-preimage of v, enumerated fiber by fiber.
inline Weight preimage_sum(const OpAlphabet& source, const WeightedOpa& a,
                           const SymbolMap& h, const Word& v) {
  std::vector<std::vector<std::string>> fibers(static_cast<std::size_t>(v.size()));
  for (const auto& [sym, image] : h) {
    for (int i = 1; i <= v.size(); ++i) {
      if (image == v.at(i)) fibers[static_cast<std::size_t>(i - 1)].push_back(sym);
    }
  }
  Weight total = a.semiring().zero();
  std::vector<std::string> candidate;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == fibers.size()) {
      total = a.semiring().add(total, behavior(source, a, Word{candidate}));
      return;
    }
    for (const auto& sym : fibers[i]) {
      candidate.push_back(sym);
      go(i + 1);
      candidate.pop_back();
    }
  };
  go(0);
  return total;
}

inline bool behaviors_equal(const OpAlphabet& alpha, const WeightedOpa& a,
                            const WeightedOpa& b, int max_len,
                            std::string* witness = nullptr) {
  for (const Word& w : compatible_words(alpha, max_len)) {
    if (!(behavior(alpha, a, w) == behavior(alpha, b, w))) {
      if (witness) *witness = word_str(w);
      return false;
    }
  }
  return true;
}

// Random automata for the differential suites. Transition density is kept
// low so run counts stay small on short words.
struct RandomGen {
  std::mt19937 rng;

  explicit RandomGen(unsigned seed) : rng(seed) {}

  bool flip(double p) { return std::uniform_real_distribution<>(0, 1)(rng) < p; }

  int pick(int n) { return std::uniform_int_distribution<>(0, n - 1)(rng); }

  Weight weight(const Semiring& sr) {
    switch (sr.kind()) {
      case Semiring::Kind::kRational: {
        static const Rational choices[] = {{1, 2}, {2}, {3}, {-1}, {1, 3}, {1}};
        return sr.from_rational(choices[pick(6)]);
      }
      case Semiring::Kind::kMaxPlus:
      case Semiring::Kind::kMinPlus: {
        static const Rational choices[] = {{0}, {1}, {-1}, {2}, {5, 2}};
        return sr.from_rational(choices[pick(5)]);
      }
      case Semiring::Kind::kFinLang: {
        static const char* choices[] = {"a", "b", "ab", "", "ba"};
        LangSet l{choices[pick(5)]};
        if (flip(0.3)) l.insert(choices[pick(5)]);
        return sr.from_lang(l);
      }
      case Semiring::Kind::kBoolean:
        return sr.from_bool(true);
    }
    return sr.one();
  }

  WeightedOpa wopa(const OpAlphabet& alpha, const Semiring& sr, int num_states) {
    WeightedOpa a(Opa{}, sr);
    std::vector<std::string> qs;
    for (int i = 0; i < num_states; ++i) {
      qs.push_back("q" + std::to_string(i));
      a.base().add_state(qs.back());
    }
    a.base().add_initial(qs[static_cast<std::size_t>(pick(num_states))]);
    for (const auto& q : qs) {
      if (flip(0.5)) a.base().add_final(q);
    }
    for (const auto& q : qs) {
      for (const auto& s : alpha.symbols()) {
        if (flip(0.7)) {
          a.add_push(q, s, qs[static_cast<std::size_t>(pick(num_states))], weight(sr));
        }
        if (flip(0.5)) {
          a.add_shift(q, s, qs[static_cast<std::size_t>(pick(num_states))], weight(sr));
        }
      }
      for (const auto& p : qs) {
        if (flip(0.7)) {
          a.add_pop(q, p, qs[static_cast<std::size_t>(pick(num_states))], weight(sr));
        }
      }
    }
    return a;
  }

  WeightedNwa nwa(const VpPartition& partition, const Semiring& sr, int num_states) {
    WeightedNwa n(partition, sr);
    std::vector<std::string> qs;
    for (int i = 0; i < num_states; ++i) {
      qs.push_back("q" + std::to_string(i));
      n.add_state(qs.back());
    }
    n.add_initial(qs[static_cast<std::size_t>(pick(num_states))]);
    for (const auto& q : qs) {
      if (flip(0.5)) n.add_final(q);
    }
    for (const auto& q : qs) {
      for (const auto& s : partition.call) {
        if (flip(0.7)) {
          n.add_call(q, s, qs[static_cast<std::size_t>(pick(num_states))], weight(sr));
        }
      }
      for (const auto& s : partition.internal) {
        if (flip(0.7)) {
          n.add_internal(q, s, qs[static_cast<std::size_t>(pick(num_states))], weight(sr));
        }
      }
      for (const auto& s : partition.ret) {
        for (const auto& p : qs) {
          if (flip(0.5)) {
            n.add_return(q, p, s, qs[static_cast<std::size_t>(pick(num_states))],
                         weight(sr));
          }
        }
      }
    }
    return n;
  }
};

// All words over the partition's symbols with length <= max_len that are
// well matched.
inline std::vector<Word> well_matched_words(const VpPartition& partition,
                                            int max_len) {
  std::vector<std::string> syms = partition.all_symbols();
  std::sort(syms.begin(), syms.end());
  std::vector<Word> out;
  std::vector<std::string> prefix;
  std::function<void(int)> go = [&](int remaining) {
    if (!prefix.empty()) {
      Word w{prefix};
      if (is_well_matched(partition, w)) out.push_back(w);
    }
    if (remaining == 0) return;
    for (const auto& s : syms) {
      prefix.push_back(s);
      go(remaining - 1);
      prefix.pop_back();
    }
  };
  go(max_len);
  return out;
}

}  // namespace wop::testing
