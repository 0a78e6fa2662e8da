#include "wop/op_alphabet.hpp"

#include <algorithm>
#include <sstream>

namespace wop {

std::string prec_str(Prec p) {
  switch (p) {
    case Prec::kYields: return "<·";
    case Prec::kEqual: return "=·";
    case Prec::kTakes: return "·>";
  }
  throw std::logic_error("unreachable");
}

Prec prec_parse(const std::string& s) {
  if (s == "<·") return Prec::kYields;
  if (s == "=·") return Prec::kEqual;
  if (s == "·>") return Prec::kTakes;
  throw ParseError("bad-opm", "unknown precedence relation: " + s);
}

OpAlphabet::OpAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  for (const auto& s : symbols_) {
    if (s.empty() || s == kDelim ||
        s.find_first_of(" \t\r\n") != std::string::npos) {
      throw ParseError("bad-opm", "invalid symbol: '" + s + "'");
    }
    if (!symbol_set_.insert(s).second) {
      throw ParseError("bad-opm", "duplicate symbol: " + s);
    }
  }
}

void OpAlphabet::require_symbol_or_delim(const std::string& s) const {
  if (s != kDelim && !symbol_set_.count(s)) {
    throw PreconditionError("unknown-symbol", "symbol not in alphabet: " + s);
  }
}

void OpAlphabet::set(const std::string& a, const std::string& b, Prec rel) {
  if (a == kDelim || b == kDelim) {
    throw ParseError("bad-opm", "matrix entries for # are fixed and cannot be set");
  }
  require_symbol_or_delim(a);
  require_symbol_or_delim(b);
  auto [it, inserted] = matrix_.emplace(std::make_pair(a, b), rel);
  if (!inserted && it->second != rel) {
    throw ParseError("bad-opm", "conflicting relations for (" + a + ", " + b + ")");
  }
}

std::optional<Prec> OpAlphabet::lookup(const std::string& a,
                                       const std::string& b) const {
  require_symbol_or_delim(a);
  require_symbol_or_delim(b);
  if (a == kDelim && b == kDelim) return std::nullopt;
  if (a == kDelim) return Prec::kYields;
  if (b == kDelim) return Prec::kTakes;
  auto it = matrix_.find(std::make_pair(a, b));
  if (it == matrix_.end()) return std::nullopt;
  return it->second;
}

bool OpAlphabet::has_symbol(const std::string& s) const {
  return symbol_set_.count(s) > 0;
}

const std::string& Word::at(int i) const {
  if (i == 0 || i == size() + 1) return kDelim;
  return tokens.at(static_cast<std::size_t>(i - 1));
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) w.tokens.push_back(tok);
  if (w.tokens.empty()) throw ParseError("bad-word", "empty word");
  return w;
}

std::string word_str(const Word& w) {
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w.tokens[static_cast<std::size_t>(i)];
  }
  return out;
}

namespace {

// Memoized evaluation of the chain relation. chain(i, j) asks for positions
// i = k_1 < ... < k_m = j (m >= 3) with a_{k_1} <. a_{k_2} =. ... =.
// a_{k_{m-1}} .> a_{k_m}, each consecutive pair adjacent or itself a chain.
// Sub-queries always have strictly smaller span, so the recursion is well
// founded.
class ChainSolver {
 public:
  ChainSolver(const OpAlphabet& alpha, const Word& w)
      : alpha_(alpha), w_(w), n_(w.size()) {
    memo_.assign(static_cast<std::size_t>(n_ + 2) * (n_ + 2), -1);
  }

  bool chain(int i, int j) {
    int& m = memo_[static_cast<std::size_t>(i) * (n_ + 2) + j];
    if (m >= 0) return m == 1;
    m = solve(i, j) ? 1 : 0;
    return m == 1;
  }

 private:
  bool rel_is(int u, int v, Prec p) {
    auto r = alpha_.lookup(w_.at(u), w_.at(v));
    return r.has_value() && *r == p;
  }

  bool link(int u, int v) { return v == u + 1 || chain(u, v); }

  bool solve(int i, int j) {
    if (j - i < 2) return false;
    // reach[p]: p is some k_t (t >= 2, p < j) consistent with the pattern
    // so far. Seeds use <., extensions use =., closing uses .>.
    std::vector<char> reach(static_cast<std::size_t>(j), 0);
    for (int p = i + 1; p < j; ++p) {
      if (rel_is(i, p, Prec::kYields) && link(i, p)) reach[static_cast<std::size_t>(p)] = 1;
    }
    for (int p = i + 1; p < j; ++p) {
      if (!reach[static_cast<std::size_t>(p)]) continue;
      if (rel_is(p, j, Prec::kTakes) && link(p, j)) return true;
      for (int q = p + 1; q < j; ++q) {
        if (!reach[static_cast<std::size_t>(q)] && rel_is(p, q, Prec::kEqual) &&
            link(p, q)) {
          reach[static_cast<std::size_t>(q)] = 1;
        }
      }
    }
    return false;
  }

  const OpAlphabet& alpha_;
  const Word& w_;
  int n_;
  std::vector<int> memo_;
};

}  // namespace

std::set<std::pair<int, int>> chains(const OpAlphabet& alpha, const Word& w) {
  for (const auto& t : w.tokens) {
    if (!alpha.has_symbol(t)) {
      throw PreconditionError("unknown-symbol", "symbol not in alphabet: " + t);
    }
  }
  ChainSolver solver(alpha, w);
  std::set<std::pair<int, int>> out;
  int n = w.size();
  for (int i = 0; i <= n + 1; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      if (solver.chain(i, j)) out.emplace(i, j);
    }
  }
  return out;
}

bool is_compatible(const OpAlphabet& alpha, const Word& w) {
  for (const auto& t : w.tokens) {
    if (!alpha.has_symbol(t)) {
      throw PreconditionError("unknown-symbol", "symbol not in alphabet: " + t);
    }
  }
  ChainSolver solver(alpha, w);
  return solver.chain(0, w.size() + 1);
}

bool is_opm_preserving(const SymbolMap& h, const OpAlphabet& source,
                       const OpAlphabet& target) {
  for (const auto& a : source.symbols()) {
    auto it = h.find(a);
    if (it == h.end()) {
      throw PreconditionError("map-domain", "map undefined on symbol: " + a);
    }
    if (!target.has_symbol(it->second)) {
      throw PreconditionError("map-domain",
                              "map image not in target alphabet: " + it->second);
    }
  }
  for (const auto& a : source.symbols()) {
    for (const auto& b : source.symbols()) {
      if (source.lookup(a, b) != target.lookup(h.at(a), h.at(b))) return false;
    }
  }
  return true;
}

OpAlphabet pullback_opm(const SymbolMap& h, const OpAlphabet& target,
                        const std::vector<std::string>& source_symbols) {
  for (const auto& a : source_symbols) {
    auto it = h.find(a);
    if (it == h.end()) {
      throw PreconditionError("map-domain", "map undefined on symbol: " + a);
    }
    if (!target.has_symbol(it->second)) {
      throw PreconditionError("map-domain",
                              "map image not in target alphabet: " + it->second);
    }
  }
  OpAlphabet out(source_symbols);
  for (const auto& a : source_symbols) {
    for (const auto& b : source_symbols) {
      if (auto r = target.lookup(h.at(a), h.at(b))) out.set(a, b, *r);
    }
  }
  return out;
}

std::vector<Word> compatible_words(const OpAlphabet& alpha, int max_len) {
  std::vector<std::string> syms = alpha.symbols();
  std::sort(syms.begin(), syms.end());
  std::vector<Word> out;
  std::vector<std::string> prefix;

  auto extendable = [&](const std::string& next) {
    return prefix.empty() ||
           alpha.lookup(prefix.back(), next).has_value();
  };

  std::function<void(int)> go = [&](int remaining) {
    if (!prefix.empty()) {
      Word w{prefix};
      if (is_compatible(alpha, w)) out.push_back(std::move(w));
    }
    if (remaining == 0) return;
    for (const auto& s : syms) {
      if (!extendable(s)) continue;
      prefix.push_back(s);
      go(remaining - 1);
      prefix.pop_back();
    }
  };
  go(max_len);
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.tokens < b.tokens;
  });
  return out;
}

}  // namespace wop
