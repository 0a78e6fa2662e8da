#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wop/error.hpp"

namespace wop {

// The three operator precedence relations.
enum class Prec { kYields, kEqual, kTakes };

std::string prec_str(Prec p);  // "<·", "=·", "·>"
Prec prec_parse(const std::string& s);

inline const std::string kDelim = "#";

// An OP alphabet: the symbols of Sigma plus a partial precedence matrix over
// (Sigma u {#})^2. The delimiter relations # <. a and a .> # are built in;
// user entries for # rows or columns are rejected, and (#, #) is undefined.
class OpAlphabet {
 public:
  explicit OpAlphabet(std::vector<std::string> symbols);

  void set(const std::string& a, const std::string& b, Prec rel);

  // The stored relation between a and b, each of which may be "#".
  std::optional<Prec> lookup(const std::string& a, const std::string& b) const;

  bool has_symbol(const std::string& s) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  // User-defined entries only (no delimiter rows/columns), in sorted order.
  const std::map<std::pair<std::string, std::string>, Prec>& entries() const {
    return matrix_;
  }

 private:
  void require_symbol_or_delim(const std::string& s) const;

  std::vector<std::string> symbols_;
  std::set<std::string> symbol_set_;
  std::map<std::pair<std::string, std::string>, Prec> matrix_;
};

// A nonempty word over Sigma. Positions are 1-based; the virtual positions
// 0 and n+1 carry the delimiter #.
struct Word {
  std::vector<std::string> tokens;

  int size() const { return static_cast<int>(tokens.size()); }
  // Symbol at position i for 0 <= i <= n+1.
  const std::string& at(int i) const;

  friend auto operator<=>(const Word&, const Word&) = default;
};

// Splits a whitespace-separated token string; rejects empty words.
Word parse_word(const std::string& text);
std::string word_str(const Word& w);

// All chain-relation pairs (i, j) with 0 <= i < j <= n+1 of #w#, computed by
// memoized recursion over spans straight from the inductive definition.
// Defined for every word over the alphabet, compatible or not.
std::set<std::pair<int, int>> chains(const OpAlphabet& alpha, const Word& w);

// w is compatible iff 0 ~> n+1.
bool is_compatible(const OpAlphabet& alpha, const Word& w);

using SymbolMap = std::map<std::string, std::string>;

// True iff h preserves and reflects every precedence relation, including
// absence: a o b iff h(a) o h(b) for all a, b in the source alphabet.
// Throws map-domain if h is not total on the source symbols.
bool is_opm_preserving(const SymbolMap& h, const OpAlphabet& source,
                       const OpAlphabet& target);

// The pulled-back alphabet on `source_symbols` with relation(a', b') =
// relation(h(a'), h(b')). The returned alphabet makes h OPM-preserving by
// construction.
OpAlphabet pullback_opm(const SymbolMap& h, const OpAlphabet& target,
                        const std::vector<std::string>& source_symbols);

// All compatible words with 1 <= length <= max_len, ordered by length then
// lexicographically by token sequence. Prefixes whose adjacent pair has no
// relation are pruned early; compatibility forces adjacent relations.
std::vector<Word> compatible_words(const OpAlphabet& alpha, int max_len);

}  // namespace wop
