#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wop/error.hpp"
#include "wop/rational.hpp"

namespace wop {

// Element of a tropical semiring: either the adjoined infinity (the additive
// identity; -inf for max-plus, +inf for min-plus) or a finite exact rational.
struct Tropical {
  bool infinite = false;
  Rational finite{};

  friend bool operator==(const Tropical& a, const Tropical& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.finite == b.finite;
  }
};

// Finite language: canonically sorted, duplicate-free set of strings.
using LangSet = std::set<std::string>;

// A single semiring element tagged with the id of the semiring it belongs
// to. Mixing weights from different semirings raises semiring-mismatch.
class Weight {
 public:
  using Value = std::variant<bool, Rational, Tropical, LangSet>;

  Weight(std::string semiring_id, Value value)
      : semiring_id_(std::move(semiring_id)), value_(std::move(value)) {}

  const std::string& semiring_id() const { return semiring_id_; }
  const Value& value() const { return value_; }

  bool as_bool() const { return std::get<bool>(value_); }
  const Rational& as_rational() const { return std::get<Rational>(value_); }
  const Tropical& as_tropical() const { return std::get<Tropical>(value_); }
  const LangSet& as_lang() const { return std::get<LangSet>(value_); }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.semiring_id_ == b.semiring_id_ && a.value_ == b.value_;
  }

 private:
  std::string semiring_id_;
  Value value_;
};

// One of the five provided semiring instances. All arithmetic is exact; the
// tropical instances use rationals plus a distinguished infinity instead of
// floating point.
class Semiring {
 public:
  enum class Kind { kBoolean, kRational, kMaxPlus, kMinPlus, kFinLang };

  static Semiring boolean();
  static Semiring rational();
  static Semiring max_plus();
  static Semiring min_plus();
  // `alphabet` is the set of allowed single-character symbols of language
  // elements, given as a string of distinct characters.
  static Semiring fin_lang(const std::string& alphabet);

  // Parses an instance id: "boolean", "rational", "max-plus", "min-plus",
  // or "fin-lang(<chars>)".
  static Semiring from_id(const std::string& id);

  Kind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  // Symbols of language elements; empty for the other instances.
  const std::string& lang_alphabet() const { return lang_alphabet_; }
  bool commutative() const;

  Weight zero() const;
  Weight one() const;
  bool is_zero(const Weight& w) const;
  bool is_one(const Weight& w) const;

  Weight add(const Weight& a, const Weight& b) const;
  Weight mul(const Weight& a, const Weight& b) const;
  // Left-to-right fold of mul starting at one; the order of `factors` is
  // preserved, which matters for non-commutative instances.
  Weight mul_ordered(const std::vector<Weight>& factors) const;

  // Weight literal syntax:
  //   boolean            "0" | "1"
  //   rational           "p" | "p/q"
  //   max-plus           "-inf" | "p" | "p/q"
  //   min-plus           "inf" | "p" | "p/q"
  //   fin-lang           JSON string array, e.g. [] | [""] | ["a","ab"]
  Weight parse_weight(const std::string& literal) const;
  std::string format_weight(const Weight& w) const;

  // Convenience constructors that validate membership.
  Weight from_bool(bool b) const { return b ? one() : zero(); }
  Weight from_rational(const Rational& r) const;
  Weight from_lang(const LangSet& l) const;

  friend bool operator==(const Semiring& a, const Semiring& b) {
    return a.id_ == b.id_;
  }

 private:
  Semiring(Kind kind, std::string id, std::string alphabet)
      : kind_(kind), id_(std::move(id)), lang_alphabet_(std::move(alphabet)) {}

  void require_member(const Weight& w) const;

  Kind kind_;
  std::string id_;
  std::string lang_alphabet_;  // fin-lang only
};

struct LawsReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every semiring axiom instance over all triples drawn from
// `samples`: associativity and commutativity of +, associativity of *,
// two-sided distributivity, annihilation by zero, and the identities.
// When `probe_commutativity` is set, x*y = y*x is probed as well and
// counterexamples are listed (this is informational for instances that do
// not declare commutativity).
LawsReport laws_check(const Semiring& sr, const std::vector<Weight>& samples,
                      bool probe_commutativity = false);

}  // namespace wop
