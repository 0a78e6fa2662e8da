#include "wop/semiring.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace wop {

namespace {

bool lang_over_alphabet(const LangSet& l, const std::string& alphabet) {
  for (const auto& s : l) {
    for (char c : s) {
      if (alphabet.find(c) == std::string::npos) return false;
    }
  }
  return true;
}

LangSet lang_concat(const LangSet& a, const LangSet& b) {
  LangSet out;
  for (const auto& x : a) {
    for (const auto& y : b) out.insert(x + y);
  }
  return out;
}

}  // namespace

Semiring Semiring::boolean() { return Semiring(Kind::kBoolean, "boolean", ""); }
Semiring Semiring::rational() { return Semiring(Kind::kRational, "rational", ""); }
Semiring Semiring::max_plus() { return Semiring(Kind::kMaxPlus, "max-plus", ""); }
Semiring Semiring::min_plus() { return Semiring(Kind::kMinPlus, "min-plus", ""); }

Semiring Semiring::fin_lang(const std::string& alphabet) {
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParseError("bad-semiring", "fin-lang alphabet has repeated symbols");
  }
  return Semiring(Kind::kFinLang, "fin-lang(" + sorted + ")", sorted);
}

Semiring Semiring::from_id(const std::string& id) {
  if (id == "boolean") return boolean();
  if (id == "rational") return rational();
  if (id == "max-plus") return max_plus();
  if (id == "min-plus") return min_plus();
  if (id.starts_with("fin-lang(") && id.ends_with(")")) {
    return fin_lang(id.substr(9, id.size() - 10));
  }
  throw ParseError("bad-semiring", "unknown semiring id: " + id);
}

bool Semiring::commutative() const { return kind_ != Kind::kFinLang; }

Weight Semiring::zero() const {
  switch (kind_) {
    case Kind::kBoolean: return Weight(id_, false);
    case Kind::kRational: return Weight(id_, Rational(0));
    case Kind::kMaxPlus:
    case Kind::kMinPlus: return Weight(id_, Tropical{true, {}});
    case Kind::kFinLang: return Weight(id_, LangSet{});
  }
  throw std::logic_error("unreachable");
}

Weight Semiring::one() const {
  switch (kind_) {
    case Kind::kBoolean: return Weight(id_, true);
    case Kind::kRational: return Weight(id_, Rational(1));
    case Kind::kMaxPlus:
    case Kind::kMinPlus: return Weight(id_, Tropical{false, Rational(0)});
    case Kind::kFinLang: return Weight(id_, LangSet{""});
  }
  throw std::logic_error("unreachable");
}

bool Semiring::is_zero(const Weight& w) const { return w == zero(); }
bool Semiring::is_one(const Weight& w) const { return w == one(); }

void Semiring::require_member(const Weight& w) const {
  if (w.semiring_id() != id_) {
    throw PreconditionError("semiring-mismatch",
                            "weight of semiring '" + w.semiring_id() +
                                "' used with semiring '" + id_ + "'");
  }
}

Weight Semiring::add(const Weight& a, const Weight& b) const {
  require_member(a);
  require_member(b);
  switch (kind_) {
    case Kind::kBoolean:
      return Weight(id_, a.as_bool() || b.as_bool());
    case Kind::kRational:
      return Weight(id_, a.as_rational() + b.as_rational());
    case Kind::kMaxPlus: {
      const Tropical& x = a.as_tropical();
      const Tropical& y = b.as_tropical();
      if (x.infinite) return b;
      if (y.infinite) return a;
      return Weight(id_, Tropical{false, std::max(x.finite, y.finite)});
    }
    case Kind::kMinPlus: {
      const Tropical& x = a.as_tropical();
      const Tropical& y = b.as_tropical();
      if (x.infinite) return b;
      if (y.infinite) return a;
      return Weight(id_, Tropical{false, std::min(x.finite, y.finite)});
    }
    case Kind::kFinLang: {
      LangSet u = a.as_lang();
      u.insert(b.as_lang().begin(), b.as_lang().end());
      return Weight(id_, std::move(u));
    }
  }
  throw std::logic_error("unreachable");
}

Weight Semiring::mul(const Weight& a, const Weight& b) const {
  require_member(a);
  require_member(b);
  switch (kind_) {
    case Kind::kBoolean:
      return Weight(id_, a.as_bool() && b.as_bool());
    case Kind::kRational:
      return Weight(id_, a.as_rational() * b.as_rational());
    case Kind::kMaxPlus:
    case Kind::kMinPlus: {
      const Tropical& x = a.as_tropical();
      const Tropical& y = b.as_tropical();
      if (x.infinite || y.infinite) return zero();
      return Weight(id_, Tropical{false, x.finite + y.finite});
    }
    case Kind::kFinLang:
      return Weight(id_, lang_concat(a.as_lang(), b.as_lang()));
  }
  throw std::logic_error("unreachable");
}

Weight Semiring::mul_ordered(const std::vector<Weight>& factors) const {
  Weight acc = one();
  for (const Weight& f : factors) acc = mul(acc, f);
  return acc;
}

Weight Semiring::from_rational(const Rational& r) const {
  switch (kind_) {
    case Kind::kRational: return Weight(id_, r);
    case Kind::kMaxPlus:
    case Kind::kMinPlus: return Weight(id_, Tropical{false, r});
    default:
      throw PreconditionError("semiring-mismatch",
                              "rational value in semiring " + id_);
  }
}

Weight Semiring::from_lang(const LangSet& l) const {
  if (kind_ != Kind::kFinLang) {
    throw PreconditionError("semiring-mismatch",
                            "language value in semiring " + id_);
  }
  if (!lang_over_alphabet(l, lang_alphabet_)) {
    throw ParseError("bad-weight", "language uses symbols outside " + id_);
  }
  return Weight(id_, l);
}

Weight Semiring::parse_weight(const std::string& literal) const {
  switch (kind_) {
    case Kind::kBoolean:
      if (literal == "0") return zero();
      if (literal == "1") return one();
      throw ParseError("bad-weight", "boolean weight must be 0 or 1: " + literal);
    case Kind::kRational:
      return Weight(id_, Rational::parse(literal));
    case Kind::kMaxPlus:
      if (literal == "-inf") return zero();
      if (literal == "inf")
        throw ParseError("bad-weight", "inf is not a max-plus element");
      return Weight(id_, Tropical{false, Rational::parse(literal)});
    case Kind::kMinPlus:
      if (literal == "inf") return zero();
      if (literal == "-inf")
        throw ParseError("bad-weight", "-inf is not a min-plus element");
      return Weight(id_, Tropical{false, Rational::parse(literal)});
    case Kind::kFinLang: {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(literal);
      } catch (const nlohmann::json::exception&) {
        throw ParseError("bad-weight", "fin-lang weight must be a JSON string array: " + literal);
      }
      if (!j.is_array()) {
        throw ParseError("bad-weight", "fin-lang weight must be a JSON string array: " + literal);
      }
      LangSet l;
      for (const auto& e : j) {
        if (!e.is_string()) {
          throw ParseError("bad-weight", "fin-lang weight element is not a string");
        }
        l.insert(e.get<std::string>());
      }
      return from_lang(l);
    }
  }
  throw std::logic_error("unreachable");
}

std::string Semiring::format_weight(const Weight& w) const {
  require_member(w);
  switch (kind_) {
    case Kind::kBoolean:
      return w.as_bool() ? "1" : "0";
    case Kind::kRational:
      return w.as_rational().str();
    case Kind::kMaxPlus:
      return w.as_tropical().infinite ? "-inf" : w.as_tropical().finite.str();
    case Kind::kMinPlus:
      return w.as_tropical().infinite ? "inf" : w.as_tropical().finite.str();
    case Kind::kFinLang: {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& s : w.as_lang()) j.push_back(s);
      return j.dump();
    }
  }
  throw std::logic_error("unreachable");
}

LawsReport laws_check(const Semiring& sr, const std::vector<Weight>& samples,
                      bool probe_commutativity) {
  LawsReport report;
  auto note = [&](const std::string& law, const Weight& x, const Weight& y,
                  const Weight& z, bool ternary) {
    std::string msg = law + " violated at (" + sr.format_weight(x) + ", " +
                      sr.format_weight(y);
    if (ternary) msg += ", " + sr.format_weight(z);
    msg += ")";
    report.violations.push_back(msg);
  };

  const Weight zero = sr.zero();
  const Weight one = sr.one();
  for (const Weight& x : samples) {
    if (!(sr.add(zero, x) == x)) note("additive identity", x, zero, zero, false);
    if (!(sr.mul(one, x) == x) || !(sr.mul(x, one) == x)) {
      note("multiplicative identity", x, one, one, false);
    }
    if (!sr.is_zero(sr.mul(zero, x)) || !sr.is_zero(sr.mul(x, zero))) {
      note("annihilation", x, zero, zero, false);
    }
    for (const Weight& y : samples) {
      if (!(sr.add(x, y) == sr.add(y, x))) note("commutativity of +", x, y, y, false);
      if (probe_commutativity && !(sr.mul(x, y) == sr.mul(y, x))) {
        note("commutativity of *", x, y, y, false);
      }
      for (const Weight& z : samples) {
        if (!(sr.add(sr.add(x, y), z) == sr.add(x, sr.add(y, z)))) {
          note("associativity of +", x, y, z, true);
        }
        if (!(sr.mul(sr.mul(x, y), z) == sr.mul(x, sr.mul(y, z)))) {
          note("associativity of *", x, y, z, true);
        }
        if (!(sr.mul(sr.add(x, y), z) == sr.add(sr.mul(x, z), sr.mul(y, z)))) {
          note("right distributivity", x, y, z, true);
        }
        if (!(sr.mul(x, sr.add(y, z)) == sr.add(sr.mul(x, y), sr.mul(x, z)))) {
          note("left distributivity", x, y, z, true);
        }
      }
    }
  }
  if (sr.commutative()) {
    for (const Weight& x : samples) {
      for (const Weight& y : samples) {
        if (!(sr.mul(x, y) == sr.mul(y, x))) {
          note("commutativity of * (declared)", x, y, y, false);
        }
      }
    }
  }
  return report;
}

}  // namespace wop
