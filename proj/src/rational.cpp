#include "wop/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "wop/error.hpp"

namespace wop {

namespace {

std::int64_t checked(__int128 v, const char* op) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string("rational overflow in ") + op);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = checked(-static_cast<__int128>(n), "negate");
    d = checked(-static_cast<__int128>(d), "negate");
  }
  std::int64_t g = std::gcd(n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    std::int64_t n = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) {
      throw ParseError("bad-weight", "trailing characters in rational: " + text);
    }
    if (slash == std::string::npos) return Rational(n);
    std::string den_part = text.substr(slash + 1);
    std::int64_t d = std::stoll(den_part, &used);
    if (used != den_part.size()) {
      throw ParseError("bad-weight", "trailing characters in rational: " + text);
    }
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad-weight", "not a rational literal: " + text);
  } catch (const std::out_of_range&) {
    throw ParseError("bad-weight", "rational literal out of range: " + text);
  } catch (const std::domain_error& e) {
    throw ParseError("bad-weight", e.what());
  }
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  __int128 n = static_cast<__int128>(a.num_) * b.den_ +
               static_cast<__int128>(b.num_) * a.den_;
  __int128 d = static_cast<__int128>(a.den_) * b.den_;
  // Reduce in 128 bits before the range check so sums that cancel never
  // overflow spuriously.
  auto i128_gcd = [](__int128 x, __int128 y) {
    if (x < 0) x = -x;
    while (y != 0) {
      __int128 t = x % y;
      x = y;
      y = t;
    }
    return x == 0 ? static_cast<__int128>(1) : x;
  };
  __int128 g = i128_gcd(n, d);
  return Rational(checked(n / g, "add"), checked(d / g, "add"));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep intermediates small.
  std::int64_t g1 = std::gcd(a.num_, b.den_);
  std::int64_t g2 = std::gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
  __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
  return Rational(checked(n, "mul"), checked(d, "mul"));
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked(-static_cast<__int128>(num_), "negate");
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace wop
