#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace wop {

// Exact rational number over checked 64-bit integers. Always normalized:
// denominator > 0 and gcd(|num|, den) = 1. Arithmetic throws
// std::overflow_error if a result leaves the 64-bit range; weights in this
// toolkit are desk-scale, so hitting the limit indicates a misuse rather
// than a need for bignums.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "p" or "p/q" with optional leading '-'.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace wop
