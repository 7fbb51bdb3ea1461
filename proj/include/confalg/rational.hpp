#pragma once

// Arbitrary-precision rational numbers, the coefficient field for everything
// in this library. Values are always canonical: lowest terms, positive
// denominator, zero stored as 0/1.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "confalg/error.hpp"

namespace confalg {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long num, long den);
  explicit Rational(const mpq_class& q);

  // Accepts "p", "-p", "p/q" with optional sign on p; q > 0.
  static Rational from_string(std::string_view s);

  const mpz_class& numerator() const { return v_.get_num(); }
  const mpz_class& denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws ArithmeticError on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  Rational inverse() const;  // throws ArithmeticError on zero
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational pow(unsigned e) const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  int compare(const Rational& o) const { return cmp(v_, o.v_); }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;  // invariant: canonicalized
};

// n! as an exact rational (n small, used for divided powers).
Rational factorial(unsigned n);

// binomial(n, k), zero for k > n.
Rational binomial(unsigned n, unsigned k);

// Falling factorial n(n-1)...(n-r+1); zero when r > n.
Rational falling_factorial(unsigned n, unsigned r);

}  // namespace confalg
