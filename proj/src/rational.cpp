#include "confalg/rational.hpp"

#include <ostream>

namespace confalg {

Rational::Rational(long num, long den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Rational Rational::from_string(std::string_view s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::string str(s);
  mpq_class q;
  if (q.set_str(str, 10) != 0) throw ParseError("bad rational literal: " + str);
  if (q.get_den() == 0) throw ArithmeticError("rational with zero denominator: " + str);
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero");
  return Rational(mpq_class(1) / v_);
}

Rational Rational::pow(unsigned e) const {
  mpq_class r(1);
  mpq_class base = v_;
  unsigned k = e;
  while (k > 0) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1u;
  }
  return Rational(r);
}

std::string Rational::to_string() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(mpq_class(f));
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(mpq_class(b));
}

Rational falling_factorial(unsigned n, unsigned r) {
  if (r > n) return Rational(0);
  mpz_class p(1);
  for (unsigned i = 0; i < r; ++i) p *= (n - i);
  return Rational(mpq_class(p));
}

}  // namespace confalg
