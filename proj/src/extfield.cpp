#include "confalg/extfield.hpp"

#include <algorithm>
#include <sstream>

namespace confalg {

namespace {

// Dense univariate helpers on ascending coefficient vectors.

void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

std::vector<Rational> sub(std::vector<Rational> a, const std::vector<Rational>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q*b + r with deg r < deg b; b nonzero.
void divmod(std::vector<Rational> a, const std::vector<Rational>& b, std::vector<Rational>& q,
            std::vector<Rational>& r) {
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] += f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  trim(q);
  r = a;
}

}  // namespace

ExtField::ExtField(std::vector<Rational> minimal_poly) : min_poly_(std::move(minimal_poly)) {
  trim(min_poly_);
  if (min_poly_.size() < 2) throw ContextError("minimal polynomial must have degree >= 1");
  if (!min_poly_.back().is_one()) throw ContextError("minimal polynomial must be monic");
}

ExtFieldElem::ExtFieldElem(ExtFieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw ContextError("null extension-field context");
  if (static_cast<int>(coords_.size()) != field_->degree())
    throw ContextError("coordinate vector length does not match field degree");
}

ExtFieldElem ExtFieldElem::zero(ExtFieldPtr field) {
  int n = field->degree();
  return ExtFieldElem(std::move(field), std::vector<Rational>(n, Rational(0)));
}

ExtFieldElem ExtFieldElem::one(ExtFieldPtr field) { return from_rational(std::move(field), Rational(1)); }

ExtFieldElem ExtFieldElem::from_rational(ExtFieldPtr field, Rational c) {
  int n = field->degree();
  std::vector<Rational> v(n, Rational(0));
  v[0] = std::move(c);
  return ExtFieldElem(std::move(field), std::move(v));
}

ExtFieldElem ExtFieldElem::generator(ExtFieldPtr field) {
  int n = field->degree();
  std::vector<Rational> v(n, Rational(0));
  if (n == 1) {
    // alpha is rational: the root of the degree-1 minimal polynomial.
    v[0] = -field->minimal_poly()[0];
  } else {
    v[1] = Rational(1);
  }
  return ExtFieldElem(std::move(field), std::move(v));
}

bool ExtFieldElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c.is_zero(); });
}

void ExtFieldElem::check_same_context(const ExtFieldElem& a, const ExtFieldElem& b) {
  if (a.field_ != b.field_ && !(*a.field_ == *b.field_))
    throw ContextError("extension-field contexts do not match");
}

ExtFieldElem ExtFieldElem::operator-() const {
  std::vector<Rational> v(coords_);
  for (auto& c : v) c = -c;
  return ExtFieldElem(field_, std::move(v));
}

ExtFieldElem operator+(const ExtFieldElem& a, const ExtFieldElem& b) {
  ExtFieldElem::check_same_context(a, b);
  std::vector<Rational> v(a.coords_);
  for (size_t i = 0; i < v.size(); ++i) v[i] += b.coords_[i];
  return ExtFieldElem(a.field_, std::move(v));
}

ExtFieldElem operator-(const ExtFieldElem& a, const ExtFieldElem& b) {
  ExtFieldElem::check_same_context(a, b);
  std::vector<Rational> v(a.coords_);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= b.coords_[i];
  return ExtFieldElem(a.field_, std::move(v));
}

ExtFieldElem operator*(const ExtFieldElem& a, const ExtFieldElem& b) {
  ExtFieldElem::check_same_context(a, b);
  std::vector<Rational> prod = mul(a.coords_, b.coords_);
  std::vector<Rational> q, r;
  if (!prod.empty()) {
    divmod(prod, a.field_->minimal_poly(), q, r);
  }
  r.resize(a.field_->degree(), Rational(0));
  return ExtFieldElem(a.field_, std::move(r));
}

ExtFieldElem ExtFieldElem::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero extension-field element");
  // Extended Euclid on (a, p): find u with u*a = gcd = const (p irreducible is
  // the caller's contract; a unit gcd is all we need).
  std::vector<Rational> r0 = field_->minimal_poly();
  std::vector<Rational> r1 = coords_;
  trim(r1);
  std::vector<Rational> s0 = {}, s1 = {Rational(1)};  // s tracks the a-cofactor
  while (!r1.empty()) {
    std::vector<Rational> q, rem;
    divmod(r0, r1, q, rem);
    std::vector<Rational> s2 = sub(s0, mul(q, s1));
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
  }
  if (r0.size() != 1)
    throw ArithmeticError("element is a zero divisor (minimal polynomial not irreducible?)");
  Rational scale = r0[0].inverse();
  std::vector<Rational> u(field_->degree(), Rational(0));
  for (size_t i = 0; i < s0.size(); ++i) u[i] = s0[i] * scale;
  return ExtFieldElem(field_, std::move(u));
}

ExtFieldElem ExtFieldElem::pow(unsigned e) const {
  ExtFieldElem r = one(field_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const ExtFieldElem& a, const ExtFieldElem& b) {
  ExtFieldElem::check_same_context(a, b);
  return a.coords_ == b.coords_;
}

std::string ExtFieldElem::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    if (any) os << " + ";
    os << coords_[i].to_string();
    if (i >= 1) os << "*a" << (i > 1 ? "^" + std::to_string(i) : "");
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

}  // namespace confalg
