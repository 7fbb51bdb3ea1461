#pragma once

// Arithmetic in a simple extension Q(alpha) = Q[a]/(p(a)) with p monic.
// Elements are coordinate vectors in the power basis 1, a, ..., a^{n-1}.

#include <memory>
#include <string>
#include <vector>

#include "confalg/error.hpp"
#include "confalg/rational.hpp"

namespace confalg {

class ExtField {
 public:
  // p = coefficients of the minimal polynomial, ascending, p.back() == 1,
  // degree n >= 1.
  explicit ExtField(std::vector<Rational> minimal_poly);

  int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
  const std::vector<Rational>& minimal_poly() const { return min_poly_; }

  friend bool operator==(const ExtField& a, const ExtField& b) {
    return a.min_poly_ == b.min_poly_;
  }

 private:
  std::vector<Rational> min_poly_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

class ExtFieldElem {
 public:
  ExtFieldElem(ExtFieldPtr field, std::vector<Rational> coords);

  static ExtFieldElem zero(ExtFieldPtr field);
  static ExtFieldElem one(ExtFieldPtr field);
  static ExtFieldElem from_rational(ExtFieldPtr field, Rational c);
  static ExtFieldElem generator(ExtFieldPtr field);  // alpha

  const std::vector<Rational>& coords() const { return coords_; }
  const ExtFieldPtr& field() const { return field_; }
  bool is_zero() const;

  ExtFieldElem operator-() const;
  friend ExtFieldElem operator+(const ExtFieldElem& a, const ExtFieldElem& b);
  friend ExtFieldElem operator-(const ExtFieldElem& a, const ExtFieldElem& b);
  friend ExtFieldElem operator*(const ExtFieldElem& a, const ExtFieldElem& b);
  ExtFieldElem inverse() const;  // extended Euclid; throws ArithmeticError on 0
  ExtFieldElem pow(unsigned e) const;

  friend bool operator==(const ExtFieldElem& a, const ExtFieldElem& b);
  friend bool operator!=(const ExtFieldElem& a, const ExtFieldElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  static void check_same_context(const ExtFieldElem& a, const ExtFieldElem& b);

  ExtFieldPtr field_;
  std::vector<Rational> coords_;  // length = field degree
};

}  // namespace confalg
