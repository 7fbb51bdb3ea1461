#pragma once

// Exact multivariate polynomials over Q on the fixed variable alphabet
// (D, x, l, m, t), where l and m stand for the formal parameters lambda and
// mu. Terms are kept in a map under graded lexicographic order with
// D < x < l < m < t; the order is used for canonical printing and
// deterministic iteration only, never for semantics.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "confalg/error.hpp"
#include "confalg/rational.hpp"

namespace confalg {

enum class Var : int { D = 0, X = 1, L = 2, M = 3, T = 4 };

inline constexpr int kVarCount = 5;

const char* var_name(Var v);

// Parses one of "D x l m t"; throws ParseError otherwise.
Var var_from_name(std::string_view name);

using ExpVec = std::array<int, kVarCount>;

struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Rational, GrlexLess>;

  MultiPoly() = default;

  static MultiPoly constant(Rational c);
  static MultiPoly variable(Var v);
  static MultiPoly monomial(const ExpVec& e, Rational c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const TermMap& terms() const { return terms_; }

  int total_degree() const;       // -1 for the zero polynomial
  int degree_in(Var v) const;     // -1 for the zero polynomial
  bool uses(Var v) const { return degree_in(v) > 0; }
  bool uses_only(std::initializer_list<Var> vars) const;
  bool is_univariate_in(Var v) const { return uses_only({v}); }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  friend MultiPoly operator*(const MultiPoly& a, const Rational& c);
  friend MultiPoly operator*(const Rational& c, const MultiPoly& a) { return a * c; }
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Deterministic total order (leading terms first); used for pivot
  // tie-breaking in the normal-form code.
  int compare(const MultiPoly& o) const;

  // Simultaneously replaces each mapped variable by its image. Images must be
  // affine (total degree <= 1); throws PreconditionError otherwise. Variables
  // not mentioned stay fixed.
  MultiPoly substitute(const std::map<Var, MultiPoly>& assignment) const;

  // Coefficients of powers of v, ascending: p = sum_i c_i v^i, c_i free of v.
  // Empty for the zero polynomial.
  std::vector<MultiPoly> coefficients_in(Var v) const;
  // Divided-power form: n-th entry is n! * c_n.
  std::vector<MultiPoly> divided_coefficients_in(Var v) const;
  MultiPoly coefficient_of(Var v, int k) const;

  // Leading rational coefficient under the term order; zero for zero.
  Rational leading_coefficient() const;

  // Long division by a divisor with rational leading coefficient in v; the
  // dividend may involve other variables (they ride along in the
  // coefficients). Requires d to be univariate in v and nonzero.
  struct DivMod;
  DivMod divmod_in(Var v, const MultiPoly& d) const;

  // gcd(numerators)/lcm(denominators) over all coefficients; 0 for zero.
  Rational content() const;

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

  // Grammar: rational literals ("3/2"), variables D x l m t, operators
  // + - * ^, parentheses; whitespace insignificant.
  static MultiPoly parse(std::string_view text);

 private:
  void insert_term(const ExpVec& e, const Rational& c);

  TermMap terms_;  // invariant: no zero coefficients stored
};

struct MultiPoly::DivMod {
  MultiPoly quotient, remainder;
};

inline MultiPoly operator*(const MultiPoly& a, long c) { return a * Rational(c); }
inline MultiPoly operator*(long c, const MultiPoly& a) { return a * Rational(c); }

}  // namespace confalg
