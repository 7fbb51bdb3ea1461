#pragma once

// Finite conformal algebras over H = Q[D], presented by a lambda-product
// table on a free H-basis: the product calculus, axiom checkers, derived
// constructions (opposite and commutator algebras), unit search, derived
// series and growth profiles.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confalg/hlinalg.hpp"
#include "confalg/multipoly.hpp"

namespace confalg {

enum class AlgebraKind { associative, lie };

const char* kind_name(AlgebraKind k);

// H-linear combination of named symbols. Coefficients are polynomials in D
// for plain elements; product values carry l (and, inside the checkers, m) as
// formal parameters in the same coefficient slots.
class ConfElement {
 public:
  ConfElement() = default;

  static ConfElement symbol(const std::string& name);
  static ConfElement term(const std::string& name, MultiPoly coeff);

  bool is_zero() const { return coords_.empty(); }
  const std::map<std::string, MultiPoly>& coords() const { return coords_; }
  MultiPoly coord(const std::string& name) const;
  void add_term(const std::string& name, const MultiPoly& coeff);

  ConfElement operator-() const;
  ConfElement& operator+=(const ConfElement& o);
  ConfElement& operator-=(const ConfElement& o);
  friend ConfElement operator+(ConfElement a, const ConfElement& b) { return a += b; }
  friend ConfElement operator-(ConfElement a, const ConfElement& b) { return a -= b; }
  friend ConfElement operator*(const MultiPoly& c, const ConfElement& e);
  friend ConfElement operator*(const Rational& c, const ConfElement& e);

  friend bool operator==(const ConfElement& a, const ConfElement& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const ConfElement& a, const ConfElement& b) { return !(a == b); }

  // Coefficient-wise affine substitution.
  ConfElement substituted(const std::map<Var, MultiPoly>& assignment) const;
  int degree_in(Var v) const;  // max over coefficients, -1 when zero
  bool uses_only(std::initializer_list<Var> vars) const;

  // Coefficients of v^k, as elements: e = sum_k v^k * piece(k).
  std::vector<ConfElement> coefficients_in(Var v) const;
  std::vector<ConfElement> divided_coefficients_in(Var v) const;

  std::string to_string() const;  // symbols in name order
  std::string to_string(const std::vector<std::string>& symbol_order) const;

 private:
  std::map<std::string, MultiPoly> coords_;  // invariant: no zero coords
};

using LambdaElem = ConfElement;

struct TableEntry {
  std::string a, b;
  LambdaElem value;  // a o_l b, coefficients in D and l
};

class ConfAlgebra {
 public:
  ConfAlgebra(AlgebraKind kind, std::vector<std::string> basis, std::vector<TableEntry> table);

  AlgebraKind kind() const { return kind_; }
  const std::vector<std::string>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }
  bool has_symbol(const std::string& s) const { return index_.count(s) > 0; }
  int index_of(const std::string& s) const;

  const LambdaElem& table(const std::string& a, const std::string& b) const;
  const LambdaElem& table(int i, int j) const { return table_[i][j]; }

  // Max degree of D (or l) over all table polynomials; -1 for empty tables.
  int max_table_degree(Var v) const;

  friend bool operator==(const ConfAlgebra& a, const ConfAlgebra& b);
  friend bool operator!=(const ConfAlgebra& a, const ConfAlgebra& b) { return !(a == b); }

  std::vector<MultiPoly> to_vector(const ConfElement& e) const;
  ConfElement from_vector(const std::vector<MultiPoly>& v) const;

 private:
  AlgebraKind kind_;
  std::vector<std::string> basis_;
  std::map<std::string, int> index_;
  std::vector<std::vector<LambdaElem>> table_;
};

// ---------------------------------------------------------------------------
// Product calculus. product_at is the sesqui-bilinear extension of the table
// evaluated at an affine parameter nu (in D, l, m): coefficients f(D) on the
// left become f(-nu), h(D) on the right become h(D+nu), and the table value
// gets l -> nu. nu may involve D itself (braced products), which in a free
// H-module is plain substitution.

LambdaElem product_at(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                      const MultiPoly& nu);
LambdaElem lambda_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b);
ConfElement n_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                      unsigned n);
LambdaElem braced_lambda_product(const ConfAlgebra& C, const ConfElement& a,
                                 const ConfElement& b);
ConfElement braced_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                           unsigned n);
// N_C(a, b) = 1 + deg_l of the lambda-product (0 for zero product).
int locality(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b);

// ---------------------------------------------------------------------------
// Axiom checkers. Verification on basis tuples suffices: both sides of the
// associativity and Jacobi identities are sesqui-linear extensions in each
// argument, so equality on the basis propagates to the whole algebra.

struct AxiomWitness {
  std::string law;                   // "associativity", "skew-symmetry", "jacobi"
  std::vector<std::string> symbols;  // offending basis tuple
  ConfElement residual;              // lhs - rhs, nonzero
};

struct CheckReport {
  bool passed = true;
  std::vector<AxiomWitness> witnesses;
};

CheckReport check_associativity(const ConfAlgebra& C);
CheckReport check_lie(const ConfAlgebra& C);
CheckReport check_axioms(const ConfAlgebra& C);  // dispatch on kind

ConfAlgebra commutator_algebra(const ConfAlgebra& C);
ConfAlgebra opposite_algebra(const ConfAlgebra& C);

enum class UnitSide { left, right, two_sided };

// Searches e = sum f_b(D) b with deg f_b <= degree_bound solving the unit
// equations, then checks N(e,e) = 1. Sound but incomplete: nullopt means
// "none within bound", never "nonexistent". Default bound: max table
// D-degree + 2.
std::optional<ConfElement> find_unit(const ConfAlgebra& C, UnitSide side, int degree_bound = -1);

struct DerivedSeries {
  std::vector<SubmoduleBasis> terms;  // L = terms[0] > terms[1] > ...
  bool solvable = false;
};

DerivedSeries derived_series(const ConfAlgebra& C);

// rank V(1..n_max) where V(n+1) = V(n) + sum_{i+j=n+1} V(i) o V(j).
std::vector<int> growth_profile(const ConfAlgebra& C, const std::vector<ConfElement>& generators,
                                int n_max);

}  // namespace confalg
