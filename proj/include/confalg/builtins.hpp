#pragma once

// Constructors for the concrete algebras: current algebras over ordinary
// (associative or Lie) algebras, Virasoro, differential conformal algebras,
// the matrix model of Cend_n with its product/action/ideals, the tau
// transpose to the right-endomorphism presentation, and split null
// extensions.

#include <optional>
#include <string>
#include <vector>

#include "confalg/conformal.hpp"

namespace confalg {

// Ordinary finite-dimensional algebra by structure constants:
// a_i a_j = sum_k c[i][j][k] a_k, with an optional derivation matrix
// (column j = coordinates of der(a_j)).
class OrdinaryAlgebra {
 public:
  OrdinaryAlgebra(AlgebraKind kind, std::vector<std::string> names);

  AlgebraKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  const Rational& c(int i, int j, int k) const { return c_[(i * dim() + j) * dim() + k]; }
  void set_product(int i, int j, int k, Rational v) { c_[(i * dim() + j) * dim() + k] = v; }

  bool has_derivation() const { return derivation_.has_value(); }
  const std::vector<Rational>& derivation() const;  // dim x dim, row-major
  void set_derivation(std::vector<Rational> der);

  // Associativity (resp. antisymmetry + Jacobi) on basis tuples.
  bool identity_holds() const;
  // Leibniz rule of the derivation on basis pairs.
  bool derivation_is_leibniz() const;

 private:
  AlgebraKind kind_;
  std::vector<std::string> names_;
  std::vector<Rational> c_;
  std::optional<std::vector<Rational>> derivation_;
};

OrdinaryAlgebra ordinary_field();                        // Q, basis {e}
OrdinaryAlgebra ordinary_dual_numbers();                 // Q[eps]/(eps^2), basis {e, eps}
OrdinaryAlgebra ordinary_matrix_algebra(int n);          // M_n(Q)
OrdinaryAlgebra ordinary_sl2();
OrdinaryAlgebra ordinary_solvable2();                    // [a, b] = b
OrdinaryAlgebra ordinary_abelian(int n);
OrdinaryAlgebra ordinary_commutator(const OrdinaryAlgebra& A);  // A^(-)
// Q[x]/(x^k), basis p0..p_{k-1} (p_i = x^i), with the nilpotent derivation
// x^{k-1} d/dx. The raw d/dx matrix (ddx_matrix below) is not a derivation of
// the truncation: Leibniz on x * x^{k-1} fails.
OrdinaryAlgebra ordinary_truncated_poly(int k);
std::vector<Rational> ddx_matrix(int k);
// M_n(Q[x]/(x^k)) (n >= 2) with the inner derivation ad(e12 (x) 1).
OrdinaryAlgebra ordinary_matrix_truncated_poly(int n, int k);

// Curr A: table a o_l b = ab (constants). Requires the ordinary identity.
ConfAlgebra current_algebra(const OrdinaryAlgebra& A);

// [x o_l x] = (D + 2l) x.
ConfAlgebra virasoro();

// Differential conformal algebra on H (x) A for locally nilpotent der:
// a o_l b = a e^{l der}(b). Precondition failure reports the offending power.
ConfAlgebra differential_algebra(const OrdinaryAlgebra& A);

// {x, y | [x o_l y] = l y, [y o_l x] = (D + l) y}: the 2-generated solvable
// Lie conformal algebra used by the solvable pipeline tests.
ConfAlgebra solvable_xy();

// Finite truncation of the split null extension Cend_1 (+) M_1: span{e, v}
// with e o e = e, e o v = v, v o * = 0 (the only x-degree truncation closed
// under the product). Carries a left unit and no right unit.
ConfAlgebra split_null_trunc();

// ---------------------------------------------------------------------------
// Cend_n as n x n matrices over Q[D, x]; products of such matrices are
// lambda-parameterized (entries in D, x, l).

class MatrixConfElem {
 public:
  explicit MatrixConfElem(int n);
  MatrixConfElem(int n, std::vector<MultiPoly> entries);  // row-major

  static MatrixConfElem identity(int n);
  static MatrixConfElem unit(int n, int i, int j, MultiPoly p);  // p * e_ij

  int n() const { return n_; }
  const MultiPoly& at(int i, int j) const { return e_[i * n_ + j]; }
  MultiPoly& at(int i, int j) { return e_[i * n_ + j]; }

  bool is_zero() const;
  bool is_plain() const;  // entries in D, x only
  int degree_in(Var v) const;

  MatrixConfElem operator-() const;
  MatrixConfElem& operator+=(const MatrixConfElem& o);
  MatrixConfElem& operator-=(const MatrixConfElem& o);
  friend MatrixConfElem operator+(MatrixConfElem a, const MatrixConfElem& b) { return a += b; }
  friend MatrixConfElem operator-(MatrixConfElem a, const MatrixConfElem& b) { return a -= b; }
  friend MatrixConfElem operator*(const MultiPoly& c, const MatrixConfElem& a);
  MatrixConfElem matmul(const MatrixConfElem& o) const;  // plain entrywise-matrix product

  MatrixConfElem substituted(const std::map<Var, MultiPoly>& assignment) const;
  std::vector<MatrixConfElem> divided_coefficients_in(Var v) const;

  friend bool operator==(const MatrixConfElem& a, const MatrixConfElem& b);
  friend bool operator!=(const MatrixConfElem& a, const MatrixConfElem& b) { return !(a == b); }

  std::string to_string() const;

 private:
  int n_;
  std::vector<MultiPoly> e_;
};

// a o_nu b = a[D -> -nu] * b[D -> D+nu, x -> x+nu].
MatrixConfElem cend_product(const MatrixConfElem& a, const MatrixConfElem& b,
                            const MultiPoly& nu);
MatrixConfElem cend_product(const MatrixConfElem& a, const MatrixConfElem& b);  // nu = l
MatrixConfElem cend_n_product(const MatrixConfElem& a, const MatrixConfElem& b, unsigned n);
// Braced products of left endomorphisms: l -> -D-l on the lambda form.
MatrixConfElem cend_braced_lambda(const MatrixConfElem& a, const MatrixConfElem& b);
MatrixConfElem cend_braced_product(const MatrixConfElem& a, const MatrixConfElem& b, unsigned n);
int cend_locality(const MatrixConfElem& a, const MatrixConfElem& b);

// Action on H (x) Q^n (coords h_i(D)): (a_nu v)_i = sum_j a_ij[D -> -nu, x -> D] v_j[D -> D+nu].
std::vector<MultiPoly> cend_act(const MatrixConfElem& a, const std::vector<MultiPoly>& v,
                                const MultiPoly& nu);
std::vector<MultiPoly> cend_act(const MatrixConfElem& a, const std::vector<MultiPoly>& v);

// Right-endomorphism presentation: matrices acting by
// (g (x) B)_l (h(D)u) = g(D, D+l) h(-l) Bu. Under it tau is the variable swap
// D <-> x, an involution fixing constants.
MatrixConfElem tau_transpose(const MatrixConfElem& a);
// Composition per the right rule (a o_l b)_m = b_{l+m} a_m, on presentations:
MatrixConfElem cend_right_product(const MatrixConfElem& a, const MatrixConfElem& b,
                                  const MultiPoly& nu);
MatrixConfElem cend_right_product(const MatrixConfElem& a, const MatrixConfElem& b);
// Braced right products: the H-action on the right presentation multiplies by
// x, so the lambda form is substituted l -> -x-l.
MatrixConfElem cend_right_braced_product(const MatrixConfElem& a, const MatrixConfElem& b,
                                         unsigned n);

enum class IdealSide { left, right };

// Right ideal element P(x) A, left ideal element A P(x - D); P over Q[x].
MatrixConfElem cend_ideal_element(IdealSide side, const MatrixConfElem& P,
                                  const MatrixConfElem& A);

// ---------------------------------------------------------------------------
// Split null extension Cend_n (+) (H (x) Q^n), product
// (a + u) o_l (b + w) = a o_l b + a_l(w).

enum class SplitNullAmbient {
  full,  // all of Cend_n
  c0     // n = 2 matrices of the shape (f(D), g(D,x); 0, f(D))
};

struct SplitNullElem {
  MatrixConfElem alg;
  std::vector<MultiPoly> mod;  // coords over Q[D]
};

bool c0_contains(const MatrixConfElem& a);

SplitNullElem split_null_product(const SplitNullElem& u, const SplitNullElem& w,
                                 const MultiPoly& nu,
                                 SplitNullAmbient ambient = SplitNullAmbient::full);
SplitNullElem split_null_product(const SplitNullElem& u, const SplitNullElem& w,
                                 SplitNullAmbient ambient = SplitNullAmbient::full);

// ---------------------------------------------------------------------------
// Growth profile in the Cend_n ambient (H-basis x^k e_ij enumerated lazily).
std::vector<int> growth_profile_cend(int n, const std::vector<MatrixConfElem>& generators,
                                     int n_max);

}  // namespace confalg
