#pragma once

// The constructive results as algorithms: the unit-adjunction module for
// finite associative conformal algebras, the double construction for
// representations, the central action on k[t] (x)_H L with the central-PBW
// invariance checker and builder, and the solvable-algebra pipeline.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confalg/rep.hpp"

namespace confalg {

// Max D-degree over the multiplication table's coefficient polynomials
// (the constant M of the unit-adjunction bound). Associative input only.
int table_degree_bound(const ConfAlgebra& C);

struct AdjoinUnitResult {
  ConfRep rep;
  int table_bound;       // M
  int module_locality;   // M'
  bool guarantee;        // M' > M: faithfulness is certified
  std::string note;      // non-empty when the guarantee is void
};

// Representation on the free module {v} u {(b, n) : b in B, 0 <= n < M'},
// where (b, n) stands for b o_n v; action by the associativity expansion
// c o_k (b o_n v) = sum_s binom(k, s) (c o_{k-s} b) o_{n+s} v with D-powers
// lowered through D a o_m v = -m a o_{m-1} v and indices >= M' dropped.
// Default M' = table_degree_bound + 1.
AdjoinUnitResult adjoin_unit_rep(const ConfAlgebra& C,
                                 std::optional<int> module_locality = std::nullopt);

// ---------------------------------------------------------------------------
// Double construction.

// <. o_l .>: L (x) V -> M[l], stored on (basis symbol, V-generator) and
// extended by sesqui-linearity.
class Pairing {
 public:
  Pairing() = default;

  void set(const std::string& symbol, const std::string& v_generator, ConfElement value);
  const ConfElement& get(const std::string& symbol, const std::string& v_generator) const;
  const std::map<std::pair<std::string, std::string>, ConfElement>& entries() const {
    return entries_;
  }

  // <a o_nu v> for an algebra combination a and a V-element v (unreduced;
  // callers reduce in the target module).
  ConfElement apply(const ConfElement& a, const ConfElement& v, const MultiPoly& nu) const;

 private:
  std::map<std::pair<std::string, std::string>, ConfElement> entries_;
  ConfElement zero_;
};

// Canonical pairing <b o_l u> = b for V of rank one over a finite algebra
// acting on its adjoint module M = L.
Pairing canonical_pairing(const ConfAlgebra& L, const std::string& v_generator);

struct DoubleReport {
  // (D1) holds by construction of the sesqui-linear extension.
  bool d2_passed = true;
  std::vector<AxiomWitness> d2_witnesses;  // law "double-D2", tuple (x, y, v)
  bool d3_passed = true;
  std::vector<ConfElement> d3_witnesses;  // generators of the kernel intersection
  bool passed() const { return d2_passed && d3_passed; }
};

DoubleReport check_double_conditions(const ConfRep& V, const ConfRep& M, const Pairing& P);

// Representation on V (+) M: a o^ v = a o v + l <a o v>, a o^ m = a o m.
// Throws PreconditionError carrying the failed condition.
ConfRep double_rep(const ConfRep& V, const ConfRep& M, const Pairing& P);

// ---------------------------------------------------------------------------
// Central action on cL = k[t] (x)_H L.

// Finite Q-combination of t^m (x)_H b over basis symbols b; the relation
// t^m (x) D b = -m t^{m-1} (x) b is applied eagerly, so no D survives.
class CentralElement {
 public:
  CentralElement() = default;

  static CentralElement basis_term(int m, const std::string& b, Rational c = Rational(1));

  void add(int m, const std::string& b, const Rational& c);
  CentralElement& operator+=(const CentralElement& o);
  friend CentralElement operator+(CentralElement a, const CentralElement& b) { return a += b; }
  CentralElement scaled(const Rational& c) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<int, std::string>, Rational>& terms() const { return terms_; }

  friend bool operator==(const CentralElement& a, const CentralElement& b) {
    return a.terms_ == b.terms_;
  }

  std::string to_string() const;  // e.g. "-3 * t^2 (x)"

 private:
  std::map<std::pair<int, std::string>, Rational> terms_;
};

// t^m (x) h(D) b with the D-reduction applied.
CentralElement central_reduce(int m, const MultiPoly& h, const std::string& b);

// x o_n (t^m (x) a) = sum_s binom(n, s) t^{m+s} (x) [x o_{n-s} a]; D-powers
// on the x side lower through Dx o_n u = -n x o_{n-1} u.
CentralElement central_action(const ConfAlgebra& L, const ConfElement& x, unsigned n,
                              const CentralElement& u);

using LocalityBound = std::map<std::string, int>;

struct PbwWitness {
  std::string a;
  unsigned n = 0;
  int m = 0;
  std::string b;
  CentralElement image;  // leaves I(B, N)
};

struct PbwReport {
  bool passed = true;
  std::optional<PbwWitness> witness;
};

// Invariance of I(B, N) = span{t^m (x) b : m >= N(b)} under the central
// action, scanned over the finite window that suffices (exponent drops are
// bounded by the table's D-degrees).
PbwReport check_central_pbw(const ConfAlgebra& L, const LocalityBound& N);

struct CentralPbwResult {
  ConfRep rep;
  LocalityBound N;
  int rank = 0;  // 1 + sum_b N(b)
};

// V = Hu trivial, M = H (x) (cL / I(B,N)), pairing <x o_n u> = t^n (x) x;
// assembled through the double construction.
CentralPbwResult central_pbw_rep(const ConfAlgebra& L, const LocalityBound& N);

// Locality-bound recursion on a triangular basis b_1..b_n (as ordered):
// N(b_n) = K, N(b_i) = max(K, max_{j>i, a} N(b_j) + deg_D phi_{a,i}^j).
// Triangularity (supports on b_j, j >= i; D-free diagonal weights) is
// checked; violations raise PreconditionError naming the entry.
LocalityBound solvable_bounds(const ConfAlgebra& L, int K);

struct SolvableResult {
  ConfRep rep;
  LocalityBound N;
  DerivedSeries series;
  int rank = 0;
};

// Pipeline: solvability via the derived series, bounds via the recursion,
// invariance check, central-PBW builder.
SolvableResult solvable_faithful_rep(const ConfAlgebra& L, int K = 1);

}  // namespace confalg
