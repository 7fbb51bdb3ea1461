#pragma once

// Linear algebra over the PIDs Q[D] and Q[l]: Hermite and Smith normal forms,
// left kernels (syzygies), submodule membership and torsion decomposition of
// finitely presented modules. Entries are univariate MultiPolys in one
// designated variable; row operations are elementary (unimodular), with
// rational content stripping to keep coefficients small.

#include <optional>
#include <string>
#include <vector>

#include "confalg/multipoly.hpp"

namespace confalg {

class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, Var v);
  PolyMatrix(int rows, int cols, Var v, std::vector<MultiPoly> entries);

  static PolyMatrix identity(int n, Var v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Var var() const { return var_; }

  const MultiPoly& at(int i, int j) const { return e_[i * cols_ + j]; }
  MultiPoly& at(int i, int j) { return e_[i * cols_ + j]; }

  PolyMatrix transposed() const;
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  std::string to_string() const;

 private:
  void validate() const;

  int rows_, cols_;
  Var var_;
  std::vector<MultiPoly> e_;  // row-major, univariate in var_
};

struct HermiteResult {
  PolyMatrix H;  // row echelon, monic pivots, entries above pivots reduced
  PolyMatrix U;  // unimodular, U*M = H
};

HermiteResult hermite_normal_form(const PolyMatrix& M);

struct SmithResult {
  PolyMatrix S;  // diagonal with d1 | d2 | ..., monic
  PolyMatrix U, V;  // unimodular, U*M*V = S
};

SmithResult smith_normal_form(const PolyMatrix& M);

// Canonical basis of an H-submodule of H^ambient: rows in Hermite normal
// form, so equality of submodules is equality of the stored generators.
class SubmoduleBasis {
 public:
  SubmoduleBasis(int ambient_rank, Var v,
                 const std::vector<std::vector<MultiPoly>>& generators);

  static SubmoduleBasis zero(int ambient_rank, Var v);
  static SubmoduleBasis full(int ambient_rank, Var v);

  int ambient_rank() const { return ambient_; }
  Var var() const { return var_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  bool is_zero() const { return gens_.empty(); }
  const std::vector<std::vector<MultiPoly>>& generators() const { return gens_; }

  // Remainder of v after reduction against the echelon generators.
  std::vector<MultiPoly> reduce(std::vector<MultiPoly> v) const;
  bool contains(const std::vector<MultiPoly>& v) const;
  bool contains(const SubmoduleBasis& other) const;

  friend bool operator==(const SubmoduleBasis& a, const SubmoduleBasis& b);
  friend bool operator!=(const SubmoduleBasis& a, const SubmoduleBasis& b) { return !(a == b); }

  friend SubmoduleBasis submodule_sum(const SubmoduleBasis& a, const SubmoduleBasis& b);
  friend SubmoduleBasis submodule_intersect(const SubmoduleBasis& a, const SubmoduleBasis& b);

 private:
  int ambient_;
  Var var_;
  std::vector<std::vector<MultiPoly>> gens_;
};

// Generators of the left kernel {v : v M = 0} over the coefficient PID.
SubmoduleBasis syzygy_kernel(const PolyMatrix& M);

bool submodule_contains(const SubmoduleBasis& S, const std::vector<MultiPoly>& v);

struct TorsionDecomposition {
  int free_rank = 0;
  std::vector<MultiPoly> invariant_factors;  // monic, nonconstant, d1 | d2 | ...
};

// Structure of H^generators / row span of relations.
TorsionDecomposition module_decomposition(const PolyMatrix& relations);

// Determinant by Laplace expansion; fine for the small matrices used in
// unimodularity checks.
MultiPoly determinant(const PolyMatrix& M);

}  // namespace confalg
