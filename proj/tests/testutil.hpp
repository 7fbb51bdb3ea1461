#pragma once

// Shared test helpers: deterministic random generators for rationals,
// polynomials and matrices, plus a small independent Gauss elimination used
// by the brute-force oracles (kept separate from the library's solvers on
// purpose).

#include <random>
#include <vector>

#include "confalg/hlinalg.hpp"
#include "confalg/multipoly.hpp"

namespace testutil {

using confalg::ExpVec;
using confalg::MultiPoly;
using confalg::PolyMatrix;
using confalg::Rational;
using confalg::Var;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed5u);
  return gen;
}

inline Rational random_rational(int lo = -4, int hi = 4, int max_den = 3) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng()), den(rng()));
}

inline MultiPoly random_univariate(Var v, int max_deg, bool allow_zero = true) {
  MultiPoly p;
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng());
  for (int k = 0; k <= d; ++k) {
    ExpVec e{};
    e[static_cast<int>(v)] = k;
    p += MultiPoly::monomial(e, random_rational());
  }
  if (!allow_zero && p.is_zero()) p = MultiPoly::variable(v);
  return p;
}

inline MultiPoly random_poly(std::vector<Var> vars, int max_deg_each) {
  MultiPoly p;
  std::uniform_int_distribution<int> deg(0, max_deg_each);
  std::uniform_int_distribution<int> terms(1, 4);
  int t = terms(rng());
  for (int i = 0; i < t; ++i) {
    ExpVec e{};
    for (Var v : vars) e[static_cast<int>(v)] = deg(rng());
    p += MultiPoly::monomial(e, random_rational());
  }
  return p;
}

inline PolyMatrix random_matrix(int rows, int cols, Var v, int max_deg) {
  PolyMatrix M(rows, cols, v);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M.at(i, j) = random_univariate(v, max_deg);
  return M;
}

// Independent dense elimination over Q (row echelon, in place); returns the
// rank. Used by brute-force oracles only.
inline int gauss_rank(std::vector<std::vector<Rational>>& A) {
  int rows = static_cast<int>(A.size());
  int cols = rows ? static_cast<int>(A[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!A[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(A[p], A[r]);
    Rational inv = A[r][c].inverse();
    for (auto& x : A[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Rational f = A[i][c];
      for (int j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    ++r;
  }
  return r;
}

// Nullspace basis of A x = 0 over Q, independent of the library solver.
inline std::vector<std::vector<Rational>> gauss_nullspace(std::vector<std::vector<Rational>> A,
                                                          int unknowns) {
  int rows = static_cast<int>(A.size());
  std::vector<int> pivot_of_col(unknowns, -1);
  int r = 0;
  for (int c = 0; c < unknowns && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!A[i][c].is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(A[p], A[r]);
    Rational inv = A[r][c].inverse();
    for (auto& x : A[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Rational f = A[i][c];
      for (int j = 0; j < unknowns; ++j) A[i][j] -= f * A[r][j];
    }
    pivot_of_col[c] = r;
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < unknowns; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Rational> v(unknowns, Rational(0));
    v[c] = Rational(1);
    for (int c2 = 0; c2 < unknowns; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = -A[pivot_of_col[c2]][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace testutil
