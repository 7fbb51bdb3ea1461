#include "confalg/qsolve.hpp"

#include <algorithm>

namespace confalg {

std::optional<QSolveResult> solve_linear(std::vector<std::vector<Rational>> A,
                                         std::vector<Rational> b) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  std::vector<int> pivot_col;
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
    std::swap(b[p], b[r]);
    Rational inv = A[r][c].inverse();
    for (auto& x : A[r]) x *= inv;
    b[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Rational f = A[i][c];
      for (int j = 0; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;

  QSolveResult out;
  out.particular.assign(cols, Rational(0));
  for (int k = 0; k < r; ++k) out.particular[pivot_col[k]] = b[k];

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[c] = Rational(1);
    for (int k = 0; k < r; ++k) v[pivot_col[k]] = -A[k][c];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::vector<Rational> QRowSpace::reduce(std::vector<Rational> v) const {
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rational& c = v[pivots_[k]];
    if (c.is_zero()) continue;
    Rational f = c;
    for (int j = 0; j < cols_; ++j) v[j] -= f * rows_[k][j];
  }
  return v;
}

bool QRowSpace::add(std::vector<Rational> v) {
  v = reduce(std::move(v));
  int p = -1;
  for (int j = 0; j < cols_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Rational inv = v[p].inverse();
  for (auto& x : v) x *= inv;
  for (size_t k = 0; k < rows_.size(); ++k) {
    Rational f = rows_[k][p];
    if (f.is_zero()) continue;
    for (int j = 0; j < cols_; ++j) rows_[k][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  // keep rows ordered by pivot column for deterministic output
  for (size_t k = rows_.size(); k-- > 1;)
    if (pivots_[k] < pivots_[k - 1]) {
      std::swap(pivots_[k], pivots_[k - 1]);
      std::swap(rows_[k], rows_[k - 1]);
    }
  return true;
}

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> A,
                                             int num_unknowns) {
  if (A.empty()) {
    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < num_unknowns; ++c) {
      std::vector<Rational> v(num_unknowns, Rational(0));
      v[c] = Rational(1);
      basis.push_back(std::move(v));
    }
    return basis;
  }
  std::vector<Rational> b(A.size(), Rational(0));
  auto res = solve_linear(std::move(A), std::move(b));
  return res->nullspace;
}

}  // namespace confalg
