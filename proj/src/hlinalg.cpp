#include "confalg/hlinalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace confalg {

namespace {

// Pivot preference: least degree, then canonical term order, then position.
bool better_pivot(const MultiPoly& a, const MultiPoly& b, Var v) {
  int da = a.degree_in(v), db = b.degree_in(v);
  if (da != db) return da < db;
  return a.compare(b) < 0;
}

struct RowOps {
  PolyMatrix* A;
  PolyMatrix* U;  // mirrored transform, may be null
  Var v;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A->cols(); ++c) std::swap(A->at(i, c), A->at(j, c));
    if (U)
      for (int c = 0; c < U->cols(); ++c) std::swap(U->at(i, c), U->at(j, c));
  }

  // row_i -= q * row_j
  void submul(int i, const MultiPoly& q, int j) {
    if (q.is_zero()) return;
    for (int c = 0; c < A->cols(); ++c) A->at(i, c) -= q * A->at(j, c);
    if (U)
      for (int c = 0; c < U->cols(); ++c) U->at(i, c) -= q * U->at(j, c);
  }

  void add_row(int i, int j) {
    for (int c = 0; c < A->cols(); ++c) A->at(i, c) += A->at(j, c);
    if (U)
      for (int c = 0; c < U->cols(); ++c) U->at(i, c) += U->at(j, c);
  }

  void scale_row(int i, const Rational& f) {
    for (int c = 0; c < A->cols(); ++c) A->at(i, c) = A->at(i, c) * f;
    if (U)
      for (int c = 0; c < U->cols(); ++c) U->at(i, c) = U->at(i, c) * f;
  }

  // Content removal: divide the row by the rational content of its entries.
  void strip_row(int i) {
    mpz_class num(0), den(1);
    for (int c = 0; c < A->cols(); ++c) {
      Rational ct = A->at(i, c).content();
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), ct.numerator().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), ct.denominator().get_mpz_t());
      num = g;
      den = l;
    }
    if (num == 0) return;
    Rational content{mpq_class(num, den)};
    scale_row(i, content.inverse());
  }
};

struct ColOps {
  PolyMatrix* A;
  PolyMatrix* V;  // mirrored on the right

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A->rows(); ++r) std::swap(A->at(r, i), A->at(r, j));
    if (V)
      for (int r = 0; r < V->rows(); ++r) std::swap(V->at(r, i), V->at(r, j));
  }

  // col_i -= q * col_j
  void submul(int i, const MultiPoly& q, int j) {
    if (q.is_zero()) return;
    for (int r = 0; r < A->rows(); ++r) A->at(r, i) -= q * A->at(r, j);
    if (V)
      for (int r = 0; r < V->rows(); ++r) V->at(r, i) -= q * V->at(r, j);
  }

  void scale_col(int i, const Rational& f) {
    for (int r = 0; r < A->rows(); ++r) A->at(r, i) = A->at(r, i) * f;
    if (V)
      for (int r = 0; r < V->rows(); ++r) V->at(r, i) = V->at(r, i) * f;
  }

  void strip_col(int i) {
    mpz_class num(0), den(1);
    for (int r = 0; r < A->rows(); ++r) {
      Rational ct = A->at(r, i).content();
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), ct.numerator().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), ct.denominator().get_mpz_t());
      num = g;
      den = l;
    }
    if (num == 0) return;
    Rational content{mpq_class(num, den)};
    scale_col(i, content.inverse());
  }
};

}  // namespace

PolyMatrix::PolyMatrix(int rows, int cols, Var v)
    : rows_(rows), cols_(cols), var_(v), e_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

PolyMatrix::PolyMatrix(int rows, int cols, Var v, std::vector<MultiPoly> entries)
    : rows_(rows), cols_(cols), var_(v), e_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  if (e_.size() != static_cast<size_t>(rows) * cols)
    throw DimensionError("entry count does not match matrix dimensions");
  validate();
}

void PolyMatrix::validate() const {
  for (const auto& p : e_)
    if (!p.is_univariate_in(var_))
      throw DimensionError(std::string("matrix entry not univariate in ") + var_name(var_) + ": " +
                           p.to_string());
}

PolyMatrix PolyMatrix::identity(int n, Var v) {
  PolyMatrix I(n, n, v);
  for (int i = 0; i < n; ++i) I.at(i, i) = MultiPoly::constant(Rational(1));
  return I;
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix T(cols_, rows_, var_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
  return T;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
  PolyMatrix r(a.rows(), b.cols(), a.var());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ", ";
      os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

HermiteResult hermite_normal_form(const PolyMatrix& M) {
  PolyMatrix H = M;
  PolyMatrix U = PolyMatrix::identity(M.rows(), M.var());
  RowOps ops{&H, &U, M.var()};
  const Var v = M.var();

  int r = 0;
  std::vector<int> pivot_cols;
  for (int col = 0; col < H.cols() && r < H.rows(); ++col) {
    for (;;) {
      int best = -1;
      for (int i = r; i < H.rows(); ++i) {
        if (H.at(i, col).is_zero()) continue;
        if (best < 0 || better_pivot(H.at(i, col), H.at(best, col), v)) best = i;
      }
      if (best < 0) break;
      ops.swap_rows(r, best);
      bool clean = true;
      for (int i = r + 1; i < H.rows(); ++i) {
        if (H.at(i, col).is_zero()) continue;
        MultiPoly q = H.at(i, col).divmod_in(v, H.at(r, col)).quotient;
        ops.submul(i, q, r);
        ops.strip_row(i);
        if (!H.at(i, col).is_zero()) clean = false;  // Euclid continues next round
      }
      if (clean) {
        pivot_cols.push_back(col);
        ++r;
        break;
      }
    }
  }

  // Monic pivots, then reduce the entries above each pivot.
  for (size_t k = 0; k < pivot_cols.size(); ++k) {
    int row = static_cast<int>(k), col = pivot_cols[k];
    Rational lc = H.at(row, col).coefficient_of(v, H.at(row, col).degree_in(v)).constant_term();
    ops.scale_row(row, lc.inverse());
  }
  for (size_t k = 0; k < pivot_cols.size(); ++k) {
    int row = static_cast<int>(k), col = pivot_cols[k];
    for (int i = 0; i < row; ++i) {
      if (H.at(i, col).is_zero()) continue;
      MultiPoly q = H.at(i, col).divmod_in(v, H.at(row, col)).quotient;
      ops.submul(i, q, row);
    }
  }
  return {H, U};
}

SmithResult smith_normal_form(const PolyMatrix& M) {
  PolyMatrix S = M;
  PolyMatrix U = PolyMatrix::identity(M.rows(), M.var());
  PolyMatrix V = PolyMatrix::identity(M.cols(), M.var());
  RowOps rops{&S, &U, M.var()};
  ColOps cops{&S, &V};
  const Var v = M.var();
  const int n = std::min(M.rows(), M.cols());

  for (int k = 0; k < n; ++k) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = k; i < S.rows(); ++i)
        for (int j = k; j < S.cols(); ++j) {
          if (S.at(i, j).is_zero()) continue;
          if (bi < 0 || better_pivot(S.at(i, j), S.at(bi, bj), v)) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) break;  // submatrix is zero
      rops.swap_rows(k, bi);
      cops.swap_cols(k, bj);

      bool clean = true;
      for (int i = k + 1; i < S.rows(); ++i) {
        if (S.at(i, k).is_zero()) continue;
        MultiPoly q = S.at(i, k).divmod_in(v, S.at(k, k)).quotient;
        rops.submul(i, q, k);
        rops.strip_row(i);
        if (!S.at(i, k).is_zero()) clean = false;
      }
      if (!clean) continue;
      for (int j = k + 1; j < S.cols(); ++j) {
        if (S.at(k, j).is_zero()) continue;
        MultiPoly q = S.at(k, j).divmod_in(v, S.at(k, k)).quotient;
        cops.submul(j, q, k);
        cops.strip_col(j);
        if (!S.at(k, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // Divisibility: d_k must divide every remaining entry.
      bool fixed = false;
      for (int i = k + 1; i < S.rows() && !fixed; ++i)
        for (int j = k + 1; j < S.cols() && !fixed; ++j) {
          if (S.at(i, j).is_zero()) continue;
          if (!S.at(i, j).divmod_in(v, S.at(k, k)).remainder.is_zero()) {
            rops.add_row(k, i);
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    if (S.at(k, k).is_zero()) break;
    Rational lc = S.at(k, k).coefficient_of(v, S.at(k, k).degree_in(v)).constant_term();
    rops.scale_row(k, lc.inverse());
  }
  return {S, U, V};
}

SubmoduleBasis::SubmoduleBasis(int ambient_rank, Var v,
                               const std::vector<std::vector<MultiPoly>>& generators)
    : ambient_(ambient_rank), var_(v) {
  if (ambient_rank < 0) throw DimensionError("negative ambient rank");
  std::vector<MultiPoly> flat;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != ambient_rank)
      throw DimensionError("generator length does not match ambient rank");
    flat.insert(flat.end(), g.begin(), g.end());
  }
  PolyMatrix M(static_cast<int>(generators.size()), ambient_rank, v, std::move(flat));
  PolyMatrix H = hermite_normal_form(M).H;
  for (int i = 0; i < H.rows(); ++i) {
    std::vector<MultiPoly> row;
    bool nonzero = false;
    for (int j = 0; j < H.cols(); ++j) {
      row.push_back(H.at(i, j));
      nonzero = nonzero || !H.at(i, j).is_zero();
    }
    if (nonzero) gens_.push_back(std::move(row));
  }
}

SubmoduleBasis SubmoduleBasis::zero(int ambient_rank, Var v) {
  return SubmoduleBasis(ambient_rank, v, {});
}

SubmoduleBasis SubmoduleBasis::full(int ambient_rank, Var v) {
  std::vector<std::vector<MultiPoly>> gens;
  for (int i = 0; i < ambient_rank; ++i) {
    std::vector<MultiPoly> row(ambient_rank);
    row[i] = MultiPoly::constant(Rational(1));
    gens.push_back(std::move(row));
  }
  return SubmoduleBasis(ambient_rank, v, gens);
}

std::vector<MultiPoly> SubmoduleBasis::reduce(std::vector<MultiPoly> w) const {
  if (static_cast<int>(w.size()) != ambient_)
    throw DimensionError("vector length does not match ambient rank");
  for (const auto& g : gens_) {
    int pc = 0;
    while (pc < ambient_ && g[pc].is_zero()) ++pc;
    if (pc == ambient_) continue;
    if (w[pc].is_zero()) continue;
    MultiPoly q = w[pc].divmod_in(var_, g[pc]).quotient;
    if (q.is_zero()) continue;
    for (int j = 0; j < ambient_; ++j) w[j] -= q * g[j];
  }
  return w;
}

bool SubmoduleBasis::contains(const std::vector<MultiPoly>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

bool SubmoduleBasis::contains(const SubmoduleBasis& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("ambient rank mismatch");
  return std::all_of(other.gens_.begin(), other.gens_.end(),
                     [&](const auto& g) { return contains(g); });
}

bool operator==(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  return a.ambient_ == b.ambient_ && a.var_ == b.var_ && a.gens_ == b.gens_;
}

SubmoduleBasis submodule_sum(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  if (a.ambient_ != b.ambient_) throw DimensionError("ambient rank mismatch");
  auto gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return SubmoduleBasis(a.ambient_, a.var_, gens);
}

SubmoduleBasis submodule_intersect(const SubmoduleBasis& a, const SubmoduleBasis& b) {
  if (a.ambient_ != b.ambient_) throw DimensionError("ambient rank mismatch");
  const int ra = a.rank(), rb = b.rank();
  std::vector<MultiPoly> flat;
  for (const auto& g : a.gens_) flat.insert(flat.end(), g.begin(), g.end());
  for (const auto& g : b.gens_) flat.insert(flat.end(), g.begin(), g.end());
  PolyMatrix stacked(ra + rb, a.ambient_, a.var_, std::move(flat));
  SubmoduleBasis ker = syzygy_kernel(stacked);
  // (u | w) ker row gives u*A = -w*B in the intersection.
  std::vector<std::vector<MultiPoly>> gens;
  for (const auto& kv : ker.generators()) {
    std::vector<MultiPoly> x(a.ambient_);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < a.ambient_; ++j) x[j] += kv[i] * a.gens_[i][j];
    gens.push_back(std::move(x));
  }
  return SubmoduleBasis(a.ambient_, a.var_, gens);
}

SubmoduleBasis syzygy_kernel(const PolyMatrix& M) {
  HermiteResult hr = hermite_normal_form(M);
  std::vector<std::vector<MultiPoly>> gens;
  for (int i = 0; i < hr.H.rows(); ++i) {
    bool zero_row = true;
    for (int j = 0; j < hr.H.cols(); ++j)
      if (!hr.H.at(i, j).is_zero()) {
        zero_row = false;
        break;
      }
    if (!zero_row) continue;
    std::vector<MultiPoly> row;
    for (int j = 0; j < hr.U.cols(); ++j) row.push_back(hr.U.at(i, j));
    gens.push_back(std::move(row));
  }
  return SubmoduleBasis(M.rows(), M.var(), gens);
}

bool submodule_contains(const SubmoduleBasis& S, const std::vector<MultiPoly>& v) {
  return S.contains(v);
}

TorsionDecomposition module_decomposition(const PolyMatrix& relations) {
  SmithResult sr = smith_normal_form(relations);
  TorsionDecomposition out;
  int nonzero = 0;
  int n = std::min(relations.rows(), relations.cols());
  for (int k = 0; k < n; ++k) {
    const MultiPoly& d = sr.S.at(k, k);
    if (d.is_zero()) continue;
    ++nonzero;
    if (d.degree_in(relations.var()) > 0) out.invariant_factors.push_back(d);
  }
  out.free_rank = relations.cols() - nonzero;
  return out;
}

MultiPoly determinant(const PolyMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("determinant of non-square matrix");
  int n = M.rows();
  if (n == 0) return MultiPoly::constant(Rational(1));
  if (n == 1) return M.at(0, 0);
  MultiPoly det;
  for (int j = 0; j < n; ++j) {
    if (M.at(0, j).is_zero()) continue;
    PolyMatrix minor(n - 1, n - 1, M.var());
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = M.at(r, c);
      }
    }
    MultiPoly term = M.at(0, j) * determinant(minor);
    if (j % 2)
      det -= term;
    else
      det += term;
  }
  return det;
}

}  // namespace confalg
