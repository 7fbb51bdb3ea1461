#include "confalg/builtins.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace confalg {

// ---------------------------------------------------------------------------
// OrdinaryAlgebra

OrdinaryAlgebra::OrdinaryAlgebra(AlgebraKind kind, std::vector<std::string> names)
    : kind_(kind), names_(std::move(names)) {
  c_.assign(static_cast<size_t>(dim()) * dim() * dim(), Rational(0));
}

const std::vector<Rational>& OrdinaryAlgebra::derivation() const {
  if (!derivation_) throw PreconditionError("ordinary algebra carries no derivation");
  return *derivation_;
}

void OrdinaryAlgebra::set_derivation(std::vector<Rational> der) {
  if (der.size() != static_cast<size_t>(dim()) * dim())
    throw DimensionError("derivation matrix size mismatch");
  derivation_ = std::move(der);
}

bool OrdinaryAlgebra::identity_holds() const {
  const int n = dim();
  if (kind_ == AlgebraKind::associative) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Rational lhs(0), rhs(0);
            for (int m = 0; m < n; ++m) {
              lhs += c(i, j, m) * c(m, k, l);
              rhs += c(j, k, m) * c(i, m, l);
            }
            if (lhs != rhs) return false;
          }
    return true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (c(i, j, k) != -c(j, i, k)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Rational s(0);
          for (int m = 0; m < n; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          if (!s.is_zero()) return false;
        }
  return true;
}

bool OrdinaryAlgebra::derivation_is_leibniz() const {
  if (!derivation_) return true;
  const int n = dim();
  const auto& d = *derivation_;
  auto der = [&](int r, int col) { return d[r * n + col]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Rational lhs(0), rhs(0);
        for (int k = 0; k < n; ++k) {
          lhs += c(i, j, k) * der(l, k);
          rhs += der(k, i) * c(k, j, l) + der(k, j) * c(i, k, l);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

OrdinaryAlgebra ordinary_field() {
  OrdinaryAlgebra A(AlgebraKind::associative, {"e"});
  A.set_product(0, 0, 0, Rational(1));
  return A;
}

OrdinaryAlgebra ordinary_dual_numbers() {
  OrdinaryAlgebra A(AlgebraKind::associative, {"e", "eps"});
  A.set_product(0, 0, 0, Rational(1));
  A.set_product(0, 1, 1, Rational(1));
  A.set_product(1, 0, 1, Rational(1));
  return A;
}

OrdinaryAlgebra ordinary_matrix_algebra(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) names.push_back("e" + std::to_string(i) + std::to_string(j));
  OrdinaryAlgebra A(AlgebraKind::associative, names);
  auto idx = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int d = 1; d <= n; ++d)
        A.set_product(idx(a, b), idx(b, d), idx(a, d), Rational(1));
  return A;
}

OrdinaryAlgebra ordinary_sl2() {
  OrdinaryAlgebra A(AlgebraKind::lie, {"e", "h", "f"});
  auto set_bracket = [&](int i, int j, int k, long v) {
    A.set_product(i, j, k, Rational(v));
    A.set_product(j, i, k, Rational(-v));
  };
  set_bracket(1, 0, 0, 2);   // [h, e] = 2e
  set_bracket(1, 2, 2, -2);  // [h, f] = -2f
  set_bracket(0, 2, 1, 1);   // [e, f] = h
  return A;
}

OrdinaryAlgebra ordinary_solvable2() {
  OrdinaryAlgebra A(AlgebraKind::lie, {"a", "b"});
  A.set_product(0, 1, 1, Rational(1));
  A.set_product(1, 0, 1, Rational(-1));
  return A;
}

OrdinaryAlgebra ordinary_abelian(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
  return OrdinaryAlgebra(AlgebraKind::lie, names);
}

OrdinaryAlgebra ordinary_commutator(const OrdinaryAlgebra& A) {
  if (A.kind() != AlgebraKind::associative)
    throw PreconditionError("ordinary commutator requires an associative algebra");
  OrdinaryAlgebra L(AlgebraKind::lie, A.names());
  const int n = A.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) L.set_product(i, j, k, A.c(i, j, k) - A.c(j, i, k));
  return L;
}

OrdinaryAlgebra ordinary_truncated_poly(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("p" + std::to_string(i));
  OrdinaryAlgebra A(AlgebraKind::associative, names);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j < k) A.set_product(i, j, i + j, Rational(1));
  // x^{k-1} d/dx: the truncation admits no derivation with a unit image of x
  // (Leibniz on x * x^{k-1} would force (k) x^{k-1} = 0), so the raw d/dx
  // matrix is not a derivation here; this multiple is, and is nilpotent for
  // k >= 3.
  std::vector<Rational> der(static_cast<size_t>(k) * k, Rational(0));
  for (int j = 1; j < k; ++j)
    if (j + k - 2 < k) der[(j + k - 2) * k + j] = Rational(j);
  A.set_derivation(std::move(der));
  return A;
}

std::vector<Rational> ddx_matrix(int k) {
  std::vector<Rational> der(static_cast<size_t>(k) * k, Rational(0));
  for (int j = 1; j < k; ++j) der[(j - 1) * k + j] = Rational(j);
  return der;
}

OrdinaryAlgebra ordinary_matrix_truncated_poly(int n, int k) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int s = 0; s < k; ++s)
        names.push_back("e" + std::to_string(i) + std::to_string(j) + "x" + std::to_string(s));
  OrdinaryAlgebra A(AlgebraKind::associative, names);
  auto idx = [&](int i, int j, int s) { return ((i - 1) * n + (j - 1)) * k + s; };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int d = 1; d <= n; ++d)
        for (int s = 0; s < k; ++s)
          for (int t = 0; t < k; ++t)
            if (s + t < k) A.set_product(idx(a, b, s), idx(b, d, t), idx(a, d, s + t), Rational(1));
  // Inner derivation ad(e12 (x) 1), nilpotent since e12 is:
  // e12 e2b = e1b, ea1 e12 = ea2.
  if (n >= 2) {
    const int dim = static_cast<int>(names.size());
    std::vector<Rational> der(static_cast<size_t>(dim) * dim, Rational(0));
    for (int b = 1; b <= n; ++b)
      for (int s = 0; s < k; ++s) der[idx(1, b, s) * dim + idx(2, b, s)] += Rational(1);
    for (int a = 1; a <= n; ++a)
      for (int s = 0; s < k; ++s) der[idx(a, 2, s) * dim + idx(a, 1, s)] -= Rational(1);
    A.set_derivation(std::move(der));
  }
  return A;
}

// ---------------------------------------------------------------------------
// Conformal constructors

ConfAlgebra current_algebra(const OrdinaryAlgebra& A) {
  if (!A.identity_holds())
    throw PreconditionError(std::string("ordinary ") + kind_name(A.kind()) +
                            " identity fails on the structure constants");
  std::vector<TableEntry> entries;
  const int n = A.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LambdaElem v;
      for (int k = 0; k < n; ++k)
        v.add_term(A.names()[k], MultiPoly::constant(A.c(i, j, k)));
      if (!v.is_zero()) entries.push_back({A.names()[i], A.names()[j], v});
    }
  return ConfAlgebra(A.kind(), A.names(), std::move(entries));
}

ConfAlgebra virasoro() {
  MultiPoly v = MultiPoly::variable(Var::D) + 2 * MultiPoly::variable(Var::L);
  return ConfAlgebra(AlgebraKind::lie, {"x"}, {{"x", "x", ConfElement::term("x", v)}});
}

ConfAlgebra differential_algebra(const OrdinaryAlgebra& A) {
  if (A.kind() != AlgebraKind::associative)
    throw PreconditionError("differential conformal algebras require an associative base");
  if (!A.identity_holds())
    throw PreconditionError("ordinary associative identity fails on the structure constants");
  if (!A.derivation_is_leibniz())
    throw PreconditionError("derivation does not satisfy the Leibniz rule");
  const int n = A.dim();
  const auto& d = A.derivation();

  // Powers of the derivation matrix up to the nilpotency index.
  std::vector<std::vector<Rational>> powers;
  powers.emplace_back(n * n, Rational(0));
  for (int i = 0; i < n; ++i) powers[0][i * n + i] = Rational(1);
  for (int s = 1; s <= n; ++s) {
    std::vector<Rational> next(n * n, Rational(0));
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational acc(0);
        for (int m = 0; m < n; ++m) acc += d[i * n + m] * powers[s - 1][m * n + j];
        if (!acc.is_zero()) nonzero = true;
        next[i * n + j] = acc;
      }
    if (!nonzero) break;
    powers.push_back(std::move(next));
    if (s == n)
      throw PreconditionError("derivation is not locally nilpotent: power " + std::to_string(n) +
                              " of the matrix is nonzero");
  }

  std::vector<TableEntry> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LambdaElem v;
      for (size_t s = 0; s < powers.size(); ++s) {
        ExpVec e{};
        e[static_cast<int>(Var::L)] = static_cast<int>(s);
        MultiPoly ls =
            MultiPoly::monomial(e, factorial(static_cast<unsigned>(s)).inverse());
        for (int k = 0; k < n; ++k) {
          const Rational& dk = powers[s][k * n + j];  // coord of der^s(a_j) on a_k
          if (dk.is_zero()) continue;
          for (int m = 0; m < n; ++m) {
            Rational coeff = A.c(i, k, m) * dk;
            if (!coeff.is_zero()) v.add_term(A.names()[m], ls * MultiPoly::constant(coeff));
          }
        }
      }
      if (!v.is_zero()) entries.push_back({A.names()[i], A.names()[j], v});
    }
  return ConfAlgebra(AlgebraKind::associative, A.names(), std::move(entries));
}

ConfAlgebra solvable_xy() {
  MultiPoly l = MultiPoly::variable(Var::L);
  MultiPoly dpl = MultiPoly::variable(Var::D) + l;
  return ConfAlgebra(AlgebraKind::lie, {"x", "y"},
                     {{"x", "y", ConfElement::term("y", l)},
                      {"y", "x", ConfElement::term("y", dpl)}});
}

ConfAlgebra split_null_trunc() {
  return ConfAlgebra(AlgebraKind::associative, {"e", "v"},
                     {{"e", "e", ConfElement::symbol("e")},
                      {"e", "v", ConfElement::symbol("v")}});
}

// ---------------------------------------------------------------------------
// MatrixConfElem

MatrixConfElem::MatrixConfElem(int n) : n_(n), e_(static_cast<size_t>(n) * n) {
  if (n <= 0) throw DimensionError("matrix size must be positive");
}

MatrixConfElem::MatrixConfElem(int n, std::vector<MultiPoly> entries)
    : n_(n), e_(std::move(entries)) {
  if (n <= 0) throw DimensionError("matrix size must be positive");
  if (e_.size() != static_cast<size_t>(n) * n) throw DimensionError("entry count mismatch");
}

MatrixConfElem MatrixConfElem::identity(int n) {
  MatrixConfElem m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = MultiPoly::constant(Rational(1));
  return m;
}

MatrixConfElem MatrixConfElem::unit(int n, int i, int j, MultiPoly p) {
  MatrixConfElem m(n);
  m.at(i, j) = std::move(p);
  return m;
}

bool MatrixConfElem::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

bool MatrixConfElem::is_plain() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const MultiPoly& p) { return p.uses_only({Var::D, Var::X}); });
}

int MatrixConfElem::degree_in(Var v) const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree_in(v));
  return d;
}

MatrixConfElem MatrixConfElem::operator-() const {
  MatrixConfElem r(n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
  return r;
}

MatrixConfElem& MatrixConfElem::operator+=(const MatrixConfElem& o) {
  if (o.n_ != n_) throw DimensionError("matrix size mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

MatrixConfElem& MatrixConfElem::operator-=(const MatrixConfElem& o) {
  if (o.n_ != n_) throw DimensionError("matrix size mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

MatrixConfElem operator*(const MultiPoly& c, const MatrixConfElem& a) {
  MatrixConfElem r(a.n_);
  for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
  return r;
}

MatrixConfElem MatrixConfElem::matmul(const MatrixConfElem& o) const {
  if (o.n_ != n_) throw DimensionError("matrix size mismatch");
  MatrixConfElem r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < n_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

MatrixConfElem MatrixConfElem::substituted(const std::map<Var, MultiPoly>& assignment) const {
  MatrixConfElem r(n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].substitute(assignment);
  return r;
}

std::vector<MatrixConfElem> MatrixConfElem::divided_coefficients_in(Var v) const {
  int d = degree_in(v);
  std::vector<MatrixConfElem> out;
  for (int k = 0; k <= d; ++k) {
    MatrixConfElem m(n_);
    MultiPoly f = MultiPoly::constant(factorial(static_cast<unsigned>(k)));
    bool nz = false;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        m.at(i, j) = f * at(i, j).coefficient_of(v, k);
        nz = nz || !m.at(i, j).is_zero();
      }
    out.push_back(std::move(m));
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

bool operator==(const MatrixConfElem& a, const MatrixConfElem& b) {
  return a.n_ == b.n_ && a.e_ == b.e_;
}

std::string MatrixConfElem::to_string() const {
  if (n_ == 1) return at(0, 0).to_string();
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n_; ++j) {
      if (j) os << ", ";
      os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Cend products and actions

MatrixConfElem cend_product(const MatrixConfElem& a, const MatrixConfElem& b,
                            const MultiPoly& nu) {
  if (a.n() != b.n()) throw DimensionError("Cend product size mismatch");
  MultiPoly xs = MultiPoly::variable(Var::X) + nu;
  MultiPoly ds = MultiPoly::variable(Var::D) + nu;
  MatrixConfElem left = a.substituted({{Var::D, -nu}});
  MatrixConfElem right = b.substituted({{Var::D, ds}, {Var::X, xs}});
  return left.matmul(right);
}

MatrixConfElem cend_product(const MatrixConfElem& a, const MatrixConfElem& b) {
  return cend_product(a, b, MultiPoly::variable(Var::L));
}

MatrixConfElem cend_n_product(const MatrixConfElem& a, const MatrixConfElem& b, unsigned n) {
  MatrixConfElem lp = cend_product(a, b);
  MatrixConfElem out(a.n());
  MultiPoly f = MultiPoly::constant(factorial(n));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      out.at(i, j) = f * lp.at(i, j).coefficient_of(Var::L, static_cast<int>(n));
  return out;
}

MatrixConfElem cend_braced_lambda(const MatrixConfElem& a, const MatrixConfElem& b) {
  MultiPoly img = -(MultiPoly::variable(Var::D) + MultiPoly::variable(Var::L));
  return cend_product(a, b).substituted({{Var::L, img}});
}

MatrixConfElem cend_braced_product(const MatrixConfElem& a, const MatrixConfElem& b, unsigned n) {
  MatrixConfElem bl = cend_braced_lambda(a, b);
  MatrixConfElem out(a.n());
  MultiPoly f = MultiPoly::constant(factorial(n));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      out.at(i, j) = f * bl.at(i, j).coefficient_of(Var::L, static_cast<int>(n));
  return out;
}

int cend_locality(const MatrixConfElem& a, const MatrixConfElem& b) {
  MatrixConfElem lp = cend_product(a, b);
  return lp.is_zero() ? 0 : lp.degree_in(Var::L) + 1;
}

std::vector<MultiPoly> cend_act(const MatrixConfElem& a, const std::vector<MultiPoly>& v,
                                const MultiPoly& nu) {
  if (static_cast<int>(v.size()) != a.n()) throw DimensionError("Cend action size mismatch");
  MatrixConfElem f = a.substituted({{Var::D, -nu}, {Var::X, MultiPoly::variable(Var::D)}});
  MultiPoly ds = MultiPoly::variable(Var::D) + nu;
  std::vector<MultiPoly> out(v.size());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      if (f.at(i, j).is_zero() || v[j].is_zero()) continue;
      out[i] += f.at(i, j) * v[j].substitute({{Var::D, ds}});
    }
  return out;
}

std::vector<MultiPoly> cend_act(const MatrixConfElem& a, const std::vector<MultiPoly>& v) {
  return cend_act(a, v, MultiPoly::variable(Var::L));
}

MatrixConfElem tau_transpose(const MatrixConfElem& a) {
  return a.substituted({{Var::D, MultiPoly::variable(Var::X)}, {Var::X, MultiPoly::variable(Var::D)}});
}

MatrixConfElem cend_right_product(const MatrixConfElem& a, const MatrixConfElem& b,
                                  const MultiPoly& nu) {
  if (a.n() != b.n()) throw DimensionError("Cend product size mismatch");
  // (a o_nu b)_m = b_{nu+m} a_m on right endomorphisms; on presentations the
  // matrix parts compose as B*A.
  MatrixConfElem bs = b.substituted({{Var::X, MultiPoly::variable(Var::X) + nu}});
  MatrixConfElem as = a.substituted(
      {{Var::D, MultiPoly::variable(Var::D) - MultiPoly::variable(Var::X) - nu},
       {Var::X, -nu}});
  return bs.matmul(as);
}

MatrixConfElem cend_right_product(const MatrixConfElem& a, const MatrixConfElem& b) {
  return cend_right_product(a, b, MultiPoly::variable(Var::L));
}

MatrixConfElem cend_right_braced_product(const MatrixConfElem& a, const MatrixConfElem& b,
                                         unsigned n) {
  MultiPoly img = -(MultiPoly::variable(Var::X) + MultiPoly::variable(Var::L));
  MatrixConfElem bl = cend_right_product(a, b).substituted({{Var::L, img}});
  MatrixConfElem out(a.n());
  MultiPoly f = MultiPoly::constant(factorial(n));
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      out.at(i, j) = f * bl.at(i, j).coefficient_of(Var::L, static_cast<int>(n));
  return out;
}

MatrixConfElem cend_ideal_element(IdealSide side, const MatrixConfElem& P,
                                  const MatrixConfElem& A) {
  if (P.n() != A.n()) throw DimensionError("ideal generator size mismatch");
  for (int i = 0; i < P.n(); ++i)
    for (int j = 0; j < P.n(); ++j)
      if (!P.at(i, j).uses_only({Var::X}))
        throw PreconditionError("ideal generator must be a matrix over Q[x]");
  if (side == IdealSide::right) return P.matmul(A);
  MatrixConfElem shifted =
      P.substituted({{Var::X, MultiPoly::variable(Var::X) - MultiPoly::variable(Var::D)}});
  return A.matmul(shifted);
}

// ---------------------------------------------------------------------------
// Split null extension

bool c0_contains(const MatrixConfElem& a) {
  if (a.n() != 2) return false;
  return a.at(1, 0).is_zero() && a.at(0, 0) == a.at(1, 1) && a.at(0, 0).uses_only({Var::D});
}

SplitNullElem split_null_product(const SplitNullElem& u, const SplitNullElem& w,
                                 const MultiPoly& nu, SplitNullAmbient ambient) {
  if (u.alg.n() != w.alg.n() || u.mod.size() != w.mod.size() ||
      static_cast<int>(u.mod.size()) != u.alg.n())
    throw DimensionError("split null extension size mismatch");
  if (ambient == SplitNullAmbient::c0) {
    if (!c0_contains(u.alg) || !c0_contains(w.alg))
      throw MembershipError("algebra part lies outside the declared C0 subalgebra");
  }
  return {cend_product(u.alg, w.alg, nu), cend_act(u.alg, w.mod, nu)};
}

SplitNullElem split_null_product(const SplitNullElem& u, const SplitNullElem& w,
                                 SplitNullAmbient ambient) {
  return split_null_product(u, w, MultiPoly::variable(Var::L), ambient);
}

// ---------------------------------------------------------------------------
// Growth in the Cend ambient

namespace {

using CendKey = std::tuple<int, int, int>;  // (x-degree, row, col)

void collect_keys(const MatrixConfElem& a, std::set<CendKey>& keys) {
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      for (const auto& [e, c] : a.at(i, j).terms())
        keys.insert({e[static_cast<int>(Var::X)], i, j});
}

std::vector<MultiPoly> vectorize(const MatrixConfElem& a, const std::vector<CendKey>& keys) {
  std::map<CendKey, int> where;
  for (size_t c = 0; c < keys.size(); ++c) where[keys[c]] = static_cast<int>(c);
  std::vector<MultiPoly> v(keys.size());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      for (const auto& [e, coeff] : a.at(i, j).terms()) {
        CendKey key{e[static_cast<int>(Var::X)], i, j};
        ExpVec de{};
        de[static_cast<int>(Var::D)] = e[static_cast<int>(Var::D)];
        v[where.at(key)] += MultiPoly::monomial(de, coeff);
      }
  return v;
}

MatrixConfElem devectorize(const std::vector<MultiPoly>& v, const std::vector<CendKey>& keys,
                           int n) {
  MatrixConfElem m(n);
  for (size_t c = 0; c < keys.size(); ++c) {
    auto [k, i, j] = keys[c];
    ExpVec xe{};
    xe[static_cast<int>(Var::X)] = k;
    m.at(i, j) += v[c] * MultiPoly::monomial(xe, Rational(1));
  }
  return m;
}

std::vector<MatrixConfElem> hnf_basis(int n, const std::vector<MatrixConfElem>& span) {
  std::set<CendKey> keyset;
  for (const auto& m : span) collect_keys(m, keyset);
  std::vector<CendKey> keys(keyset.begin(), keyset.end());
  std::vector<std::vector<MultiPoly>> vecs;
  for (const auto& m : span) vecs.push_back(vectorize(m, keys));
  SubmoduleBasis B(static_cast<int>(keys.size()), Var::D, vecs);
  std::vector<MatrixConfElem> out;
  for (const auto& g : B.generators()) out.push_back(devectorize(g, keys, n));
  return out;
}

}  // namespace

std::vector<int> growth_profile_cend(int n, const std::vector<MatrixConfElem>& generators,
                                     int n_max) {
  for (const auto& g : generators) {
    if (g.n() != n) throw DimensionError("generator size mismatch");
    if (!g.is_plain()) throw PreconditionError("generators must be matrices over Q[D, x]");
  }
  std::vector<std::vector<MatrixConfElem>> V;  // V[i] = basis of V(i+1)
  V.push_back(hnf_basis(n, generators));
  std::vector<int> ranks{static_cast<int>(V[0].size())};
  for (int len = 2; len <= n_max; ++len) {
    std::vector<MatrixConfElem> span = V.back();
    for (int i = 1; i + 1 <= len; ++i) {
      int j = len - i;
      for (const auto& u : V[i - 1])
        for (const auto& w : V[j - 1]) {
          MatrixConfElem lp = cend_product(u, w);
          for (const auto& piece : lp.divided_coefficients_in(Var::L))
            if (!piece.is_zero()) span.push_back(piece);
        }
    }
    V.push_back(hnf_basis(n, span));
    ranks.push_back(static_cast<int>(V.back().size()));
  }
  return ranks;
}

}  // namespace confalg
