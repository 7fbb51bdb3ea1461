#include "confalg/conformal.hpp"

#include <algorithm>
#include <sstream>

#include "confalg/parallel.hpp"
#include "confalg/qsolve.hpp"

namespace confalg {

const char* kind_name(AlgebraKind k) {
  return k == AlgebraKind::associative ? "associative" : "lie";
}

// ---------------------------------------------------------------------------
// ConfElement

ConfElement ConfElement::symbol(const std::string& name) {
  return term(name, MultiPoly::constant(Rational(1)));
}

ConfElement ConfElement::term(const std::string& name, MultiPoly coeff) {
  ConfElement e;
  e.add_term(name, coeff);
  return e;
}

MultiPoly ConfElement::coord(const std::string& name) const {
  auto it = coords_.find(name);
  return it == coords_.end() ? MultiPoly() : it->second;
}

void ConfElement::add_term(const std::string& name, const MultiPoly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, fresh] = coords_.emplace(name, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) coords_.erase(it);
  }
}

ConfElement ConfElement::operator-() const {
  ConfElement r;
  for (const auto& [s, c] : coords_) r.coords_.emplace(s, -c);
  return r;
}

ConfElement& ConfElement::operator+=(const ConfElement& o) {
  for (const auto& [s, c] : o.coords_) add_term(s, c);
  return *this;
}

ConfElement& ConfElement::operator-=(const ConfElement& o) {
  for (const auto& [s, c] : o.coords_) add_term(s, -c);
  return *this;
}

ConfElement operator*(const MultiPoly& c, const ConfElement& e) {
  ConfElement r;
  for (const auto& [s, p] : e.coords_) r.add_term(s, c * p);
  return r;
}

ConfElement operator*(const Rational& c, const ConfElement& e) {
  return MultiPoly::constant(c) * e;
}

ConfElement ConfElement::substituted(const std::map<Var, MultiPoly>& assignment) const {
  ConfElement r;
  for (const auto& [s, p] : coords_) r.add_term(s, p.substitute(assignment));
  return r;
}

int ConfElement::degree_in(Var v) const {
  int d = -1;
  for (const auto& [s, p] : coords_) d = std::max(d, p.degree_in(v));
  return d;
}

bool ConfElement::uses_only(std::initializer_list<Var> vars) const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [&](const auto& kv) { return kv.second.uses_only(vars); });
}

std::vector<ConfElement> ConfElement::coefficients_in(Var v) const {
  std::vector<ConfElement> out;
  for (const auto& [s, p] : coords_) {
    auto cs = p.coefficients_in(v);
    if (cs.size() > out.size()) out.resize(cs.size());
    for (size_t k = 0; k < cs.size(); ++k) out[k].add_term(s, cs[k]);
  }
  return out;
}

std::vector<ConfElement> ConfElement::divided_coefficients_in(Var v) const {
  auto out = coefficients_in(v);
  for (size_t n = 0; n < out.size(); ++n) {
    MultiPoly f = MultiPoly::constant(factorial(static_cast<unsigned>(n)));
    out[n] = f * out[n];
  }
  return out;
}

namespace {

std::string render_piece(const std::string& sym, const MultiPoly& p) {
  if (p.is_constant()) {
    Rational c = p.constant_term();
    if (c.is_one()) return sym;
    if (c == Rational(-1)) return "-" + sym;
    return c.to_string() + "*" + sym;
  }
  if (p.terms().size() == 1) return p.to_string() + "*" + sym;
  return "(" + p.to_string() + ")*" + sym;
}

std::string join_pieces(const std::vector<std::string>& pieces) {
  if (pieces.empty()) return "0";
  std::string out = pieces[0];
  for (size_t i = 1; i < pieces.size(); ++i) {
    if (!pieces[i].empty() && pieces[i][0] == '-')
      out += " - " + pieces[i].substr(1);
    else
      out += " + " + pieces[i];
  }
  return out;
}

}  // namespace

std::string ConfElement::to_string() const {
  std::vector<std::string> pieces;
  for (const auto& [s, p] : coords_) pieces.push_back(render_piece(s, p));
  return join_pieces(pieces);
}

std::string ConfElement::to_string(const std::vector<std::string>& symbol_order) const {
  std::vector<std::string> pieces;
  for (const auto& s : symbol_order) {
    auto it = coords_.find(s);
    if (it != coords_.end()) pieces.push_back(render_piece(s, it->second));
  }
  for (const auto& [s, p] : coords_)  // symbols outside the given order, if any
    if (std::find(symbol_order.begin(), symbol_order.end(), s) == symbol_order.end())
      pieces.push_back(render_piece(s, p));
  return join_pieces(pieces);
}

// ---------------------------------------------------------------------------
// ConfAlgebra

ConfAlgebra::ConfAlgebra(AlgebraKind kind, std::vector<std::string> basis,
                         std::vector<TableEntry> table)
    : kind_(kind), basis_(std::move(basis)) {
  for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
    const std::string& s = basis_[i];
    if (s.empty()) throw ParseError("empty basis symbol");
    if (s == "D") throw ParseError("basis symbol may not be named D");
    if (!index_.emplace(s, i).second) throw ParseError("duplicate basis symbol: " + s);
  }
  table_.assign(basis_.size(), std::vector<LambdaElem>(basis_.size()));
  for (auto& entry : table) {
    int i = index_of(entry.a), j = index_of(entry.b);
    for (const auto& [c, poly] : entry.value.coords()) {
      if (!index_.count(c)) throw ParseError("table value uses unknown symbol: " + c);
      if (!poly.uses_only({Var::D, Var::L}))
        throw ParseError("table polynomial must involve only D and l: " + poly.to_string());
    }
    table_[i][j] = std::move(entry.value);
  }
}

int ConfAlgebra::index_of(const std::string& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw ParseError("unknown basis symbol: " + s);
  return it->second;
}

const LambdaElem& ConfAlgebra::table(const std::string& a, const std::string& b) const {
  return table_[index_of(a)][index_of(b)];
}

int ConfAlgebra::max_table_degree(Var v) const {
  int d = -1;
  for (const auto& row : table_)
    for (const auto& e : row) d = std::max(d, e.degree_in(v));
  return d;
}

bool operator==(const ConfAlgebra& a, const ConfAlgebra& b) {
  return a.kind_ == b.kind_ && a.basis_ == b.basis_ && a.table_ == b.table_;
}

std::vector<MultiPoly> ConfAlgebra::to_vector(const ConfElement& e) const {
  std::vector<MultiPoly> v(basis_.size());
  for (const auto& [s, p] : e.coords()) v[index_of(s)] = p;
  return v;
}

ConfElement ConfAlgebra::from_vector(const std::vector<MultiPoly>& v) const {
  if (v.size() != basis_.size()) throw DimensionError("vector length does not match basis");
  ConfElement e;
  for (size_t i = 0; i < v.size(); ++i) e.add_term(basis_[i], v[i]);
  return e;
}

// ---------------------------------------------------------------------------
// Products

LambdaElem product_at(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                      const MultiPoly& nu) {
  const MultiPoly shifted = MultiPoly::variable(Var::D) + nu;
  LambdaElem out;
  for (const auto& [sa, fa] : a.coords()) {
    MultiPoly left = fa.substitute({{Var::D, -nu}});
    if (left.is_zero()) continue;
    for (const auto& [sb, gb] : b.coords()) {
      MultiPoly right = gb.substitute({{Var::D, shifted}});
      if (right.is_zero()) continue;
      const LambdaElem& tv = C.table(sa, sb);
      MultiPoly scale = left * right;
      for (const auto& [sc, pc] : tv.coords())
        out.add_term(sc, scale * pc.substitute({{Var::L, nu}}));
    }
  }
  return out;
}

LambdaElem lambda_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b) {
  return product_at(C, a, b, MultiPoly::variable(Var::L));
}

ConfElement n_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                      unsigned n) {
  LambdaElem lp = lambda_product(C, a, b);
  ConfElement out;
  for (const auto& [s, p] : lp.coords())
    out.add_term(s, p.coefficient_of(Var::L, static_cast<int>(n)) * factorial(n));
  return out;
}

LambdaElem braced_lambda_product(const ConfAlgebra& C, const ConfElement& a,
                                 const ConfElement& b) {
  MultiPoly img = -(MultiPoly::variable(Var::D) + MultiPoly::variable(Var::L));
  return lambda_product(C, a, b).substituted({{Var::L, img}});
}

ConfElement braced_product(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b,
                           unsigned n) {
  LambdaElem bp = braced_lambda_product(C, a, b);
  ConfElement out;
  for (const auto& [s, p] : bp.coords())
    out.add_term(s, p.coefficient_of(Var::L, static_cast<int>(n)) * factorial(n));
  return out;
}

int locality(const ConfAlgebra& C, const ConfElement& a, const ConfElement& b) {
  LambdaElem lp = lambda_product(C, a, b);
  return lp.is_zero() ? 0 : lp.degree_in(Var::L) + 1;
}

// ---------------------------------------------------------------------------
// Axiom checkers

namespace {

const MultiPoly& lam() {
  static const MultiPoly v = MultiPoly::variable(Var::L);
  return v;
}
const MultiPoly& mu() {
  static const MultiPoly v = MultiPoly::variable(Var::M);
  return v;
}

struct MaybeWitness {
  bool bad = false;
  AxiomWitness w;
};

CheckReport collect(std::vector<MaybeWitness> results) {
  CheckReport report;
  for (auto& r : results)
    if (r.bad) report.witnesses.push_back(std::move(r.w));
  report.passed = report.witnesses.empty();
  return report;
}

}  // namespace

CheckReport check_associativity(const ConfAlgebra& C) {
  if (C.kind() != AlgebraKind::associative)
    throw PreconditionError("associativity check on a non-associative table");
  const int n = C.size();
  auto results = detail::parallel_map<MaybeWitness>(
      static_cast<size_t>(n) * n * n, [&](size_t idx) -> MaybeWitness {
        int i = static_cast<int>(idx / (n * n));
        int j = static_cast<int>((idx / n) % n);
        int k = static_cast<int>(idx % n);
        ConfElement a = ConfElement::symbol(C.basis()[i]);
        ConfElement b = ConfElement::symbol(C.basis()[j]);
        ConfElement c = ConfElement::symbol(C.basis()[k]);
        LambdaElem lhs = product_at(C, a, product_at(C, b, c, mu()), lam());
        LambdaElem rhs = product_at(C, product_at(C, a, b, lam()), c, lam() + mu());
        ConfElement residual = lhs - rhs;
        if (residual.is_zero()) return {};
        return {true, {"associativity", {C.basis()[i], C.basis()[j], C.basis()[k]}, residual}};
      });
  return collect(std::move(results));
}

CheckReport check_lie(const ConfAlgebra& C) {
  if (C.kind() != AlgebraKind::lie)
    throw PreconditionError("Lie check on a non-Lie table");
  const int n = C.size();
  auto skew = detail::parallel_map<MaybeWitness>(
      static_cast<size_t>(n) * n, [&](size_t idx) -> MaybeWitness {
        int i = static_cast<int>(idx / n), j = static_cast<int>(idx % n);
        ConfElement a = ConfElement::symbol(C.basis()[i]);
        ConfElement b = ConfElement::symbol(C.basis()[j]);
        ConfElement residual = lambda_product(C, a, b) + braced_lambda_product(C, b, a);
        if (residual.is_zero()) return {};
        return {true, {"skew-symmetry", {C.basis()[i], C.basis()[j]}, residual}};
      });
  auto jacobi = detail::parallel_map<MaybeWitness>(
      static_cast<size_t>(n) * n * n, [&](size_t idx) -> MaybeWitness {
        int i = static_cast<int>(idx / (n * n));
        int j = static_cast<int>((idx / n) % n);
        int k = static_cast<int>(idx % n);
        ConfElement a = ConfElement::symbol(C.basis()[i]);
        ConfElement b = ConfElement::symbol(C.basis()[j]);
        ConfElement c = ConfElement::symbol(C.basis()[k]);
        LambdaElem lhs = product_at(C, a, product_at(C, b, c, mu()), lam()) -
                         product_at(C, b, product_at(C, a, c, lam()), mu());
        LambdaElem rhs = product_at(C, product_at(C, a, b, lam()), c, lam() + mu());
        ConfElement residual = lhs - rhs;
        if (residual.is_zero()) return {};
        return {true, {"jacobi", {C.basis()[i], C.basis()[j], C.basis()[k]}, residual}};
      });
  skew.insert(skew.end(), jacobi.begin(), jacobi.end());
  return collect(std::move(skew));
}

CheckReport check_axioms(const ConfAlgebra& C) {
  return C.kind() == AlgebraKind::associative ? check_associativity(C) : check_lie(C);
}

ConfAlgebra commutator_algebra(const ConfAlgebra& C) {
  CheckReport rep = check_associativity(C);
  if (!rep.passed)
    throw PreconditionError("commutator algebra requires an associative input table");
  std::vector<TableEntry> entries;
  for (const auto& a : C.basis())
    for (const auto& b : C.basis()) {
      ConfElement ea = ConfElement::symbol(a), eb = ConfElement::symbol(b);
      LambdaElem v = lambda_product(C, ea, eb) - braced_lambda_product(C, eb, ea);
      if (!v.is_zero()) entries.push_back({a, b, v});
    }
  return ConfAlgebra(AlgebraKind::lie, C.basis(), std::move(entries));
}

ConfAlgebra opposite_algebra(const ConfAlgebra& C) {
  if (C.kind() != AlgebraKind::associative)
    throw PreconditionError("opposite algebra requires an associative input");
  std::vector<TableEntry> entries;
  for (const auto& a : C.basis())
    for (const auto& b : C.basis()) {
      LambdaElem v =
          braced_lambda_product(C, ConfElement::symbol(b), ConfElement::symbol(a));
      if (!v.is_zero()) entries.push_back({a, b, v});
    }
  return ConfAlgebra(AlgebraKind::associative, C.basis(), std::move(entries));
}

// ---------------------------------------------------------------------------
// Unit search

namespace {

// Column index of unknown coefficient of D^k on symbol b.
int unknown_index(int b, int k, int bound) { return b * (bound + 1) + k; }

// Rows of the linear system "sum over unknowns of (unknown action on x) = x",
// flattened coefficient-wise over (symbol, D-power).
void append_unit_equations(const ConfAlgebra& C, UnitSide side, int bound,
                           std::vector<std::vector<Rational>>& A, std::vector<Rational>& rhs) {
  const int nb = C.size();
  const int ncols = nb * (bound + 1);
  auto poly_rows = [&](const std::vector<ConfElement>& images, const ConfElement& target) {
    // images[u] is the action of unknown u on x; rows are indexed by
    // (symbol, D-degree) pairs present anywhere.
    std::map<std::pair<std::string, int>, size_t> row_of;
    auto row_for = [&](const std::string& s, int d) {
      auto key = std::make_pair(s, d);
      auto it = row_of.find(key);
      if (it == row_of.end()) {
        it = row_of.emplace(key, A.size()).first;
        A.emplace_back(ncols, Rational(0));
        rhs.emplace_back(0);
      }
      return it->second;
    };
    for (int u = 0; u < ncols; ++u)
      for (const auto& [s, p] : images[u].coords())
        for (const auto& [e, c] : p.terms()) A[row_for(s, e[0])][u] += c;
    for (const auto& [s, p] : target.coords())
      for (const auto& [e, c] : p.terms()) rhs[row_for(s, e[0])] += c;
  };

  for (const auto& xsym : C.basis()) {
    ConfElement x = ConfElement::symbol(xsym);
    std::vector<ConfElement> images(ncols);
    for (int b = 0; b < nb; ++b)
      for (int k = 0; k <= bound; ++k) {
        ExpVec e{};
        e[0] = k;
        ConfElement gen = ConfElement::term(C.basis()[b], MultiPoly::monomial(e, Rational(1)));
        ConfElement img;
        if (side == UnitSide::left)
          img = n_product(C, gen, x, 0);
        else
          img = braced_product(C, x, gen, 0);
        images[unknown_index(b, k, bound)] = img;
      }
    poly_rows(images, x);
  }
}

std::optional<ConfElement> unit_candidate(const ConfAlgebra& C, const std::vector<Rational>& sol,
                                          int bound) {
  ConfElement e;
  for (int b = 0; b < C.size(); ++b)
    for (int k = 0; k <= bound; ++k) {
      const Rational& c = sol[unknown_index(b, k, bound)];
      if (c.is_zero()) continue;
      ExpVec ev{};
      ev[0] = k;
      e.add_term(C.basis()[b], MultiPoly::monomial(ev, c));
    }
  LambdaElem ee = lambda_product(C, e, e);
  if (ee.is_zero() || ee.degree_in(Var::L) > 0) return std::nullopt;  // N(e,e) != 1
  return e;
}

}  // namespace

std::optional<ConfElement> find_unit(const ConfAlgebra& C, UnitSide side, int degree_bound) {
  if (C.kind() != AlgebraKind::associative)
    throw PreconditionError("unit search requires an associative algebra");
  if (C.size() == 0) return std::nullopt;
  int bound = degree_bound >= 0 ? degree_bound : std::max(0, C.max_table_degree(Var::D)) + 2;

  std::vector<std::vector<Rational>> A;
  std::vector<Rational> rhs;
  if (side == UnitSide::left || side == UnitSide::two_sided)
    append_unit_equations(C, UnitSide::left, bound, A, rhs);
  if (side == UnitSide::right || side == UnitSide::two_sided)
    append_unit_equations(C, UnitSide::right, bound, A, rhs);

  auto solved = solve_linear(A, rhs);
  if (!solved) return std::nullopt;
  if (auto e = unit_candidate(C, solved->particular, bound)) return e;
  for (const auto& dir : solved->nullspace) {
    for (int sign : {1, -1}) {
      std::vector<Rational> v = solved->particular;
      for (size_t i = 0; i < v.size(); ++i) v[i] += Rational(sign) * dir[i];
      if (auto e = unit_candidate(C, v, bound)) return e;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derived series and growth

namespace {

std::vector<ConfElement> basis_elements(const ConfAlgebra& C, const SubmoduleBasis& S) {
  std::vector<ConfElement> out;
  for (const auto& g : S.generators()) out.push_back(C.from_vector(g));
  return out;
}

SubmoduleBasis span_of_products(const ConfAlgebra& C, const std::vector<ConfElement>& left,
                                const std::vector<ConfElement>& right) {
  std::vector<std::vector<MultiPoly>> vecs;
  for (const auto& u : left)
    for (const auto& w : right) {
      LambdaElem lp = lambda_product(C, u, w);
      for (const auto& piece : lp.divided_coefficients_in(Var::L))
        if (!piece.is_zero()) vecs.push_back(C.to_vector(piece));
    }
  return SubmoduleBasis(C.size(), Var::D, vecs);
}

}  // namespace

DerivedSeries derived_series(const ConfAlgebra& C) {
  if (C.kind() != AlgebraKind::lie)
    throw PreconditionError("derived series requires a Lie conformal algebra");
  DerivedSeries out;
  SubmoduleBasis current = SubmoduleBasis::full(C.size(), Var::D);
  out.terms.push_back(current);
  for (;;) {
    auto gens = basis_elements(C, current);
    SubmoduleBasis next = span_of_products(C, gens, gens);
    if (next == current) break;  // stabilized (including the zero case)
    out.terms.push_back(next);
    current = next;
    if (current.is_zero()) break;
  }
  out.solvable = out.terms.back().is_zero();
  return out;
}

std::vector<int> growth_profile(const ConfAlgebra& C, const std::vector<ConfElement>& generators,
                                int n_max) {
  for (const auto& g : generators)
    if (!g.uses_only({Var::D}))
      throw PreconditionError("growth generators must have coefficients in Q[D]");
  std::vector<SubmoduleBasis> V;
  std::vector<std::vector<MultiPoly>> vecs;
  for (const auto& g : generators) vecs.push_back(C.to_vector(g));
  V.push_back(SubmoduleBasis(C.size(), Var::D, vecs));
  std::vector<int> ranks{V[0].rank()};
  for (int n = 2; n <= n_max; ++n) {
    SubmoduleBasis acc = V.back();
    for (int i = 1; i + 1 <= n; ++i) {
      int j = n - i;
      SubmoduleBasis prod =
          span_of_products(C, basis_elements(C, V[i - 1]), basis_elements(C, V[j - 1]));
      acc = submodule_sum(acc, prod);
    }
    V.push_back(acc);
    ranks.push_back(acc.rank());
  }
  return ranks;
}

}  // namespace confalg
