#include "confalg/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "confalg/qsolve.hpp"

namespace confalg {

// ---------------------------------------------------------------------------
// Unit adjunction

int table_degree_bound(const ConfAlgebra& C) {
  if (C.kind() != AlgebraKind::associative)
    throw PreconditionError("degree bound is defined for associative tables");
  return std::max(0, C.max_table_degree(Var::D));
}

namespace {

std::string unit_gen_name(const std::string& b, int n) { return b + "_" + std::to_string(n); }

}  // namespace

namespace {

// Shared state for the unit-adjunction expansion: the spanning set
// {v} u {(b, n) : n < M'} with (b, n) standing for b o_n v, and the
// straightening rules
//   c o_k (b o_n v) = sum_s binom(k, s) (c o_{k-s} b) o_{n+s} v,
//   (D^r e) o_m v   = (-1)^r m(m-1)...(m-r+1) e o_{m-r} v,
// with indices >= M' vanishing by the locality of the adjoined generator.
struct UnitExpansion {
  const ConfAlgebra& C;
  int M, Mp, max_loc;

  // (h(D) e) o_m v as rational coordinates on the (b, n) spanning set.
  ConfElement expand(const ConfElement& prod, int m) const {
    ConfElement out;
    for (const auto& [e, h] : prod.coords())
      for (const auto& [exp, coeff] : h.terms()) {
        int r = exp[static_cast<int>(Var::D)];
        if (r > m || m - r >= Mp) continue;
        Rational fall = falling_factorial(static_cast<unsigned>(m), static_cast<unsigned>(r));
        Rational sign = (r % 2) ? Rational(-1) : Rational(1);
        out.add_term(unit_gen_name(e, m - r), MultiPoly::constant(coeff * sign * fall));
      }
    return out;
  }

  // sum_s binom(n, s) (a o_{n-s} b) o_{m+s} v
  ConfElement composite(const std::string& a, const std::string& b, int n, int m) const {
    ConfElement out;
    for (int s = 0; s <= n; ++s) {
      ConfElement prod = n_product(C, ConfElement::symbol(a), ConfElement::symbol(b),
                                   static_cast<unsigned>(n - s));
      if (prod.is_zero()) continue;
      out += binomial(static_cast<unsigned>(n), static_cast<unsigned>(s)) *
             expand(prod, m + s);
    }
    return out;
  }
};

}  // namespace

AdjoinUnitResult adjoin_unit_rep(const ConfAlgebra& C, std::optional<int> module_locality) {
  if (C.kind() != AlgebraKind::associative)
    throw PreconditionError("unit adjunction requires an associative algebra");
  if (!check_associativity(C).passed)
    throw PreconditionError("input table fails the associativity check");

  const int M = table_degree_bound(C);
  const int Mp = module_locality.value_or(M + 1);
  if (Mp < 0) throw PreconditionError("module locality must be non-negative");

  int max_loc = 0;
  for (const auto& a : C.basis())
    for (const auto& b : C.basis())
      max_loc = std::max(max_loc,
                         locality(C, ConfElement::symbol(a), ConfElement::symbol(b)));
  UnitExpansion ex{C, M, Mp, max_loc};

  std::vector<std::string> formal;  // (b, n) generators; "v" handled apart
  std::map<std::string, int> formal_index;
  for (const auto& b : C.basis())
    for (int n = 0; n < Mp; ++n) {
      formal_index[unit_gen_name(b, n)] = static_cast<int>(formal.size());
      formal.push_back(unit_gen_name(b, n));
    }
  const int nf = static_cast<int>(formal.size());

  auto lambda_power = [](int k) {
    ExpVec e{};
    e[static_cast<int>(Var::L)] = k;
    return MultiPoly::monomial(e, factorial(static_cast<unsigned>(k)).inverse());
  };

  // Formal action values on the spanning set.
  const int k_max = max_loc + Mp + M + 2;
  std::map<std::pair<std::string, std::string>, ConfElement> formal_action;
  for (const auto& c : C.basis()) {
    ConfElement on_v;
    for (int n = 0; n < Mp; ++n)
      on_v += lambda_power(n) * ConfElement::symbol(unit_gen_name(c, n));
    formal_action[{c, "v"}] = on_v;
    for (const auto& b : C.basis())
      for (int n = 0; n < Mp; ++n) {
        ConfElement img;
        for (int k = 0; k <= k_max; ++k)
          img += lambda_power(k) * ex.composite(c, b, k, n);
        formal_action[{c, unit_gen_name(b, n)}] = img;
      }
  }

  // Relations among the (b, n): for m >= M' the source b o_m v vanishes, so
  // every straightening of a o_n (b o_m v) is a rational relation vector.
  // Nonzero ones only occur for m < M' + M (the D-drop is bounded by M); for
  // D-free tables there are none and the spanning set is a free basis.
  auto to_row = [&](const ConfElement& e) {
    std::vector<Rational> row(nf, Rational(0));
    for (const auto& [g, p] : e.coords()) row[formal_index.at(g)] += p.constant_term();
    return row;
  };
  QRowSpace rels(nf);
  std::vector<std::vector<Rational>> frontier;
  for (const auto& a : C.basis())
    for (const auto& b : C.basis())
      for (int m = Mp; m < Mp + M; ++m)
        for (int n = 0; n <= max_loc + M + 1; ++n) {
          ConfElement rel = ex.composite(a, b, n, m);
          if (rel.is_zero()) continue;
          std::vector<Rational> row = to_row(rel);
          if (rels.add(row)) frontier.push_back(std::move(row));
        }
  // The kernel of (formal span -> module) is action-stable; close the row
  // space under every lambda coefficient of the formal action.
  for (size_t f = 0; f < frontier.size(); ++f) {
    std::vector<Rational> row = frontier[f];
    for (const auto& c : C.basis()) {
      ConfElement image;
      for (int i = 0; i < nf; ++i)
        if (!row[i].is_zero()) image += row[i] * formal_action.at({c, formal[i]});
      for (const auto& piece : image.coefficients_in(Var::L)) {
        if (piece.is_zero()) continue;
        std::vector<Rational> cand = to_row(piece);
        if (rels.add(cand)) frontier.push_back(std::move(cand));
      }
    }
  }

  // The reduced rows rewrite each pivot generator into the free ones.
  std::map<std::string, ConfElement> rewrite;
  std::vector<bool> is_pivot(nf, false);
  for (int k = 0; k < rels.rank(); ++k) {
    int pc = rels.pivot_columns()[k];
    is_pivot[pc] = true;
    ConfElement value;
    for (int j = 0; j < nf; ++j)
      if (j != pc && !rels.rows()[k][j].is_zero())
        value.add_term(formal[j], MultiPoly::constant(-rels.rows()[k][j]));
    rewrite[formal[pc]] = value;
  }

  auto substitute = [&](const ConfElement& e) {
    ConfElement out;
    for (const auto& [g, p] : e.coords()) {
      auto it = rewrite.find(g);
      if (it == rewrite.end())
        out.add_term(g, p);
      else
        out += p * it->second;
    }
    return out;
  };

  std::vector<std::string> gens{"v"};
  for (int i = 0; i < nf; ++i)
    if (!is_pivot[i]) gens.push_back(formal[i]);
  HModulePresentation module = HModulePresentation::free_module(gens);

  std::vector<ActionEntry> action;
  for (const auto& [key, value] : formal_action) {
    if (rewrite.count(key.second)) continue;  // pivot generators were eliminated
    ConfElement img = substitute(value);
    if (!img.is_zero()) action.push_back({key.first, key.second, img});
  }

  AdjoinUnitResult out{make_rep(C, module, std::move(action)), M, Mp, Mp > M, ""};
  if (!out.guarantee)
    out.note = "module locality M' = " + std::to_string(Mp) + " <= table bound M = " +
               std::to_string(M) + ": the faithfulness guarantee does not apply";
  return out;
}

// ---------------------------------------------------------------------------
// Pairing and double construction

void Pairing::set(const std::string& symbol, const std::string& v_generator, ConfElement value) {
  entries_[{symbol, v_generator}] = std::move(value);
}

const ConfElement& Pairing::get(const std::string& symbol, const std::string& v_generator) const {
  auto it = entries_.find({symbol, v_generator});
  return it == entries_.end() ? zero_ : it->second;
}

ConfElement Pairing::apply(const ConfElement& a, const ConfElement& v, const MultiPoly& nu) const {
  const MultiPoly shifted = MultiPoly::variable(Var::D) + nu;
  ConfElement out;
  for (const auto& [sa, fa] : a.coords()) {
    MultiPoly left = fa.substitute({{Var::D, -nu}});
    if (left.is_zero()) continue;
    for (const auto& [gv, hv] : v.coords()) {
      MultiPoly right = hv.substitute({{Var::D, shifted}});
      if (right.is_zero()) continue;
      const ConfElement& entry = get(sa, gv);
      MultiPoly scale = left * right;
      for (const auto& [target, poly] : entry.coords())
        out.add_term(target, scale * poly.substitute({{Var::L, nu}}));
    }
  }
  return out;
}

Pairing canonical_pairing(const ConfAlgebra& L, const std::string& v_generator) {
  Pairing P;
  for (const auto& b : L.basis()) P.set(b, v_generator, ConfElement::symbol(b));
  return P;
}

DoubleReport check_double_conditions(const ConfRep& V, const ConfRep& M, const Pairing& P) {
  if (V.algebra() != M.algebra())
    throw PreconditionError("V and M must be modules over the same algebra");
  const ConfAlgebra& L = V.algebra();
  const MultiPoly l = MultiPoly::variable(Var::L);
  const MultiPoly m = MultiPoly::variable(Var::M);

  DoubleReport report;
  // (D2): x o_l <y o_m v> - <y o_m (x o_l v)> = <[x o_l y] o_{l+m} v>.
  for (const auto& x : L.basis())
    for (const auto& y : L.basis())
      for (const auto& vg : V.module().generators()) {
        ConfElement xe = ConfElement::symbol(x), ye = ConfElement::symbol(y);
        ConfElement ve = ConfElement::symbol(vg);
        ConfElement term1 = M.act(xe, P.apply(ye, ve, m), l);
        ConfElement term2 = P.apply(ye, V.act(xe, ve, l), m);
        ConfElement term3 = P.apply(product_at(L, xe, ye, l), ve, l + m);
        ConfElement residual = M.module().reduce(term1 - term2 - term3);
        if (!residual.is_zero()) {
          report.d2_witnesses.push_back({"double-D2", {x, y, vg}, residual});
          report.d2_passed = false;
        }
      }

  // (D3): pairing kernel /\ Kerr V /\ Kerr M = 0.
  std::vector<std::vector<ConfElement>> pairing_table(L.size());
  for (int b = 0; b < L.size(); ++b)
    for (const auto& vg : V.module().generators())
      pairing_table[b].push_back(M.module().reduce(P.get(L.basis()[b], vg)));
  SubmoduleBasis pk = sesquilinear_kernel(L, M.module(), pairing_table);
  SubmoduleBasis inter = submodule_intersect(pk, rep_kernel(V));
  inter = submodule_intersect(inter, rep_kernel(M));
  if (!inter.is_zero()) {
    report.d3_passed = false;
    for (const auto& g : inter.generators()) report.d3_witnesses.push_back(L.from_vector(g));
  }
  return report;
}

ConfRep double_rep(const ConfRep& V, const ConfRep& M, const Pairing& P) {
  DoubleReport rep = check_double_conditions(V, M, P);
  if (!rep.passed()) {
    std::ostringstream os;
    os << "double construction conditions fail:";
    if (!rep.d2_passed) {
      const auto& w = rep.d2_witnesses.front();
      os << " (D2) at (" << w.symbols[0] << ", " << w.symbols[1] << ", " << w.symbols[2]
         << ") residual " << w.residual.to_string();
    }
    if (!rep.d3_passed)
      os << " (D3) kernel intersection contains " << rep.d3_witnesses.front().to_string();
    throw PreconditionError(os.str());
  }

  const ConfAlgebra& L = V.algebra();
  const auto& gv = V.module().generators();
  const auto& gm = M.module().generators();
  std::set<std::string> vset(gv.begin(), gv.end());
  bool collide =
      std::any_of(gm.begin(), gm.end(), [&](const std::string& g) { return vset.count(g) > 0; });
  auto vname = [&](const std::string& g) { return collide ? g + "_v" : g; };
  auto mname = [&](const std::string& g) { return collide ? g + "_m" : g; };

  std::vector<std::string> gens;
  std::vector<MultiPoly> rels;
  for (int i = 0; i < V.module().size(); ++i) {
    gens.push_back(vname(gv[i]));
    rels.push_back(V.module().relation(i));
  }
  for (int i = 0; i < M.module().size(); ++i) {
    gens.push_back(mname(gm[i]));
    rels.push_back(M.module().relation(i));
  }
  HModulePresentation module(gens, rels);

  MultiPoly l = MultiPoly::variable(Var::L);
  std::vector<ActionEntry> action;
  for (const auto& b : L.basis()) {
    for (int i = 0; i < V.module().size(); ++i) {
      ConfElement img;
      const ConfElement& av = V.action(L.index_of(b), i);
      for (const auto& [t, p] : av.coords()) img.add_term(vname(t), p);
      for (const auto& [t, p] : P.get(b, gv[i]).coords()) img.add_term(mname(t), l * p);
      if (!img.is_zero()) action.push_back({b, vname(gv[i]), img});
    }
    for (int i = 0; i < M.module().size(); ++i) {
      const ConfElement& am = M.action(L.index_of(b), i);
      if (am.is_zero()) continue;
      ConfElement img;
      for (const auto& [t, p] : am.coords()) img.add_term(mname(t), p);
      action.push_back({b, mname(gm[i]), img});
    }
  }
  return make_rep(L, module, std::move(action));
}

// ---------------------------------------------------------------------------
// Central elements and the central action

CentralElement CentralElement::basis_term(int m, const std::string& b, Rational c) {
  CentralElement e;
  e.add(m, b, c);
  return e;
}

void CentralElement::add(int m, const std::string& b, const Rational& c) {
  if (c.is_zero()) return;
  if (m < 0) throw ArithmeticError("negative t-exponent");
  auto key = std::make_pair(m, b);
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CentralElement& CentralElement::operator+=(const CentralElement& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

CentralElement CentralElement::scaled(const Rational& c) const {
  CentralElement out;
  for (const auto& [k, v] : terms_) out.add(k.first, k.second, v * c);
  return out;
}

std::string CentralElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Rational mag = c;
    if (first) {
      if (c.sign() < 0) {
        os << "-";
        mag = -c;
      }
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
      mag = c.abs();
    }
    first = false;
    os << mag.to_string() << " * ";
    if (k.first >= 2)
      os << "t^" << k.first << " ";
    else if (k.first == 1)
      os << "t ";
    os << "(" << k.second << ")";
  }
  return os.str();
}

CentralElement central_reduce(int m, const MultiPoly& h, const std::string& b) {
  if (!h.uses_only({Var::D}))
    throw PreconditionError("central reduction expects a coefficient in Q[D]");
  CentralElement out;
  for (const auto& [e, c] : h.terms()) {
    int r = e[static_cast<int>(Var::D)];
    if (r > m) continue;  // t^m D^r = 0 beyond the exponent
    Rational sign = (r % 2) ? Rational(-1) : Rational(1);
    out.add(m - r, b, c * sign * falling_factorial(static_cast<unsigned>(m), static_cast<unsigned>(r)));
  }
  return out;
}

CentralElement central_action(const ConfAlgebra& L, const ConfElement& x, unsigned n,
                              const CentralElement& u) {
  if (L.kind() != AlgebraKind::lie)
    throw PreconditionError("the central action is defined over Lie conformal algebras");
  CentralElement out;
  for (const auto& [sx, fx] : x.coords()) {
    for (const auto& [exp, coeff] : fx.terms()) {
      // (D^r b) o_n u = (-1)^r n(n-1)...(n-r+1) b o_{n-r} u.
      int r = exp[static_cast<int>(Var::D)];
      if (r > static_cast<int>(n)) continue;
      Rational factor =
          coeff * ((r % 2) ? Rational(-1) : Rational(1)) *
          falling_factorial(n, static_cast<unsigned>(r));
      if (factor.is_zero()) continue;
      unsigned nr = n - static_cast<unsigned>(r);
      for (const auto& [key, cu] : u.terms()) {
        const auto& [m, a] = key;
        for (unsigned s = 0; s <= nr; ++s) {
          Rational bin = binomial(nr, s);
          ConfElement bracket =
              n_product(L, ConfElement::symbol(sx), ConfElement::symbol(a), nr - s);
          if (bracket.is_zero()) continue;
          for (const auto& [target, h] : bracket.coords())
            out += central_reduce(m + static_cast<int>(s), h, target)
                       .scaled(factor * cu * bin);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central PBW checker and builder

namespace {

int bound_of(const LocalityBound& N, const std::string& b) {
  auto it = N.find(b);
  if (it == N.end()) throw PreconditionError("locality bound missing for symbol " + b);
  if (it->second < 1) throw PreconditionError("locality bound must be positive for " + b);
  return it->second;
}

bool in_ideal(const CentralElement& e, const LocalityBound& N) {
  return std::all_of(e.terms().begin(), e.terms().end(), [&](const auto& kv) {
    return kv.first.first >= N.at(kv.first.second);
  });
}

// Image of a o_n (t^m (x) b) with the terms inside I(B, N) dropped.
CentralElement project_action(const ConfAlgebra& L, const std::string& a, unsigned n, int m,
                              const std::string& b, const LocalityBound& N) {
  CentralElement img =
      central_action(L, ConfElement::symbol(a), n, CentralElement::basis_term(m, b));
  CentralElement out;
  for (const auto& [key, c] : img.terms())
    if (key.first < N.at(key.second)) out.add(key.first, key.second, c);
  return out;
}

}  // namespace

PbwReport check_central_pbw(const ConfAlgebra& L, const LocalityBound& N) {
  if (L.kind() != AlgebraKind::lie)
    throw PreconditionError("central PBW is defined for Lie conformal algebras");
  int max_n_bound = 0;
  for (const auto& b : L.basis()) max_n_bound = std::max(max_n_bound, bound_of(N, b));
  const int max_deg = std::max(0, L.max_table_degree(Var::D));
  int max_loc = 0;
  for (const auto& a : L.basis())
    for (const auto& b : L.basis())
      max_loc = std::max(max_loc, locality(L, ConfElement::symbol(a), ConfElement::symbol(b)));

  // A violation at any m >= N(b) implies one with m <= N(b) + max_deg, since
  // exponent drops are bounded by the bracket D-degrees.
  const int n_scan = max_loc + max_n_bound + max_deg + 1;
  for (const auto& b : L.basis()) {
    const int mb = N.at(b);
    for (int m = mb; m <= mb + max_deg + 1; ++m)
      for (const auto& a : L.basis())
        for (int n = 0; n <= n_scan; ++n) {
          CentralElement img = central_action(L, ConfElement::symbol(a),
                                              static_cast<unsigned>(n),
                                              CentralElement::basis_term(m, b));
          if (!in_ideal(img, N))
            return {false, PbwWitness{a, static_cast<unsigned>(n), m, b, img}};
        }
  }
  return {};
}

CentralPbwResult central_pbw_rep(const ConfAlgebra& L, const LocalityBound& N) {
  PbwReport check = check_central_pbw(L, N);
  if (!check.passed) {
    const auto& w = *check.witness;
    throw PreconditionError("central-pbw: I(B,N) is not invariant: " + w.a + " o_" +
                            std::to_string(w.n) + " (t^" + std::to_string(w.m) + " (" + w.b +
                            ")) = " + w.image.to_string());
  }

  auto tgen = [](int m, const std::string& b) { return "t" + std::to_string(m) + "_" + b; };

  // V = Hu with the trivial action.
  ConfRep V = make_rep(L, HModulePresentation::free_module({"u"}), {});

  // M = H (x) (cL / I(B,N)) with the induced action.
  std::vector<std::string> mgens;
  for (const auto& b : L.basis())
    for (int m = 0; m < N.at(b); ++m) mgens.push_back(tgen(m, b));
  const int max_deg = std::max(0, L.max_table_degree(Var::D));
  int max_loc = 0, max_n_bound = 0;
  for (const auto& b : L.basis()) max_n_bound = std::max(max_n_bound, N.at(b));
  for (const auto& a : L.basis())
    for (const auto& b : L.basis())
      max_loc = std::max(max_loc, locality(L, ConfElement::symbol(a), ConfElement::symbol(b)));
  const int n_cut = max_loc + max_n_bound + max_deg + 2;

  auto lambda_power = [](int k) {
    ExpVec e{};
    e[static_cast<int>(Var::L)] = k;
    return MultiPoly::monomial(e, factorial(static_cast<unsigned>(k)).inverse());
  };

  std::vector<ActionEntry> maction;
  for (const auto& a : L.basis())
    for (const auto& b : L.basis())
      for (int m = 0; m < N.at(b); ++m) {
        ConfElement img;
        for (int n = 0; n <= n_cut; ++n) {
          CentralElement at_n = project_action(L, a, static_cast<unsigned>(n), m, b, N);
          ConfElement piece;
          for (const auto& [key, c] : at_n.terms())
            piece.add_term(tgen(key.first, key.second), MultiPoly::constant(c));
          img += lambda_power(n) * piece;
        }
        if (!img.is_zero()) maction.push_back({a, tgen(m, b), img});
      }
  ConfRep M = make_rep(L, HModulePresentation::free_module(mgens), std::move(maction));

  // Pairing <b o_n u> = t^n (x) b (mod I), i.e. nonzero for n < N(b).
  Pairing P;
  for (const auto& b : L.basis()) {
    ConfElement val;
    for (int n = 0; n < N.at(b); ++n) val += lambda_power(n) * ConfElement::symbol(tgen(n, b));
    P.set(b, "u", val);
  }

  CentralPbwResult out{double_rep(V, M, P), N, 0};
  out.rank = out.rep.module().size();
  return out;
}

// ---------------------------------------------------------------------------
// Solvable pipeline

LocalityBound solvable_bounds(const ConfAlgebra& L, int K) {
  if (L.kind() != AlgebraKind::lie)
    throw PreconditionError("solvable bounds are defined for Lie conformal algebras");
  if (K < 1) throw PreconditionError("K must be positive");
  const int n = L.size();
  // Triangularity in the given basis order, with D-free diagonal weights.
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      const ConfElement& v = L.table(a, i);
      for (const auto& [target, poly] : v.coords()) {
        int j = L.index_of(target);
        if (j < i)
          throw PreconditionError("table not triangular: [" + L.basis()[a] + " o_l " +
                                  L.basis()[i] + "] hits " + target);
        if (j == i && poly.degree_in(Var::D) > 0)
          throw PreconditionError("table not triangular: diagonal weight of [" + L.basis()[a] +
                                  " o_l " + L.basis()[i] + "] depends on D");
      }
    }

  LocalityBound N;
  for (int i = n - 1; i >= 0; --i) {
    int bound = K;
    for (int a = 0; a < n; ++a) {
      const ConfElement& v = L.table(a, i);
      for (const auto& [target, poly] : v.coords()) {
        int j = L.index_of(target);
        if (j <= i) continue;
        bound = std::max(bound, N.at(L.basis()[j]) + std::max(0, poly.degree_in(Var::D)));
      }
    }
    N[L.basis()[i]] = bound;
  }
  return N;
}

SolvableResult solvable_faithful_rep(const ConfAlgebra& L, int K) {
  if (L.kind() != AlgebraKind::lie)
    throw PreconditionError("the solvable pipeline needs a Lie conformal algebra");
  DerivedSeries series = derived_series(L);
  if (!series.solvable)
    throw PreconditionError("algebra is not solvable: derived series stabilizes at rank " +
                            std::to_string(series.terms.back().rank()));
  LocalityBound N = solvable_bounds(L, K);
  CentralPbwResult built = central_pbw_rep(L, N);
  SolvableResult out{std::move(built.rep), std::move(built.N), std::move(series), 0};
  out.rank = out.rep.module().size();
  return out;
}

}  // namespace confalg
