#include "confalg/rep.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "confalg/parallel.hpp"

namespace confalg {

// ---------------------------------------------------------------------------
// HModulePresentation

HModulePresentation::HModulePresentation(std::vector<std::string> generators,
                                         std::vector<MultiPoly> relations)
    : gens_(std::move(generators)), relations_(std::move(relations)) {
  if (gens_.size() != relations_.size())
    throw DimensionError("one relation polynomial per generator expected");
  for (int i = 0; i < size(); ++i) {
    if (gens_[i].empty()) throw ParseError("empty module generator name");
    if (!index_.emplace(gens_[i], i).second)
      throw ParseError("duplicate module generator: " + gens_[i]);
    MultiPoly& h = relations_[i];
    if (h.is_zero()) continue;
    if (!h.is_univariate_in(Var::D))
      throw ParseError("relation polynomial must live in Q[D]: " + h.to_string());
    if (h.degree_in(Var::D) == 0)
      throw ParseError("constant nonzero relation kills generator " + gens_[i]);
    Rational lc = h.coefficient_of(Var::D, h.degree_in(Var::D)).constant_term();
    h = h * lc.inverse();
  }
}

HModulePresentation HModulePresentation::free_module(std::vector<std::string> generators) {
  std::vector<MultiPoly> rels(generators.size());
  return HModulePresentation(std::move(generators), std::move(rels));
}

bool HModulePresentation::is_free() const {
  return std::all_of(relations_.begin(), relations_.end(),
                     [](const MultiPoly& h) { return h.is_zero(); });
}

int HModulePresentation::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ParseError("unknown module generator: " + name);
  return it->second;
}

ConfElement HModulePresentation::reduce(const ConfElement& e) const {
  ConfElement out;
  for (const auto& [g, p] : e.coords()) {
    int i = index_of(g);
    if (relations_[i].is_zero())
      out.add_term(g, p);
    else
      out.add_term(g, p.divmod_in(Var::D, relations_[i]).remainder);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ConfRep

ConfRep::ConfRep(ConfAlgebra algebra, HModulePresentation module,
                 std::vector<ActionEntry> action, bool op_action)
    : algebra_(std::move(algebra)), module_(std::move(module)), op_(op_action) {
  action_.assign(algebra_.size(), std::vector<ConfElement>(module_.size()));
  for (auto& entry : action) {
    int b = algebra_.index_of(entry.symbol);
    int i = module_.index_of(entry.generator);
    for (const auto& [target, poly] : entry.value.coords()) {
      module_.index_of(target);  // existence check
      if (!poly.uses_only({Var::D, Var::L}))
        throw ParseError("action polynomial must involve only D and l: " + poly.to_string());
    }
    action_[b][i] = module_.reduce(entry.value);
  }
}

const ConfElement& ConfRep::action(const std::string& symbol, const std::string& generator) const {
  return action_[algebra_.index_of(symbol)][module_.index_of(generator)];
}

const ConfElement& ConfRep::action(int symbol_idx, int generator_idx) const {
  return action_[symbol_idx][generator_idx];
}

ConfElement ConfRep::act(const ConfElement& a, const ConfElement& m, const MultiPoly& nu) const {
  const MultiPoly shifted = MultiPoly::variable(Var::D) + nu;
  ConfElement out;
  for (const auto& [sa, fa] : a.coords()) {
    MultiPoly left = fa.substitute({{Var::D, -nu}});
    if (left.is_zero()) continue;
    int bi = algebra_.index_of(sa);
    for (const auto& [gm, hm] : m.coords()) {
      MultiPoly right = hm.substitute({{Var::D, shifted}});
      if (right.is_zero()) continue;
      const ConfElement& img = action_[bi][module_.index_of(gm)];
      MultiPoly scale = left * right;
      for (const auto& [target, poly] : img.coords())
        out.add_term(target, scale * poly.substitute({{Var::L, nu}}));
    }
  }
  return module_.reduce(out);
}

ConfElement ConfRep::act_lambda(const ConfElement& a, const ConfElement& m) const {
  return act(a, m, MultiPoly::variable(Var::L));
}

ConfRep make_rep(const ConfAlgebra& C, const HModulePresentation& M,
                 std::vector<ActionEntry> action, bool op_action) {
  ConfRep R(C, M, std::move(action), op_action);
  // Well-definedness on torsion: the extension must annihilate h_i(D) e_i.
  for (const auto& b : C.basis())
    for (int i = 0; i < M.size(); ++i) {
      if (M.is_free(i)) continue;
      ConfElement rel = ConfElement::term(M.generators()[i], M.relation(i));
      ConfElement img = R.act_lambda(ConfElement::symbol(b), rel);
      if (!img.is_zero())
        throw WellDefinednessError("action does not respect relation " +
                                   M.relation(i).to_string() + " on generator " +
                                   M.generators()[i] + " under symbol " + b);
    }
  return R;
}

CheckReport check_rep(const ConfRep& R) {
  const ConfAlgebra& C = R.algebra();
  CheckReport algebra_ok = check_axioms(C);
  if (!algebra_ok.passed)
    throw PreconditionError("underlying algebra fails its own axiom check");

  const MultiPoly l = MultiPoly::variable(Var::L);
  const MultiPoly m = MultiPoly::variable(Var::M);
  const int nb = C.size(), ng = R.module().size();
  const bool lie = C.kind() == AlgebraKind::lie;

  struct Item {
    bool bad = false;
    AxiomWitness w;
  };
  auto results = detail::parallel_map<Item>(
      static_cast<size_t>(nb) * nb * ng, [&](size_t idx) -> Item {
        int i = static_cast<int>(idx / (static_cast<size_t>(nb) * ng));
        int j = static_cast<int>((idx / ng) % nb);
        int g = static_cast<int>(idx % ng);
        ConfElement a = ConfElement::symbol(C.basis()[i]);
        ConfElement b = ConfElement::symbol(C.basis()[j]);
        ConfElement e = ConfElement::symbol(R.module().generators()[g]);
        ConfElement lhs = R.act(a, R.act(b, e, m), l);
        if (lie) lhs -= R.act(b, R.act(a, e, l), m);
        ConfElement rhs = R.act(product_at(C, a, b, l), e, l + m);
        ConfElement residual = lhs - rhs;
        if (residual.is_zero()) return {};
        return {true,
                {lie ? "module-jacobi" : "module-associativity",
                 {C.basis()[i], C.basis()[j], R.module().generators()[g]},
                 residual}};
      });
  CheckReport report;
  for (auto& r : results)
    if (r.bad) report.witnesses.push_back(std::move(r.w));
  report.passed = report.witnesses.empty();
  return report;
}

SubmoduleBasis sesquilinear_kernel(const ConfAlgebra& C, const HModulePresentation& target,
                                   const std::vector<std::vector<ConfElement>>& table) {
  const int nb = C.size();
  // Columns indexed by (column i, target j, D-degree d) after torsion
  // reduction; entries are polynomials in l.
  std::map<std::tuple<int, int, int>, int> col_of;
  struct Cell {
    int row, col;
    MultiPoly value;
  };
  std::vector<Cell> cells;
  for (int b = 0; b < nb; ++b)
    for (int i = 0; i < static_cast<int>(table[b].size()); ++i) {
      for (const auto& [t, poly] : table[b][i].coords()) {
        int j = target.index_of(t);
        auto by_d = poly.coefficients_in(Var::D);
        for (int d = 0; d < static_cast<int>(by_d.size()); ++d) {
          if (by_d[d].is_zero()) continue;
          auto key = std::make_tuple(i, j, d);
          auto it = col_of.find(key);
          if (it == col_of.end()) it = col_of.emplace(key, static_cast<int>(col_of.size())).first;
          cells.push_back({b, it->second, by_d[d]});
        }
      }
    }
  const int ncols = static_cast<int>(col_of.size());
  PolyMatrix A(nb, ncols, Var::L);
  for (const auto& c : cells) A.at(c.row, c.col) += c.value;

  SubmoduleBasis ker_l = syzygy_kernel(A);  // over Q[l], ambient nb
  // Map g(l) -> f(D) = g(-D).
  std::map<Var, MultiPoly> to_d{{Var::L, -MultiPoly::variable(Var::D)}};
  std::vector<std::vector<MultiPoly>> gens;
  for (const auto& g : ker_l.generators()) {
    std::vector<MultiPoly> v;
    for (const auto& p : g) v.push_back(p.substitute(to_d));
    gens.push_back(std::move(v));
  }
  return SubmoduleBasis(nb, Var::D, gens);
}

SubmoduleBasis rep_kernel(const ConfRep& R) {
  const ConfAlgebra& C = R.algebra();
  std::vector<std::vector<ConfElement>> table(C.size());
  for (int b = 0; b < C.size(); ++b)
    for (int i = 0; i < R.module().size(); ++i) table[b].push_back(R.action(b, i));
  return sesquilinear_kernel(C, R.module(), table);
}

Faithfulness is_faithful(const ConfRep& R) {
  SubmoduleBasis ker = rep_kernel(R);
  if (ker.is_zero()) return {true, std::nullopt};
  return {false, R.algebra().from_vector(ker.generators().front())};
}

ConfRep regular_rep(const ConfAlgebra& C) {
  HModulePresentation M = HModulePresentation::free_module(C.basis());
  std::vector<ActionEntry> action;
  for (const auto& a : C.basis())
    for (const auto& b : C.basis()) {
      const ConfElement& v = C.table(a, b);
      if (!v.is_zero()) action.push_back({a, b, v});
    }
  return make_rep(C, M, std::move(action));
}

ConfRep direct_sum(const ConfRep& R1, const ConfRep& R2) {
  if (R1.algebra() != R2.algebra())
    throw PreconditionError("direct sum requires modules over the same algebra");
  const auto& g1 = R1.module().generators();
  const auto& g2 = R2.module().generators();
  std::set<std::string> s1(g1.begin(), g1.end());
  bool collide =
      std::any_of(g2.begin(), g2.end(), [&](const std::string& g) { return s1.count(g) > 0; });
  auto rename = [&](const std::string& g, int side) {
    return collide ? g + "_" + std::to_string(side) : g;
  };

  std::vector<std::string> gens;
  std::vector<MultiPoly> rels;
  for (int i = 0; i < R1.module().size(); ++i) {
    gens.push_back(rename(g1[i], 1));
    rels.push_back(R1.module().relation(i));
  }
  for (int i = 0; i < R2.module().size(); ++i) {
    gens.push_back(rename(g2[i], 2));
    rels.push_back(R2.module().relation(i));
  }
  HModulePresentation M(gens, rels);

  std::vector<ActionEntry> action;
  auto copy_side = [&](const ConfRep& R, const std::vector<std::string>& names, int side) {
    for (const auto& b : R.algebra().basis())
      for (int i = 0; i < R.module().size(); ++i) {
        const ConfElement& v = R.action(R.algebra().index_of(b), i);
        if (v.is_zero()) continue;
        ConfElement moved;
        for (const auto& [t, p] : v.coords()) moved.add_term(rename(t, side), p);
        action.push_back({b, rename(names[i], side), moved});
      }
  };
  copy_side(R1, g1, 1);
  copy_side(R2, g2, 2);
  return make_rep(R1.algebra(), M, std::move(action), R1.op_action() && R2.op_action());
}

// ---------------------------------------------------------------------------
// Restriction of scalars

ExtPoly::ExtPoly(const MultiPoly& p, const ExtFieldElem& scale) {
  for (const auto& [e, c] : p.terms())
    add_term(e, ExtFieldElem::from_rational(scale.field(), c) * scale);
}

void ExtPoly::add_term(const ExpVec& e, const ExtFieldElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  ExtFieldElem sum = it->second + c;
  if (sum.is_zero())
    terms_.erase(it);
  else
    it->second = sum;
}

ExtPoly ExtPoly::scaled(const ExtFieldElem& c) const {
  ExtPoly out;
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

MultiPoly ExtPoly::coordinate_slice(int l) const {
  MultiPoly out;
  for (const auto& [e, v] : terms_) out += MultiPoly::monomial(e, v.coords()[l]);
  return out;
}

ConfRep restrict_scalars(const ExtRep& R) {
  if (!R.field) throw ContextError("restriction of scalars needs a field context");
  const int n = R.field->degree();
  for (const auto& [key, targets] : R.action)
    for (const auto& [t, poly] : targets)
      for (const auto& [e, c] : poly.terms())
        if (!(*c.field() == *R.field))
          throw ContextError("action coefficient lies in a different field context");

  auto gen_name = [](const std::string& g, int k) { return g + "_" + std::to_string(k); };
  std::vector<std::string> gens;
  for (const auto& g : R.module_generators)
    for (int k = 0; k < n; ++k) gens.push_back(gen_name(g, k));
  HModulePresentation M = HModulePresentation::free_module(gens);

  ExtFieldElem alpha = ExtFieldElem::generator(R.field);
  std::vector<ActionEntry> action;
  for (const auto& [key, targets] : R.action) {
    const auto& [symbol, generator] = key;
    for (int k = 0; k < n; ++k) {
      ConfElement value;
      ExtFieldElem ak = alpha.pow(static_cast<unsigned>(k));
      for (const auto& [target, poly] : targets) {
        ExtPoly shifted = poly.scaled(ak);  // alpha^k phi_{b,i}^j
        for (int l = 0; l < n; ++l) {
          MultiPoly f = shifted.coordinate_slice(l);
          if (!f.is_zero()) value.add_term(gen_name(target, l), f);
        }
      }
      if (!value.is_zero()) action.push_back({symbol, gen_name(generator, k), value});
    }
  }
  return make_rep(R.algebra, M, std::move(action));
}

}  // namespace confalg
