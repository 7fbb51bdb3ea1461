#pragma once

// Conformal modules and representations: action tables over H-module
// presentations (free plus cyclic torsion summands), well-definedness and
// axiom checking, kernels and faithfulness, direct sums, regular
// representations, and restriction of scalars from Q(alpha) to Q.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confalg/conformal.hpp"
#include "confalg/extfield.hpp"

namespace confalg {

// Generators e_1..e_m with relation polynomials h_i in Q[D]; h_i = 0 means a
// free summand, otherwise the summand is H/(h_i) with canonical coset
// representatives of D-degree < deg h_i. Relations are normalized monic.
class HModulePresentation {
 public:
  HModulePresentation(std::vector<std::string> generators, std::vector<MultiPoly> relations);

  static HModulePresentation free_module(std::vector<std::string> generators);

  int size() const { return static_cast<int>(gens_.size()); }
  const std::vector<std::string>& generators() const { return gens_; }
  const MultiPoly& relation(int i) const { return relations_[i]; }
  bool is_free(int i) const { return relations_[i].is_zero(); }
  bool is_free() const;
  int index_of(const std::string& name) const;
  bool has_generator(const std::string& name) const { return index_.count(name) > 0; }

  // Canonical torsion reduction of the D-coordinates (l, m ride along).
  ConfElement reduce(const ConfElement& e) const;

  friend bool operator==(const HModulePresentation& a, const HModulePresentation& b) {
    return a.gens_ == b.gens_ && a.relations_ == b.relations_;
  }

 private:
  std::vector<std::string> gens_;
  std::vector<MultiPoly> relations_;
  std::map<std::string, int> index_;
};

struct ActionEntry {
  std::string symbol;     // algebra basis symbol
  std::string generator;  // module generator
  ConfElement value;      // rho(symbol)_l generator, coefficients in D and l
};

class ConfRep {
 public:
  // Prefer make_rep, which runs the torsion well-definedness check.
  ConfRep(ConfAlgebra algebra, HModulePresentation module, std::vector<ActionEntry> action,
          bool op_action = false);

  const ConfAlgebra& algebra() const { return algebra_; }
  const HModulePresentation& module() const { return module_; }
  // True when the stored algebra is C^op of the algebra of interest, i.e.
  // this left representation encodes a right representation of C.
  bool op_action() const { return op_; }

  const ConfElement& action(const std::string& symbol, const std::string& generator) const;
  const ConfElement& action(int symbol_idx, int generator_idx) const;

  // Sesqui-bilinear application rho(a)_nu m, torsion-reduced. Coefficients of
  // a and m may carry l/m as spectators (used by the checkers).
  ConfElement act(const ConfElement& a, const ConfElement& m, const MultiPoly& nu) const;
  ConfElement act_lambda(const ConfElement& a, const ConfElement& m) const;

 private:
  ConfAlgebra algebra_;
  HModulePresentation module_;
  std::vector<std::vector<ConfElement>> action_;  // [symbol][generator]
  bool op_;
};

// Constructs the representation after checking well-definedness on torsion:
// the extension must annihilate each relation h_i(D)e_i in the quotient.
// Throws WellDefinednessError with the witness (symbol, generator).
ConfRep make_rep(const ConfAlgebra& C, const HModulePresentation& M,
                 std::vector<ActionEntry> action, bool op_action = false);

// Verifies the module law (associative or Lie, per the algebra kind) for all
// basis pairs and module generators, in Q[D, l, m] within the quotient.
CheckReport check_rep(const ConfRep& R);

// Generators of Ker rho as an H-submodule of the algebra: slice the kernel
// condition sum_b f_b(-l) phi_{b,i}^j(D,l) = 0 (mod h_j) by D-degree into a
// matrix over Q[l], take syzygies, and map back through f(D) = g(-D).
SubmoduleBasis rep_kernel(const ConfRep& R);

// The same computation for any sesqui-linear table C x {columns} -> target
// quotient; table[b][i] must already be torsion-reduced. Shared by rep_kernel
// and the pairing kernel of the double construction.
SubmoduleBasis sesquilinear_kernel(const ConfAlgebra& C, const HModulePresentation& target,
                                   const std::vector<std::vector<ConfElement>>& table);

struct Faithfulness {
  bool faithful = false;
  std::optional<ConfElement> witness;  // nonzero kernel generator if not
};

Faithfulness is_faithful(const ConfRep& R);

ConfRep regular_rep(const ConfAlgebra& C);

ConfRep direct_sum(const ConfRep& R1, const ConfRep& R2);

// ---------------------------------------------------------------------------
// Restriction of scalars. An ExtRep is an action table over Q(alpha) on a
// free module, for an algebra whose own table is rational.

class ExtPoly {
 public:
  ExtPoly() = default;
  ExtPoly(const MultiPoly& p, const ExtFieldElem& scale);  // p * scale

  void add_term(const ExpVec& e, const ExtFieldElem& c);
  const std::map<ExpVec, ExtFieldElem, GrlexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExtPoly scaled(const ExtFieldElem& c) const;
  // Rational polynomial of the coordinate l in the power basis.
  MultiPoly coordinate_slice(int l) const;

 private:
  std::map<ExpVec, ExtFieldElem, GrlexLess> terms_;
};

struct ExtRep {
  ConfAlgebra algebra;
  std::vector<std::string> module_generators;  // free module over Q(alpha)[D]
  ExtFieldPtr field;
  // action[{symbol, generator}][target] = polynomial in D, l over Q(alpha)
  std::map<std::pair<std::string, std::string>, std::map<std::string, ExtPoly>> action;
};

// Power-basis expansion: generators e_i^k (k = 0..n-1, named "e_k"),
// with b o_l e_i^k = sum_{j,l} f_{b,i,k}^{j,l} e_j^l where
// alpha^k phi_{b,i}^j = sum_l alpha^l f_{b,i,k}^{j,l}.
ConfRep restrict_scalars(const ExtRep& R);

}  // namespace confalg
