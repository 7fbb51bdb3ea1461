#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confalg/builtins.hpp"
#include "confalg/conformal.hpp"
#include "testutil.hpp"

using namespace confalg;

namespace {

MultiPoly D() { return MultiPoly::variable(Var::D); }
MultiPoly L() { return MultiPoly::variable(Var::L); }
MultiPoly Mu() { return MultiPoly::variable(Var::M); }
MultiPoly c(long n) { return MultiPoly::constant(Rational(n)); }
ConfElement sym(const std::string& s) { return ConfElement::symbol(s); }

ConfElement random_element(const ConfAlgebra& C, int deg) {
  ConfElement e;
  for (const auto& b : C.basis()) e.add_term(b, testutil::random_univariate(Var::D, deg));
  return e;
}

// One-generator table e o_l e = D*e: fails associativity.
ConfAlgebra bad_associative() {
  return ConfAlgebra(AlgebraKind::associative, {"e"},
                     {{"e", "e", ConfElement::term("e", D())}});
}

// [x o_l x] = x: fails skew-symmetry.
ConfAlgebra bad_lie() {
  return ConfAlgebra(AlgebraKind::lie, {"x"}, {{"x", "x", ConfElement::symbol("x")}});
}

}  // namespace

TEST_CASE("lambda products on the builtins") {
  ConfAlgebra vir = virasoro();
  CHECK(lambda_product(vir, sym("x"), sym("x")) ==
        ConfElement::term("x", D() + c(2) * L()));
  // left sesqui-linearity: (D x) o_l x = -l (D + 2l) x
  CHECK(lambda_product(vir, ConfElement::term("x", D()), sym("x")) ==
        ConfElement::term("x", -L() * (D() + c(2) * L())));

  ConfAlgebra cq = current_algebra(ordinary_field());
  CHECK(lambda_product(cq, sym("e"), sym("e")) == sym("e"));

  CHECK(n_product(vir, sym("x"), sym("x"), 0) == ConfElement::term("x", D()));
  CHECK(n_product(vir, sym("x"), sym("x"), 1) == ConfElement::term("x", c(2)));
  CHECK(n_product(vir, sym("x"), sym("x"), 2).is_zero());

  // (D e) o_1 e = -e from sesqui-linearity applied to e o_0 e = e
  CHECK(n_product(cq, ConfElement::term("e", D()), sym("e"), 1) ==
        ConfElement::term("e", c(-1)));
}

TEST_CASE("sesqui-linearity identity on random elements") {
  for (const ConfAlgebra& C : {virasoro(), current_algebra(ordinary_sl2())}) {
    for (int trial = 0; trial < 50; ++trial) {
      ConfElement a = random_element(C, 2), b = random_element(C, 2);
      ConfElement da;
      for (const auto& [s, p] : a.coords()) da.add_term(s, D() * p);
      CHECK(lambda_product(C, da, b).coords() ==
            ((-L()) * lambda_product(C, a, b)).coords());
      // a o_l (D b) = (D + l)(a o_l b)
      ConfElement db;
      for (const auto& [s, p] : b.coords()) db.add_term(s, D() * p);
      CHECK(lambda_product(C, a, db) == (D() + L()) * lambda_product(C, a, b));
    }
  }
}

TEST_CASE("braced products") {
  ConfAlgebra vir = virasoro();
  // {x o_0 x} = (x o_0 x) - D(x o_1 x) = Dx - 2Dx = -Dx
  CHECK(braced_product(vir, sym("x"), sym("x"), 0) == ConfElement::term("x", -D()));
  // cross-check with skew: [x o_0 x] = Dx so -{x o_0 x} = Dx
  CHECK(-braced_product(vir, sym("x"), sym("x"), 0) == n_product(vir, sym("x"), sym("x"), 0));

  ConfAlgebra cq = current_algebra(ordinary_field());
  CHECK(braced_product(cq, sym("e"), sym("e"), 0) == sym("e"));

  // Equation-(4) expansion agrees with the lambda-substitution route.
  for (const ConfAlgebra& C : {virasoro(), solvable_xy()}) {
    for (const auto& a : C.basis())
      for (const auto& b : C.basis())
        for (unsigned n = 0; n <= 3; ++n) {
          ConfElement direct;
          for (unsigned s = 0; s <= 6; ++s) {
            ConfElement term = n_product(C, sym(a), sym(b), n + s);
            if (term.is_zero()) continue;
            ConfElement scaled;
            for (const auto& [t, p] : term.coords()) scaled.add_term(t, D().pow(s) * p);
            Rational coeff = factorial(s).inverse() * ((n + s) % 2 ? Rational(-1) : Rational(1));
            direct += coeff * scaled;
          }
          CHECK(direct == braced_product(C, sym(a), sym(b), n));
        }
  }

  // Braced lambda form equals the lambda product at l -> -D-l on basis pairs.
  ConfAlgebra cm2 = current_algebra(ordinary_matrix_algebra(2));
  std::map<Var, MultiPoly> flip{{Var::L, -(D() + L())}};
  for (const auto& a : cm2.basis())
    for (const auto& b : cm2.basis())
      CHECK(braced_lambda_product(cm2, sym(a), sym(b)) ==
            lambda_product(cm2, sym(a), sym(b)).substituted(flip));
}

TEST_CASE("locality") {
  ConfAlgebra vir = virasoro();
  CHECK(locality(vir, sym("x"), sym("x")) == 2);
  CHECK(locality(vir, sym("x"), ConfElement()) == 0);
  ConfAlgebra xy = solvable_xy();
  CHECK(locality(xy, sym("x"), sym("y")) == 2);
  CHECK(locality(xy, sym("x"), sym("x")) == 0);
}

TEST_CASE("axiom checkers") {
  CHECK(check_associativity(current_algebra(ordinary_matrix_algebra(2))).passed);
  CHECK(check_associativity(current_algebra(ordinary_dual_numbers())).passed);
  CHECK(check_lie(virasoro()).passed);
  CHECK(check_lie(current_algebra(ordinary_sl2())).passed);
  CHECK(check_lie(solvable_xy()).passed);

  CheckReport bad = check_associativity(bad_associative());
  CHECK_FALSE(bad.passed);
  REQUIRE(!bad.witnesses.empty());
  CHECK(bad.witnesses[0].law == "associativity");
  CHECK_FALSE(bad.witnesses[0].residual.is_zero());

  CheckReport bad2 = check_lie(bad_lie());
  CHECK_FALSE(bad2.passed);
  CHECK(bad2.witnesses[0].law == "skew-symmetry");

  CHECK_THROWS_AS(check_lie(bad_associative()), PreconditionError);
}

TEST_CASE("algebra construction rejects bad inputs") {
  CHECK_THROWS_AS(ConfAlgebra(AlgebraKind::lie, {"D"}, {}), ParseError);
  CHECK_THROWS_AS(ConfAlgebra(AlgebraKind::lie, {"a", "a"}, {}), ParseError);
  CHECK_THROWS_AS(ConfAlgebra(AlgebraKind::lie, {"a"},
                              {{"a", "a", ConfElement::term("a", Mu())}}),
                  ParseError);  // table entries live in Q[D, l]
  CHECK_THROWS_AS(ConfAlgebra(AlgebraKind::lie, {"a"},
                              {{"a", "b", ConfElement::symbol("a")}}),
                  ParseError);  // unknown symbol
}

TEST_CASE("empty algebra is valid and passes vacuously") {
  ConfAlgebra empty(AlgebraKind::associative, {}, {});
  CHECK(check_associativity(empty).passed);
  CHECK_FALSE(find_unit(empty, UnitSide::left).has_value());
  ConfAlgebra empty_lie(AlgebraKind::lie, {}, {});
  CHECK(check_lie(empty_lie).passed);
  CHECK(derived_series(empty_lie).solvable);
}

TEST_CASE("associativity identities for braced products on basis triples") {
  std::vector<ConfAlgebra> algebras;
  algebras.push_back(current_algebra(ordinary_field()));
  algebras.push_back(current_algebra(ordinary_dual_numbers()));
  algebras.push_back(current_algebra(ordinary_matrix_algebra(2)));
  algebras.push_back(split_null_trunc());
  algebras.push_back(differential_algebra(ordinary_truncated_poly(3)));

  MultiPoly braced_l = -(D() + L());
  MultiPoly braced_m = -(D() + Mu());
  for (const ConfAlgebra& C : algebras) {
    REQUIRE(check_associativity(C).passed);
    for (const auto& as : C.basis())
      for (const auto& bs : C.basis())
        for (const auto& cs : C.basis()) {
          ConfElement a = sym(as), b = sym(bs), e = sym(cs);
          // a o_l {b o_m c} = {(a o_l b) o_m c}
          CHECK(product_at(C, a, product_at(C, b, e, braced_m), L()) ==
                product_at(C, product_at(C, a, b, L()), e, braced_m));
          // {a o_l (b o_m c)} = {{a o_m b} o_{l-m} c}
          CHECK(product_at(C, a, product_at(C, b, e, Mu()), braced_l) ==
                product_at(C, product_at(C, a, b, braced_m), e, -(D() + L() - Mu())));
          // {a o_l {b o_m c}} = {{a o_{l-m} b} o_m c}
          CHECK(product_at(C, a, product_at(C, b, e, braced_m), braced_l) ==
                product_at(C, product_at(C, a, b, -(D() + L() - Mu())), e, braced_m));
          // {a o_l b} o_m c = a o_{m-l} (b o_l c)
          CHECK(product_at(C, product_at(C, a, b, braced_l), e, Mu()) ==
                product_at(C, a, product_at(C, b, e, L()), Mu() - L()));
        }
  }
}

TEST_CASE("commutator algebra") {
  ConfAlgebra cm2 = current_algebra(ordinary_matrix_algebra(2));
  ConfAlgebra gl2 = commutator_algebra(cm2);
  CHECK(gl2.kind() == AlgebraKind::lie);
  CHECK(check_lie(gl2).passed);
  // Curr(M2)^(-) = Curr(gl2) entrywise.
  CHECK(gl2 == current_algebra(ordinary_commutator(ordinary_matrix_algebra(2))));

  // Commutative current collapses to the zero table.
  ConfAlgebra cq = current_algebra(ordinary_field());
  ConfAlgebra zero = commutator_algebra(cq);
  CHECK(lambda_product(zero, sym("e"), sym("e")).is_zero());

  CHECK(check_lie(commutator_algebra(split_null_trunc())).passed);
  CHECK(check_lie(commutator_algebra(differential_algebra(ordinary_truncated_poly(3)))).passed);
  CHECK_THROWS_AS(commutator_algebra(bad_associative()), PreconditionError);
}

TEST_CASE("opposite algebra") {
  ConfAlgebra cm2 = current_algebra(ordinary_matrix_algebra(2));
  CHECK(opposite_algebra(opposite_algebra(cm2)) == cm2);

  ConfAlgebra cq = current_algebra(ordinary_field());
  CHECK(opposite_algebra(cq) == cq);

  ConfAlgebra ex = split_null_trunc();
  ConfAlgebra exop = opposite_algebra(ex);
  CHECK(check_associativity(exop).passed);
  CHECK(opposite_algebra(exop) == ex);
  // v o^op_l e = {e o_l v} = v
  CHECK(lambda_product(exop, sym("v"), sym("e")) == sym("v"));
  CHECK(lambda_product(exop, sym("e"), sym("v")).is_zero());
}

TEST_CASE("unit search") {
  // Current algebra of a unital ordinary algebra: two-sided unit 1 (x) 1.
  ConfAlgebra cm2 = current_algebra(ordinary_matrix_algebra(2));
  auto two = find_unit(cm2, UnitSide::two_sided);
  REQUIRE(two.has_value());
  CHECK(*two == sym("e11") + sym("e22"));
  CHECK(n_product(cm2, *two, sym("e12"), 0) == sym("e12"));
  CHECK(braced_product(cm2, sym("e12"), *two, 0) == sym("e12"));

  ConfAlgebra ex = split_null_trunc();
  auto left = find_unit(ex, UnitSide::left);
  REQUIRE(left.has_value());
  CHECK(*left == sym("e"));
  CHECK_FALSE(find_unit(ex, UnitSide::right).has_value());
  CHECK_FALSE(find_unit(ex, UnitSide::two_sided).has_value());

  CHECK_THROWS_AS(find_unit(virasoro(), UnitSide::left), PreconditionError);
}

TEST_CASE("derived series") {
  {
    DerivedSeries s = derived_series(current_algebra(ordinary_solvable2()));
    REQUIRE(s.terms.size() == 3);
    CHECK(s.terms[0].rank() == 2);
    CHECK(s.terms[1].rank() == 1);
    CHECK(s.terms[1].contains({MultiPoly(), c(1)}));  // span{b}
    CHECK(s.terms[2].is_zero());
    CHECK(s.solvable);
  }
  {
    DerivedSeries s = derived_series(virasoro());
    CHECK_FALSE(s.solvable);
    CHECK(s.terms.back().rank() == 1);  // L' = L
  }
  {
    DerivedSeries s = derived_series(current_algebra(ordinary_abelian(2)));
    CHECK(s.solvable);
    CHECK(s.terms.back().is_zero());
  }
  {
    DerivedSeries s = derived_series(solvable_xy());
    CHECK(s.solvable);
    REQUIRE(s.terms.size() == 3);
    CHECK(s.terms[1].rank() == 1);
  }
  {
    // Terms form a descending chain.
    for (const ConfAlgebra& C :
         {current_algebra(ordinary_sl2()), solvable_xy(), current_algebra(ordinary_solvable2())}) {
      DerivedSeries s = derived_series(C);
      for (size_t i = 0; i + 1 < s.terms.size(); ++i) CHECK(s.terms[i].contains(s.terms[i + 1]));
    }
  }
  CHECK_THROWS_AS(derived_series(split_null_trunc()), PreconditionError);
}

TEST_CASE("growth profile for table algebras") {
  ConfAlgebra cm2 = current_algebra(ordinary_matrix_algebra(2));
  std::vector<ConfElement> gens;
  for (const auto& b : cm2.basis()) gens.push_back(sym(b));
  auto ranks = growth_profile(cm2, gens, 4);
  CHECK(ranks == std::vector<int>{4, 4, 4, 4});

  ConfAlgebra xy = solvable_xy();
  auto r2 = growth_profile(xy, {sym("x"), sym("y")}, 3);
  CHECK(r2 == std::vector<int>{2, 2, 2});
}
