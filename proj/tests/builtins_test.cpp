#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confalg/builtins.hpp"
#include "testutil.hpp"

using namespace confalg;

namespace {

MultiPoly D() { return MultiPoly::variable(Var::D); }
MultiPoly X() { return MultiPoly::variable(Var::X); }
MultiPoly L() { return MultiPoly::variable(Var::L); }
MultiPoly c(long n) { return MultiPoly::constant(Rational(n)); }

MatrixConfElem scalar1(MultiPoly p) { return MatrixConfElem(1, {std::move(p)}); }

MatrixConfElem random_cend(int n, int deg) {
  MatrixConfElem m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = testutil::random_poly({Var::D, Var::X}, deg);
  return m;
}

}  // namespace

TEST_CASE("ordinary algebra identities") {
  CHECK(ordinary_field().identity_holds());
  CHECK(ordinary_dual_numbers().identity_holds());
  CHECK(ordinary_matrix_algebra(2).identity_holds());
  CHECK(ordinary_matrix_algebra(3).identity_holds());
  CHECK(ordinary_sl2().identity_holds());
  CHECK(ordinary_solvable2().identity_holds());
  CHECK(ordinary_commutator(ordinary_matrix_algebra(2)).identity_holds());
  CHECK(ordinary_truncated_poly(3).identity_holds());
  CHECK(ordinary_truncated_poly(3).derivation_is_leibniz());
  CHECK(ordinary_matrix_truncated_poly(2, 2).identity_holds());
  CHECK(ordinary_matrix_truncated_poly(2, 2).derivation_is_leibniz());

  // The raw d/dx matrix violates Leibniz on the truncation.
  OrdinaryAlgebra bad = ordinary_truncated_poly(3);
  bad.set_derivation(ddx_matrix(3));
  CHECK_FALSE(bad.derivation_is_leibniz());
}

TEST_CASE("current algebra constructors") {
  ConfAlgebra cq = current_algebra(ordinary_field());
  CHECK(lambda_product(cq, ConfElement::symbol("e"), ConfElement::symbol("e")) ==
        ConfElement::symbol("e"));
  CHECK(check_lie(current_algebra(ordinary_sl2())).passed);

  ConfAlgebra solv = current_algebra(ordinary_solvable2());
  CHECK(lambda_product(solv, ConfElement::symbol("a"), ConfElement::symbol("b")) ==
        ConfElement::symbol("b"));
  CHECK(lambda_product(solv, ConfElement::symbol("b"), ConfElement::symbol("a")) ==
        -ConfElement::symbol("b"));
  CHECK(check_lie(solv).passed);

  OrdinaryAlgebra broken(AlgebraKind::associative, {"u"});
  broken.set_product(0, 0, 0, Rational(1));
  OrdinaryAlgebra broken_lie(AlgebraKind::lie, {"u", "w"});
  broken_lie.set_product(0, 1, 0, Rational(1));  // not antisymmetric
  CHECK_THROWS_AS(current_algebra(broken_lie), PreconditionError);
}

TEST_CASE("virasoro constructor") {
  ConfAlgebra vir = virasoro();
  CHECK(n_product(vir, ConfElement::symbol("x"), ConfElement::symbol("x"), 0) ==
        ConfElement::term("x", D()));
  CHECK(n_product(vir, ConfElement::symbol("x"), ConfElement::symbol("x"), 1) ==
        ConfElement::term("x", c(2)));
  CHECK(check_lie(vir).passed);
}

TEST_CASE("cend product") {
  // n = 1: x o_l x = x(x + l) = x^2 + l x
  MatrixConfElem x = scalar1(X());
  CHECK(cend_product(x, x) == scalar1(X() * X() + L() * X()));

  // 1 is a two-sided unit: 1 o_l b = b with D -> D+l, x -> x+l; braced check.
  MatrixConfElem one = MatrixConfElem::identity(2);
  MatrixConfElem b = random_cend(2, 2);
  CHECK(cend_n_product(one, b, 0) == b);
  CHECK(cend_braced_product(b, one, 0) == b);
  CHECK(cend_locality(one, one) == 1);

  // D o_l b = -l b(D+l, x+l)
  MatrixConfElem d1 = scalar1(D());
  MatrixConfElem b1 = scalar1(D() * X() + c(3));
  MatrixConfElem expect =
      (-L()) * b1.substituted({{Var::D, D() + L()}, {Var::X, X() + L()}});
  CHECK(cend_product(d1, b1) == expect);

  CHECK(cend_locality(x, x) == 2);
  CHECK(cend_locality(x, MatrixConfElem(1)) == 0);
}

TEST_CASE("cend action") {
  // x o_0 v = D v
  MatrixConfElem x = scalar1(X());
  auto img = cend_act(x, {c(1)});
  REQUIRE(img.size() == 1);
  CHECK(img[0].coefficient_of(Var::L, 0) == D());

  // 1 o_l h(D) v = h(D + l) v
  MatrixConfElem one = MatrixConfElem::identity(1);
  MultiPoly h = D() * D() + c(2);
  auto img2 = cend_act(one, {h});
  CHECK(img2[0] == h.substitute({{Var::D, D() + L()}}));

  // a_k o_0 e2 = (1/k!) D^k e1 for the Example-3.5 matrices a_k = x^k/k! e12.
  for (unsigned k = 0; k <= 5; ++k) {
    MatrixConfElem ak =
        MatrixConfElem::unit(2, 0, 1, MultiPoly::monomial([k] {
                               ExpVec e{};
                               e[static_cast<int>(Var::X)] = static_cast<int>(k);
                               return e;
                             }(),
                             factorial(k).inverse()));
    auto act = cend_act(ak, {MultiPoly(), c(1)});
    MultiPoly expected = MultiPoly::monomial([k] {
      ExpVec e{};
      e[static_cast<int>(Var::D)] = static_cast<int>(k);
      return e;
    }(), factorial(k).inverse());
    CHECK(act[0].coefficient_of(Var::L, 0) == expected);
    CHECK(act[1].is_zero());
  }
}

TEST_CASE("cend product specializes to the action on x-free right factors") {
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 2;
    MatrixConfElem a = random_cend(n, 2);
    std::vector<MultiPoly> v;
    for (int i = 0; i < n; ++i) v.push_back(testutil::random_univariate(Var::D, 2));
    // Embed v as the first column of a matrix, multiply, substitute x -> D.
    MatrixConfElem vm(n);
    for (int i = 0; i < n; ++i) vm.at(i, 0) = v[i];
    MatrixConfElem prod = cend_product(a, vm);
    auto act = cend_act(a, v);
    for (int i = 0; i < n; ++i)
      CHECK(prod.at(i, 0).substitute({{Var::X, D()}}) == act[i]);
  }
}

TEST_CASE("weyl associativity on monomial triples of total degree <= 4") {
  std::vector<MatrixConfElem> monos;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      ExpVec e{};
      e[static_cast<int>(Var::D)] = a;
      e[static_cast<int>(Var::X)] = b;
      monos.push_back(scalar1(MultiPoly::monomial(e, Rational(1))));
    }
  const MultiPoly l = L(), m = MultiPoly::variable(Var::M);
  for (const auto& A : monos)
    for (const auto& B : monos)
      for (const auto& C : monos) {
        MatrixConfElem lhs = cend_product(A, cend_product(B, C, m), l);
        MatrixConfElem rhs = cend_product(cend_product(A, B, l), C, l + m);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("tau transpose") {
  MatrixConfElem a(2);
  a.at(0, 1) = X();
  a.at(1, 0) = D();
  CHECK(tau_transpose(tau_transpose(a)) == a);
  CHECK(tau_transpose(MatrixConfElem::identity(2)) == MatrixConfElem::identity(2));

  // {tau(b) o_n tau(a)} = tau(a o_n b) on random pairs.
  for (int trial = 0; trial < 20; ++trial) {
    MatrixConfElem x = random_cend(2, 3), y = random_cend(2, 3);
    for (unsigned n = 0; n <= 4; ++n) {
      MatrixConfElem lhs = cend_right_braced_product(tau_transpose(y), tau_transpose(x), n);
      MatrixConfElem rhs = tau_transpose(cend_n_product(x, y, n));
      CHECK(lhs == rhs);
    }
  }

  // tau is H-linear: multiplication by D on the left presentation matches
  // multiplication by x on the right presentation.
  MatrixConfElem r = random_cend(2, 2);
  CHECK(tau_transpose(D() * r) == X() * tau_transpose(r));
}

TEST_CASE("cend ideals") {
  MatrixConfElem P = scalar1(X());
  MatrixConfElem one = MatrixConfElem::identity(1);
  CHECK(cend_ideal_element(IdealSide::right, P, one) == scalar1(X()));
  CHECK(cend_ideal_element(IdealSide::left, P, one) == scalar1(X() - D()));

  MatrixConfElem A = random_cend(1, 2);
  CHECK(cend_ideal_element(IdealSide::right, MatrixConfElem::identity(1), A) == A);

  // Right-ideal closure: every lambda-coefficient of (x A) o_l B is divisible
  // by x (checked as x-degree >= 1 termwise).
  for (int trial = 0; trial < 10; ++trial) {
    MatrixConfElem xa = cend_ideal_element(IdealSide::right, P, random_cend(1, 2));
    MatrixConfElem prod = cend_product(xa, random_cend(1, 2));
    for (const auto& piece : prod.divided_coefficients_in(Var::L))
      for (const auto& [e, coeff] : piece.at(0, 0).terms())
        CHECK(e[static_cast<int>(Var::X)] >= 1);
  }
  // Left-ideal closure: B o_l (A P(x - D)) stays in the left ideal, i.e. is
  // divisible by (x - D) on the right; verified via the substitution x -> D.
  for (int trial = 0; trial < 10; ++trial) {
    MatrixConfElem ap = cend_ideal_element(IdealSide::left, P, random_cend(1, 2));
    MatrixConfElem prod = cend_product(random_cend(1, 2), ap);
    CHECK(prod.at(0, 0).substitute({{Var::X, D()}}).is_zero());
  }

  // n = 2 with P = diag(x, 1): the right ideal keeps its first row divisible
  // by x, the left ideal keeps its first column divisible by (x - D).
  MatrixConfElem P2(2);
  P2.at(0, 0) = X();
  P2.at(1, 1) = c(1);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixConfElem pa = cend_ideal_element(IdealSide::right, P2, random_cend(2, 2));
    MatrixConfElem prod = cend_product(pa, random_cend(2, 2));
    for (const auto& piece : prod.divided_coefficients_in(Var::L))
      for (int j = 0; j < 2; ++j)
        for (const auto& [e, coeff] : piece.at(0, j).terms())
          CHECK(e[static_cast<int>(Var::X)] >= 1);

    MatrixConfElem ap = cend_ideal_element(IdealSide::left, P2, random_cend(2, 2));
    MatrixConfElem prod2 = cend_product(random_cend(2, 2), ap);
    for (int i = 0; i < 2; ++i)
      CHECK(prod2.at(i, 0).substitute({{Var::X, D()}}).is_zero());
  }
}

TEST_CASE("split null extension") {
  // (x, 0) o_0 (0, v) = (0, D v)
  SplitNullElem xe{scalar1(X()), {MultiPoly()}};
  SplitNullElem ve{MatrixConfElem(1), {c(1)}};
  SplitNullElem prod = split_null_product(xe, ve);
  CHECK(prod.alg.is_zero());
  CHECK(prod.mod[0].coefficient_of(Var::L, 0) == D());

  // (1, 0) is a left unit at n = 0.
  SplitNullElem one{MatrixConfElem::identity(1), {MultiPoly()}};
  SplitNullElem w{scalar1(D() * X()), {D() + c(1)}};
  SplitNullElem p2 = split_null_product(one, w);
  CHECK(p2.alg.at(0, 0).coefficient_of(Var::L, 0) == D() * X());
  CHECK(p2.mod[0].coefficient_of(Var::L, 0) == D() + c(1));

  // Module parts annihilate from the left.
  SplitNullElem p3 = split_null_product(ve, w);
  CHECK(p3.alg.is_zero());
  CHECK(p3.mod[0].is_zero());

  // Associativity spot-check on samples: (u o_l v) o_{l+m} w = u o_l (v o_m w).
  for (int trial = 0; trial < 10; ++trial) {
    SplitNullElem u{random_cend(1, 2), {testutil::random_univariate(Var::D, 2)}};
    SplitNullElem v{random_cend(1, 2), {testutil::random_univariate(Var::D, 2)}};
    SplitNullElem z{random_cend(1, 2), {testutil::random_univariate(Var::D, 2)}};
    MultiPoly l = L(), m = MultiPoly::variable(Var::M);
    SplitNullElem lhs = split_null_product(u, split_null_product(v, z, m), l);
    SplitNullElem inner = split_null_product(u, v, l);
    // Right factor of the outer product picks up D -> D + (l+m) shifts via
    // the product at l+m.
    SplitNullElem rhs = split_null_product(inner, z, l + m);
    CHECK(lhs.alg == rhs.alg);
    CHECK(lhs.mod == rhs.mod);
  }
}

TEST_CASE("c0 subalgebra membership and closure") {
  MatrixConfElem good(2);
  good.at(0, 0) = D() + c(1);
  good.at(1, 1) = D() + c(1);
  good.at(0, 1) = D() * X();
  CHECK(c0_contains(good));
  MatrixConfElem bad = good;
  bad.at(1, 0) = c(1);
  CHECK_FALSE(c0_contains(bad));
  MatrixConfElem bad2 = good;
  bad2.at(0, 0) = X();
  CHECK_FALSE(c0_contains(bad2));

  SplitNullElem u{good, {c(1), D()}};
  CHECK_THROWS_AS(split_null_product(SplitNullElem{bad, {c(1), c(0)}}, u,
                                     SplitNullAmbient::c0),
                  MembershipError);
  // Closure of C0 under the product: lambda coefficients stay in C0.
  for (int trial = 0; trial < 10; ++trial) {
    MatrixConfElem f(2);
    MultiPoly diag = testutil::random_univariate(Var::D, 2);
    f.at(0, 0) = diag;
    f.at(1, 1) = diag;
    f.at(0, 1) = testutil::random_poly({Var::D, Var::X}, 2);
    MatrixConfElem g(2);
    MultiPoly diag2 = testutil::random_univariate(Var::D, 2);
    g.at(0, 0) = diag2;
    g.at(1, 1) = diag2;
    g.at(0, 1) = testutil::random_poly({Var::D, Var::X}, 2);
    for (const auto& piece : cend_product(f, g).divided_coefficients_in(Var::L))
      CHECK(c0_contains(piece));
  }
}

TEST_CASE("differential conformal algebras") {
  ConfAlgebra dx3 = differential_algebra(ordinary_truncated_poly(3));
  CHECK(check_associativity(dx3).passed);
  // a o_n b = a der^n(b): with der = x^2 d/dx, p1 o_1 p1 = p1 * p2 = 0,
  // p0 o_1 p1 = p2.
  CHECK(n_product(dx3, ConfElement::symbol("p1"), ConfElement::symbol("p1"), 1).is_zero());
  CHECK(n_product(dx3, ConfElement::symbol("p0"), ConfElement::symbol("p1"), 1) ==
        ConfElement::symbol("p2"));

  ConfAlgebra dm = differential_algebra(ordinary_matrix_truncated_poly(2, 2));
  CHECK(check_associativity(dm).passed);

  // Zero derivation recovers the current algebra.
  OrdinaryAlgebra A = ordinary_matrix_algebra(2);
  A.set_derivation(std::vector<Rational>(16, Rational(0)));
  CHECK(differential_algebra(A) == current_algebra(ordinary_matrix_algebra(2)));

  // The literal d/dx data on the truncation is rejected (not a derivation).
  OrdinaryAlgebra bad = ordinary_truncated_poly(3);
  bad.set_derivation(ddx_matrix(3));
  CHECK_THROWS_AS(differential_algebra(bad), PreconditionError);

  // Non-nilpotent derivations are rejected with the offending power.
  OrdinaryAlgebra tor(AlgebraKind::associative, {"u"});
  tor.set_product(0, 0, 0, Rational(1));
  tor.set_derivation({Rational(1)});
  CHECK_THROWS_AS(differential_algebra(tor), PreconditionError);
}

TEST_CASE("split-null truncation table matches the matrix model") {
  // The table algebra {e, v} is the span of (1, 0) and (0, v) inside
  // Cend_1 (+) M_1; its products must match the concrete split-null products.
  ConfAlgebra T = split_null_trunc();
  SplitNullElem me{MatrixConfElem::identity(1), {MultiPoly()}};
  SplitNullElem mv{MatrixConfElem(1), {c(1)}};
  auto as_pair = [&](const std::string& s) { return s == "e" ? me : mv; };
  for (const auto& a : T.basis())
    for (const auto& b : T.basis()) {
      SplitNullElem prod = split_null_product(as_pair(a), as_pair(b));
      LambdaElem table = lambda_product(T, ConfElement::symbol(a), ConfElement::symbol(b));
      // Coordinates of the matrix-model product on (1, 0) and (0, v).
      MultiPoly ecoord = prod.alg.at(0, 0);
      MultiPoly vcoord = prod.mod[0];
      CHECK(table.coord("e") == ecoord);
      CHECK(table.coord("v") == vcoord);
    }
}

TEST_CASE("growth profile in the Cend ambient") {
  MatrixConfElem x = scalar1(X());
  auto ranks = growth_profile_cend(1, {x}, 5);
  REQUIRE(ranks.size() == 5);
  for (size_t i = 0; i < ranks.size(); ++i) {
    CHECK(ranks[i] <= 2 * static_cast<int>(i + 1));
    if (i) CHECK(ranks[i] > ranks[i - 1]);  // strictly increasing
  }

  // A corner generator of Cend_2 grows linearly inside its corner.
  MatrixConfElem xe11 = MatrixConfElem::unit(2, 0, 0, X());
  auto r2 = growth_profile_cend(2, {xe11}, 4);
  REQUIRE(r2.size() == 4);
  for (size_t i = 0; i < r2.size(); ++i) {
    CHECK(r2[i] <= 2 * static_cast<int>(i + 1));
    if (i) CHECK(r2[i] >= r2[i - 1]);
  }
}
