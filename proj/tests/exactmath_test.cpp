#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confalg/extfield.hpp"
#include "confalg/multipoly.hpp"
#include "testutil.hpp"

using namespace confalg;

namespace {

MultiPoly var(Var v) { return MultiPoly::variable(v); }
MultiPoly c(long n) { return MultiPoly::constant(Rational(n)); }
MultiPoly c(long n, long d) { return MultiPoly::constant(Rational(n, d)); }

}  // namespace

TEST_CASE("rationals are canonical") {
  Rational r(6, 4);
  CHECK(r.numerator() == 3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational::from_string("3/2") == Rational(3, 2));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational(1, 0), ArithmeticError);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), ArithmeticError);
  CHECK(Rational(2, 3).inverse() == Rational(3, 2));
  CHECK(factorial(5) == Rational(120));
  CHECK(binomial(5, 2) == Rational(10));
  CHECK(binomial(2, 5) == Rational(0));
  CHECK(falling_factorial(5, 2) == Rational(20));
  CHECK(falling_factorial(2, 5) == Rational(0));
}

TEST_CASE("substitution: direct examples") {
  // x with x -> x + l
  MultiPoly p = var(Var::X);
  MultiPoly r = p.substitute({{Var::X, var(Var::X) + var(Var::L)}});
  CHECK(r == var(Var::X) + var(Var::L));

  // D^2 with D -> D + l gives the binomial expansion
  MultiPoly q = var(Var::D).pow(2).substitute({{Var::D, var(Var::D) + var(Var::L)}});
  MultiPoly expect = var(Var::D).pow(2) + c(2) * var(Var::D) * var(Var::L) + var(Var::L).pow(2);
  CHECK(q == expect);

  // x*D with D -> -l, x -> x+l: expanded by hand to -l*x - l^2
  MultiPoly s = (var(Var::X) * var(Var::D))
                    .substitute({{Var::D, -var(Var::L)}, {Var::X, var(Var::X) + var(Var::L)}});
  MultiPoly expect2 = -(var(Var::L) * var(Var::X)) - var(Var::L).pow(2);
  CHECK(s == expect2);

  CHECK_THROWS_AS(p.substitute({{Var::X, var(Var::X).pow(2)}}), PreconditionError);
}

TEST_CASE("substitution is a ring homomorphism on random samples") {
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly p = testutil::random_poly({Var::D, Var::X, Var::L}, 3);
    MultiPoly q = testutil::random_poly({Var::D, Var::X, Var::L}, 3);
    std::map<Var, MultiPoly> sub{{Var::D, -var(Var::L)},
                                 {Var::X, var(Var::X) + var(Var::L) + c(1, 2)}};
    CHECK((p * q).substitute(sub) == p.substitute(sub) * q.substitute(sub));
    CHECK((p + q).substitute(sub) == p.substitute(sub) + q.substitute(sub));
  }
}

TEST_CASE("ring axioms on random samples") {
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly a = testutil::random_poly({Var::D, Var::L, Var::M}, 3);
    MultiPoly b = testutil::random_poly({Var::D, Var::L, Var::M}, 3);
    MultiPoly cc = testutil::random_poly({Var::D, Var::L, Var::M}, 3);
    CHECK(a * b == b * a);
    CHECK((a * b) * cc == a * (b * cc));
    CHECK(a * (b + cc) == a * b + a * cc);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("coefficient extraction") {
  // x^2 + l*x in l: [x^2, x]
  MultiPoly p = var(Var::X).pow(2) + var(Var::L) * var(Var::X);
  auto cs = p.coefficients_in(Var::L);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == var(Var::X).pow(2));
  CHECK(cs[1] == var(Var::X));

  CHECK(MultiPoly().coefficients_in(Var::L).empty());

  // D + 2l: plain [D, 2]; divided powers n=0 -> D, n=1 -> 2
  MultiPoly q = var(Var::D) + c(2) * var(Var::L);
  auto qs = q.coefficients_in(Var::L);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0] == var(Var::D));
  CHECK(qs[1] == c(2));
  auto dp = q.divided_coefficients_in(Var::L);
  CHECK(dp[0] == var(Var::D));
  CHECK(dp[1] == c(2));
}

TEST_CASE("coefficients_in round-trips") {
  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = testutil::random_poly({Var::D, Var::X, Var::L}, 4);
    auto cs = p.coefficients_in(Var::L);
    MultiPoly rebuilt;
    for (size_t k = 0; k < cs.size(); ++k)
      rebuilt += cs[k] * var(Var::L).pow(static_cast<unsigned>(k));
    CHECK(rebuilt == p);
  }
}

TEST_CASE("divmod in one variable with spectators") {
  MultiPoly h = var(Var::D).pow(2) + c(1);  // D^2 + 1
  MultiPoly p = var(Var::L) * var(Var::D).pow(3) + var(Var::D);
  auto dm = p.divmod_in(Var::D, h);
  CHECK(dm.quotient * h + dm.remainder == p);
  CHECK(dm.remainder.degree_in(Var::D) < 2);
}

TEST_CASE("parse and print round-trip") {
  CHECK(MultiPoly::parse("D + 2*l") == var(Var::D) + c(2) * var(Var::L));
  CHECK(MultiPoly::parse("(D+l)^2") == (var(Var::D) + var(Var::L)).pow(2));
  CHECK(MultiPoly::parse("3/2") == c(3, 2));
  CHECK(MultiPoly::parse("-x + 1") == c(1) - var(Var::X));
  CHECK(MultiPoly::parse("0").is_zero());
  CHECK_THROWS_AS(MultiPoly::parse("q + 1"), ParseError);
  CHECK_THROWS_AS(MultiPoly::parse("1 +"), ParseError);

  CHECK((var(Var::X).pow(2) + var(Var::L) * var(Var::X)).to_string() == "x^2 + l*x");
  CHECK((var(Var::D) + c(2) * var(Var::L)).to_string() == "D + 2*l");
  CHECK(MultiPoly().to_string() == "0");
  CHECK((-c(3) * var(Var::T).pow(2)).to_string() == "-3*t^2");

  for (int trial = 0; trial < 30; ++trial) {
    MultiPoly p = testutil::random_poly({Var::D, Var::X, Var::L, Var::M, Var::T}, 3);
    CHECK(MultiPoly::parse(p.to_string()) == p);
  }
}

TEST_CASE("extension field arithmetic") {
  auto gauss = std::make_shared<const ExtField>(
      std::vector<Rational>{Rational(1), Rational(0), Rational(1)});  // a^2 + 1
  ExtFieldElem i = ExtFieldElem::generator(gauss);
  CHECK(i * i == ExtFieldElem::from_rational(gauss, Rational(-1)));

  // (1 + i)^{-1} = (1 - i)/2, verified by multiplying back
  ExtFieldElem z = ExtFieldElem::one(gauss) + i;
  ExtFieldElem zi = z.inverse();
  CHECK(z * zi == ExtFieldElem::one(gauss));
  CHECK(zi == ExtFieldElem(gauss, {Rational(1, 2), Rational(-1, 2)}));

  auto sqrt2 = std::make_shared<const ExtField>(
      std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});  // a^2 - 2
  ExtFieldElem r = ExtFieldElem::generator(sqrt2);
  CHECK(r * r == ExtFieldElem::from_rational(sqrt2, Rational(2)));

  CHECK_THROWS_AS(ExtFieldElem::zero(gauss).inverse(), ArithmeticError);
  CHECK_THROWS_AS(i + ExtFieldElem::generator(sqrt2), ContextError);
}

TEST_CASE("extension field axioms on random elements") {
  auto F = std::make_shared<const ExtField>(std::vector<Rational>{
      Rational(2), Rational(-1), Rational(0), Rational(1)});  // a^3 - a + 2
  auto rand_elem = [&] {
    std::vector<Rational> v;
    for (int k = 0; k < 3; ++k) v.push_back(testutil::random_rational());
    return ExtFieldElem(F, v);
  };
  int nonzero_checked = 0;
  for (int trial = 0; trial < 200 && nonzero_checked < 100; ++trial) {
    ExtFieldElem a = rand_elem(), b = rand_elem(), c = rand_elem();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == ExtFieldElem::one(F));
      ++nonzero_checked;
    }
  }
  CHECK(nonzero_checked >= 100);
}
