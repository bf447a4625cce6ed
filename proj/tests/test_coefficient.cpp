#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "krv/coefficient.hpp"
#include "krv/errors.hpp"
#include "properties.hpp"

using krv::Coefficient;
using krv::Rational;

TEST_CASE("rationals are stored reduced with a positive denominator") {
  Rational q(mpz_class(6), mpz_class(-4));
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 2);
  CHECK(q.to_string() == "-3/2");
  CHECK(Rational::parse("-12/8") == q);
  CHECK(Rational::parse("+7").to_string() == "7");
  CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), krv::DivisionByZero);
  CHECK_THROWS_AS(Rational(0).inverse(), krv::DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("1/"), krv::Error);
}

TEST_CASE("rational ordering and arithmetic") {
  CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
  CHECK(Rational::parse("1/3") + Rational::parse("1/6") == Rational::parse("1/2"));
  CHECK(Rational::parse("2/3") / Rational::parse("4/9") == Rational::parse("3/2"));
  CHECK(Rational::parse("-5/7").abs() == Rational::parse("5/7"));
}

TEST_CASE("omega is a primitive cube root of unity") {
  const Coefficient w = Coefficient::omega();
  CHECK(w * w == Coefficient(-1) - w);
  CHECK(w.pow(3) == Coefficient(1));
  CHECK(w.pow(-1) == w * w);
  CHECK(w.pow(0) == Coefficient(1));
  CHECK_FALSE(w * w == Coefficient(1));
}

TEST_CASE("inverse uses the norm a^2 - ab + b^2") {
  // (1 + w) has norm 1 - 1 + 1 = 1, inverse (1 + w)^-1 = -w.
  Coefficient u(Rational(1), Rational(1));
  CHECK(u.inverse() == -Coefficient::omega());
  Coefficient v(Rational(2), Rational(-3));
  CHECK(v * v.inverse() == Coefficient(1));
  CHECK_THROWS_AS(Coefficient(0).inverse(), krv::DivisionByZero);
  CHECK_THROWS_AS(Coefficient(1) / Coefficient(0), krv::DivisionByZero);
}

TEST_CASE("roots of unity for n dividing 6") {
  CHECK(krv::root_of_unity(1, 2) == Coefficient(-1));
  CHECK(krv::root_of_unity(1, 3) == Coefficient::omega());
  CHECK(krv::root_of_unity(2, 3) == Coefficient::omega().pow(2));
  CHECK(krv::root_of_unity(1, 6) == Coefficient(Rational(1), Rational(1)));
  CHECK(krv::root_of_unity(1, 6).pow(6) == Coefficient(1));
  CHECK(krv::root_of_unity(1, 6).pow(2) == Coefficient::omega());
  CHECK(krv::root_of_unity(5, 1) == Coefficient(1));
  CHECK_THROWS_AS(krv::root_of_unity(1, 4), krv::DomainError);
}

TEST_CASE("coefficient rendering") {
  CHECK(Coefficient(3).to_string() == "3");
  CHECK(Coefficient(Rational::parse("-1/2")).to_string() == "-1/2");
  CHECK(Coefficient::omega().to_string() == "w");
  CHECK((Coefficient(2) * Coefficient::omega()).to_string() == "2*w");
  CHECK(Coefficient(Rational(1), Rational(1)).to_string() == "(1 + w)");
  CHECK(Coefficient(Rational::parse("1/2"), Rational(-3)).to_string() == "(1/2 - 3*w)");
  CHECK((-Coefficient::omega()).prints_negative());
  CHECK_FALSE(Coefficient(Rational(-1), Rational(2)).prints_negative());  // parenthesised, never a leading minus
}

TEST_CASE("hash agrees with equality") {
  Coefficient a(Rational::parse("2/4"), Rational(1));
  Coefficient b(Rational::parse("1/2"), Rational(1));
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
}

TEST_CASE("field axioms over 1000 random triples") {
  auto stats = krv::testing::field_axioms(0xC0FFEEu, 1000);
  INFO(stats.summary());
  CHECK(stats.cases >= 1000);
  CHECK(stats.failures == 0);
}
