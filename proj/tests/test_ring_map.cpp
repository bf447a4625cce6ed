#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "krv/errors.hpp"
#include "krv/ideal.hpp"
#include "krv/parser.hpp"
#include "krv/ring_map.hpp"
#include "properties.hpp"

using namespace krv;

namespace {

struct Embeddings {
  TablePtr T = VarTable::create({"x", "y", "z", "t"});
  Polynomial P = parse_polynomial("x^2*y + z^2 + x + t^3", T);
  Polynomial Q = parse_polynomial("x^2*y + (1 + x)*(z^2 + x + t^3)", T);
  RingMap Phi = RingMap::from_assignments(T, T, {{"y", parse_polynomial("(1 + x)*y", T)}});
  RingMap Psi = RingMap::from_assignments(T, T, {{"y", parse_polynomial("(1 - x)*y - x - z^2 - t^3", T)}});
  Polynomial p(const char* s) const { return parse_polynomial(s, T); }
};

}  // namespace

TEST_CASE("pullbacks of the two embeddings") {
  Embeddings e;
  CHECK(apply(e.Phi, e.Q) == e.p("1 + x") * e.P);
  CHECK(apply(e.Psi, e.P) == e.p("1 - x") * e.Q);
}

TEST_CASE("compose applies the inner map first") {
  Embeddings e;
  RingMap both = compose(e.Phi, e.Psi);
  // Phi(Psi(y)) = (1 - x)(1 + x)y - x - z^2 - t^3 = y - P.
  CHECK(both.image("y") == e.p("y") - e.P);
  CHECK(compose(e.Psi, e.Phi).image("y") == e.p("y") - e.Q);
  for (const auto& f : {e.P, e.Q, e.p("x*y*z + t")}) CHECK(apply(both, f) == apply(e.Phi, apply(e.Psi, f)));
}

TEST_CASE("inverse pairs modulo ideals") {
  Embeddings e;
  CHECK_THROWS_AS(verify_inverse_pair(e.Phi), DomainError);
  RingMap claimed = e.Phi.with_inverse(e.Psi);
  CHECK(verify_inverse_pair(claimed, {e.P}, {e.Q}));
  CHECK_FALSE(verify_inverse_pair(claimed));
  CHECK_FALSE(verify_inverse_pair(claimed, {e.Q}, {e.P}));
}

TEST_CASE("ring maps validate images") {
  Embeddings e;
  CHECK_THROWS_AS(RingMap(e.T, {e.p("x")}), DomainError);
  auto L = VarTable::create({"x", "t"}, {"t"});
  Polynomial x = Polynomial::variable(L, "x");
  Polynomial t = Polynomial::variable(L, "t");
  CHECK_THROWS_AS(RingMap(L, {x, t + x}), DomainError);
  RingMap inv_t(L, {x, t.pow(-1)});
  CHECK(apply(inv_t, t.pow(-3) * x) == t.pow(3) * x);
  CHECK(RingMap::identity(e.T).is_identity());
  CHECK_FALSE(e.Phi.is_identity());
}

TEST_CASE("Jacobians: the triangular example has determinant one") {
  auto T = VarTable::create({"x", "y", "z", "t"});
  RingMap phi = RingMap::from_assignments(
      T, T, {{"z", parse_polynomial("z + 3*x*t^5", T)}, {"t", parse_polynomial("t + 2*x*(z + 3*x*t^5)^3", T)}});
  Jacobian J = jacobian(phi, {"x", "z", "t"});
  CHECK(J.matrix[1][2] == parse_polynomial("15*x*t^4", T));
  CHECK(J.determinant == Polynomial::constant(T, 1));
  Embeddings e;
  CHECK(jacobian(e.Phi, {"x", "y", "z", "t"}).determinant == e.p("1 + x"));
  CHECK_THROWS_AS(determinant({}), DomainError);
}

TEST_CASE("exact division") {
  Embeddings e;
  CHECK(exact_divide(e.p("1 - x^2") * e.P, e.P) == e.p("1 - x^2"));
  CHECK_FALSE(exact_divide(e.Q, e.P).has_value());
  CHECK_THROWS_AS(exact_divide(e.P, Polynomial(e.T)), DivisionByZero);
  auto L = VarTable::create({"x", "t"}, {"t"});
  CHECK(exact_divide(parse_polynomial("x*t^-2 + t", L), parse_polynomial("x + t^3", L)) == parse_polynomial("t^-2", L));
}

TEST_CASE("quotient relation shape and normal form") {
  Embeddings e;
  CHECK(QuotientRelation::matches(e.P));
  CHECK_FALSE(QuotientRelation::matches(e.p("x*y + z")));
  CHECK_THROWS_AS(QuotientRelation(e.p("y + x")), DomainError);
  QuotientRelation rel(e.P);
  CHECK(rel.r() == e.p("z^2 + t^3"));
  CHECK(rel.F() == e.p("1"));
  CHECK(normal_form(e.p("x^2*y"), rel) == e.p("-z^2 - t^3 - x"));
  CHECK(normal_form(e.p("x^3*y^2"), rel) == e.p("-x*y*(z^2 + t^3) + z^2 + t^3 + x"));
  CHECK(normal_form(e.p("x*y + z"), rel) == e.p("x*y + z"));
}

TEST_CASE("extension of the triangular example to the quotient") {
  auto T = VarTable::create({"x", "y", "z", "t"});
  auto p = [&](const char* s) { return parse_polynomial(s, T); };
  RingMap phi =
      RingMap::from_assignments(T, T, {{"z", p("z + 3*x*t^5")}, {"t", p("t + 2*x*(z + 3*x*t^5)^3")}});
  QuotientRelation rel(p("x^2*y + z^2 + x + t^3"));
  QuotientExtension ext = extend_to_quotient_automorphism(phi, rel);
  CHECK(ext.lambda == p("1"));
  CHECK(ext.f == p("1 + 6*x*z*t^2"));
  CHECK(apply(ext.map, rel.relation()) == ext.f * rel.relation());
  CHECK(ext.map.image("x") == p("x"));
  // g = G - 6zt^2 from the oracle; its constant-in-x part is 9t^10 + 54t^7z^2 + 12tz^6 - 6t^2z.
  CHECK(ext.g.coefficient_of(0, 0) == p("9*t^10 + 54*t^7*z^2 + 12*t*z^6 - 6*t^2*z"));
  CHECK(congruent_to_identity(phi, "x", 1));
  CHECK_FALSE(congruent_to_identity(phi, "x", 2));
  RingMap moves_y = RingMap::from_assignments(T, T, {{"y", p("y + 1")}});
  CHECK_THROWS_AS(extend_to_quotient_automorphism(moves_y, rel), DomainError);
}

TEST_CASE("homomorphism law on 500 random maps") {
  auto stats = krv::testing::homomorphism_law(0xBEEFu, 500);
  INFO(stats.summary());
  CHECK(stats.cases >= 500);
  CHECK(stats.failures == 0);
}
