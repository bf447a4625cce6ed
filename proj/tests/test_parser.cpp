#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "krv/errors.hpp"
#include "krv/parser.hpp"
#include "properties.hpp"

using namespace krv;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error_of(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError({}, "");
}

}  // namespace

TEST_CASE("polynomial literals: rationals, w, powers, implicit parameters") {
  auto T = VarTable::create({"x", "t"}, {"t"}, {"c"});
  CHECK(parse_polynomial("1/2*x", T) == Polynomial::monomial(T, {1, 0, 0}, Coefficient(Rational::parse("1/2"))));
  CHECK(parse_polynomial("w^2 + w + 1", T).is_zero());
  CHECK(parse_polynomial("t^-3*t^3", T) == Polynomial::constant(T, 1));
  CHECK(parse_polynomial("(x + c)^2", T) == parse_polynomial("x^2 + 2*c*x + c^2", T));
  CHECK(parse_polynomial("-(x - 1)", T) == parse_polynomial("1 - x", T));
  CHECK(parse_polynomial("2^3*x", T) == parse_polynomial("8*x", T));
}

TEST_CASE("polynomial parse errors carry positions") {
  auto T = VarTable::create(std::vector<std::string>{"x", "y"});
  try {
    parse_polynomial("x + + y", T);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 5);
    CHECK(describe(e).rfind("1:5: ", 0) == 0);
  }
  CHECK_THROWS_AS(parse_polynomial("x + q", T), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^-1", T), Error);
  CHECK_THROWS_AS(parse_polynomial("(x + y", T), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x y", T), ParseError);
}

TEST_CASE("a small manifest parses into items with scopes") {
  const char* text =
      "# ring\n"
      "ring R = vars(x, y; param c);\n"
      "let P = x^2*y + c;\n"
      "map Phi : R { y -> (1 + x)*y; }\n"
      "claim \"P is P\" eq(P, x^2*y + c) expect true anchor \"trivial\";\n";
  SourceUnit u = parse(text);
  REQUIRE(u.items.size() == 4);
  CHECK(u.items[0].kind == Item::Kind::ring);
  CHECK(u.items[0].ring.params == std::vector<std::string>{"c"});
  CHECK(u.items[0].comments == std::vector<std::string>{" ring"});
  CHECK(u.items[1].scope == "R");
  CHECK(u.items[2].map.images.size() == 1);
  CHECK(u.items[3].claim.label == "P is P");
  CHECK(u.items[3].claim.kind == "eq");
  CHECK(u.items[3].claim.expect);
  CHECK(u.items[3].claim.anchor == "trivial");
  CHECK(u.find_ring("R") != nullptr);
  CHECK(u.find_ring("S") == nullptr);
}

TEST_CASE("manifest errors: position and expected tokens") {
  ParseError e = parse_error_of("ring R = vars(x);\nclaim \"a\" frobnicate(x) expect true;\n");
  CHECK(e.pos().line == 2);
  ParseError undeclared = parse_error_of("ring R = vars(x);\nlet P = x + q;\n");
  CHECK(undeclared.pos().line == 2);
  ParseError missing_expect = parse_error_of("ring R = vars(x);\nclaim \"a\" eq(x, x);\n");
  CHECK(missing_expect.pos().line == 2);
  ParseError no_ring = parse_error_of("let P = x;\n");
  CHECK(no_ring.pos().line == 1);
  ParseError dup = parse_error_of("ring R = vars(x);\nlet P = x;\nlet P = x;\n");
  CHECK(dup.pos().line == 3);
  ParseError w_var = parse_error_of("ring R = vars(x, w);\n");
  CHECK(w_var.pos().line == 1);
}

TEST_CASE("expressions render with minimal parentheses") {
  CHECK(render(parse_expression("(x + y)*(x - y)")) == "(x + y)*(x - y)");
  CHECK(render(parse_expression("x - (y - z)")) == "x - (y - z)");
  CHECK(render(parse_expression("(x*y)*z")) == "x*y*z");
  CHECK(render(parse_expression("-(x^2)")) == "-x^2");
  CHECK(render(parse_expression("apply(Phi, {x, y})")) == "apply(Phi, {x, y})");
}

TEST_CASE("fmt is idempotent on every shipped manifest") {
  for (const char* name : {"embeddings", "autgroup", "fibers", "stable", "cylinder", "embeddings_negative",
                           "autgroup_negative", "fibers_negative", "stable_negative", "cylinder_negative"}) {
    CAPTURE(name);
    std::string once = format(parse(slurp(std::string(KRV_MANIFEST_DIR) + "/" + name + ".krv")));
    CHECK(format(parse(once)) == once);
  }
}

TEST_CASE("parser round trip over 1000 random polynomials") {
  auto stats = krv::testing::parser_round_trip(0xFACADEu, 1000);
  INFO(stats.summary());
  CHECK(stats.cases >= 1000);
  CHECK(stats.failures == 0);
  CHECK(stats.positives > 0);  // some cases exercised negative exponents
}
