#ifndef KRV_TESTS_PROPERTIES_HPP
#define KRV_TESTS_PROPERTIES_HPP

// Randomised law checks. Each suite returns counts instead of asserting, so the doctest cases and
// the acceptance binary report the same numbers from the same seeds.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "krv/polynomial.hpp"

namespace krv::testing {

struct PropertyStats {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t positives = 0;  ///< suite-specific: members, Laurent cases, y-dependent cases
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  std::string summary() const;
};

/// Commutativity, associativity, distributivity, inverses in Q(w); also w^2 + w + 1 = 0.
PropertyStats field_axioms(std::uint64_t seed, std::size_t cases);
/// d(fg) = d(f)g + f d(g) and d(f+g) = d(f) + d(g) for random derivations on random tables.
PropertyStats leibniz_law(std::uint64_t seed, std::size_t cases);
/// m(f+g) = m(f)+m(g), m(fg) = m(f)m(g), and compose agreeing with sequential application.
PropertyStats homomorphism_law(std::uint64_t seed, std::size_t cases);
/// parse(render(p)) == p over random tables with Laurent variables, parameters and w.
PropertyStats parser_round_trip(std::uint64_t seed, std::size_t cases);
/// Groebner membership against span membership of degree-bounded multiples.
PropertyStats groebner_vs_linear_algebra(std::uint64_t seed, std::size_t cases);
/// Quotient normal form: idempotent, irreducible, congruent mod the relation; and
/// nf(x^2*y*(f0 + x*f1)) = -(z^2 + t^3 + x)*(f0 + x*f1) in the ideal (x^2, z^2 + t^3 + x).
PropertyStats normal_form_laws(std::uint64_t seed, std::size_t cases);

/// Independent oracle: f lies in the Q-span of m*g_i over monomials m with deg(m*g_i) <= bound.
/// Inputs must be polynomials with rational coefficients.
bool span_member(const Polynomial& f, const std::vector<Polynomial>& gens, int bound);

}  // namespace krv::testing

#endif  // KRV_TESTS_PROPERTIES_HPP
