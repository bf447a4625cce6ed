#ifndef KRV_TESTS_SUPPORT_HPP
#define KRV_TESTS_SUPPORT_HPP

// Random generators shared by the unit tests, the property suites and the acceptance binary.
// Every generator is driven by an explicit engine so failures replay from the seed.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "krv/polynomial.hpp"

namespace krv::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long range = 9) {
  long den = uniform(rng, 1, 4);
  return Rational(mpz_class(uniform(rng, -range, range)), mpz_class(den));
}

/// Nonzero with probability one half in each component; occasionally a large numerator.
inline Coefficient random_coefficient(Rng& rng, bool with_omega = true) {
  long range = uniform(rng, 0, 9) == 0 ? 1000000007 : 9;
  Rational re = random_rational(rng, range);
  Rational om = with_omega && uniform(rng, 0, 1) ? random_rational(rng, 9) : Rational(0);
  return {re, om};
}

inline Coefficient random_nonzero(Rng& rng, bool with_omega = true) {
  for (;;) {
    Coefficient c = random_coefficient(rng, with_omega);
    if (!c.is_zero()) return c;
  }
}

struct PolySpec {
  int max_terms = 5;
  int max_exponent = 3;
  bool omega = true;
};

/// Sum of up to max_terms random terms; Laurent variables also get negative exponents.
inline Polynomial random_polynomial(Rng& rng, const TablePtr& table, const PolySpec& spec = {}) {
  PolynomialBuilder b(table);
  int terms = static_cast<int>(uniform(rng, 0, spec.max_terms));
  for (int i = 0; i < terms; ++i) {
    Exponents e(table->size(), 0);
    for (std::size_t v = 0; v < e.size(); ++v) {
      int lo = table->is_laurent(v) ? -spec.max_exponent : 0;
      e[v] = static_cast<int>(uniform(rng, lo, spec.max_exponent));
      if (uniform(rng, 0, 2) == 0) e[v] = 0;
    }
    b.add(e, random_nonzero(rng, spec.omega));
  }
  return b.build();
}

/// Polynomial in the given variables only, total degree at most `degree`, rational coefficients.
inline Polynomial random_in(Rng& rng, const TablePtr& table, const std::vector<std::size_t>& vars, int degree,
                            int max_terms) {
  PolynomialBuilder b(table);
  int terms = static_cast<int>(uniform(rng, 1, max_terms));
  for (int i = 0; i < terms; ++i) {
    Exponents e(table->size(), 0);
    int left = static_cast<int>(uniform(rng, 0, degree));
    for (std::size_t v : vars) {
      int k = static_cast<int>(uniform(rng, 0, left));
      e[v] = k;
      left -= k;
    }
    b.add(e, Coefficient(Rational(mpz_class(uniform(rng, -5, 5)))));
  }
  return b.build();
}

/// A table of 1 to 5 names drawn from a fixed pool; some Laurent, some parameters.
inline TablePtr random_table(Rng& rng, bool allow_laurent = true, bool allow_params = true) {
  static const std::vector<std::string> pool = {"x", "y", "z", "t", "v", "u", "a", "b", "c", "s", "x1", "y0"};
  std::vector<std::string> names = pool;
  std::shuffle(names.begin(), names.end(), rng);
  names.resize(static_cast<std::size_t>(uniform(rng, 1, 5)));
  std::vector<std::string> vars;
  std::vector<std::string> params;
  std::vector<std::string> laurent;
  for (const auto& n : names) {
    bool param = allow_params && vars.size() > 0 && uniform(rng, 0, 3) == 0;
    (param ? params : vars).push_back(n);
    if (allow_laurent && uniform(rng, 0, 3) == 0) laurent.push_back(n);
  }
  return VarTable::create(vars, laurent, params);
}

}  // namespace krv::testing

#endif  // KRV_TESTS_SUPPORT_HPP
