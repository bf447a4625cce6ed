#ifndef KRV_IDEAL_HPP
#define KRV_IDEAL_HPP

#include <cstddef>
#include <vector>

#include "krv/polynomial.hpp"

namespace krv {

enum class LaurentPolicy {
  reject,  ///< negative exponents raise DomainError
  clear,   ///< multiply each input by the smallest monomial making it a polynomial
};

struct Reduction {
  Polynomial remainder;
  std::vector<Polynomial> cofactors;
  /// Monomial the dividend was multiplied by before division (1 when nothing was cleared):
  /// clearing * f = sum(cofactors[i] * cleared_gens[i]) + remainder.
  Polynomial clearing;
  /// The divisors actually used (generators after Laurent clearing).
  std::vector<Polynomial> divisors;
};

/// Multivariate division of f by gens under `order`. The identity
/// clearing*f = sum c_i g_i + remainder is re-checked before returning.
Reduction reduce(const Polynomial& f, const std::vector<Polynomial>& gens,
                 const MonomialOrder& order = MonomialOrder::grevlex(),
                 LaurentPolicy policy = LaurentPolicy::reject);

/// Reduced, monic Groebner basis.
class GroebnerBasis {
 public:
  GroebnerBasis(std::vector<Polynomial> generators, MonomialOrder order)
      : generators_(std::move(generators)), order_(std::move(order)) {}

  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const MonomialOrder& order() const noexcept { return order_; }

  /// True iff the basis is {1}.
  bool is_unit() const;
  bool is_zero_ideal() const noexcept { return generators_.empty(); }
  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const;

 private:
  std::vector<Polynomial> generators_;
  MonomialOrder order_;
};

struct BuchbergerOptions {
  MonomialOrder order = MonomialOrder::grevlex();
  std::size_t max_pairs = 200000;  ///< S-pair budget; exceeding it raises BudgetExceeded
};

/// Buchberger's algorithm with the coprime-leading-monomial criterion and normal pair selection.
/// Inputs must be free of negative exponents.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const BuchbergerOptions& options = {});

/// Ideal membership. Negative exponents are cleared by monomials first, which is sound for
/// a positive answer in the Laurent ring.
bool member(const Polynomial& f, const std::vector<Polynomial>& gens,
            const MonomialOrder& order = MonomialOrder::grevlex());

/// Leading term of f under an arbitrary order.
const Term& leading_term(const Polynomial& f, const MonomialOrder& order);

/// Multiply f by the least monomial that removes every negative exponent.
Polynomial clear_denominators(const Polynomial& f, Polynomial* clearing = nullptr);

enum class SingularMode { smooth_everywhere, singular_at_point, singular_along_param_point };

/// Jacobian criterion. smooth_everywhere: (f, df/dv...) is the unit ideal. The point modes ask
/// that f and every partial derivative vanish at `point` (coordinates for the non-parameter
/// variables), identically in the parameters for singular_along_param_point.
bool singular_locus_check(const Polynomial& f, SingularMode mode, const std::vector<Polynomial>& point = {});

/// f together with its partial derivatives in every non-parameter variable.
std::vector<Polynomial> jacobian_ideal(const Polynomial& f);

}  // namespace krv

#endif  // KRV_IDEAL_HPP
