#ifndef KRV_RING_MAP_HPP
#define KRV_RING_MAP_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krv/polynomial.hpp"

namespace krv {

/// Ring homomorphism given by one image per source variable, all over a common target table.
/// Images of Laurent variables are unit monomials so negative powers can be mapped.
class RingMap {
 public:
  RingMap(TablePtr source, std::vector<Polynomial> images);

  static RingMap identity(const TablePtr& table);
  /// Variables missing from `assignments` map to the same-named target variable.
  static RingMap from_assignments(const TablePtr& source, const TablePtr& target,
                                  const std::map<std::string, Polynomial>& assignments);

  const TablePtr& source() const noexcept { return source_; }
  const TablePtr& target() const noexcept { return target_; }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  const Polynomial& image(std::size_t var) const { return images_.at(var); }
  const Polynomial& image(std::string_view var) const { return images_.at(source_->require(var)); }

  /// Copy carrying `inverse` as the claimed inverse.
  RingMap with_inverse(const RingMap& inverse) const;
  const RingMap* claimed_inverse() const noexcept { return inverse_.get(); }

  bool is_identity() const;

 private:
  TablePtr source_;
  TablePtr target_;
  std::vector<Polynomial> images_;
  std::shared_ptr<const RingMap> inverse_;
};

Polynomial apply(const RingMap& m, const Polynomial& f);

/// Images of the result are m2 applied to the images of m1, so apply(compose(m2, m1), f) =
/// apply(m2, apply(m1, f)).
RingMap compose(const RingMap& m2, const RingMap& m1);

/// m∘inv fixes every variable modulo `forward_mod` and inv∘m modulo `backward_mod`
/// (exact identity when the list is empty). Throws DomainError without a claimed inverse.
bool verify_inverse_pair(const RingMap& m, const std::vector<Polynomial>& forward_mod = {},
                         const std::vector<Polynomial>& backward_mod = {});

struct Jacobian {
  std::vector<std::vector<Polynomial>> matrix;  ///< matrix[i][j] = d image(vars[i]) / d vars[j]
  Polynomial determinant;
};

/// Jacobian of the images of `vars` with respect to the same-named target variables.
Jacobian jacobian(const RingMap& m, const std::vector<std::string>& vars);

/// Determinant by cofactor expansion along the first row.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix);

/// q with f = q*g in the (Laurent) polynomial ring, or nothing. Throws DivisionByZero on g = 0.
std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g);

/// Relation a^2*b + r + a*F with b occurring only in the leading rewrite monomial a^2*b.
class QuotientRelation {
 public:
  /// Throws DomainError if `relation` does not have the shape.
  explicit QuotientRelation(Polynomial relation);

  const Polynomial& relation() const noexcept { return relation_; }
  const TablePtr& table() const noexcept { return relation_.table(); }
  std::size_t x() const noexcept { return x_; }
  std::size_t y() const noexcept { return y_; }
  /// relation - x^2*y = r + x*F
  const Polynomial& tail() const noexcept { return tail_; }
  const Polynomial& r() const noexcept { return r_; }
  const Polynomial& F() const noexcept { return F_; }

  /// Whether p has the shape; `QuotientRelation(p)` succeeds exactly when this is true.
  static bool matches(const Polynomial& p);

 private:
  Polynomial relation_;
  std::size_t x_ = 0;
  std::size_t y_ = 0;
  Polynomial tail_;
  Polynomial r_;
  Polynomial F_;
};

/// Rewrites x^2*y -> -(r + x*F) until no monomial has x-exponent >= 2 together with y-exponent >= 1.
Polynomial normal_form(const Polynomial& f, const QuotientRelation& rel);

struct QuotientExtension {
  RingMap map;
  Polynomial lambda;  ///< phi(x) = lambda * x
  Polynomial f;       ///< phi(r + xF) = (r + xF) f + x^2 g with f reduced mod x^2
  Polynomial g;
};

/// Extends phi (on the variables other than y) to the quotient by rel via y -> (y f - g)/lambda^2.
/// The result satisfies apply(map, relation) = f * relation; this is checked before returning.
QuotientExtension extend_to_quotient_automorphism(const RingMap& phi, const QuotientRelation& rel);

/// phi(v) - v divisible by x^k for every source variable v (k = 1: group A1, k = 2: A2).
bool congruent_to_identity(const RingMap& phi, const std::string& x, int k);

/// phi((x)) = (x) and phi(I) = I, tested through the claimed inverse: both maps send x into (x)
/// and every generator of I into I.
bool preserves_ideals(const RingMap& phi, const std::string& x, const std::vector<Polynomial>& ideal);

}  // namespace krv

#endif  // KRV_RING_MAP_HPP
