#ifndef KRV_DERIVATION_HPP
#define KRV_DERIVATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "krv/polynomial.hpp"
#include "krv/ring_map.hpp"

namespace krv {

/// Derivation given by the images of the variables, optionally on the quotient by a relation.
/// With a relation, d(relation) is divisible by the relation (checked on construction) and derive
/// returns normal forms.
class Derivation {
 public:
  Derivation(TablePtr table, std::vector<Polynomial> images, std::optional<QuotientRelation> relation = std::nullopt);

  /// Variables missing from `assignments` are sent to 0.
  static Derivation from_assignments(const TablePtr& table, const std::map<std::string, Polynomial>& assignments,
                                     std::optional<QuotientRelation> relation = std::nullopt);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<Polynomial>& images() const noexcept { return images_; }
  const Polynomial& image(std::size_t v) const { return images_.at(v); }
  const Polynomial& image(std::string_view v) const { return images_.at(table_->require(v)); }
  const std::optional<QuotientRelation>& relation() const noexcept { return relation_; }
  /// d(relation) / relation, when a relation is present.
  const std::optional<Polynomial>& descent_cofactor() const noexcept { return descent_; }

  Derivation modulo(const QuotientRelation& relation) const;
  Derivation scaled(const Coefficient& c) const;

 private:
  TablePtr table_;
  std::vector<Polynomial> images_;
  std::optional<QuotientRelation> relation_;
  std::optional<Polynomial> descent_;
};

/// sum_v d(v) * df/dv, in normal form when d carries a relation.
Polynomial derive(const Derivation& d, const Polynomial& f);

struct NilpotencyCertificate {
  bool success = false;
  /// Smallest k >= 1 with d^k(v) = 0 for each non-parameter variable, in table order.
  std::vector<std::pair<std::string, int>> orders;
  int bound_used = 0;
  std::string failed_generator;  ///< set when success is false

  int order_of(std::string_view v) const;
};

/// Iterates d on every non-parameter variable, up to `bound` applications each.
NilpotencyCertificate nilpotency_certificate(const Derivation& d, int bound = 64);

/// v -> sum_k s^k/k! d^k(v) for the parameter s. The result is checked against exp(-s d): both
/// composites fix every variable (modulo the relation when present).
RingMap exponential(const Derivation& d, std::string_view s, int bound = 64);

/// {h, f} = h_z f_t - h_t f_z.
Polynomial poisson(const Polynomial& h, const Polynomial& f);

/// v -> fwd(d(bwd(v))). The pair must be inverse to each other modulo the given ideals.
Derivation conjugate(const Derivation& d, const RingMap& fwd, const RingMap& bwd,
                     const std::vector<Polynomial>& forward_mod = {}, const std::vector<Polynomial>& backward_mod = {},
                     std::optional<QuotientRelation> relation = std::nullopt);

/// From d0 on the variables other than y with d0(x) = 0: x -> 0, v -> x^2 d0(v), y -> -d0(r + xF).
/// The result kills the relation identically.
Derivation extend_lnd_from_base(const Derivation& d0, const QuotientRelation& rel);

struct ThetaResult {
  Polynomial alpha;
  Coefficient constant;  ///< c with h - c = r * alpha
  Polynomial f;          ///< phi(z) = z + x f mod x^2
  Polynomial g;          ///< phi(t) = t + x g mod x^2
  Polynomial h;          ///< h_t = f, h_z = -g
};

/// The invariant alpha of an automorphism phi = id mod (x) with phi(r) in (x^2, r), using the
/// variables named x, z, t.
ThetaResult theta_extract(const RingMap& phi, const Polynomial& r);

/// Replaces the parameter c by `value` in every image. When -value has the shape of a quotient
/// relation, the result must preserve the ideal it generates; DomainError otherwise.
RingMap formal_substitute_parameter(const RingMap& m, std::string_view c, const Polynomial& value);
Derivation formal_substitute_parameter(const Derivation& d, std::string_view c, const Polynomial& value);

}  // namespace krv

#endif  // KRV_DERIVATION_HPP
