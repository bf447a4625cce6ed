#ifndef KRV_POLYNOMIAL_HPP
#define KRV_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krv/coefficient.hpp"

namespace krv {

/// Ordered, immutable list of variables. A parameter is a variable of weight 0; it stands for a
/// symbolic constant (y0, c, lambda, ...). Laurent variables may carry negative exponents.
class VarTable {
 public:
  struct Variable {
    std::string name;
    bool laurent = false;
    bool parameter = false;
    int weight = 1;
  };

  /// Throws DomainError on duplicate or empty names.
  static std::shared_ptr<const VarTable> create(std::vector<Variable> variables);

  /// Convenience: plain variables, then parameters; `laurent` names either kind.
  static std::shared_ptr<const VarTable> create(const std::vector<std::string>& variables,
                                                const std::vector<std::string>& laurent = {},
                                                const std::vector<std::string>& parameters = {});

  std::size_t size() const noexcept { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const noexcept { return vars_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws DomainError naming the unknown variable.
  std::size_t require(std::string_view name) const;

  bool is_parameter(std::size_t i) const { return vars_[i].parameter; }
  bool is_laurent(std::size_t i) const { return vars_[i].laurent; }

  friend bool operator==(const VarTable& a, const VarTable& b);

  std::string describe() const;

 private:
  explicit VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {}
  std::vector<Variable> vars_;
};

using TablePtr = std::shared_ptr<const VarTable>;
using Exponents = std::vector<int>;

bool same_table(const TablePtr& a, const TablePtr& b);

/// Monomial order over a VarTable. Grevlex compares the weighted degree of the ordinary
/// variables first, breaks ties reverse-lexicographically, and puts parameters in a lower
/// block ordered the same way. Lex follows the permutation (identity when empty).
class MonomialOrder {
 public:
  enum class Kind { grevlex, lex };

  static MonomialOrder grevlex(std::vector<std::size_t> permutation = {}) {
    return MonomialOrder(Kind::grevlex, std::move(permutation));
  }
  static MonomialOrder lex(std::vector<std::size_t> permutation = {}) {
    return MonomialOrder(Kind::lex, std::move(permutation));
  }

  /// <0 if a < b, 0 if equal, >0 if a > b.
  int compare(const VarTable& table, const Exponents& a, const Exponents& b) const;

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& permutation() const noexcept { return perm_; }

  bool is_canonical() const noexcept { return kind_ == Kind::grevlex && perm_.empty(); }

 private:
  MonomialOrder(Kind kind, std::vector<std::size_t> perm) : kind_(kind), perm_(std::move(perm)) {}
  std::size_t var_at(std::size_t rank) const { return perm_.empty() ? rank : perm_[rank]; }

  Kind kind_;
  std::vector<std::size_t> perm_;
};

struct Term {
  Exponents exponents;
  Coefficient coefficient;
};

/// Sparse Laurent polynomial with coefficients in Q(w). Terms are kept in descending canonical
/// (grevlex) order with no zero coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  explicit Polynomial(TablePtr table) : table_(std::move(table)) {}

  static Polynomial constant(TablePtr table, const Coefficient& c);
  static Polynomial variable(TablePtr table, std::size_t index);
  static Polynomial variable(TablePtr table, std::string_view name);
  static Polynomial monomial(TablePtr table, Exponents exponents, const Coefficient& c = Coefficient(1));
  /// Combines like terms and sorts; validates exponents against the table.
  static Polynomial from_terms(TablePtr table, std::vector<Term> terms);

  const TablePtr& table() const noexcept { return table_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial (0 for the zero polynomial).
  std::optional<Coefficient> constant_value() const;
  /// Single term whose exponents are all on Laurent variables.
  bool is_unit_monomial() const noexcept;
  bool has_negative_exponents() const noexcept;

  /// Leading term under the canonical order. Requires a nonzero polynomial.
  const Term& leading_term() const;

  int degree_in(std::size_t var) const;      ///< max exponent; 0 for the zero polynomial
  int min_degree_in(std::size_t var) const;  ///< min exponent; 0 for the zero polynomial
  bool involves(std::size_t var) const;
  /// Coefficient of var^k, as a polynomial not involving var.
  Polynomial coefficient_of(std::size_t var, int k) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Coefficient& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Coefficient& c) { return a *= c; }
  friend Polynomial operator*(const Coefficient& c, Polynomial a) { return a *= c; }

  /// Multiply by a single monomial (exponent shift) and scalar.
  Polynomial shifted(const Exponents& by, const Coefficient& c = Coefficient(1)) const;

  /// Nonnegative powers always; negative powers only of unit monomials.
  Polynomial pow(long exponent) const;
  /// Inverse of a unit monomial. Throws DomainError otherwise.
  Polynomial unit_inverse() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Canonical rendering: descending grevlex, `^` for powers, explicit `*`.
  std::string to_string() const;

 private:
  friend class PolynomialBuilder;
  void require_same_table(const Polynomial& other, const char* op) const;

  TablePtr table_;
  std::vector<Term> terms_;
};

/// Accumulates terms in a hash map; `build` sorts once.
class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(TablePtr table);
  ~PolynomialBuilder();
  PolynomialBuilder(PolynomialBuilder&&) noexcept;
  PolynomialBuilder& operator=(PolynomialBuilder&&) noexcept;

  void add(const Exponents& exponents, const Coefficient& c);
  void add(const Polynomial& p, const Coefficient& scale = Coefficient(1));
  /// Adds p * monomial(shift) * scale.
  void add_shifted(const Polynomial& p, const Exponents& shift, const Coefficient& scale);
  Polynomial build();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Simultaneous substitution v -> images[v]. All images must share one target table.
/// A Laurent variable occurring with a negative exponent needs a unit-monomial image.
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);

/// Replace a single variable by a value over the same table.
Polynomial substitute_variable(const Polynomial& f, std::size_t var, const Polynomial& value);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);
Polynomial partial_derivative(const Polynomial& f, std::string_view var);

/// v -> v + center[v]; center has one entry per table variable (use zero for parameters).
Polynomial translate(const Polynomial& f, const std::vector<Polynomial>& center);

/// Components by degree with respect to the table weights (parameters have weight 0).
std::map<long, Polynomial> homogeneous_components(const Polynomial& f);

/// Translate by `center`, then return the nonzero homogeneous component of least degree.
/// Throws EmptyConeError if the translate is zero.
Polynomial lowest_homogeneous_part(const Polynomial& f, const std::vector<Polynomial>& center);

/// True iff every term has weighted degree `degree` under `weights` (one per table variable).
bool weighted_scale_check(const Polynomial& f, const std::vector<long>& weights, long degree);

/// Re-expresses f over `target`, matching variables by name. Throws DomainError if a variable
/// that occurs in f is missing from target or would need a negative exponent it cannot carry.
Polynomial embed(const Polynomial& f, const TablePtr& target);

/// Expands coordinates given for the non-parameter variables (table order) into a full-length
/// center, with zero entries for parameters. Coordinates may involve parameters only.
std::vector<Polynomial> point_to_center(const TablePtr& table, const std::vector<Polynomial>& coordinates);

/// Weighted degree of an exponent vector under the table weights.
long weighted_degree(const VarTable& table, const Exponents& e);

}  // namespace krv

#endif  // KRV_POLYNOMIAL_HPP
