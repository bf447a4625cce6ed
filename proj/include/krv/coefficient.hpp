#ifndef KRV_COEFFICIENT_HPP
#define KRV_COEFFICIENT_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace krv {

/// Exact rational number, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpq_class& value);

  /// Accepts `p` or `p/q` with optional leading sign.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& value() const noexcept { return value_; }

  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_one() const noexcept { return value_ == 1; }
  int sign() const noexcept { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }
  Rational inverse() const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  mpq_class value_;
};

/// Element re + om*w of Q(w), where w is a primitive cube root of unity (w^2 = -1 - w).
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Coefficient(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Coefficient(Rational re, Rational om) : re_(std::move(re)), om_(std::move(om)) {}

  static Coefficient omega() { return Coefficient(Rational(0), Rational(1)); }

  const Rational& re() const noexcept { return re_; }
  const Rational& om() const noexcept { return om_; }

  bool is_zero() const noexcept { return re_.is_zero() && om_.is_zero(); }
  bool is_one() const noexcept { return re_.is_one() && om_.is_zero(); }
  bool is_rational() const noexcept { return om_.is_zero(); }

  Coefficient operator-() const { return {-re_, -om_}; }
  Coefficient& operator+=(const Coefficient& rhs);
  Coefficient& operator-=(const Coefficient& rhs);
  Coefficient& operator*=(const Coefficient& rhs);
  Coefficient& operator/=(const Coefficient& rhs);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) = default;

  /// Multiplicative inverse via the conjugate (a-b) - b*w and the norm a^2 - ab + b^2.
  /// Throws DivisionByZero on zero.
  Coefficient inverse() const;
  Coefficient pow(long exponent) const;

  /// The "sign" used when printing a sum: negative iff the leading nonzero component is negative.
  bool prints_negative() const noexcept;

  /// `3`, `-1/2`, `w`, `2*w`, `(1 + w)`, `(1/2 - 3*w)`.
  std::string to_string() const;
  std::size_t hash() const;

 private:
  Rational re_;
  Rational om_;
};

/// zeta_n^k in Q(w) for n dividing 6: zeta_2 = -1, zeta_3 = w, zeta_6 = 1 + w.
/// Throws DomainError when n does not divide 6.
Coefficient root_of_unity(long k, long n);

}  // namespace krv

template <>
struct std::hash<krv::Coefficient> {
  std::size_t operator()(const krv::Coefficient& c) const { return c.hash(); }
};

#endif  // KRV_COEFFICIENT_HPP
