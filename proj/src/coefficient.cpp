#include "krv/coefficient.hpp"

#include <cctype>

#include "krv/errors.hpp"

namespace krv {

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw DivisionByZero();
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view d) {
    std::size_t i = (!d.empty() && (d[0] == '-' || d[0] == '+')) ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(d[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  return Rational(mpz_class(num), mpz_class(den));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / value_));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  // Low limbs are enough to spread the values we meet in practice.
  std::size_t h = mpz_get_ui(value_.get_num_mpz_t()) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::size_t>(sgn(value_)) + (h << 6) + (h >> 2);
  h ^= mpz_get_ui(value_.get_den_mpz_t()) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  return h;
}

Coefficient& Coefficient::operator+=(const Coefficient& rhs) {
  re_ += rhs.re_;
  om_ += rhs.om_;
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& rhs) {
  re_ -= rhs.re_;
  om_ -= rhs.om_;
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& rhs) {
  // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
  if (om_.is_zero() && rhs.om_.is_zero()) {
    re_ *= rhs.re_;
    return *this;
  }
  Rational bd = om_ * rhs.om_;
  Rational re = re_ * rhs.re_ - bd;
  Rational om = re_ * rhs.om_ + om_ * rhs.re_ - bd;
  re_ = std::move(re);
  om_ = std::move(om);
  return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& rhs) { return *this *= rhs.inverse(); }

Coefficient Coefficient::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (om_.is_zero()) return Coefficient(re_.inverse());
  const Rational& a = re_;
  const Rational& b = om_;
  Rational norm = a * a - a * b + b * b;
  return Coefficient((a - b) / norm, -b / norm);
}

Coefficient Coefficient::pow(long exponent) const {
  Coefficient base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  Coefficient result(1);
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

bool Coefficient::prints_negative() const noexcept {
  if (!re_.is_zero() && !om_.is_zero()) return false;
  return re_.is_zero() ? om_.sign() < 0 : re_.sign() < 0;
}

std::string Coefficient::to_string() const {
  auto omega_part = [](const Rational& om) {
    if (om.is_one()) return std::string("w");
    if (om == Rational(-1)) return std::string("-w");
    return om.to_string() + "*w";
  };
  if (om_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return omega_part(om_);
  std::string out = "(" + re_.to_string();
  out += om_.sign() < 0 ? " - " : " + ";
  out += omega_part(om_.abs());
  out += ")";
  return out;
}

std::size_t Coefficient::hash() const { return re_.hash() * 31 + om_.hash(); }

Coefficient root_of_unity(long k, long n) {
  if (n <= 0 || 6 % n != 0) throw DomainError("root_of_unity: order " + std::to_string(n) + " does not divide 6");
  long e = ((k * (6 / n)) % 6 + 6) % 6;
  const Coefficient zeta6(Rational(1), Rational(1));
  return zeta6.pow(e);
}

}  // namespace krv
