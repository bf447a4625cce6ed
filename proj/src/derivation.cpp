#include "krv/derivation.hpp"

#include "krv/errors.hpp"
#include "krv/ideal.hpp"

namespace krv {

Derivation::Derivation(TablePtr table, std::vector<Polynomial> images, std::optional<QuotientRelation> relation)
    : table_(std::move(table)), images_(std::move(images)), relation_(std::move(relation)) {
  if (images_.size() != table_->size()) throw DomainError("derivation: one image per variable expected");
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (!same_table(images_[v].table(), table_)) throw TableMismatch("derivation image");
    if (table_->is_parameter(v) && !images_[v].is_zero())
      throw DomainError("derivation: parameter '" + (*table_)[v].name + "' must be sent to 0");
  }
  if (relation_) {
    if (!same_table(relation_->table(), table_)) throw TableMismatch("derivation relation");
    Polynomial d_rel(table_);
    for (std::size_t v = 0; v < images_.size(); ++v)
      if (!images_[v].is_zero()) d_rel += images_[v] * partial_derivative(relation_->relation(), v);
    descent_ = exact_divide(d_rel, relation_->relation());
    if (!descent_)
      throw DomainError("derivation does not descend: d(" + relation_->relation().to_string() + ") is not a multiple of it");
  }
}

Derivation Derivation::from_assignments(const TablePtr& table, const std::map<std::string, Polynomial>& assignments,
                                        std::optional<QuotientRelation> relation) {
  std::vector<Polynomial> images(table->size(), Polynomial(table));
  for (const auto& [name, p] : assignments) {
    if (!same_table(p.table(), table)) throw TableMismatch("derivation image of '" + name + "'");
    images[table->require(name)] = p;
  }
  return Derivation(table, std::move(images), std::move(relation));
}

Derivation Derivation::modulo(const QuotientRelation& relation) const { return Derivation(table_, images_, relation); }

Derivation Derivation::scaled(const Coefficient& c) const {
  std::vector<Polynomial> images = images_;
  for (auto& p : images) p *= c;
  return Derivation(table_, std::move(images), relation_);
}

Polynomial derive(const Derivation& d, const Polynomial& f) {
  if (!same_table(f.table(), d.table())) throw TableMismatch("derive");
  Polynomial out(d.table());
  for (std::size_t v = 0; v < d.images().size(); ++v)
    if (!d.image(v).is_zero() && f.involves(v)) out += d.image(v) * partial_derivative(f, v);
  return d.relation() ? normal_form(out, *d.relation()) : out;
}

int NilpotencyCertificate::order_of(std::string_view v) const {
  for (const auto& [name, k] : orders)
    if (name == v) return k;
  throw DomainError("no nilpotency order recorded for '" + std::string(v) + "'");
}

NilpotencyCertificate nilpotency_certificate(const Derivation& d, int bound) {
  if (bound < 1) throw DomainError("nilpotency bound must be at least 1");
  NilpotencyCertificate cert;
  cert.bound_used = bound;
  const TablePtr& table = d.table();
  for (std::size_t v = 0; v < table->size(); ++v) {
    if (table->is_parameter(v)) continue;
    Polynomial p = Polynomial::variable(table, v);
    if (d.relation()) p = normal_form(p, *d.relation());
    int k = 0;
    while (!p.is_zero() && k < bound) {
      p = derive(d, p);
      ++k;
    }
    if (!p.is_zero()) {
      cert.failed_generator = (*table)[v].name;
      return cert;
    }
    cert.orders.emplace_back((*table)[v].name, k);
  }
  cert.success = true;
  return cert;
}

namespace {

RingMap exponential_unchecked(const Derivation& d, std::size_t s, int bound, const Coefficient& sign) {
  const TablePtr& table = d.table();
  const Polynomial S = Polynomial::variable(table, s) * sign;
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < table->size(); ++v) {
    Polynomial term = Polynomial::variable(table, v);
    if (table->is_parameter(v)) {
      images.push_back(term);
      continue;
    }
    if (d.relation()) term = normal_form(term, *d.relation());
    Polynomial sum(table);
    Polynomial power = Polynomial::constant(table, Coefficient(1));
    Rational factorial(1);
    int k = 0;
    while (!term.is_zero()) {
      if (k > bound) throw DomainError("exponential: '" + (*table)[v].name + "' is not annihilated within the bound");
      sum += term * power * Coefficient(factorial.inverse());
      term = derive(d, term);
      ++k;
      power *= S;
      factorial *= Rational(k);
    }
    images.push_back(sum);
  }
  return RingMap(table, std::move(images));
}

bool fixes_mod(const RingMap& m, const std::optional<QuotientRelation>& rel) {
  for (std::size_t v = 0; v < m.images().size(); ++v) {
    Polynomial diff = m.image(v) - Polynomial::variable(m.target(), v);
    if (rel) diff = normal_form(diff, *rel);
    if (!diff.is_zero()) return false;
  }
  return true;
}

}  // namespace

RingMap exponential(const Derivation& d, std::string_view s, int bound) {
  const std::size_t si = d.table()->require(s);
  if (!d.table()->is_parameter(si)) throw DomainError("exponential: '" + std::string(s) + "' is not a parameter");
  for (const auto& im : d.images())
    if (im.involves(si)) throw DomainError("exponential: the derivation involves '" + std::string(s) + "'");
  auto cert = nilpotency_certificate(d, bound);
  if (!cert.success) throw DomainError("exponential: not locally nilpotent on '" + cert.failed_generator + "' within the bound");
  RingMap plus = exponential_unchecked(d, si, bound, Coefficient(1));
  RingMap minus = exponential_unchecked(d, si, bound, Coefficient(-1));
  if (!fixes_mod(compose(plus, minus), d.relation()) || !fixes_mod(compose(minus, plus), d.relation()))
    throw InternalError("exponential: exp(sd) and exp(-sd) are not inverse");
  return plus.with_inverse(minus);
}

Polynomial poisson(const Polynomial& h, const Polynomial& f) {
  if (!same_table(h.table(), f.table())) throw TableMismatch("poisson");
  const std::size_t z = h.table()->require("z");
  const std::size_t t = h.table()->require("t");
  return partial_derivative(h, z) * partial_derivative(f, t) - partial_derivative(h, t) * partial_derivative(f, z);
}

Derivation conjugate(const Derivation& d, const RingMap& fwd, const RingMap& bwd,
                     const std::vector<Polynomial>& forward_mod, const std::vector<Polynomial>& backward_mod,
                     std::optional<QuotientRelation> relation) {
  if (!same_table(bwd.target(), d.table()) || !same_table(fwd.source(), d.table()))
    throw TableMismatch("conjugate: maps do not match the derivation's ring");
  if (!verify_inverse_pair(fwd.with_inverse(bwd), forward_mod, backward_mod))
    throw DomainError("conjugate: the maps are not an inverse pair");
  // The raw images keep their shape; derive() reduces outputs when a relation is attached.
  Derivation plain(d.table(), d.images());
  std::vector<Polynomial> images;
  for (const auto& im : bwd.images()) images.push_back(apply(fwd, derive(plain, im)));
  return Derivation(bwd.source(), std::move(images), std::move(relation));
}

Derivation extend_lnd_from_base(const Derivation& d0, const QuotientRelation& rel) {
  const TablePtr& T = rel.table();
  const TablePtr& B = d0.table();
  const std::string& xname = (*T)[rel.x()].name;
  const std::string& yname = (*T)[rel.y()].name;
  if (auto bx = B->index_of(xname); bx && !d0.image(*bx).is_zero())
    throw DomainError("extend_lnd: d0 moves '" + xname + "'");
  auto by = B->index_of(yname);
  for (const auto& im : d0.images())
    if (by && im.involves(*by)) throw DomainError("extend_lnd: d0 involves '" + yname + "'");

  const Polynomial X2 = Polynomial::variable(T, rel.x()).pow(2);
  Derivation base(B, d0.images());
  std::vector<Polynomial> images(T->size(), Polynomial(T));
  for (std::size_t v = 0; v < T->size(); ++v) {
    if (v == rel.x() || v == rel.y() || T->is_parameter(v)) continue;
    auto bv = B->index_of((*T)[v].name);
    if (bv) images[v] = X2 * embed(d0.image(*bv), T);
  }
  images[rel.y()] = -embed(derive(base, embed(rel.tail(), B)), T);
  Derivation out(T, std::move(images));
  if (!derive(out, rel.relation()).is_zero()) throw InternalError("extend_lnd: d(relation) != 0");
  return Derivation(T, out.images(), rel);
}

namespace {

// Term-wise antiderivative in variable v (constant of integration 0).
Polynomial integrate(const Polynomial& f, std::size_t v) {
  PolynomialBuilder b(f.table());
  for (const auto& t : f.terms()) {
    if (t.exponents[v] == -1) throw DomainError("integrate: logarithmic term in " + f.to_string());
    Exponents e = t.exponents;
    e[v] += 1;
    b.add(e, t.coefficient * Coefficient(Rational(1, e[v])));
  }
  return b.build();
}

}  // namespace

ThetaResult theta_extract(const RingMap& phi, const Polynomial& r) {
  if (!same_table(phi.source(), phi.target()) || !same_table(r.table(), phi.source()))
    throw TableMismatch("theta_extract");
  const TablePtr& T = phi.source();
  const std::size_t x = T->require("x");
  const std::size_t z = T->require("z");
  const std::size_t t = T->require("t");
  const Polynomial X = Polynomial::variable(T, x);
  const Polynomial Z = Polynomial::variable(T, z);
  const Polynomial Tt = Polynomial::variable(T, t);
  if (!(phi.image(x) == X)) throw DomainError("theta_extract: phi must fix x");
  if (!congruent_to_identity(phi, "x", 1)) throw DomainError("theta_extract: phi is not the identity mod (x)");

  auto first_order = [&](std::size_t v) {
    auto q = exact_divide(phi.image(v) - Polynomial::variable(T, v), X);
    return q->coefficient_of(x, 0);
  };
  ThetaResult out{Polynomial(T), Coefficient(0), first_order(z), first_order(t), Polynomial(T)};
  for (std::size_t v = 0; v < T->size(); ++v)
    if (v != z && v != t && !T->is_parameter(v) && (out.f.involves(v) || out.g.involves(v)))
      throw DomainError("theta_extract: first-order terms involve '" + (*T)[v].name + "'");
  if (!(partial_derivative(out.f, z) + partial_derivative(out.g, t)).is_zero())
    throw DomainError("theta_extract: f_z + g_t != 0, phi is not an automorphism mod x^2");

  Polynomial h1 = integrate(out.f, t);
  Polynomial rest = -out.g - partial_derivative(h1, z);
  if (rest.involves(t)) throw InternalError("theta_extract: integrability");
  out.h = h1 + integrate(rest, z);

  Reduction red = reduce(out.h, {r});
  if (!red.remainder.is_constant())
    throw DomainError("theta_extract: h reduces to the non-constant " + red.remainder.to_string() + " mod r");
  out.constant = *red.remainder.constant_value();
  out.alpha = red.cofactors[0];

  const Polynomial ra = r * out.alpha;
  const Polynomial X2 = X * X;
  auto zero_mod_x2 = [&](const Polynomial& p) { return p.is_zero() || exact_divide(p, X2).has_value(); };
  if (!zero_mod_x2(phi.image(z) - Z - X * partial_derivative(ra, t)) ||
      !zero_mod_x2(phi.image(t) - Tt + X * partial_derivative(ra, z)))
    throw InternalError("theta_extract: postcondition mod x^2");
  return out;
}

namespace {

std::vector<Polynomial> substitute_parameter(const std::vector<Polynomial>& images, const TablePtr& T, std::size_t c,
                                             const Polynomial& value) {
  if (!same_table(value.table(), T)) throw TableMismatch("formal substitution value");
  if (value.involves(c)) throw DomainError("formal substitution: the value involves the parameter itself");
  std::vector<Polynomial> out;
  for (const auto& im : images) out.push_back(substitute_variable(im, c, value));
  return out;
}

std::size_t require_parameter(const TablePtr& T, std::string_view c) {
  std::size_t i = T->require(c);
  if (!T->is_parameter(i)) throw DomainError("formal substitution: '" + std::string(c) + "' is not a parameter");
  return i;
}

}  // namespace

RingMap formal_substitute_parameter(const RingMap& m, std::string_view c, const Polynomial& value) {
  if (!same_table(m.source(), m.target())) throw DomainError("formal substitution needs an endomorphism");
  const std::size_t ci = require_parameter(m.target(), c);
  std::vector<Polynomial> images = substitute_parameter(m.images(), m.target(), ci, value);
  images[ci] = Polynomial::variable(m.target(), ci);
  RingMap out(m.source(), std::move(images));
  const Polynomial rel = -value;
  if (QuotientRelation::matches(rel) && !member(apply(out, rel), {rel}))
    throw DomainError("formal substitution: the result does not preserve (" + rel.to_string() + ")");
  return out;
}

Derivation formal_substitute_parameter(const Derivation& d, std::string_view c, const Polynomial& value) {
  const std::size_t ci = require_parameter(d.table(), c);
  std::vector<Polynomial> images = substitute_parameter(d.images(), d.table(), ci, value);
  images[ci] = Polynomial(d.table());
  return Derivation(d.table(), std::move(images), d.relation());
}

}  // namespace krv
