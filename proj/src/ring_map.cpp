#include "krv/ring_map.hpp"

#include <algorithm>

#include "krv/errors.hpp"
#include "krv/ideal.hpp"

namespace krv {

RingMap::RingMap(TablePtr source, std::vector<Polynomial> images)
    : source_(std::move(source)), images_(std::move(images)) {
  if (images_.size() != source_->size())
    throw DomainError("ring map: " + std::to_string(images_.size()) + " images for " +
                      std::to_string(source_->size()) + " variables");
  target_ = images_.empty() ? source_ : images_[0].table();
  for (std::size_t v = 0; v < images_.size(); ++v) {
    if (!same_table(images_[v].table(), target_)) throw TableMismatch("ring map images");
    if (source_->is_laurent(v) && !images_[v].is_unit_monomial())
      throw DomainError("ring map: Laurent variable '" + (*source_)[v].name + "' needs a unit-monomial image, got " +
                        images_[v].to_string());
  }
}

RingMap RingMap::identity(const TablePtr& table) {
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < table->size(); ++v) images.push_back(Polynomial::variable(table, v));
  return RingMap(table, std::move(images));
}

RingMap RingMap::from_assignments(const TablePtr& source, const TablePtr& target,
                                  const std::map<std::string, Polynomial>& assignments) {
  for (const auto& [name, p] : assignments) {
    source->require(name);
    if (!same_table(p.table(), target)) throw TableMismatch("image of '" + name + "'");
  }
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < source->size(); ++v) {
    const std::string& name = (*source)[v].name;
    auto it = assignments.find(name);
    if (it != assignments.end()) {
      images.push_back(it->second);
      continue;
    }
    auto idx = target->index_of(name);
    if (!idx) throw DomainError("ring map: no image for '" + name + "' and the target has no such variable");
    images.push_back(Polynomial::variable(target, *idx));
  }
  return RingMap(source, std::move(images));
}

RingMap RingMap::with_inverse(const RingMap& inverse) const {
  if (!same_table(inverse.source_, target_) || !same_table(inverse.target_, source_))
    throw TableMismatch("claimed inverse has the wrong source or target");
  RingMap out = *this;
  out.inverse_ = std::make_shared<const RingMap>(inverse);
  return out;
}

bool RingMap::is_identity() const {
  if (!same_table(source_, target_)) return false;
  for (std::size_t v = 0; v < images_.size(); ++v)
    if (!(images_[v] == Polynomial::variable(target_, v))) return false;
  return true;
}

Polynomial apply(const RingMap& m, const Polynomial& f) {
  if (!same_table(f.table(), m.source())) throw TableMismatch("apply: polynomial is not over the map's source");
  return substitute(f, m.images());
}

RingMap compose(const RingMap& m2, const RingMap& m1) {
  if (!same_table(m1.target(), m2.source())) throw TableMismatch("compose: target of the inner map is not the source of the outer");
  std::vector<Polynomial> images;
  images.reserve(m1.images().size());
  for (const auto& im : m1.images()) images.push_back(apply(m2, im));
  return RingMap(m1.source(), std::move(images));
}

namespace {

bool fixes_variables(const RingMap& m, const std::vector<Polynomial>& mod) {
  for (std::size_t v = 0; v < m.images().size(); ++v) {
    Polynomial diff = m.image(v) - Polynomial::variable(m.target(), v);
    if (diff.is_zero()) continue;
    if (mod.empty() || !member(diff, mod)) return false;
  }
  return true;
}

}  // namespace

bool verify_inverse_pair(const RingMap& m, const std::vector<Polynomial>& forward_mod,
                         const std::vector<Polynomial>& backward_mod) {
  const RingMap* inv = m.claimed_inverse();
  if (!inv) throw DomainError("verify_inverse_pair: no claimed inverse");
  if (!same_table(m.source(), m.target())) throw DomainError("verify_inverse_pair: only endomorphisms are supported");
  return fixes_variables(compose(m, *inv), forward_mod) && fixes_variables(compose(*inv, m), backward_mod);
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw DomainError("determinant of an empty matrix");
  for (const auto& row : matrix)
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  if (n == 1) return matrix[0][0];
  Polynomial det(matrix[0][0].table());
  for (std::size_t j = 0; j < n; ++j) {
    if (matrix[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(matrix[i][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = matrix[0][j] * determinant(minor);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

Jacobian jacobian(const RingMap& m, const std::vector<std::string>& vars) {
  if (vars.empty()) throw DomainError("jacobian: no variables");
  Jacobian out{{}, Polynomial(m.target())};
  for (const auto& row_var : vars) {
    const Polynomial& im = m.image(row_var);
    std::vector<Polynomial> row;
    for (const auto& col_var : vars) row.push_back(partial_derivative(im, m.target()->require(col_var)));
    out.matrix.push_back(std::move(row));
  }
  out.determinant = determinant(out.matrix);
  return out;
}

namespace {

// Shifts every Laurent variable so its least exponent is 0; returns the shift applied.
Polynomial strip_laurent_content(const Polynomial& p, Exponents& shift) {
  const VarTable& t = *p.table();
  shift.assign(t.size(), 0);
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.is_laurent(v)) shift[v] = -p.min_degree_in(v);
  return p.shifted(shift);
}

}  // namespace

std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g) {
  if (!same_table(f.table(), g.table())) throw TableMismatch("exact_divide");
  if (g.is_zero()) throw DivisionByZero();
  if (f.is_zero()) return Polynomial(f.table());
  // With no Laurent monomial content left in g, divisibility in the Laurent ring is divisibility
  // in the polynomial ring, and a single divisor is its own Groebner basis.
  Exponents sf;
  Exponents sg;
  Polynomial f0 = strip_laurent_content(f, sf);
  Polynomial g0 = strip_laurent_content(g, sg);
  Reduction red = reduce(f0, {g0});
  if (!red.remainder.is_zero()) return std::nullopt;
  Exponents back(sf.size());
  for (std::size_t v = 0; v < back.size(); ++v) back[v] = sg[v] - sf[v];
  Polynomial q = red.cofactors[0].shifted(back);
  if (!(q * g == f)) throw InternalError("exact_divide: quotient check failed");
  return q;
}

bool QuotientRelation::matches(const Polynomial& p) {
  try {
    QuotientRelation rel(p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

QuotientRelation::QuotientRelation(Polynomial relation)
    : relation_(std::move(relation)), tail_(relation_.table()), r_(relation_.table()), F_(relation_.table()) {
  const VarTable& t = *relation_.table();
  bool found = false;
  for (const auto& term : relation_.terms()) {
    if (!term.coefficient.is_one()) continue;
    std::size_t a = t.size();
    std::size_t b = t.size();
    bool shape = true;
    for (std::size_t v = 0; v < t.size() && shape; ++v) {
      int e = term.exponents[v];
      if (e == 0) continue;
      if (t.is_parameter(v)) shape = false;
      else if (e == 2 && a == t.size()) a = v;
      else if (e == 1 && b == t.size()) b = v;
      else shape = false;
    }
    if (!shape || a == t.size() || b == t.size()) continue;
    std::size_t others = 0;
    for (const auto& u : relation_.terms()) others += u.exponents[b] != 0;
    if (others != 1) continue;
    x_ = a;
    y_ = b;
    found = true;
    break;
  }
  if (!found) throw DomainError("relation " + relation_.to_string() + " is not of the form x^2*y + r + x*F");
  Exponents lead(t.size(), 0);
  lead[x_] = 2;
  lead[y_] = 1;
  tail_ = relation_ - Polynomial::monomial(relation_.table(), lead);
  r_ = tail_.coefficient_of(x_, 0);
  auto q = exact_divide(tail_ - r_, Polynomial::variable(relation_.table(), x_));
  if (!q) throw InternalError("relation tail split");
  F_ = *q;
}

Polynomial normal_form(const Polynomial& f, const QuotientRelation& rel) {
  if (!same_table(f.table(), rel.table())) throw TableMismatch("normal_form");
  const std::size_t x = rel.x();
  const std::size_t y = rel.y();
  const Polynomial minus_tail = -rel.tail();
  Polynomial current = f;
  for (;;) {
    PolynomialBuilder keep(f.table());
    PolynomialBuilder quotient(f.table());
    bool rewrote = false;
    for (const auto& t : current.terms()) {
      if (t.exponents[x] >= 2 && t.exponents[y] >= 1) {
        Exponents e = t.exponents;
        e[x] -= 2;
        e[y] -= 1;
        quotient.add(e, t.coefficient);
        rewrote = true;
      } else {
        keep.add(t.exponents, t.coefficient);
      }
    }
    if (!rewrote) return current;
    current = keep.build() + quotient.build() * minus_tail;
  }
}

QuotientExtension extend_to_quotient_automorphism(const RingMap& phi, const QuotientRelation& rel) {
  const TablePtr& T = rel.table();
  const std::string& xname = (*T)[rel.x()].name;
  const std::string& yname = (*T)[rel.y()].name;
  if (phi.source()->index_of(yname) && !(phi.image(yname) == Polynomial::variable(phi.target(), yname)))
    throw DomainError("extend: phi must not move '" + yname + "'");

  // phi acts on T by the given images and fixes the remaining variables.
  std::vector<Polynomial> base(T->size(), Polynomial(T));
  for (std::size_t v = 0; v < T->size(); ++v) {
    auto idx = phi.source()->index_of((*T)[v].name);
    base[v] = idx ? embed(phi.image(*idx), T) : Polynomial::variable(T, v);
    if (v != rel.y() && base[v].involves(rel.y())) throw DomainError("extend: image of '" + (*T)[v].name + "' involves " + yname);
  }
  RingMap phiT(T, base);

  const Polynomial X = Polynomial::variable(T, rel.x());
  auto lam = exact_divide(base[rel.x()], X);
  if (!lam || lam->is_zero() || !lam->is_unit_monomial())
    throw DomainError("extend: phi(" + xname + ") = " + base[rel.x()].to_string() + " is not a unit multiple of " + xname);
  for (std::size_t v = 0; v < T->size(); ++v)
    if (!T->is_parameter(v) && lam->involves(v)) throw DomainError("extend: the factor lambda must be a constant");

  // phi(r + xF) = (r + xF) f + x^2 g, by division against {r + xF, x^2}.
  const Polynomial& tail = rel.tail();
  const Polynomial X2 = X * X;
  Polynomial image = apply(phiT, tail);
  Reduction red = reduce(image, {tail, X2}, MonomialOrder::grevlex(), LaurentPolicy::clear);
  if (!red.remainder.is_zero()) {
    if (member(image, {tail, X2}))
      throw DomainError("extend: phi(r + xF) lies in (x^2, r + xF) but division did not find the decomposition");
    throw DomainError("extend: phi does not preserve the ideal (" + xname + "^2, " + tail.to_string() + ")");
  }
  // Undo the clearing monomial; the divisors themselves carry no denominators.
  Polynomial undo = red.clearing.unit_inverse();
  Polynomial f = red.cofactors[0] * undo;
  Polynomial g = red.cofactors[1] * undo;
  // Move the x^2-divisible part of f into g so that f is reduced mod x^2.
  PolynomialBuilder low(T);
  PolynomialBuilder high(T);
  for (const auto& t : f.terms()) {
    if (t.exponents[rel.x()] >= 2) {
      Exponents e = t.exponents;
      e[rel.x()] -= 2;
      high.add(e, t.coefficient);
    } else {
      low.add(t.exponents, t.coefficient);
    }
  }
  f = low.build();
  g += high.build() * tail;
  if (!(tail * f + X2 * g == image)) throw InternalError("extend: decomposition identity");

  const Polynomial Y = Polynomial::variable(T, rel.y());
  Polynomial lam2_inv = lam->pow(2).unit_inverse();
  std::vector<Polynomial> images = base;
  images[rel.y()] = (Y * f - g) * lam2_inv;
  RingMap Phi(T, std::move(images));
  if (!(apply(Phi, rel.relation()) == f * rel.relation()))
    throw InternalError("extend: Phi(relation) != f * relation");
  return QuotientExtension{std::move(Phi), *lam, std::move(f), std::move(g)};
}

bool congruent_to_identity(const RingMap& phi, const std::string& x, int k) {
  if (!same_table(phi.source(), phi.target())) throw DomainError("congruence to the identity needs an endomorphism");
  Polynomial xk = Polynomial::variable(phi.target(), x).pow(k);
  for (std::size_t v = 0; v < phi.images().size(); ++v) {
    Polynomial diff = phi.image(v) - Polynomial::variable(phi.target(), v);
    if (!diff.is_zero() && !exact_divide(diff, xk)) return false;
  }
  return true;
}

bool preserves_ideals(const RingMap& phi, const std::string& x, const std::vector<Polynomial>& ideal) {
  const RingMap* inv = phi.claimed_inverse();
  if (!inv) throw DomainError("membership in the automorphism group needs a claimed inverse");
  for (const RingMap* m : {&phi, inv}) {
    Polynomial X = Polynomial::variable(m->source(), x);
    if (!member(apply(*m, X), {Polynomial::variable(m->target(), x)})) return false;
    std::vector<Polynomial> target_ideal;
    for (const auto& g : ideal) target_ideal.push_back(embed(g, m->target()));
    for (const auto& g : ideal)
      if (!member(apply(*m, embed(g, m->source())), target_ideal)) return false;
  }
  return true;
}

}  // namespace krv
