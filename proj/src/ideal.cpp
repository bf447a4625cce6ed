#include "krv/ideal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "krv/errors.hpp"

namespace krv {

namespace {

struct DescendingBy {
  const VarTable* table;
  const MonomialOrder* order;
  bool operator()(const Exponents& a, const Exponents& b) const { return order->compare(*table, a, b) > 0; }
};

using TermMap = std::map<Exponents, Coefficient, DescendingBy>;

bool divides(const Exponents& d, const Exponents& m) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Exponents difference(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

void require_polynomial(const Polynomial& p, const char* where) {
  if (p.has_negative_exponents())
    throw DomainError(std::string(where) + ": negative exponents in " + p.to_string() +
                      " (clear Laurent denominators first)");
}

// Division core shared by reduce() and Buchberger. Cofactors are only accumulated on request.
Polynomial divide(const Polynomial& f, const std::vector<Polynomial>& gens, const MonomialOrder& order,
                  std::vector<PolynomialBuilder>* cofactors) {
  const TablePtr& table = f.table();
  TermMap p(DescendingBy{table.get(), &order});
  for (const auto& t : f.terms()) p.emplace(t.exponents, t.coefficient);

  std::vector<const Term*> leads;
  std::vector<Coefficient> lead_inverse;
  leads.reserve(gens.size());
  for (const auto& g : gens) {
    leads.push_back(&leading_term(g, order));
    lead_inverse.push_back(leads.back()->coefficient.inverse());
  }

  PolynomialBuilder remainder(table);
  while (!p.empty()) {
    auto top = p.begin();
    std::size_t i = 0;
    while (i < gens.size() && !divides(leads[i]->exponents, top->first)) ++i;
    if (i == gens.size()) {
      remainder.add(top->first, top->second);
      p.erase(top);
      continue;
    }
    Coefficient q = top->second * lead_inverse[i];
    Exponents shift = difference(top->first, leads[i]->exponents);
    if (cofactors) (*cofactors)[i].add(shift, q);
    Exponents e(shift.size());
    for (const auto& t : gens[i].terms()) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = t.exponents[k] + shift[k];
      Coefficient delta = -(t.coefficient * q);
      auto [it, inserted] = p.try_emplace(e, delta);
      if (!inserted) {
        it->second += delta;
        if (it->second.is_zero()) p.erase(it);
      }
    }
  }
  return remainder.build();
}

Polynomial monic(const Polynomial& p, const MonomialOrder& order) {
  const Coefficient& lc = leading_term(p, order).coefficient;
  return lc.is_one() ? p : p * lc.inverse();
}

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b, const MonomialOrder& order) {
  const Term& la = leading_term(a, order);
  const Term& lb = leading_term(b, order);
  Exponents l = lcm(la.exponents, lb.exponents);
  return a.shifted(difference(l, la.exponents), lb.coefficient) -
         b.shifted(difference(l, lb.exponents), la.coefficient);
}

}  // namespace

const Term& leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw DomainError("leading term of the zero polynomial");
  if (order.is_canonical()) return f.leading_term();
  const Term* best = &f.terms()[0];
  for (const auto& t : f.terms())
    if (order.compare(*f.table(), t.exponents, best->exponents) > 0) best = &t;
  return *best;
}

Polynomial clear_denominators(const Polynomial& f, Polynomial* clearing) {
  Exponents shift(f.table()->size(), 0);
  for (std::size_t v = 0; v < shift.size(); ++v) shift[v] = std::max(0, -f.min_degree_in(v));
  if (clearing) *clearing = Polynomial::monomial(f.table(), shift);
  return f.shifted(shift);
}

Reduction reduce(const Polynomial& f, const std::vector<Polynomial>& gens, const MonomialOrder& order,
                 LaurentPolicy policy) {
  Reduction out{Polynomial(f.table()), {}, Polynomial::constant(f.table(), Coefficient(1)), {}};
  Polynomial dividend = f;
  for (const auto& g : gens) {
    if (!same_table(g.table(), f.table())) throw TableMismatch("reduce: divisor " + g.to_string());
    if (g.is_zero()) throw DomainError("reduce: zero divisor in generator list");
    if (policy == LaurentPolicy::reject) {
      require_polynomial(g, "reduce");
      out.divisors.push_back(g);
    } else {
      out.divisors.push_back(clear_denominators(g));
    }
  }
  if (policy == LaurentPolicy::reject)
    require_polynomial(f, "reduce");
  else
    dividend = clear_denominators(f, &out.clearing);

  std::vector<PolynomialBuilder> cofactors;
  cofactors.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) cofactors.emplace_back(f.table());
  out.remainder = divide(dividend, out.divisors, order, &cofactors);
  for (auto& c : cofactors) out.cofactors.push_back(c.build());

  Polynomial check = out.remainder;
  for (std::size_t i = 0; i < gens.size(); ++i) check += out.cofactors[i] * out.divisors[i];
  if (!(check == dividend)) throw InternalError("reduce: division identity fails for " + f.to_string());
  return out;
}

bool GroebnerBasis::is_unit() const {
  return generators_.size() == 1 && generators_[0].is_constant() && !generators_[0].is_zero();
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  require_polynomial(f, "normal_form");
  if (generators_.empty()) return f;
  return divide(f, generators_, order_, nullptr);
}

bool GroebnerBasis::contains(const Polynomial& f) const {
  if (f.is_zero()) return true;
  return normal_form(clear_denominators(f)).is_zero();
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const BuchbergerOptions& options) {
  const MonomialOrder& order = options.order;
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    require_polynomial(g, "buchberger");
    if (g.is_zero()) continue;
    if (!basis.empty() && !same_table(g.table(), basis[0].table())) throw TableMismatch("buchberger generators");
    if (g.is_constant()) return GroebnerBasis({Polynomial::constant(g.table(), Coefficient(1))}, order);
    basis.push_back(monic(g, order));
  }
  if (basis.empty()) return GroebnerBasis({}, order);
  const TablePtr table = basis[0].table();
  const VarTable& vt = *table;

  std::vector<Exponents> leads;
  for (const auto& g : basis) leads.push_back(leading_term(g, order).exponents);

  using Pair = std::pair<std::size_t, std::size_t>;
  std::set<Pair> pending;
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.emplace(i, j);
  auto is_pending = [&](std::size_t a, std::size_t b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  std::size_t processed = 0;
  while (!pending.empty()) {
    // Normal strategy: the pair with the smallest lcm goes first.
    auto pick = pending.begin();
    Exponents best = lcm(leads[pick->first], leads[pick->second]);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exponents l = lcm(leads[it->first], leads[it->second]);
      if (order.compare(vt, l, best) < 0) {
        best = std::move(l);
        pick = it;
      }
    }
    auto [i, j] = *pick;
    pending.erase(pick);
    if (coprime(leads[i], leads[j])) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k)
      chain = k != i && k != j && divides(leads[k], best) && !is_pending(i, k) && !is_pending(j, k);
    if (chain) continue;

    if (++processed > options.max_pairs)
      throw BudgetExceeded("buchberger: more than " + std::to_string(options.max_pairs) + " S-pairs reduced");
    Polynomial r = divide(s_polynomial(basis[i], basis[j], order), basis, order, nullptr);
    if (r.is_zero()) continue;
    if (r.is_constant()) return GroebnerBasis({Polynomial::constant(table, Coefficient(1))}, order);
    basis.push_back(monic(r, order));
    leads.push_back(leading_term(basis.back(), order).exponents);
    for (std::size_t k = 0; k + 1 < basis.size(); ++k) pending.emplace(k, basis.size() - 1);
  }

  // Minimalise: drop generators whose leading monomial is a multiple of another's.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i || !divides(leads[k], leads[i])) continue;
      redundant = leads[k] != leads[i] || k < i;  // equal leads: keep the first
    }
    if (!redundant) keep.push_back(i);
  }
  std::vector<Polynomial> minimal;
  for (std::size_t i : keep) minimal.push_back(basis[i]);

  // Interreduce: the tail of each generator is reduced by all the others.
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    const Term& lt = leading_term(minimal[i], order);
    Polynomial head = Polynomial::monomial(table, lt.exponents, lt.coefficient);
    reduced.push_back(head + divide(minimal[i] - head, others, order, nullptr));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.compare(vt, leading_term(a, order).exponents, leading_term(b, order).exponents) > 0;
  });
  return GroebnerBasis(std::move(reduced), order);
}

bool member(const Polynomial& f, const std::vector<Polynomial>& gens, const MonomialOrder& order) {
  if (f.is_zero()) return true;
  std::vector<Polynomial> cleared;
  for (const auto& g : gens) {
    if (!same_table(g.table(), f.table())) throw TableMismatch("member: generator " + g.to_string());
    if (!g.is_zero()) cleared.push_back(clear_denominators(g));
  }
  if (cleared.empty()) return false;
  BuchbergerOptions options;
  options.order = order;
  return buchberger(cleared, options).contains(f);
}

std::vector<Polynomial> jacobian_ideal(const Polynomial& f) {
  std::vector<Polynomial> out{f};
  for (std::size_t v = 0; v < f.table()->size(); ++v)
    if (!f.table()->is_parameter(v)) out.push_back(partial_derivative(f, v));
  return out;
}

bool singular_locus_check(const Polynomial& f, SingularMode mode, const std::vector<Polynomial>& point) {
  const TablePtr& table = f.table();
  if (mode == SingularMode::smooth_everywhere) {
    std::vector<Polynomial> gens;
    for (const auto& g : jacobian_ideal(f)) gens.push_back(clear_denominators(g));
    return buchberger(gens).is_unit();
  }
  std::vector<Polynomial> center = point_to_center(table, point);
  bool any_parameter = false;
  for (const auto& c : center) any_parameter = any_parameter || !c.is_constant();
  if (mode == SingularMode::singular_at_point && any_parameter)
    throw DomainError("singular_at_point: point coordinates must be constants");
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < table->size(); ++v)
    images.push_back(table->is_parameter(v) ? Polynomial::variable(table, v) : center[v]);
  for (const auto& g : jacobian_ideal(f))
    if (!substitute(g, images).is_zero()) return false;
  return true;
}

}  // namespace krv
