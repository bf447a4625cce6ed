#include "properties.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "krv/derivation.hpp"
#include "krv/ideal.hpp"
#include "krv/parser.hpp"
#include "krv/ring_map.hpp"
#include "support.hpp"

namespace krv::testing {

std::string PropertyStats::summary() const {
  std::ostringstream os;
  os << cases << " cases, " << failures << " failures";
  if (positives > 0) os << ", " << positives << " positive";
  if (!first_failure.empty()) os << " (first: " << first_failure << ")";
  return os.str();
}

namespace {

void record(PropertyStats& s, bool ok, const std::string& what) {
  ++s.cases;
  if (ok) return;
  ++s.failures;
  if (s.first_failure.empty()) s.first_failure = what;
}

int total_degree(const Polynomial& f) {
  int d = 0;
  for (const auto& t : f.terms()) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

Polynomial without_constant(const Polynomial& f) {
  std::vector<Term> kept;
  for (const auto& t : f.terms())
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e != 0; })) kept.push_back(t);
  return Polynomial::from_terms(f.table(), std::move(kept));
}

// Sparse vectors indexed by exponent vectors, ordered by total degree then lexicographically.
// Any total order works for echelon reduction; this one is unrelated to the library's orders.
struct DegLex {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = 0;
    int db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};
using Vec = std::map<Exponents, Rational, DegLex>;

Vec to_vec(const Polynomial& f) {
  Vec v;
  for (const auto& t : f.terms()) {
    if (!t.coefficient.is_rational()) throw std::invalid_argument("span_member: rational coefficients only");
    v[t.exponents] = t.coefficient.re();
  }
  return v;
}

void axpy(Vec& target, const Rational& scale, const Vec& source) {
  for (const auto& [m, c] : source) {
    auto [it, inserted] = target.try_emplace(m, Rational(0));
    it->second += scale * c;
    if (it->second.is_zero()) target.erase(it);
  }
}

// Reduces v against pivots keyed by their leading exponent; the pivots are monic.
void reduce_vec(Vec& v, const std::map<Exponents, Vec, DegLex>& pivots) {
  auto it = v.begin();
  while (it != v.end()) {
    auto p = pivots.find(it->first);
    if (p == pivots.end()) {
      ++it;
      continue;
    }
    Exponents lead = it->first;
    Rational c = it->second;
    axpy(v, -c, p->second);
    it = v.upper_bound(lead);
  }
}

void monomials_up_to(std::size_t n, int degree, Exponents& cur, std::size_t pos, std::vector<Exponents>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= degree; ++k) {
    cur[pos] = k;
    monomials_up_to(n, degree - k, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace

bool span_member(const Polynomial& f, const std::vector<Polynomial>& gens, int bound) {
  std::size_t n = f.table()->size();
  std::map<Exponents, Vec, DegLex> pivots;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int room = bound - total_degree(g);
    if (room < 0) continue;
    std::vector<Exponents> shifts;
    Exponents cur(n, 0);
    monomials_up_to(n, room, cur, 0, shifts);
    for (const auto& m : shifts) {
      Vec v;
      for (const auto& t : g.terms()) {
        Exponents e = t.exponents;
        for (std::size_t i = 0; i < n; ++i) e[i] += m[i];
        v[e] = t.coefficient.re();
      }
      reduce_vec(v, pivots);
      if (v.empty()) continue;
      Rational inv = v.begin()->second.inverse();
      for (auto& [e, c] : v) c *= inv;
      Exponents lead = v.begin()->first;
      pivots.emplace(lead, std::move(v));
    }
  }
  Vec target = to_vec(f);
  reduce_vec(target, pivots);
  return target.empty();
}

PropertyStats field_axioms(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  const Coefficient w = Coefficient::omega();
  record(s, w * w + w + Coefficient(1) == Coefficient(0), "w^2 + w + 1 != 0");
  while (s.cases < cases) {
    Coefficient a = random_coefficient(rng);
    Coefficient b = random_coefficient(rng);
    Coefficient c = random_coefficient(rng);
    bool ok = a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) &&
              a * (b + c) == a * b + a * c && a + (-a) == Coefficient(0) && a * Coefficient(1) == a &&
              a + Coefficient(0) == a;
    if (!a.is_zero()) ok = ok && a * a.inverse() == Coefficient(1) && (b / a) * a == b;
    Rational q = a.re();
    ok = ok && Rational::parse(q.to_string()) == q;
    record(s, ok, "a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string());
  }
  return s;
}

namespace {

Derivation random_derivation(Rng& rng, const TablePtr& table) {
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < table->size(); ++v)
    images.push_back(table->is_parameter(v) ? Polynomial(table) : random_polynomial(rng, table, {3, 2, true}));
  return Derivation(table, images);
}

Polynomial random_unit_monomial(Rng& rng, const TablePtr& table) {
  Exponents e(table->size(), 0);
  for (std::size_t v = 0; v < e.size(); ++v)
    if (table->is_laurent(v)) e[v] = static_cast<int>(uniform(rng, -2, 2));
  return Polynomial::monomial(table, e, random_nonzero(rng));
}

RingMap random_map(Rng& rng, const TablePtr& source, const TablePtr& target) {
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < source->size(); ++v)
    images.push_back(source->is_laurent(v) ? random_unit_monomial(rng, target)
                                           : random_polynomial(rng, target, {3, 2, true}));
  return RingMap(source, images);
}

}  // namespace

PropertyStats leibniz_law(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  while (s.cases < cases) {
    TablePtr table = random_table(rng);
    Derivation d = random_derivation(rng, table);
    Polynomial f = random_polynomial(rng, table);
    Polynomial g = random_polynomial(rng, table);
    bool ok = derive(d, f * g) == derive(d, f) * g + f * derive(d, g) && derive(d, f + g) == derive(d, f) + derive(d, g) &&
              derive(d, Polynomial::constant(table, random_coefficient(rng))).is_zero();
    record(s, ok, "f=" + f.to_string() + " g=" + g.to_string() + " over " + table->describe());
  }
  return s;
}

PropertyStats homomorphism_law(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  while (s.cases < cases) {
    TablePtr a = random_table(rng);
    TablePtr b = random_table(rng);
    TablePtr c = random_table(rng);
    RingMap m1 = random_map(rng, a, b);
    RingMap m2 = random_map(rng, b, c);
    Polynomial f = random_polynomial(rng, a, {4, 2, true});
    Polynomial g = random_polynomial(rng, a, {4, 2, true});
    bool ok = apply(m1, f + g) == apply(m1, f) + apply(m1, g) && apply(m1, f * g) == apply(m1, f) * apply(m1, g) &&
              apply(compose(m2, m1), f) == apply(m2, apply(m1, f)) &&
              apply(RingMap::identity(a), f) == f;
    record(s, ok, "f=" + f.to_string() + " g=" + g.to_string() + " over " + a->describe());
  }
  return s;
}

PropertyStats parser_round_trip(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  while (s.cases < cases) {
    TablePtr table = random_table(rng);
    Polynomial p = random_polynomial(rng, table, {6, 4, true});
    std::string text = render(p);
    bool ok = false;
    try {
      Polynomial q = parse_polynomial(text, table);
      ok = q == p && render(q) == text;
    } catch (const Error& e) {
      text += std::string(" raised ") + e.what();
    }
    if (p.has_negative_exponents()) ++s.positives;
    record(s, ok, text + " over " + table->describe());
  }
  return s;
}

PropertyStats groebner_vs_linear_algebra(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  static const std::vector<std::string> names = {"x", "y", "z"};
  while (s.cases < cases) {
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    TablePtr table = VarTable::create(std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(n)));
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(i);
    std::vector<Polynomial> gens;
    int maxdeg = 0;
    long count = uniform(rng, 1, 3);
    for (long i = 0; i < count; ++i) {
      // Generators vanish at the origin, so f with a nonzero constant term is a non-member.
      Polynomial g(table);
      while (g.is_zero()) {
        g = random_in(rng, table, vars, static_cast<int>(uniform(rng, 1, 3)), 3);
        g = without_constant(g);
      }
      gens.push_back(g);
      maxdeg = std::max(maxdeg, total_degree(gens.back()));
    }
    Polynomial f(table);
    if (uniform(rng, 0, 1) == 0) {
      for (const auto& g : gens) f += random_in(rng, table, vars, 2, 3) * g;
    } else {
      f = random_in(rng, table, vars, 3, 4);
    }
    bool by_gb = member(f, gens);
    bool by_la = span_member(f, gens, total_degree(f) + maxdeg + 2);
    if (by_gb) ++s.positives;
    std::string what = "f=" + f.to_string() + " gens={";
    for (const auto& g : gens) what += g.to_string() + ";";
    record(s, by_gb == by_la, what + "} groebner=" + (by_gb ? "yes" : "no"));
  }
  return s;
}

PropertyStats normal_form_laws(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyStats s;
  TablePtr table = VarTable::create({"x", "y", "z", "t"});
  auto var = [&](const char* n) { return Polynomial::variable(table, n); };
  Polynomial x = var("x");
  Polynomial y = var("y");
  Polynomial z = var("z");
  Polynomial t = var("t");
  Polynomial r = z * z + t.pow(3);
  Polynomial P = x * x * y + r + x;
  QuotientRelation rel(P);
  std::vector<std::size_t> zt = {2, 3};
  while (s.cases < cases) {
    Polynomial f = random_polynomial(rng, table, {6, 4, true});
    Polynomial n = normal_form(f, rel);
    bool ok = normal_form(n, rel) == n && exact_divide(f - n, P).has_value();
    for (const auto& term : n.terms()) ok = ok && !(term.exponents[0] >= 2 && term.exponents[1] >= 1);

    Polynomial f0 = random_in(rng, table, zt, 4, 4);
    Polynomial f1 = random_in(rng, table, zt, 4, 4);
    Polynomial image = normal_form(x * x * y * (f0 + x * f1), rel);
    ok = ok && image == -(r + x) * (f0 + x * f1) && member(image, {x * x, r + x});

    // A y-dependent f0 or f1 leaves y in the normal form.
    Polynomial h = random_in(rng, table, zt, 3, 3);
    if (!h.is_zero()) {
      ++s.positives;
      Polynomial moved = normal_form(x * x * y * (f0 + y * h + x * f1), rel);
      ok = ok && moved.involves(1);
    }
    record(s, ok, "f=" + f.to_string() + " f0=" + f0.to_string() + " f1=" + f1.to_string());
  }
  return s;
}

}  // namespace krv::testing
