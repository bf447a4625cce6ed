#include "krv/local_geometry.hpp"

#include "krv/errors.hpp"

namespace krv {

std::string to_string(ConeTag tag) {
  switch (tag) {
    case ConeTag::double_hyperplane: return "double_hyperplane";
    case ConeTag::two_distinct_hyperplanes: return "two_distinct_hyperplanes";
    case ConeTag::other: return "other";
  }
  return "other";
}

std::optional<ConeTag> parse_cone_tag(std::string_view text) {
  for (ConeTag t : {ConeTag::double_hyperplane, ConeTag::two_distinct_hyperplanes, ConeTag::other})
    if (to_string(t) == text) return t;
  return std::nullopt;
}

Polynomial tangent_cone(const Polynomial& f, const std::vector<Polynomial>& point) {
  std::vector<Polynomial> center = point_to_center(f.table(), point);
  std::vector<Polynomial> at(center);
  for (std::size_t v = 0; v < at.size(); ++v)
    if (f.table()->is_parameter(v)) at[v] = Polynomial::variable(f.table(), v);
  Polynomial value = substitute(f, at);
  if (!value.is_zero()) throw DomainError("tangent cone: f does not vanish at the point (value " + value.to_string() + ")");
  return lowest_homogeneous_part(f, center);
}

namespace {

std::size_t rank(std::vector<std::vector<Coefficient>> m) {
  const std::size_t n = m.size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < n; ++col) {
    std::size_t pivot = r;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) continue;
    std::swap(m[pivot], m[r]);
    Coefficient inv = m[r][col].inverse();
    for (std::size_t i = r + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      Coefficient factor = m[i][col] * inv;
      for (std::size_t k = col; k < n; ++k) m[i][k] -= factor * m[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

ConeClass classify_quadric(const Polynomial& form, const std::map<std::string, Coefficient>& specialization) {
  const TablePtr& table = form.table();
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < table->size(); ++v) {
    auto it = specialization.find((*table)[v].name);
    if (it != specialization.end()) {
      if (!table->is_parameter(v)) throw DomainError("classify_quadric: '" + it->first + "' is not a parameter");
      images.push_back(Polynomial::constant(table, it->second));
    } else {
      images.push_back(Polynomial::variable(table, v));
    }
  }
  for (const auto& [name, value] : specialization) table->require(name);
  Polynomial q = substitute(form, images);
  if (q.is_zero()) throw DomainError("classify_quadric: the form vanishes after specialization");

  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < table->size(); ++v) {
    if (!q.involves(v)) continue;
    if (table->is_parameter(v))
      throw DomainError("classify_quadric: parameter '" + (*table)[v].name + "' is not specialized");
    vars.push_back(v);
  }
  const std::size_t n = vars.size();
  std::vector<std::vector<Coefficient>> m(n, std::vector<Coefficient>(n));
  for (const auto& t : q.terms()) {
    int total = 0;
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i) {
      int e = t.exponents[vars[i]];
      if (e < 0) throw DomainError("classify_quadric: negative exponent in " + q.to_string());
      total += e;
      for (int k = 0; k < e; ++k) hit.push_back(i);
    }
    if (total != 2) throw DomainError("classify_quadric: " + q.to_string() + " is not a quadratic form");
    if (hit[0] == hit[1]) {
      m[hit[0]][hit[0]] += t.coefficient;
    } else {
      Coefficient half = t.coefficient * Coefficient(Rational(1, 2));
      m[hit[0]][hit[1]] += half;
      m[hit[1]][hit[0]] += half;
    }
  }
  std::size_t r = rank(m);
  ConeTag tag = r == 1 ? ConeTag::double_hyperplane : r == 2 ? ConeTag::two_distinct_hyperplanes : ConeTag::other;
  return ConeClass{tag, q};
}

bool graph_variable_check(const Polynomial& f, std::string_view v) {
  std::size_t i = f.table()->require(v);
  if (f.degree_in(i) != 1 || f.min_degree_in(i) < 0) return false;
  Polynomial u = f.coefficient_of(i, 1);
  return u.is_constant() && !u.is_zero();
}

}  // namespace krv
