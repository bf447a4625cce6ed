#include "krv/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

#include "krv/errors.hpp"

namespace krv {

// ---------------------------------------------------------------------------------------------
// VarTable

std::shared_ptr<const VarTable> VarTable::create(std::vector<Variable> variables) {
  std::set<std::string> seen;
  for (auto& v : variables) {
    if (v.name.empty()) throw DomainError("variable table: empty variable name");
    if (!seen.insert(v.name).second) throw DomainError("variable table: duplicate variable '" + v.name + "'");
    if (v.parameter) v.weight = 0;
  }
  return std::shared_ptr<const VarTable>(new VarTable(std::move(variables)));
}

std::shared_ptr<const VarTable> VarTable::create(const std::vector<std::string>& variables,
                                                 const std::vector<std::string>& laurent,
                                                 const std::vector<std::string>& parameters) {
  std::vector<Variable> vars;
  for (const auto& n : variables) vars.push_back({n, false, false, 1});
  for (const auto& n : parameters) vars.push_back({n, false, true, 0});
  for (const auto& n : laurent) {
    auto it = std::find_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == n; });
    if (it == vars.end()) throw DomainError("variable table: laurent name '" + n + "' is not declared");
    it->laurent = true;
  }
  return create(std::move(vars));
}

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t VarTable::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw DomainError("unknown variable '" + std::string(name) + "' in table " + describe());
  return *i;
}

bool operator==(const VarTable& a, const VarTable& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (std::size_t i = 0; i < a.vars_.size(); ++i) {
    const auto& x = a.vars_[i];
    const auto& y = b.vars_[i];
    if (x.name != y.name || x.laurent != y.laurent || x.parameter != y.parameter || x.weight != y.weight)
      return false;
  }
  return true;
}

std::string VarTable::describe() const {
  std::string out = "(";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ", ";
    out += vars_[i].name;
    if (vars_[i].parameter) out += " param";
    if (vars_[i].laurent) out += " laurent";
  }
  return out + ")";
}

bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || (a && b && *a == *b); }

long weighted_degree(const VarTable& table, const Exponents& e) {
  long d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(table[i].weight) * e[i];
  return d;
}

// ---------------------------------------------------------------------------------------------
// MonomialOrder

int MonomialOrder::compare(const VarTable& table, const Exponents& a, const Exponents& b) const {
  const std::size_t n = a.size();
  if (kind_ == Kind::lex) {
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t i = var_at(r);
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  for (bool params : {false, true}) {
    long da = 0;
    long db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].parameter != params) continue;
      long w = params ? 1 : table[i].weight;
      da += w * a[i];
      db += w * b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t r = n; r-- > 0;) {
      std::size_t i = var_at(r);
      if (table[i].parameter != params) continue;
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------------------------
// PolynomialBuilder

namespace {

struct ExponentHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : e) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

void sort_terms(const VarTable& table, std::vector<Term>& terms) {
  const auto& order = canonical_order();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(table, a.exponents, b.exponents) > 0;
  });
}

void check_exponents(const VarTable& table, const Exponents& e) {
  if (e.size() != table.size())
    throw DomainError("exponent vector has " + std::to_string(e.size()) + " entries, table has " +
                      std::to_string(table.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && !table[i].laurent)
      throw DomainError("negative exponent on non-Laurent variable '" + table[i].name + "'");
}

}  // namespace

struct PolynomialBuilder::Impl {
  TablePtr table;
  std::unordered_map<Exponents, Coefficient, ExponentHash> terms;
};

PolynomialBuilder::PolynomialBuilder(TablePtr table) : impl_(std::make_unique<Impl>()) {
  impl_->table = std::move(table);
}
PolynomialBuilder::~PolynomialBuilder() = default;
PolynomialBuilder::PolynomialBuilder(PolynomialBuilder&&) noexcept = default;
PolynomialBuilder& PolynomialBuilder::operator=(PolynomialBuilder&&) noexcept = default;

void PolynomialBuilder::add(const Exponents& exponents, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = impl_->terms.try_emplace(exponents, c);
  if (!inserted) it->second += c;
}

void PolynomialBuilder::add(const Polynomial& p, const Coefficient& scale) {
  if (!same_table(p.table(), impl_->table)) throw TableMismatch("builder add");
  for (const auto& t : p.terms()) add(t.exponents, scale.is_one() ? t.coefficient : t.coefficient * scale);
}

void PolynomialBuilder::add_shifted(const Polynomial& p, const Exponents& shift, const Coefficient& scale) {
  if (!same_table(p.table(), impl_->table)) throw TableMismatch("builder add");
  Exponents e(shift.size());
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.exponents[i] + shift[i];
    add(e, t.coefficient * scale);
  }
}

Polynomial PolynomialBuilder::build() {
  Polynomial out(impl_->table);
  out.terms_.reserve(impl_->terms.size());
  for (auto& [e, c] : impl_->terms)
    if (!c.is_zero()) out.terms_.push_back(Term{e, std::move(c)});
  impl_->terms.clear();
  sort_terms(*out.table_, out.terms_);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(TablePtr table, const Coefficient& c) {
  Polynomial p(std::move(table));
  if (!c.is_zero()) p.terms_.push_back(Term{Exponents(p.table_->size(), 0), c});
  return p;
}

Polynomial Polynomial::variable(TablePtr table, std::size_t index) {
  if (index >= table->size()) throw DomainError("variable index out of range");
  Exponents e(table->size(), 0);
  e[index] = 1;
  return monomial(std::move(table), std::move(e));
}

Polynomial Polynomial::variable(TablePtr table, std::string_view name) {
  std::size_t i = table->require(name);
  return variable(std::move(table), i);
}

Polynomial Polynomial::monomial(TablePtr table, Exponents exponents, const Coefficient& c) {
  check_exponents(*table, exponents);
  Polynomial p(std::move(table));
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(exponents), c});
  return p;
}

Polynomial Polynomial::from_terms(TablePtr table, std::vector<Term> terms) {
  PolynomialBuilder b(table);
  for (auto& t : terms) {
    check_exponents(*table, t.exponents);
    b.add(t.exponents, t.coefficient);
  }
  return b.build();
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  return std::all_of(terms_[0].exponents.begin(), terms_[0].exponents.end(), [](int e) { return e == 0; });
}

std::optional<Coefficient> Polynomial::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return terms_.empty() ? Coefficient(0) : terms_[0].coefficient;
}

bool Polynomial::is_unit_monomial() const noexcept {
  if (terms_.size() != 1) return false;
  const auto& e = terms_[0].exponents;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0 && !(*table_)[i].laurent) return false;
  return true;
}

bool Polynomial::has_negative_exponents() const noexcept {
  for (const auto& t : terms_)
    for (int e : t.exponents)
      if (e < 0) return true;
  return false;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

int Polynomial::degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].exponents[var];
  for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
  return d;
}

int Polynomial::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].exponents[var];
  for (const auto& t : terms_) d = std::min(d, t.exponents[var]);
  return d;
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exponents[var] != 0; });
}

Polynomial Polynomial::coefficient_of(std::size_t var, int k) const {
  Polynomial out(table_);
  for (const auto& t : terms_) {
    if (t.exponents[var] != k) continue;
    Term c = t;
    c.exponents[var] = 0;
    out.terms_.push_back(std::move(c));
  }
  sort_terms(*table_, out.terms_);  // dropping a variable can reorder terms
  return out;
}

void Polynomial::require_same_table(const Polynomial& other, const char* op) const {
  if (!same_table(table_, other.table_))
    throw TableMismatch(std::string(op) + ": " + table_->describe() + " vs " + other.table_->describe());
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_table(rhs, "add");
  if (rhs.terms_.empty()) return *this;
  const auto& order = canonical_order();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < rhs.terms_.size()) {
    int c = i == terms_.size()       ? -1
            : j == rhs.terms_.size() ? 1
                                     : order.compare(*table_, terms_[i].exponents, rhs.terms_[j].exponents);
    if (c > 0) {
      merged.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      merged.push_back(rhs.terms_[j++]);
    } else {
      Coefficient s = terms_[i].coefficient + rhs.terms_[j].coefficient;
      if (!s.is_zero()) merged.push_back(Term{std::move(terms_[i].exponents), std::move(s)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_table(b, "mul");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.table_);
  if (b.terms_.size() == 1) return a.shifted(b.terms_[0].exponents, b.terms_[0].coefficient);
  if (a.terms_.size() == 1) return b.shifted(a.terms_[0].exponents, a.terms_[0].coefficient);
  PolynomialBuilder builder(a.table_);
  const Polynomial& small = a.size() < b.size() ? a : b;
  const Polynomial& large = a.size() < b.size() ? b : a;
  for (const auto& t : small.terms_) builder.add_shifted(large, t.exponents, t.coefficient);
  return builder.build();
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial& Polynomial::operator*=(const Coefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

Polynomial Polynomial::shifted(const Exponents& by, const Coefficient& c) const {
  check_exponents(*table_, by);  // a shift is itself a monomial of the table
  Polynomial out(table_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s{t.exponents, t.coefficient * c};
    for (std::size_t i = 0; i < by.size(); ++i) s.exponents[i] += by[i];
    check_exponents(*table_, s.exponents);
    out.terms_.push_back(std::move(s));
  }
  // Monomial multiplication preserves the relative order of terms.
  return out;
}

Polynomial Polynomial::unit_inverse() const {
  if (!is_unit_monomial()) throw DomainError("negative power of the non-unit " + to_string());
  Exponents e = terms_[0].exponents;
  for (int& x : e) x = -x;
  return monomial(table_, std::move(e), terms_[0].coefficient.inverse());
}

Polynomial Polynomial::pow(long exponent) const {
  if (exponent < 0) return unit_inverse().pow(-exponent);
  if (terms_.size() == 1) {
    Exponents e = terms_[0].exponents;
    for (int& x : e) x = static_cast<int>(x * exponent);
    return monomial(table_, std::move(e), terms_[0].coefficient.pow(exponent));
  }
  Polynomial result = constant(table_, Coefficient(1));
  Polynomial base = *this;
  auto e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_table(a.table_, b.table_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponents != b.terms_[i].exponents) return false;
    if (!(a.terms_[i].coefficient == b.terms_[i].coefficient)) return false;
  }
  return true;
}

namespace {

std::string render_monomial(const VarTable& table, const Exponents& e) {
  std::string out;
  auto emit = [&](std::size_t i) {
    if (e[i] == 0) return;
    if (!out.empty()) out += "*";
    out += table[i].name;
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  };
  for (std::size_t i = 0; i < e.size(); ++i)
    if (table[i].parameter) emit(i);
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!table[i].parameter) emit(i);
  return out;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = t.coefficient.prints_negative();
    Coefficient magnitude = negative ? -t.coefficient : t.coefficient;
    std::string mono = render_monomial(*table_, t.exponents);
    std::string body;
    if (mono.empty())
      body = magnitude.to_string();
    else if (magnitude.is_one())
      body = mono;
    else
      body = magnitude.to_string() + "*" + mono;
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------------------------
// Free operations

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
  const VarTable& source = *f.table();
  if (images.size() != source.size())
    throw DomainError("substitute: expected " + std::to_string(source.size()) + " images, got " +
                      std::to_string(images.size()));
  if (images.empty()) throw DomainError("substitute: empty table");
  const TablePtr& target = images[0].table();
  for (const auto& im : images)
    if (!same_table(im.table(), target)) throw TableMismatch("substitute: images over different tables");

  std::vector<std::map<int, Polynomial>> cache(source.size());
  auto power = [&](std::size_t v, int e) -> const Polynomial& {
    auto it = cache[v].find(e);
    if (it != cache[v].end()) return it->second;
    Polynomial p(target);
    if (e < 0) {
      if (!images[v].is_unit_monomial())
        throw DomainError("substitute: variable '" + source[v].name +
                          "' occurs with a negative exponent but its image " + images[v].to_string() +
                          " is not a unit monomial");
      p = images[v].unit_inverse().pow(-e);
    } else if (e > 1 && cache[v].count(e - 1)) {
      p = cache[v].at(e - 1) * images[v];
    } else {
      p = images[v].pow(e);
    }
    return cache[v].emplace(e, std::move(p)).first->second;
  };

  // Monomial images (the common case of fixed variables) are applied as exponent shifts.
  std::vector<bool> monomial_image(source.size());
  for (std::size_t v = 0; v < source.size(); ++v) monomial_image[v] = images[v].size() == 1;

  PolynomialBuilder out(target);
  const std::size_t m = target->size();
  for (const auto& t : f.terms()) {
    Exponents shift(m, 0);
    Coefficient scale = t.coefficient;
    Polynomial product = Polynomial::constant(target, Coefficient(1));
    bool zero = false;
    for (std::size_t v = 0; v < source.size() && !zero; ++v) {
      int e = t.exponents[v];
      if (e == 0) continue;
      if (images[v].is_zero()) {
        if (e < 0) throw DomainError("substitute: negative power of a zero image");
        zero = true;
        break;
      }
      if (monomial_image[v] && (e > 0 || images[v].is_unit_monomial())) {
        const Term& im = images[v].terms()[0];
        for (std::size_t i = 0; i < m; ++i) shift[i] += im.exponents[i] * e;
        scale *= im.coefficient.pow(e);
      } else {
        product *= power(v, e);
      }
    }
    if (zero) continue;
    for (std::size_t i = 0; i < m; ++i)
      if (shift[i] < 0 && !(*target)[i].laurent)
        throw DomainError("substitute: negative exponent on non-Laurent variable '" + (*target)[i].name + "'");
    out.add_shifted(product, shift, scale);
  }
  return out.build();
}

Polynomial substitute_variable(const Polynomial& f, std::size_t var, const Polynomial& value) {
  if (!same_table(f.table(), value.table())) throw TableMismatch("substitute_variable");
  std::vector<Polynomial> images;
  images.reserve(f.table()->size());
  for (std::size_t i = 0; i < f.table()->size(); ++i)
    images.push_back(i == var ? value : Polynomial::variable(f.table(), i));
  return substitute(f, images);
}

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.table()->size()) throw DomainError("partial_derivative: variable index out of range");
  PolynomialBuilder b(f.table());
  for (const auto& t : f.terms()) {
    int e = t.exponents[var];
    if (e == 0) continue;
    Exponents d = t.exponents;
    d[var] -= 1;
    b.add(d, t.coefficient * Coefficient(e));
  }
  return b.build();
}

Polynomial partial_derivative(const Polynomial& f, std::string_view var) {
  return partial_derivative(f, f.table()->require(var));
}

Polynomial translate(const Polynomial& f, const std::vector<Polynomial>& center) {
  if (center.size() != f.table()->size()) throw DomainError("translate: center has the wrong length");
  std::vector<Polynomial> images;
  images.reserve(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) images.push_back(Polynomial::variable(f.table(), i) + center[i]);
  return substitute(f, images);
}

std::map<long, Polynomial> homogeneous_components(const Polynomial& f) {
  std::map<long, std::vector<Term>> buckets;
  for (const auto& t : f.terms()) buckets[weighted_degree(*f.table(), t.exponents)].push_back(t);
  std::map<long, Polynomial> out;
  for (auto& [d, terms] : buckets) out.emplace(d, Polynomial::from_terms(f.table(), std::move(terms)));
  return out;
}

Polynomial lowest_homogeneous_part(const Polynomial& f, const std::vector<Polynomial>& center) {
  Polynomial moved = translate(f, center);
  if (moved.is_zero()) throw EmptyConeError();
  return homogeneous_components(moved).begin()->second;
}

bool weighted_scale_check(const Polynomial& f, const std::vector<long>& weights, long degree) {
  if (weights.size() != f.table()->size()) throw DomainError("weighted_scale_check: one weight per variable expected");
  for (const auto& t : f.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * t.exponents[i];
    if (d != degree) return false;
  }
  return true;
}

std::vector<Polynomial> point_to_center(const TablePtr& table, const std::vector<Polynomial>& coordinates) {
  std::vector<Polynomial> center;
  center.reserve(table->size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < table->size(); ++i) {
    if ((*table)[i].parameter) {
      center.emplace_back(table);
      continue;
    }
    if (k >= coordinates.size()) break;
    const Polynomial& c = coordinates[k++];
    if (!same_table(c.table(), table)) throw TableMismatch("point coordinate");
    for (std::size_t j = 0; j < table->size(); ++j)
      if (!(*table)[j].parameter && c.involves(j))
        throw DomainError("point coordinate " + c.to_string() + " involves the variable '" + (*table)[j].name + "'");
    center.push_back(c);
  }
  if (k != coordinates.size() || center.size() != table->size())
    throw DomainError("point has " + std::to_string(coordinates.size()) + " coordinates; expected one per non-parameter variable");
  return center;
}

Polynomial embed(const Polynomial& f, const TablePtr& target) {
  if (same_table(f.table(), target)) return f;
  const VarTable& src = *f.table();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target->index_of(src[i].name);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Exponents e(target->size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!where[i]) throw DomainError("cannot embed: variable '" + src[i].name + "' is not in " + target->describe());
      e[*where[i]] = t.exponents[i];
    }
    terms.push_back(Term{std::move(e), t.coefficient});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

}  // namespace krv
