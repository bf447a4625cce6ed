#include "krv/claims.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "krv/errors.hpp"
#include "krv/ideal.hpp"
#include "krv/local_geometry.hpp"

namespace krv {

// ---------------------------------------------------------------------------------------------
// Values

Value Value::of(Polynomial p) {
  Value v;
  v.kind = Kind::poly;
  v.poly = std::move(p);
  return v;
}

Value Value::of(RingMap m, std::string name) {
  Value v;
  v.kind = Kind::map;
  v.map = std::make_shared<const RingMap>(std::move(m));
  v.text = std::move(name);
  return v;
}

Value Value::of(Derivation d) {
  Value v;
  v.kind = Kind::derivation;
  v.derivation = std::make_shared<const Derivation>(std::move(d));
  return v;
}

std::string kind_name(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::poly: return "polynomial";
    case Value::Kind::map: return "map";
    case Value::Kind::derivation: return "derivation";
    case Value::Kind::list: return "list";
    case Value::Kind::set: return "set";
    case Value::Kind::mapping: return "mapping";
    case Value::Kind::string: return "string";
  }
  return "value";
}

namespace {

std::string render_images(const TablePtr& table, const std::vector<Polynomial>& images) {
  std::string out = "{";
  bool first = true;
  for (std::size_t v = 0; v < images.size(); ++v) {
    out += (first ? "" : "; ") + (*table)[v].name + " -> " + images[v].to_string();
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string Value::render() const {
  switch (kind) {
    case Kind::poly: return poly->to_string();
    case Kind::map: return render_images(map->source(), map->images());
    case Kind::derivation: {
      std::string s = render_images(derivation->table(), derivation->images());
      if (derivation->relation()) s += " mod {" + derivation->relation()->relation().to_string() + "}";
      return s;
    }
    case Kind::list:
    case Kind::set: {
      std::string out = kind == Kind::list ? "[" : "{";
      for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i].render();
      return out + (kind == Kind::list ? "]" : "}");
    }
    case Kind::mapping: {
      std::string out = "{";
      for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + keys[i] + " -> " + items[i].render();
      return out + "}";
    }
    case Kind::string: return "\"" + text + "\"";
  }
  return "";
}

std::string to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::error: return "error";
  }
  return "error";
}

std::size_t Report::count(ClaimStatus s) const {
  return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [&](const ClaimResult& c) { return c.status == s; }));
}

// ---------------------------------------------------------------------------------------------
// Coercions

namespace {

const Value& expect_kind(const Value& v, Value::Kind k, const char* what) {
  if (v.kind != k) throw DomainError(std::string(what) + ": expected a " + kind_name(k) + ", got a " + kind_name(v.kind));
  return v;
}

Polynomial as_poly(const Value& v, const TablePtr& table, const char* what) {
  const Polynomial& p = *expect_kind(v, Value::Kind::poly, what).poly;
  return same_table(p.table(), table) ? p : embed(p, table);
}

const RingMap& as_map(const Value& v, const char* what) { return *expect_kind(v, Value::Kind::map, what).map; }

const Derivation& as_derivation(const Value& v, const char* what) {
  return *expect_kind(v, Value::Kind::derivation, what).derivation;
}

const std::vector<Value>& as_collection(const Value& v, const char* what) {
  if (v.kind != Value::Kind::list && v.kind != Value::Kind::set)
    throw DomainError(std::string(what) + ": expected a list or set, got a " + kind_name(v.kind));
  return v.items;
}

std::vector<Polynomial> as_polys(const Value& v, const TablePtr& table, const char* what) {
  std::vector<Polynomial> out;
  for (const auto& item : as_collection(v, what)) out.push_back(as_poly(item, table, what));
  return out;
}

const std::string& as_string(const Value& v, const char* what) {
  return expect_kind(v, Value::Kind::string, what).text;
}

long as_integer(const Value& v, const char* what) {
  const Polynomial& p = *expect_kind(v, Value::Kind::poly, what).poly;
  auto c = p.constant_value();
  if (!c || !c->is_rational() || !c->re().is_integer() || !c->re().numerator().fits_slong_p())
    throw DomainError(std::string(what) + ": expected an integer, got " + p.to_string());
  return c->re().numerator().get_si();
}

Coefficient as_coefficient(const Value& v, const char* what) {
  const Polynomial& p = *expect_kind(v, Value::Kind::poly, what).poly;
  auto c = p.constant_value();
  if (!c) throw DomainError(std::string(what) + ": expected a constant, got " + p.to_string());
  return *c;
}

std::string as_variable(const Value& v, const char* what) {
  const Polynomial& p = *expect_kind(v, Value::Kind::poly, what).poly;
  if (p.size() == 1 && p.terms()[0].coefficient.is_one()) {
    const auto& e = p.terms()[0].exponents;
    std::size_t ones = 0;
    std::size_t at = 0;
    bool other = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 1) {
        ++ones;
        at = i;
      } else if (e[i] != 0) {
        other = true;
      }
    }
    if (ones == 1 && !other) return (*p.table())[at].name;
  }
  throw DomainError(std::string(what) + ": expected a variable, got " + p.to_string());
}

void arity(const Expr& e, std::size_t lo, std::size_t hi) {
  if (e.children.size() < lo || e.children.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
    throw DomainError(e.text + ": expected " + want + " arguments, got " + std::to_string(e.children.size()));
  }
}

bool laurent_free(const std::vector<Polynomial>& ps) {
  return std::none_of(ps.begin(), ps.end(), [](const Polynomial& p) { return p.has_negative_exponents(); });
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(const SourceUnit& unit) {
  for (const auto& item : unit.items) {
    switch (item.kind) {
      case Item::Kind::ring: {
        const auto& r = item.ring;
        rings_[r.name] = VarTable::create(r.vars, r.laurent, r.params);
        last_ring_ = r.name;
        break;
      }
      case Item::Kind::let: {
        Binding b;
        try {
          b.value = evaluate(item.let.value, item.scope);
          if (b.value->kind == Value::Kind::map && b.value->text.empty()) b.value->text = item.let.name;
        } catch (const ParseError& e) {
          b.error = describe(e);
        } catch (const std::exception& e) {
          b.error = e.what();
        }
        bindings_[item.let.name] = std::move(b);
        break;
      }
      case Item::Kind::map: {
        Binding b;
        try {
          TablePtr t = ring(item.map.ring);
          std::map<std::string, Polynomial> images;
          for (const auto& a : item.map.images) images.emplace(a.var, polynomial(a.value, item.map.ring));
          b.value = Value::of(RingMap::from_assignments(t, t, images), item.map.name);
        } catch (const std::exception& e) {
          b.error = e.what();
        }
        bindings_[item.map.name] = std::move(b);
        break;
      }
      case Item::Kind::derivation: {
        Binding b;
        try {
          const auto& d = item.derivation;
          TablePtr t = ring(d.ring);
          std::map<std::string, Polynomial> images;
          for (const auto& a : d.images) images.emplace(a.var, polynomial(a.value, d.ring));
          std::optional<QuotientRelation> rel;
          if (d.relation) rel.emplace(polynomial(*d.relation, d.ring));
          b.value = Value::of(Derivation::from_assignments(t, images, std::move(rel)));
        } catch (const std::exception& e) {
          b.error = e.what();
        }
        bindings_[item.derivation.name] = std::move(b);
        break;
      }
      case Item::Kind::inverse: {
        const auto& d = item.inverse;
        InverseInfo fwd{d.second, {}, {}, {}};
        InverseInfo bwd{d.first, {}, {}, {}};
        try {
          Binding& a = bindings_.at(d.first);
          Binding& b = bindings_.at(d.second);
          if (!a.value) throw DomainError("map '" + d.first + "' failed: " + a.error);
          if (!b.value) throw DomainError("map '" + d.second + "' failed: " + b.error);
          const RingMap& ma = *a.value->map;
          const RingMap& mb = *b.value->map;
          for (const auto& g : d.forward_mod) fwd.forward_mod.push_back(as_poly(evaluate(g, item.scope), ma.source(), "inverse"));
          for (const auto& g : d.backward_mod) fwd.backward_mod.push_back(as_poly(evaluate(g, item.scope), ma.source(), "inverse"));
          bwd.forward_mod = fwd.backward_mod;
          bwd.backward_mod = fwd.forward_mod;
          RingMap ma_inv = ma.with_inverse(mb);
          RingMap mb_inv = mb.with_inverse(ma);
          a.value->map = std::make_shared<const RingMap>(std::move(ma_inv));
          b.value->map = std::make_shared<const RingMap>(std::move(mb_inv));
        } catch (const std::exception& e) {
          fwd.error = bwd.error = std::string("inverse(") + d.first + ", " + d.second + "): " + e.what();
        }
        inverses_[d.first] = std::move(fwd);
        inverses_[d.second] = std::move(bwd);
        break;
      }
      case Item::Kind::claim:
        break;
    }
  }
}

TablePtr Evaluator::ring(const std::string& name) const {
  auto it = rings_.find(name);
  if (it == rings_.end()) throw DomainError("unknown ring '" + name + "'");
  return it->second;
}

TablePtr Evaluator::default_ring() const {
  if (last_ring_.empty()) throw DomainError("no ring declared");
  return ring(last_ring_);
}

const Value& Evaluator::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) throw DomainError("unknown name '" + name + "'");
  if (!it->second.value) throw DomainError("'" + name + "' is unavailable: " + it->second.error);
  return *it->second.value;
}

const Evaluator::InverseInfo& Evaluator::inverse_of(const std::string& map) const {
  auto it = inverses_.find(map);
  if (it == inverses_.end()) throw DomainError("no inverse declared for '" + map + "'");
  if (!it->second.error.empty()) throw DomainError(it->second.error);
  return it->second;
}

std::string Evaluator::map_name(const Expr& e) const {
  if (e.kind != Expr::Kind::name) throw DomainError("expected the name of a declared map");
  return e.text;
}

Polynomial Evaluator::polynomial(const Expr& e, const std::string& ring_name) const {
  return as_poly(evaluate(e, ring_name), ring(ring_name), "expression");
}

Value Evaluator::evaluate(const Expr& e, const std::string& ring_name) const {
  const TablePtr table = ring(ring_name);
  auto operand = [&](std::size_t i) { return polynomial(e.children[i], ring_name); };
  switch (e.kind) {
    case Expr::Kind::integer:
    case Expr::Kind::rational:
      return Value::of(Polynomial::constant(table, Coefficient(Rational::parse(e.text))));
    case Expr::Kind::omega:
      return Value::of(Polynomial::constant(table, Coefficient::omega()));
    case Expr::Kind::name: {
      if (bindings_.count(e.text)) {
        Value v = lookup(e.text);
        if (v.kind == Value::Kind::poly && !same_table(v.poly->table(), table)) {
          try {
            v.poly = embed(*v.poly, table);
          } catch (const DomainError&) {
            // Leave it over its own ring; mixing rings then fails at the operation.
          }
        }
        return v;
      }
      return Value::of(Polynomial::variable(table, e.text));
    }
    case Expr::Kind::string: {
      Value v;
      v.kind = Value::Kind::string;
      v.text = e.text;
      return v;
    }
    case Expr::Kind::neg: return Value::of(-operand(0));
    case Expr::Kind::add: return Value::of(operand(0) + operand(1));
    case Expr::Kind::sub: return Value::of(operand(0) - operand(1));
    case Expr::Kind::mul: return Value::of(operand(0) * operand(1));
    case Expr::Kind::pow: return Value::of(operand(0).pow(e.exponent));
    case Expr::Kind::list:
    case Expr::Kind::set: {
      Value v;
      v.kind = e.kind == Expr::Kind::list ? Value::Kind::list : Value::Kind::set;
      for (const auto& c : e.children) v.items.push_back(evaluate(c, ring_name));
      return v;
    }
    case Expr::Kind::mapping: {
      Value v;
      v.kind = Value::Kind::mapping;
      for (std::size_t i = 0; i + 1 < e.children.size(); i += 2) {
        v.keys.push_back(e.children[i].text);
        v.items.push_back(evaluate(e.children[i + 1], ring_name));
      }
      return v;
    }
    case Expr::Kind::call: return call(e, ring_name);
  }
  throw InternalError("unhandled expression kind");
}

Value Evaluator::call(const Expr& e, const std::string& ring_name) const {
  const std::string& f = e.text;
  const TablePtr table = ring(ring_name);
  auto arg = [&](std::size_t i) { return evaluate(e.children[i], ring_name); };
  const char* w = f.c_str();

  if (f == "apply" || f == "image") {
    arity(e, 2, 2);
    Value m = arg(0);
    if (m.kind == Value::Kind::derivation) return Value::of(derive(*m.derivation, as_poly(arg(1), m.derivation->table(), w)));
    const RingMap& map = as_map(m, w);
    return Value::of(apply(map, as_poly(arg(1), map.source(), w)));
  }
  if (f == "compose") {
    arity(e, 2, 2);
    return Value::of(compose(as_map(arg(0), w), as_map(arg(1), w)));
  }
  if (f == "diff") {
    arity(e, 2, 2);
    Polynomial p = as_poly(arg(0), table, w);
    return Value::of(partial_derivative(p, as_variable(arg(1), w)));
  }
  if (f == "derive") {
    arity(e, 2, 3);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    Polynomial p = as_poly(arg(1), d.table(), w);
    long k = e.children.size() == 3 ? as_integer(arg(2), w) : 1;
    if (k < 0) throw DomainError("derive: negative iteration count");
    for (long i = 0; i < k; ++i) p = derive(d, p);
    return Value::of(p);
  }
  if (f == "poisson") {
    arity(e, 2, 2);
    return Value::of(poisson(as_poly(arg(0), table, w), as_poly(arg(1), table, w)));
  }
  if (f == "det") {
    if (e.children.size() < 2) throw DomainError("det: expected a map and at least one variable");
    const Value v0 = arg(0);
    const RingMap& m = as_map(v0, w);
    std::vector<std::string> vars;
    for (std::size_t i = 1; i < e.children.size(); ++i) vars.push_back(as_variable(arg(i), w));
    return Value::of(jacobian(m, vars).determinant);
  }
  if (f == "nf") {
    arity(e, 2, 2);
    QuotientRelation rel(as_poly(arg(1), table, w));
    return Value::of(normal_form(as_poly(arg(0), table, w), rel));
  }
  if (f == "theta") {
    arity(e, 2, 2);
    const Value v0 = arg(0);
    const RingMap& m = as_map(v0, w);
    return Value::of(theta_extract(m, as_poly(arg(1), m.source(), w)).alpha);
  }
  if (f == "extend") {
    arity(e, 2, 2);
    const Value v0 = arg(0);
    const RingMap& m = as_map(v0, w);
    QuotientRelation rel(as_poly(arg(1), table, w));
    return Value::of(extend_to_quotient_automorphism(m, rel).map);
  }
  if (f == "tcone") {
    arity(e, 2, 2);
    Polynomial p = as_poly(arg(0), table, w);
    return Value::of(tangent_cone(p, as_polys(arg(1), p.table(), w)));
  }
  if (f == "subst") {
    arity(e, 3, 3);
    Value obj = arg(0);
    std::string c = as_variable(arg(1), w);
    if (obj.kind == Value::Kind::map) {
      const RingMap& m = *obj.map;
      return Value::of(formal_substitute_parameter(m, c, as_poly(arg(2), m.target(), w)));
    }
    if (obj.kind == Value::Kind::derivation) {
      const Derivation& d = *obj.derivation;
      return Value::of(formal_substitute_parameter(d, c, as_poly(arg(2), d.table(), w)));
    }
    Polynomial p = as_poly(obj, table, w);
    return Value::of(substitute_variable(p, p.table()->require(c), as_poly(arg(2), p.table(), w)));
  }
  if (f == "exp") {
    arity(e, 2, 2);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    return Value::of(exponential(d, as_variable(arg(1), w)));
  }
  if (f == "conj") {
    arity(e, 3, 3);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    std::string fwd = map_name(e.children[1]);
    std::string bwd = map_name(e.children[2]);
    const InverseInfo& info = inverse_of(fwd);
    if (info.other != bwd) throw DomainError("conj: '" + bwd + "' is not the declared inverse of '" + fwd + "'");
    return Value::of(conjugate(d, as_map(lookup(fwd), w), as_map(lookup(bwd), w), info.forward_mod, info.backward_mod));
  }
  if (f == "lnd_extend") {
    arity(e, 2, 2);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    QuotientRelation rel(as_poly(arg(1), table, w));
    return Value::of(extend_lnd_from_base(d, rel));
  }
  if (f == "quot") {
    arity(e, 2, 2);
    Polynomial a = as_poly(arg(0), table, w);
    Polynomial b = as_poly(arg(1), table, w);
    auto q = exact_divide(a, b);
    if (!q) throw DomainError("quot: " + b.to_string() + " does not divide " + a.to_string());
    return Value::of(*q);
  }
  if (f == "modulo") {
    arity(e, 2, 2);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    return Value::of(d.modulo(QuotientRelation(as_poly(arg(1), d.table(), w))));
  }
  throw DomainError("unknown function '" + f + "'");
}

bool Evaluator::evaluate_claim(const ClaimDecl& c, const std::string& ring_name, ClaimResult& out) const {
  const TablePtr table = ring(ring_name);
  const Expr call_expr{Expr::Kind::call, {}, c.kind, 0, c.args};
  auto arg = [&](std::size_t i) { return evaluate(c.args[i], ring_name); };
  const char* w = c.kind.c_str();
  const std::string& k = c.kind;

  if (k == "eq") {
    arity(call_expr, 2, 2);
    Value a = arg(0);
    Value b = arg(1);
    bool same = false;
    if (a.kind == Value::Kind::poly) {
      Polynomial pa = *a.poly;
      Polynomial pb = as_poly(b, pa.table(), w);
      same = pa == pb;
      out.lhs = pa.to_string();
      out.rhs = pb.to_string();
    } else if (a.kind == Value::Kind::map) {
      const RingMap& mb = as_map(b, w);
      same = same_table(a.map->source(), mb.source()) && a.map->images() == mb.images();
      out.lhs = a.render();
      out.rhs = b.render();
    } else if (a.kind == Value::Kind::derivation) {
      const Derivation& db = as_derivation(b, w);
      same = same_table(a.derivation->table(), db.table()) && a.derivation->images() == db.images();
      out.lhs = a.render();
      out.rhs = b.render();
    } else {
      throw DomainError("eq: cannot compare a " + kind_name(a.kind));
    }
    return same;
  }
  if (k == "divides") {
    arity(call_expr, 2, 2);
    Polynomial a = as_poly(arg(0), table, w);
    Polynomial b = as_poly(arg(1), table, w);
    auto q = exact_divide(a, b);
    out.detail = q ? "cofactor: " + q->to_string() : "not divisible";
    return q.has_value();
  }
  if (k == "member") {
    arity(call_expr, 2, 2);
    Polynomial f = as_poly(arg(0), table, w);
    return member(f, as_polys(arg(1), table, w));
  }
  if (k == "nilpotent") {
    arity(call_expr, 2, 3);
    const Value v0 = arg(0);
    const Derivation& d = as_derivation(v0, w);
    long bound = as_integer(arg(1), w);
    if (bound < 1 || bound > 100000) throw DomainError("nilpotent: bound out of range");
    NilpotencyCertificate cert = nilpotency_certificate(d, static_cast<int>(bound));
    std::string orders;
    for (const auto& [v, n] : cert.orders) orders += (orders.empty() ? "" : ", ") + v + ":" + std::to_string(n);
    out.detail = cert.success ? "orders " + orders : "not nilpotent within " + std::to_string(bound) + " on " + cert.failed_generator;
    if (!cert.success) return false;
    if (c.args.size() == 3) {
      long max_order = as_integer(arg(2), w);
      for (const auto& [v, n] : cert.orders)
        if (n > max_order) return false;
    }
    return true;
  }
  if (k == "cone_class") {
    arity(call_expr, 3, 4);
    Polynomial f = as_poly(arg(0), table, w);
    Polynomial cone = tangent_cone(f, as_polys(arg(1), table, w));
    auto tag = parse_cone_tag(as_string(arg(2), w));
    if (!tag) throw DomainError("cone_class: unknown tag \"" + as_string(arg(2), w) + "\"");
    std::map<std::string, Coefficient> spec;
    if (c.args.size() == 4) {
      Value m = expect_kind(arg(3), Value::Kind::mapping, w);
      for (std::size_t i = 0; i < m.keys.size(); ++i) spec.emplace(m.keys[i], as_coefficient(m.items[i], w));
    }
    ConeClass cls = classify_quadric(cone, spec);
    out.detail = "cone " + cone.to_string() + ", specialized " + cls.form.to_string() + ": " + to_string(cls.tag);
    return cls.tag == *tag;
  }
  if (k == "smooth_at_all") {
    arity(call_expr, 1, 1);
    return singular_locus_check(as_poly(arg(0), table, w), SingularMode::smooth_everywhere);
  }
  if (k == "singular_at") {
    arity(call_expr, 2, 2);
    Polynomial f = as_poly(arg(0), table, w);
    std::vector<Polynomial> point = as_polys(arg(1), table, w);
    bool parametric = std::any_of(point.begin(), point.end(), [](const Polynomial& p) { return !p.is_constant(); });
    return singular_locus_check(f, parametric ? SingularMode::singular_along_param_point : SingularMode::singular_at_point, point);
  }
  if (k == "inverse_pair") {
    arity(call_expr, 1, 1);
    std::string name = map_name(c.args[0]);
    const InverseInfo& info = inverse_of(name);
    return verify_inverse_pair(as_map(lookup(name), w), info.forward_mod, info.backward_mod);
  }
  if (k == "quasi_homogeneous") {
    arity(call_expr, 3, 3);
    Polynomial f = as_poly(arg(0), table, w);
    Value m = expect_kind(arg(1), Value::Kind::mapping, w);
    std::vector<long> weights(f.table()->size(), 0);
    for (std::size_t i = 0; i < m.keys.size(); ++i) weights[f.table()->require(m.keys[i])] = as_integer(m.items[i], w);
    return weighted_scale_check(f, weights, as_integer(arg(2), w));
  }
  if (k == "graph_variable") {
    arity(call_expr, 2, 2);
    Polynomial f = as_poly(arg(0), table, w);
    return graph_variable_check(f, as_variable(arg(1), w));
  }
  if (k == "laurent_free") {
    arity(call_expr, 1, 1);
    Value v = arg(0);
    switch (v.kind) {
      case Value::Kind::poly: return !v.poly->has_negative_exponents();
      case Value::Kind::map: return laurent_free(v.map->images());
      case Value::Kind::derivation: return laurent_free(v.derivation->images());
      default: return laurent_free(as_polys(v, table, w));
    }
  }
  if (k == "constant") {
    arity(call_expr, 1, 1);
    Polynomial f = as_poly(arg(0), table, w);
    out.detail = "value " + f.to_string();
    return f.is_constant() && !f.is_zero();
  }
  if (k == "in_A") {
    arity(call_expr, 2, 2);
    std::string name = map_name(c.args[0]);
    inverse_of(name);
    const RingMap& m = as_map(lookup(name), w);
    return preserves_ideals(m, "x", as_polys(arg(1), m.source(), w));
  }
  if (k == "in_A1" || k == "in_A2") {
    arity(call_expr, 1, 1);
    return congruent_to_identity(as_map(arg(0), w), "x", k == "in_A1" ? 1 : 2);
  }
  throw DomainError("claim kind '" + k + "' is not evaluable here");
}

ClaimResult Evaluator::run_claim(const Item& item) const {
  const ClaimDecl& c = item.claim;
  ClaimResult out;
  out.label = c.label;
  out.kind = c.kind;
  out.anchor = c.anchor;
  out.expected = c.expect;
  auto start = std::chrono::steady_clock::now();
  try {
    bool outcome = evaluate_claim(c, item.scope, out);
    out.outcome = outcome;
    out.status = outcome == c.expect ? ClaimStatus::pass : ClaimStatus::fail;
  } catch (const InternalError& e) {
    out.status = ClaimStatus::error;
    out.internal_error = true;
    out.detail = e.what();
  } catch (const ParseError& e) {
    out.status = ClaimStatus::error;
    out.detail = describe(e);
  } catch (const std::exception& e) {
    out.status = ClaimStatus::error;
    out.detail = e.what();
  }
  if (out.status == ClaimStatus::pass && c.kind == "eq") {
    out.lhs.clear();
    out.rhs.clear();
  }
  out.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// ---------------------------------------------------------------------------------------------
// Running and reporting

Report run_manifest(const SourceUnit& unit, const RunOptions& options) {
  Evaluator ev(unit);
  std::vector<const Item*> claims;
  for (const auto& item : unit.items)
    if (item.kind == Item::Kind::claim) claims.push_back(&item);

  Report report;
  report.claims.resize(claims.size());
  std::vector<std::size_t> computational;
  for (std::size_t i = 0; i < claims.size(); ++i)
    if (claims[i]->claim.kind != "narrative") computational.push_back(i);

  unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  if (options.parallel && threads > 1 && computational.size() > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, computational.size()); ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < computational.size(); j = next++)
          report.claims[computational[j]] = ev.run_claim(*claims[computational[j]]);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t i : computational) report.claims[i] = ev.run_claim(*claims[i]);
  }

  // Narrative entries aggregate claims that appear earlier in the manifest.
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const ClaimDecl& c = claims[i]->claim;
    index[c.label] = i;
    if (c.kind != "narrative") continue;
    ClaimResult& r = report.claims[i];
    r.label = c.label;
    r.kind = c.kind;
    r.anchor = c.anchor;
    r.expected = c.expect;
    r.narrative = true;
    bool all = true;
    std::string failing;
    for (const auto& a : c.args) {
      const ClaimResult& s = report.claims[index.at(a.text)];
      if (s.status != ClaimStatus::pass) {
        all = false;
        failing += (failing.empty() ? "" : ", ") + ("\"" + a.text + "\"");
      }
    }
    r.outcome = all;
    r.status = all == c.expect ? ClaimStatus::pass : ClaimStatus::fail;
    r.detail = "conjunction of " + std::to_string(c.args.size()) + " claims" + (failing.empty() ? "" : "; not passing: " + failing);
  }
  return report;
}

std::string render_text(const Report& report, bool timing) {
  std::ostringstream out;
  for (const auto& c : report.claims) {
    std::string tag = c.status == ClaimStatus::pass ? "PASS" : c.status == ClaimStatus::fail ? "FAIL" : "ERROR";
    out << "[" << tag << "] " << c.label << "  (" << (c.narrative ? "narrative" : c.kind);
    if (!c.expected) out << ", expect false";
    if (timing) {
      std::ostringstream ms;
      ms.setf(std::ios::fixed);
      ms.precision(1);
      ms << c.millis;
      out << ", " << ms.str() << " ms";
    }
    out << ")\n";
    if (!c.anchor.empty()) out << "    anchor: " << c.anchor << "\n";
    if (!c.lhs.empty() || !c.rhs.empty()) {
      out << "    lhs: " << c.lhs << "\n";
      out << "    rhs: " << c.rhs << "\n";
    }
    if (!c.detail.empty()) out << "    " << c.detail << "\n";
  }
  out << "summary: " << report.claims.size() << " claims, " << report.count(ClaimStatus::pass) << " pass, "
      << report.count(ClaimStatus::fail) << " fail, " << report.count(ClaimStatus::error) << " error\n";
  return out.str();
}

std::string render_json(const Report& report, bool timing) {
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    nlohmann::ordered_json j;
    j["label"] = c.label;
    j["kind"] = c.kind;
    j["status"] = to_string(c.status);
    j["expected"] = c.expected;
    if (c.outcome) j["outcome"] = *c.outcome;
    j["anchor"] = c.anchor;
    j["narrative"] = c.narrative;
    if (timing) j["millis"] = c.millis;
    if (!c.lhs.empty() || !c.rhs.empty()) {
      j["lhs"] = c.lhs;
      j["rhs"] = c.rhs;
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    claims.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["claims"] = std::move(claims);
  doc["summary"] = {{"total", report.claims.size()},
                    {"pass", report.count(ClaimStatus::pass)},
                    {"fail", report.count(ClaimStatus::fail)},
                    {"error", report.count(ClaimStatus::error)}};
  return doc.dump(2) + "\n";
}

int exit_code(const Report& report) {
  for (const auto& c : report.claims)
    if (c.internal_error) return 3;
  return report.all_pass() ? 0 : 1;
}

}  // namespace krv
