// Command-line front end: runs claim manifests and exposes the library operations one at a time.

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "krv/claims.hpp"
#include "krv/ideal.hpp"
#include "krv/local_geometry.hpp"

namespace {

using namespace krv;

/// A user error that already carries its position prefix.
struct Diagnostic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Diagnostic(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

SourceUnit parse_file(const std::string& path, const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw Diagnostic(path + ":" + describe(e));
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void collect_names(const Expr& e, std::vector<std::string>& names) {
  if (e.kind == Expr::Kind::name && std::find(names.begin(), names.end(), e.text) == names.end()) names.push_back(e.text);
  if (e.kind == Expr::Kind::mapping) {
    for (std::size_t i = 1; i < e.children.size(); i += 2) collect_names(e.children[i], names);
    return;
  }
  for (const auto& c : e.children) collect_names(c, names);
}

/// Ring options shared by the inline subcommands. Without --vars, variables are the identifiers of
/// the inputs in order of first appearance.
struct RingOptions {
  std::vector<std::string> vars;
  std::vector<std::string> laurent;
  std::vector<std::string> params;

  void add_to(CLI::App* app) {
    app->add_option("--vars", vars, "Variables in canonical order (default: inferred)")->delimiter(',');
    app->add_option("--laurent", laurent, "Variables allowed negative exponents")->delimiter(',');
    app->add_option("--param", params, "Parameters (weight 0, never differentiated)")->delimiter(',');
  }

  TablePtr table(const std::vector<std::string>& inputs) const {
    std::vector<std::string> names = vars;
    if (names.empty()) {
      for (const auto& text : inputs) collect_names(parse_expression(text), names);
      for (const auto& l : laurent)
        if (std::find(names.begin(), names.end(), l) == names.end()) names.push_back(l);
    }
    std::vector<std::string> plain;
    for (const auto& n : names)
      if (std::find(params.begin(), params.end(), n) == params.end()) plain.push_back(n);
    return VarTable::create(plain, laurent, params);
  }
};

std::string positioned(const std::string& what, const ParseError& e) { return what + ":" + describe(e); }

Polynomial parse_input(const std::string& what, const std::string& text, const TablePtr& table) {
  try {
    return parse_polynomial(text, table);
  } catch (const ParseError& e) {
    throw Diagnostic(positioned(what, e));
  }
}

/// Rejects names that are neither bound in the manifest nor variables of the ring.
void check_names(const Expr& e, const Evaluator& ev, const TablePtr& table, const std::string& what) {
  if (e.kind == Expr::Kind::name && !table->index_of(e.text)) {
    try {
      ev.lookup(e.text);
    } catch (const std::exception&) {
      throw Diagnostic(what + ":" + describe(ParseError(e.pos, "unknown name '" + e.text + "'")));
    }
  }
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (e.kind == Expr::Kind::mapping && i % 2 == 0) continue;
    check_names(e.children[i], ev, table, what);
  }
}

/// Loads a manifest and selects a ring: --ring, else the last one declared.
struct Context {
  SourceUnit unit;
  std::unique_ptr<Evaluator> ev;
  std::string ring;

  Context(const std::string& path, const std::string& ring_name) : unit(parse_file(path, read_file(path))) {
    ev = std::make_unique<Evaluator>(unit);
    if (!ring_name.empty()) {
      if (!unit.find_ring(ring_name)) throw Diagnostic(path + ": no ring named '" + ring_name + "'");
      ring = ring_name;
    } else {
      for (const auto& item : unit.items)
        if (item.kind == Item::Kind::ring) ring = item.ring.name;
      if (ring.empty()) throw Diagnostic(path + ": manifest declares no ring");
    }
  }

  const RingMap& map(const std::string& name) const {
    const Value& v = ev->lookup(name);
    if (v.kind != Value::Kind::map) throw DomainError("'" + name + "' is a " + kind_name(v.kind) + ", not a map");
    return *v.map;
  }
};

void print_images(const TablePtr& table, const std::vector<Polynomial>& images) {
  for (std::size_t v = 0; v < images.size(); ++v) std::cout << (*table)[v].name << " -> " << images[v] << "\n";
}

int cmd_check(const std::vector<std::string>& files, const std::string& format, bool parallel, unsigned threads,
              bool no_timing) {
  int code = 0;
  std::vector<std::string> json_docs;
  for (const auto& path : files) {
    SourceUnit unit;
    try {
      unit = parse_file(path, read_file(path));
    } catch (const Diagnostic& d) {
      std::cerr << d.what() << "\n";
      code = std::max(code, 2);
      continue;
    }
    Report report = run_manifest(unit, RunOptions{parallel, threads});
    if (format == "json") {
      json_docs.push_back(render_json(report, !no_timing));
    } else {
      if (files.size() > 1) std::cout << "== " << path << "\n";
      std::cout << render_text(report, !no_timing);
    }
    int c = exit_code(report);
    code = c == 3 ? 3 : std::max(code, c);
  }
  if (format == "json") {
    if (json_docs.size() == 1) {
      std::cout << json_docs[0];
    } else {
      std::cout << "[\n";
      for (std::size_t i = 0; i < json_docs.size(); ++i) {
        std::string d = json_docs[i];
        while (!d.empty() && d.back() == '\n') d.pop_back();
        std::cout << d << (i + 1 < json_docs.size() ? ",\n" : "\n");
      }
      std::cout << "]\n";
    }
  }
  return code;
}

int cmd_eval(const std::string& text, const std::string& manifest, const std::string& ring, const RingOptions& ro) {
  Expr e;
  try {
    e = parse_expression(text);
  } catch (const ParseError& err) {
    throw Diagnostic(positioned("<expr>", err));
  }
  if (manifest.empty()) {
    TablePtr table = ro.table({text});
    std::cout << parse_input("<expr>", text, table) << "\n";
    return 0;
  }
  Context ctx(manifest, ring);
  check_names(e, *ctx.ev, ctx.ev->ring(ctx.ring), "<expr>");
  std::cout << ctx.ev->evaluate(e, ctx.ring).render() << "\n";
  return 0;
}

int cmd_compose(const std::string& manifest, const std::string& outer, const std::string& inner) {
  Context ctx(manifest, "");
  const RingMap& m2 = ctx.map(outer);
  RingMap c = compose(m2, ctx.map(inner));
  print_images(c.source(), c.images());
  return 0;
}

int cmd_jacobian(const std::string& manifest, const std::string& name, std::vector<std::string> vars) {
  Context ctx(manifest, "");
  const RingMap& m = ctx.map(name);
  if (vars.empty())
    for (std::size_t v = 0; v < m.source()->size(); ++v)
      if (!m.source()->is_parameter(v)) vars.push_back((*m.source())[v].name);
  Jacobian j = jacobian(m, vars);
  for (std::size_t r = 0; r < j.matrix.size(); ++r) {
    std::cout << "d" << vars[r] << ":";
    for (const auto& entry : j.matrix[r]) std::cout << "  " << entry;
    std::cout << "\n";
  }
  std::cout << "det = " << j.determinant << "\n";
  return 0;
}

int cmd_tcone(const std::string& poly, const std::string& point, const std::vector<std::string>& specialize,
              const RingOptions& ro) {
  std::vector<std::string> coords = split_commas(point);
  TablePtr table = ro.table({poly});
  Polynomial f = parse_input("--poly", poly, table);
  std::vector<Polynomial> pt;
  for (const auto& c : coords) pt.push_back(parse_input("--point", c, table));
  Polynomial cone = tangent_cone(f, pt);
  std::cout << cone << "\n";
  if (!specialize.empty()) {
    std::map<std::string, Coefficient> spec;
    for (const auto& s : specialize) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw Diagnostic("--specialize: expected name=value, got '" + s + "'");
      Polynomial value = parse_input("--specialize", s.substr(eq + 1), table);
      auto c = value.constant_value();
      if (!c) throw Diagnostic("--specialize: '" + s.substr(eq + 1) + "' is not a constant");
      spec.emplace(s.substr(0, eq), *c);
    }
    std::cout << to_string(classify_quadric(cone, spec).tag) << "\n";
  }
  return 0;
}

MonomialOrder parse_order(const std::string& order) {
  return order == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex();
}

int cmd_groebner(const std::vector<std::string>& gens, const std::string& order, std::size_t max_pairs,
                 const RingOptions& ro) {
  TablePtr table = ro.table(gens);
  std::vector<Polynomial> ps;
  for (std::size_t i = 0; i < gens.size(); ++i) ps.push_back(parse_input("<gen " + std::to_string(i + 1) + ">", gens[i], table));
  BuchbergerOptions opts;
  opts.order = parse_order(order);
  opts.max_pairs = max_pairs;
  GroebnerBasis gb = buchberger(ps, opts);
  for (const auto& g : gb.generators()) std::cout << g << "\n";
  return 0;
}

int cmd_member(const std::string& poly, const std::vector<std::string>& gens, const RingOptions& ro) {
  std::vector<std::string> inputs{poly};
  inputs.insert(inputs.end(), gens.begin(), gens.end());
  TablePtr table = ro.table(inputs);
  Polynomial f = parse_input("--poly", poly, table);
  std::vector<Polynomial> ps;
  for (std::size_t i = 0; i < gens.size(); ++i) ps.push_back(parse_input("<gen " + std::to_string(i + 1) + ">", gens[i], table));
  bool in = member(f, ps);
  std::cout << (in ? "true" : "false") << "\n";
  return in ? 0 : 1;
}

int cmd_lnd(const std::string& manifest, const std::string& name, int bound) {
  Context ctx(manifest, "");
  const Value& v = ctx.ev->lookup(name);
  if (v.kind != Value::Kind::derivation) throw DomainError("'" + name + "' is a " + kind_name(v.kind) + ", not a derivation");
  NilpotencyCertificate cert = nilpotency_certificate(*v.derivation, bound);
  if (!cert.success) {
    std::cout << "not nilpotent within " << bound << " on " << cert.failed_generator << "\n";
    return 1;
  }
  for (const auto& [var, n] : cert.orders) std::cout << var << ": " << n << "\n";
  if (v.derivation->descent_cofactor()) std::cout << "relation cofactor: " << *v.derivation->descent_cofactor() << "\n";
  return 0;
}

int cmd_fmt(const std::string& path, bool in_place, bool check) {
  std::string text = read_file(path);
  std::string out = format(parse_file(path, text));
  if (check) {
    if (out != text) {
      std::cerr << path << ": not in canonical layout\n";
      return 1;
    }
    return 0;
  }
  if (in_place) {
    std::ofstream o(path, std::ios::binary);
    o << out;
    if (!o) throw Diagnostic(path + ": cannot write file");
  } else {
    std::cout << out;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of polynomial identities on the Koras-Russell cubic and its relatives"};
  app.require_subcommand(1, 1);

  std::vector<std::string> files;
  std::string report_format = "text";
  bool parallel = false;
  bool no_timing = false;
  unsigned threads = 0;
  auto* check = app.add_subcommand("check", "Evaluate every claim of one or more manifests");
  check->add_option("manifests", files, "Manifest files (.krv)")->required()->check(CLI::ExistingFile);
  check->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--parallel", parallel, "Evaluate claims on a worker pool");
  check->add_option("--threads", threads, "Worker count for --parallel (0: hardware)")->check(CLI::Range(0U, 256U));
  check->add_flag("--no-timing", no_timing, "Omit timing fields (byte-stable reports)");

  std::string expr;
  std::string manifest;
  std::string ring_name;
  RingOptions ring_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression and print its canonical form");
  eval->add_option("expr", expr, "Expression")->required();
  eval->add_option("--manifest", manifest, "Manifest providing rings and bindings")->check(CLI::ExistingFile);
  eval->add_option("--ring", ring_name, "Ring of the manifest to evaluate in (default: last declared)");
  ring_opts.add_to(eval);

  std::string outer;
  std::string inner;
  auto* comp = app.add_subcommand("compose", "Print the images of OUTER o INNER");
  comp->add_option("manifest", manifest, "Manifest declaring the maps")->required()->check(CLI::ExistingFile);
  comp->add_option("outer", outer, "Map applied last")->required();
  comp->add_option("inner", inner, "Map applied first")->required();

  std::string name;
  std::vector<std::string> jac_vars;
  auto* jac = app.add_subcommand("jacobian", "Print the Jacobian matrix and determinant of a map");
  jac->add_option("manifest", manifest, "Manifest declaring the map")->required()->check(CLI::ExistingFile);
  jac->add_option("map", name, "Map name")->required();
  jac->add_option("--vars", jac_vars, "Variables spanning the matrix (default: all non-parameters)")->delimiter(',');

  std::string poly;
  std::string point;
  std::vector<std::string> specialize;
  RingOptions cone_ring;
  auto* tcone = app.add_subcommand("tcone", "Tangent cone of a hypersurface at a point");
  tcone->add_option("--poly", poly, "Defining polynomial")->required();
  tcone->add_option("--point", point, "Comma-separated coordinates, one per non-parameter variable")->required();
  tcone->add_option("--specialize", specialize, "name=value; also classify the quadric cone");
  cone_ring.add_to(tcone);

  std::vector<std::string> gens;
  std::string order = "grevlex";
  std::size_t max_pairs = 200000;
  RingOptions gb_ring;
  auto* gb = app.add_subcommand("groebner", "Reduced Groebner basis of an ideal");
  gb->add_option("gens", gens, "Generators")->required();
  gb->add_option("--order", order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
  gb->add_option("--max-pairs", max_pairs, "S-pair budget")->check(CLI::PositiveNumber);
  gb_ring.add_to(gb);

  RingOptions mem_ring;
  auto* mem = app.add_subcommand("member", "Decide ideal membership; exit 0 iff the polynomial is a member");
  mem->add_option("--poly", poly, "Candidate member")->required();
  mem->add_option("gens", gens, "Generators")->required();
  mem_ring.add_to(mem);

  int bound = 64;
  auto* lnd = app.add_subcommand("lnd", "Certify local nilpotency of a declared derivation");
  lnd->add_option("manifest", manifest, "Manifest declaring the derivation")->required()->check(CLI::ExistingFile);
  lnd->add_option("derivation", name, "Derivation name")->required();
  lnd->add_option("--bound", bound, "Largest iterate tried per generator")->check(CLI::Range(1, 100000));

  std::string fmt_path;
  bool in_place = false;
  bool fmt_check = false;
  auto* fmt = app.add_subcommand("fmt", "Print a manifest in canonical layout");
  fmt->add_option("manifest", fmt_path, "Manifest file")->required()->check(CLI::ExistingFile);
  auto* in_place_flag = fmt->add_flag("-i,--in-place", in_place, "Rewrite the file");
  fmt->add_flag("--check", fmt_check, "Exit 1 if the file is not in canonical layout")->excludes(in_place_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(files, report_format, parallel, threads, no_timing);
    if (*eval) return cmd_eval(expr, manifest, ring_name, ring_opts);
    if (*comp) return cmd_compose(manifest, outer, inner);
    if (*jac) return cmd_jacobian(manifest, name, jac_vars);
    if (*tcone) return cmd_tcone(poly, point, specialize, cone_ring);
    if (*gb) return cmd_groebner(gens, order, max_pairs, gb_ring);
    if (*mem) return cmd_member(poly, gens, mem_ring);
    if (*lnd) return cmd_lnd(manifest, name, bound);
    if (*fmt) return cmd_fmt(fmt_path, in_place, fmt_check);
  } catch (const Diagnostic& d) {
    std::cerr << d.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << describe(e) << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
