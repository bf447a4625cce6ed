#include "krv/parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace krv {

ParseError::ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected)
    : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message),
      expected_(std::move(expected)) {}

std::string describe(const ParseError& e) {
  std::string out = std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) + ": " + e.message();
  if (!e.expected().empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < e.expected().size(); ++i) out += (i ? ", " : "") + e.expected()[i];
    out += ")";
  }
  return out;
}

const std::vector<std::string>& builtin_functions() {
  static const std::vector<std::string> names = {
      "apply", "compose", "diff",  "derive", "poisson", "det",        "nf",    "theta", "extend",
      "tcone", "subst",   "exp",   "conj",   "lnd_extend", "quot",    "modulo", "image",
  };
  return names;
}

const std::vector<std::string>& claim_kinds() {
  static const std::vector<std::string> names = {
      "eq",           "divides",        "member",    "nilpotent",  "cone_class", "smooth_at_all",
      "singular_at",  "inverse_pair",   "quasi_homogeneous", "graph_variable", "laurent_free",
      "constant",     "in_A",           "in_A1",     "in_A2",      "narrative",
  };
  return names;
}

const Item* SourceUnit::find_ring(std::string_view name) const {
  for (const auto& it : items)
    if (it.kind == Item::Kind::ring && it.ring.name == name) return &it;
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { ident, integer, string, punct, end };
  Kind kind = Kind::end;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  // Comments met since the last call are appended to `comments`.
  Token next(std::vector<std::pair<std::size_t, std::string>>& comments) {
    skip_space(comments);
    Token tok;
    tok.pos = pos_;
    if (at_end()) return tok;
    char c = src_[pos_.offset];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::Kind::ident;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) tok.text += advance();
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Kind::integer;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) tok.text += advance();
      return tok;
    }
    if (c == '"') {
      tok.kind = Token::Kind::string;
      advance();
      for (;;) {
        if (at_end() || peek() == '\n') throw ParseError(tok.pos, "unterminated string literal");
        char d = advance();
        if (d == '"') break;
        if (d == '\\') {
          if (at_end()) throw ParseError(tok.pos, "unterminated string literal");
          d = advance();
          if (d != '"' && d != '\\') throw ParseError(pos_, std::string("unknown escape '\\") + d + "'");
        }
        tok.text += d;
      }
      return tok;
    }
    tok.kind = Token::Kind::punct;
    if (c == '-' && pos_.offset + 1 < src_.size() && src_[pos_.offset + 1] == '>') {
      advance();
      advance();
      tok.text = "->";
      return tok;
    }
    static const std::string single = "()[]{},;:=+-*/^";
    if (single.find(c) == std::string::npos) {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + hex(c);
      throw ParseError(tok.pos, "unexpected character '" + shown + "'");
    }
    tok.text = std::string(1, advance());
    return tok;
  }

 private:
  static std::string hex(char c) {
    const char* digits = "0123456789abcdef";
    auto u = static_cast<unsigned char>(c);
    return {digits[u >> 4U], digits[u & 15U]};
  }
  bool at_end() const { return pos_.offset >= src_.size(); }
  char peek() const { return src_[pos_.offset]; }
  char advance() {
    char c = src_[pos_.offset++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }
  void skip_space(std::vector<std::pair<std::size_t, std::string>>& comments) {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        std::size_t line = pos_.line;
        advance();
        std::string text;
        while (!at_end() && peek() != '\n') text += advance();
        while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.pop_back();
        comments.emplace_back(line, text);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  SourcePos pos_;
};

// ---------------------------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src, bool resolve) : lexer_(src), resolve_(resolve) { shift(); }

  SourceUnit unit() {
    SourceUnit out;
    while (tok_.kind != Token::Kind::end) {
      Item item;
      item.pos = tok_.pos;
      item.comments = take_comments();
      if (tok_.kind != Token::Kind::ident) fail("expected a declaration", {"ring", "let", "map", "derivation", "inverse", "claim"});
      const std::string kw = tok_.text;
      if (kw == "ring") {
        item.kind = Item::Kind::ring;
        item.ring = ring_decl();
        current_ring_ = item.ring.name;
      } else if (kw == "let") {
        item.kind = Item::Kind::let;
        item.let = let_decl();
      } else if (kw == "map") {
        item.kind = Item::Kind::map;
        item.map = map_decl();
      } else if (kw == "derivation") {
        item.kind = Item::Kind::derivation;
        item.derivation = derivation_decl();
      } else if (kw == "inverse") {
        item.kind = Item::Kind::inverse;
        item.inverse = inverse_decl();
      } else if (kw == "claim") {
        item.kind = Item::Kind::claim;
        item.claim = claim_decl();
      } else {
        fail("unknown declaration '" + kw + "'", {"ring", "let", "map", "derivation", "inverse", "claim"});
      }
      item.scope = item.kind == Item::Kind::ring ? item.ring.name : current_ring_;
      out.items.push_back(std::move(item));
    }
    for (auto& c : take_comments()) out.trailing_comments.push_back(std::move(c));
    return out;
  }

  Expr standalone_expression() {
    Expr e = expression();
    if (tok_.kind != Token::Kind::end) fail("unexpected '" + tok_.text + "' after expression", {"end of input"});
    return e;
  }

  // Used by parse_polynomial: identifiers are checked against a fixed table.
  void set_table(const VarTable* table) { table_ = table; }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(tok_.pos, msg, std::move(expected));
  }
  [[noreturn]] static void fail_at(SourcePos pos, const std::string& msg) { throw ParseError(pos, msg); }

  void shift() {
    if (ahead_) {
      tok_ = std::move(*ahead_);
      ahead_.reset();
      return;
    }
    tok_ = read();
  }
  Token read() {
    std::vector<std::pair<std::size_t, std::string>> found;
    Token t = lexer_.next(found);
    for (auto& c : found) comments_.push_back(std::move(c.second));
    return t;
  }
  const Token& lookahead() {
    if (!ahead_) ahead_ = read();
    return *ahead_;
  }
  std::vector<std::string> take_comments() {
    std::vector<std::string> out;
    out.swap(comments_);
    return out;
  }

  bool is_punct(const char* p) const { return tok_.kind == Token::Kind::punct && tok_.text == p; }
  bool is_word(const char* w) const { return tok_.kind == Token::Kind::ident && tok_.text == w; }
  std::string describe_token() const {
    switch (tok_.kind) {
      case Token::Kind::end: return "end of input";
      case Token::Kind::string: return "string \"" + tok_.text + "\"";
      default: return "'" + tok_.text + "'";
    }
  }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail("unexpected " + describe_token(), {std::string("'") + p + "'"});
    shift();
  }
  void expect_word(const char* w) {
    if (!is_word(w)) fail("unexpected " + describe_token(), {std::string("'") + w + "'"});
    shift();
  }
  std::string identifier(const char* what) {
    if (tok_.kind != Token::Kind::ident) fail("unexpected " + describe_token(), {what});
    std::string s = tok_.text;
    shift();
    return s;
  }
  std::string string_literal(const char* what) {
    if (tok_.kind != Token::Kind::string) fail("unexpected " + describe_token(), {what});
    std::string s = tok_.text;
    shift();
    return s;
  }

  // --- declarations ---------------------------------------------------------------------------

  void declare(const std::string& name, SourcePos pos, const char* kind) {
    if (!resolve_) return;
    if (name == "w") fail_at(pos, "'w' is reserved for the cube root of unity");
    if (names_.count(name)) fail_at(pos, "duplicate name '" + name + "'");
    if (std::find(builtin_functions().begin(), builtin_functions().end(), name) != builtin_functions().end())
      fail_at(pos, "'" + name + "' is a builtin function");
    names_.emplace(name, kind);
  }

  const RingDecl& ring_named(const std::string& name, SourcePos pos) const {
    auto it = rings_.find(name);
    if (it == rings_.end()) fail_at(pos, "unknown ring '" + name + "'");
    return it->second;
  }

  RingDecl ring_decl() {
    expect_word("ring");
    SourcePos pos = tok_.pos;
    RingDecl r;
    r.name = identifier("ring name");
    declare(r.name, pos, "ring");
    expect_punct("=");
    expect_word("vars");
    expect_punct("(");
    std::set<std::string> seen;
    auto id_list = [&](std::vector<std::string>& into, bool fresh) {
      for (;;) {
        SourcePos p = tok_.pos;
        std::string id = identifier("variable name");
        if (fresh) {
          if (id == "w") fail_at(p, "'w' is reserved for the cube root of unity; choose another variable name");
          if (!seen.insert(id).second) fail_at(p, "duplicate variable '" + id + "'");
        } else if (!seen.count(id)) {
          fail_at(p, "'" + id + "' is not a declared variable of this ring");
        }
        into.push_back(id);
        if (!is_punct(",")) break;
        shift();
      }
    };
    id_list(r.vars, true);
    bool had_laurent = false;
    bool had_param = false;
    while (is_punct(";")) {
      shift();
      if (is_word("laurent") && !had_laurent) {
        shift();
        had_laurent = true;
        std::vector<std::string> ids;
        // Laurent names may refer to parameters declared later in the same header.
        for (;;) {
          ids.push_back(identifier("variable name"));
          if (!is_punct(",")) break;
          shift();
        }
        r.laurent = ids;
      } else if (is_word("param") && !had_param) {
        shift();
        had_param = true;
        id_list(r.params, true);
      } else {
        fail("unexpected " + describe_token(), {"'laurent'", "'param'"});
      }
    }
    expect_punct(")");
    expect_punct(";");
    for (const auto& l : r.laurent)
      if (!seen.count(l)) fail_at(pos, "laurent name '" + l + "' is not a variable of ring " + r.name);
    rings_.emplace(r.name, r);
    return r;
  }

  LetDecl let_decl() {
    expect_word("let");
    SourcePos pos = tok_.pos;
    LetDecl d;
    d.name = identifier("binding name");
    if (resolve_ && current_ring_.empty()) fail_at(pos, "'let' before any ring declaration");
    expect_punct("=");
    d.value = expression();
    expect_punct(";");
    declare_shadow_check(d.name, pos);
    declare(d.name, pos, "let");
    return d;
  }

  void declare_shadow_check(const std::string& name, SourcePos pos) {
    if (!resolve_ || current_ring_.empty()) return;
    const RingDecl& r = rings_.at(current_ring_);
    if (has_var(r, name)) fail_at(pos, "'" + name + "' is a variable of ring " + r.name);
  }

  static bool has_var(const RingDecl& r, const std::string& name) {
    return std::find(r.vars.begin(), r.vars.end(), name) != r.vars.end() ||
           std::find(r.params.begin(), r.params.end(), name) != r.params.end();
  }

  std::vector<Assignment> assignments(const RingDecl* ring) {
    expect_punct("{");
    std::vector<Assignment> out;
    std::set<std::string> seen;
    while (!is_punct("}")) {
      Assignment a;
      a.pos = tok_.pos;
      a.var = identifier("variable name");
      if (ring && !has_var(*ring, a.var)) fail_at(a.pos, "'" + a.var + "' is not a variable of ring " + ring->name);
      if (!seen.insert(a.var).second) fail_at(a.pos, "variable '" + a.var + "' assigned twice");
      expect_punct("->");
      a.value = expression();
      expect_punct(";");
      out.push_back(std::move(a));
    }
    shift();
    return out;
  }

  template <typename Decl>
  void scoped_header(Decl& d, const char* keyword) {
    expect_word(keyword);
    SourcePos pos = tok_.pos;
    d.name = identifier("name");
    expect_punct(":");
    SourcePos rpos = tok_.pos;
    d.ring = identifier("ring name");
    if (resolve_) ring_named(d.ring, rpos);
    declare_shadow_check(d.name, pos);
    declare(d.name, pos, keyword);
  }

  MapDecl map_decl() {
    MapDecl d;
    scoped_header(d, "map");
    std::string saved = current_ring_;
    current_ring_ = d.ring;
    d.images = assignments(resolve_ ? &rings_.at(d.ring) : nullptr);
    current_ring_ = saved;
    if (is_punct(";")) shift();
    return d;
  }

  DerivationDecl derivation_decl() {
    DerivationDecl d;
    scoped_header(d, "derivation");
    std::string saved = current_ring_;
    current_ring_ = d.ring;
    d.images = assignments(resolve_ ? &rings_.at(d.ring) : nullptr);
    if (is_word("mod")) {
      shift();
      expect_punct("{");
      d.relation = expression();
      expect_punct("}");
    }
    current_ring_ = saved;
    if (is_punct(";")) shift();
    return d;
  }

  std::vector<Expr> generator_set() {
    expect_punct("{");
    std::vector<Expr> out;
    if (!is_punct("}")) {
      for (;;) {
        out.push_back(expression());
        if (!is_punct(",")) break;
        shift();
      }
    }
    expect_punct("}");
    return out;
  }

  InverseDecl inverse_decl() {
    expect_word("inverse");
    InverseDecl d;
    expect_punct("(");
    SourcePos p1 = tok_.pos;
    d.first = identifier("map name");
    expect_punct(",");
    SourcePos p2 = tok_.pos;
    d.second = identifier("map name");
    expect_punct(")");
    if (resolve_) {
      for (auto [n, p] : {std::pair{d.first, p1}, std::pair{d.second, p2}}) {
        auto it = names_.find(n);
        if (it == names_.end()) fail_at(p, "use of undeclared map '" + n + "'");
        if (it->second != "map") fail_at(p, "'" + n + "' is not a map");
      }
    }
    if (is_word("mod")) {
      shift();
      d.has_mod = true;
      d.forward_mod = generator_set();
      if (is_punct(",")) {
        shift();
        d.backward_mod = generator_set();
      } else {
        d.single_mod = true;
        d.backward_mod = d.forward_mod;
      }
    }
    expect_punct(";");
    return d;
  }

  ClaimDecl claim_decl() {
    expect_word("claim");
    ClaimDecl d;
    SourcePos lpos = tok_.pos;
    d.label = string_literal("claim label");
    if (resolve_ && !labels_.insert(d.label).second) fail_at(lpos, "duplicate claim label \"" + d.label + "\"");
    if (resolve_ && current_ring_.empty()) fail_at(lpos, "claim before any ring declaration");
    SourcePos kpos = tok_.pos;
    d.kind = identifier("claim kind");
    const auto& kinds = claim_kinds();
    if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end()) {
      std::vector<std::string> expected;
      for (const auto& k : kinds) expected.push_back("'" + k + "'");
      throw ParseError(kpos, "unknown claim kind '" + d.kind + "'", expected);
    }
    expect_punct("(");
    if (!is_punct(")")) {
      for (;;) {
        d.args.push_back(expression());
        if (!is_punct(",")) break;
        shift();
      }
    }
    expect_punct(")");
    if (d.kind == "narrative" && resolve_) {
      for (const auto& a : d.args) {
        if (a.kind != Expr::Kind::string) fail_at(a.pos, "narrative arguments are claim labels");
        if (!labels_.count(a.text) || a.text == d.label)
          fail_at(a.pos, "narrative refers to unknown or later claim \"" + a.text + "\"");
      }
    }
    if (!is_word("expect")) fail("claims need an explicit expectation", {"'expect'"});
    shift();
    if (is_word("true")) {
      d.expect = true;
    } else if (is_word("false")) {
      d.expect = false;
    } else {
      fail("unexpected " + describe_token(), {"'true'", "'false'"});
    }
    shift();
    if (is_word("anchor")) {
      shift();
      d.anchor = string_literal("anchor string");
    }
    expect_punct(";");
    return d;
  }

  // --- expressions ----------------------------------------------------------------------------

  Expr expression() {
    Expr lhs = signed_term();
    while (is_punct("+") || is_punct("-")) {
      Expr node;
      node.kind = tok_.text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      node.pos = tok_.pos;
      shift();
      node.children.push_back(std::move(lhs));
      node.children.push_back(signed_term());
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr signed_term() {
    if (is_punct("-")) {
      Expr node;
      node.kind = Expr::Kind::neg;
      node.pos = tok_.pos;
      shift();
      node.children.push_back(signed_term());
      return node;
    }
    return term();
  }

  Expr term() {
    Expr lhs = factor();
    while (is_punct("*")) {
      Expr node;
      node.kind = Expr::Kind::mul;
      node.pos = tok_.pos;
      shift();
      node.children.push_back(std::move(lhs));
      node.children.push_back(factor());
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr factor() {
    Expr b = base();
    if (!is_punct("^")) return b;
    Expr node;
    node.kind = Expr::Kind::pow;
    node.pos = tok_.pos;
    shift();
    bool negative = false;
    if (is_punct("-")) {
      negative = true;
      shift();
    }
    if (tok_.kind != Token::Kind::integer) fail("unexpected " + describe_token(), {"integer exponent"});
    if (tok_.text.size() > 9) fail("exponent too large");
    node.exponent = std::stol(tok_.text) * (negative ? -1 : 1);
    SourcePos epos = tok_.pos;
    shift();
    if (negative && b.kind == Expr::Kind::name) check_negative_power(b, epos);
    node.children.push_back(std::move(b));
    return node;
  }

  void check_negative_power(const Expr& b, SourcePos pos) const {
    if (table_) {
      auto i = table_->index_of(b.text);
      if (i && !table_->is_laurent(*i)) fail_at(pos, "negative exponent on non-Laurent variable '" + b.text + "'");
      return;
    }
    if (!resolve_ || current_ring_.empty()) return;
    const RingDecl& r = rings_.at(current_ring_);
    if (has_var(r, b.text) && std::find(r.laurent.begin(), r.laurent.end(), b.text) == r.laurent.end())
      fail_at(pos, "negative exponent on non-Laurent variable '" + b.text + "'");
  }

  Expr base() {
    Expr e;
    e.pos = tok_.pos;
    switch (tok_.kind) {
      case Token::Kind::integer: {
        e.kind = Expr::Kind::integer;
        e.text = tok_.text;
        shift();
        if (is_punct("/")) {
          shift();
          if (tok_.kind != Token::Kind::integer) fail("unexpected " + describe_token(), {"integer denominator"});
          if (std::all_of(tok_.text.begin(), tok_.text.end(), [](char c) { return c == '0'; }))
            fail("zero denominator in rational literal");
          e.kind = Expr::Kind::rational;
          e.text += "/" + tok_.text;
          shift();
        }
        return e;
      }
      case Token::Kind::string:
        e.kind = Expr::Kind::string;
        e.text = tok_.text;
        shift();
        return e;
      case Token::Kind::ident: {
        e.text = tok_.text;
        shift();
        if (is_punct("(")) {
          e.kind = Expr::Kind::call;
          const auto& fns = builtin_functions();
          if (std::find(fns.begin(), fns.end(), e.text) == fns.end())
            fail_at(e.pos, "unknown function '" + e.text + "'");
          shift();
          if (!is_punct(")")) {
            for (;;) {
              e.children.push_back(expression());
              if (!is_punct(",")) break;
              shift();
            }
          }
          expect_punct(")");
          return e;
        }
        if (e.text == "w") {
          e.kind = Expr::Kind::omega;
          return e;
        }
        e.kind = Expr::Kind::name;
        resolve_name(e);
        return e;
      }
      case Token::Kind::punct:
        if (is_punct("(")) {
          shift();
          Expr inner = expression();
          expect_punct(")");
          return inner;
        }
        if (is_punct("[")) {
          e.kind = Expr::Kind::list;
          shift();
          if (!is_punct("]")) {
            for (;;) {
              e.children.push_back(expression());
              if (!is_punct(",")) break;
              shift();
            }
          }
          expect_punct("]");
          return e;
        }
        if (is_punct("{")) return braces();
        break;
      case Token::Kind::end:
        break;
    }
    fail("unexpected " + describe_token(), {"number", "identifier", "'('", "'['", "'{'", "string"});
  }

  Expr braces() {
    Expr e;
    e.pos = tok_.pos;
    e.kind = Expr::Kind::set;
    shift();
    // A mapping starts with `identifier ->`; its keys are not resolved as expressions.
    if (tok_.kind == Token::Kind::ident && lookahead().kind == Token::Kind::punct && lookahead().text == "->") {
      e.kind = Expr::Kind::mapping;
      for (;;) {
        Expr k;
        k.kind = Expr::Kind::name;
        k.pos = tok_.pos;
        k.text = identifier("mapping key");
        expect_punct("->");
        e.children.push_back(std::move(k));
        e.children.push_back(expression());
        if (!is_punct(",")) break;
        shift();
      }
      expect_punct("}");
      return e;
    }
    if (!is_punct("}")) {
      for (;;) {
        e.children.push_back(expression());
        if (!is_punct(",")) break;
        shift();
      }
    }
    expect_punct("}");
    return e;
  }

  void resolve_name(const Expr& e) const {
    if (table_) {
      if (!table_->index_of(e.text)) fail_at(e.pos, "unknown variable '" + e.text + "'");
      return;
    }
    if (!resolve_) return;
    if (names_.count(e.text)) return;
    if (!current_ring_.empty() && has_var(rings_.at(current_ring_), e.text)) return;
    fail_at(e.pos, "use of undeclared name '" + e.text + "'");
  }

  Lexer lexer_;
  Token tok_;
  std::optional<Token> ahead_;
  bool resolve_;
  const VarTable* table_ = nullptr;
  std::vector<std::string> comments_;
  std::map<std::string, RingDecl> rings_;
  std::map<std::string, std::string> names_;  // name -> declaration kind
  std::set<std::string> labels_;
  std::string current_ring_;
};

// ---------------------------------------------------------------------------------------------
// Arithmetic evaluation for parse_polynomial

Polynomial arithmetic(const Expr& e, const TablePtr& table) {
  switch (e.kind) {
    case Expr::Kind::integer:
    case Expr::Kind::rational:
      return Polynomial::constant(table, Coefficient(Rational::parse(e.text)));
    case Expr::Kind::omega:
      return Polynomial::constant(table, Coefficient::omega());
    case Expr::Kind::name:
      return Polynomial::variable(table, e.text);
    case Expr::Kind::neg:
      return -arithmetic(e.children[0], table);
    case Expr::Kind::add:
      return arithmetic(e.children[0], table) + arithmetic(e.children[1], table);
    case Expr::Kind::sub:
      return arithmetic(e.children[0], table) - arithmetic(e.children[1], table);
    case Expr::Kind::mul:
      return arithmetic(e.children[0], table) * arithmetic(e.children[1], table);
    case Expr::Kind::pow:
      return arithmetic(e.children[0], table).pow(e.exponent);
    default:
      throw ParseError(e.pos, "only polynomial arithmetic is allowed here");
  }
}

// ---------------------------------------------------------------------------------------------
// Rendering

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::neg: return 2;
    case Expr::Kind::mul: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = render(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

std::string join(const std::vector<Expr>& xs, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < xs.size(); ++i) out += (i > from ? ", " : "") + render(xs[i]);
  return out;
}

std::string join_names(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

}  // namespace

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::integer:
    case Expr::Kind::rational:
    case Expr::Kind::name: return e.text;
    case Expr::Kind::omega: return "w";
    case Expr::Kind::string: return quote(e.text);
    case Expr::Kind::neg: return "-" + wrap(e.children[0], 2);
    case Expr::Kind::add: return wrap(e.children[0], 1) + " + " + wrap(e.children[1], 2);
    case Expr::Kind::sub: return wrap(e.children[0], 1) + " - " + wrap(e.children[1], 2);
    case Expr::Kind::mul: return wrap(e.children[0], 3) + "*" + wrap(e.children[1], 4);
    case Expr::Kind::pow: {
      const Expr& b = e.children[0];
      bool bare = b.kind == Expr::Kind::integer || b.kind == Expr::Kind::name || b.kind == Expr::Kind::omega ||
                  b.kind == Expr::Kind::call || b.kind == Expr::Kind::list;
      std::string s = render(b);
      return (bare ? s : "(" + s + ")") + "^" + std::to_string(e.exponent);
    }
    case Expr::Kind::call: return e.text + "(" + join(e.children) + ")";
    case Expr::Kind::list: return "[" + join(e.children) + "]";
    case Expr::Kind::set: return "{" + join(e.children) + "}";
    case Expr::Kind::mapping: {
      std::string out = "{";
      for (std::size_t i = 0; i + 1 < e.children.size(); i += 2)
        out += (i ? ", " : "") + e.children[i].text + " -> " + render(e.children[i + 1]);
      return out + "}";
    }
  }
  return "";
}

std::string render(const Polynomial& p) { return p.to_string(); }

SourceUnit parse(std::string_view text) { return Parser(text, true).unit(); }

Expr parse_expression(std::string_view text) { return Parser(text, false).standalone_expression(); }

Polynomial parse_polynomial(std::string_view text, const TablePtr& table) {
  Parser parser(text, false);
  parser.set_table(table.get());
  Expr e = parser.standalone_expression();
  try {
    return arithmetic(e, table);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(e.pos, err.what());
  }
}

std::string format(const SourceUnit& unit) {
  std::ostringstream out;
  std::optional<Item::Kind> previous;
  for (const auto& item : unit.items) {
    bool block = item.kind == Item::Kind::ring || item.kind == Item::Kind::map || item.kind == Item::Kind::derivation;
    if (previous && (block || !item.comments.empty() || *previous != item.kind ||
                     *previous == Item::Kind::map || *previous == Item::Kind::derivation))
      out << "\n";
    for (const auto& c : item.comments) out << "#" << c << "\n";
    switch (item.kind) {
      case Item::Kind::ring: {
        const auto& r = item.ring;
        out << "ring " << r.name << " = vars(" << join_names(r.vars);
        if (!r.laurent.empty()) out << "; laurent " << join_names(r.laurent);
        if (!r.params.empty()) out << "; param " << join_names(r.params);
        out << ");\n";
        break;
      }
      case Item::Kind::let:
        out << "let " << item.let.name << " = " << render(item.let.value) << ";\n";
        break;
      case Item::Kind::map:
      case Item::Kind::derivation: {
        bool is_map = item.kind == Item::Kind::map;
        const auto& name = is_map ? item.map.name : item.derivation.name;
        const auto& ring = is_map ? item.map.ring : item.derivation.ring;
        const auto& images = is_map ? item.map.images : item.derivation.images;
        out << (is_map ? "map " : "derivation ") << name << " : " << ring << " {\n";
        for (const auto& a : images) out << "  " << a.var << " -> " << render(a.value) << ";\n";
        out << "}";
        if (!is_map && item.derivation.relation) out << " mod {" << render(*item.derivation.relation) << "}";
        out << "\n";
        break;
      }
      case Item::Kind::inverse: {
        const auto& d = item.inverse;
        out << "inverse(" << d.first << ", " << d.second << ")";
        if (d.has_mod) {
          out << " mod {" << join(d.forward_mod) << "}";
          if (!d.single_mod) out << ", {" << join(d.backward_mod) << "}";
        }
        out << ";\n";
        break;
      }
      case Item::Kind::claim: {
        const auto& c = item.claim;
        out << "claim " << quote(c.label) << " " << c.kind << "(" << join(c.args) << ") expect "
            << (c.expect ? "true" : "false");
        if (!c.anchor.empty()) out << " anchor " << quote(c.anchor);
        out << ";\n";
        break;
      }
    }
    previous = item.kind;
  }
  if (!unit.trailing_comments.empty()) {
    if (previous) out << "\n";
    for (const auto& c : unit.trailing_comments) out << "#" << c << "\n";
  }
  return out.str();
}

}  // namespace krv
