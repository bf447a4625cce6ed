#ifndef KRV_PARSER_HPP
#define KRV_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krv/errors.hpp"
#include "krv/polynomial.hpp"

namespace krv {

/// Expression tree. Arithmetic nodes follow the polynomial grammar; calls, lists, sets, mappings and
/// strings appear only as arguments of builtins and claims.
struct Expr {
  enum class Kind { integer, rational, omega, name, string, neg, add, sub, mul, pow, call, list, set, mapping };

  Kind kind = Kind::integer;
  SourcePos pos;
  std::string text;             ///< literal text, identifier, callee or string contents
  long exponent = 0;            ///< for pow
  std::vector<Expr> children;   ///< operands; a mapping stores key, value, key, value, ...
};

struct RingDecl {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> laurent;
  std::vector<std::string> params;
};

struct LetDecl {
  std::string name;
  Expr value;
};

struct Assignment {
  std::string var;
  SourcePos pos;
  Expr value;
};

struct MapDecl {
  std::string name;
  std::string ring;
  std::vector<Assignment> images;
};

struct DerivationDecl {
  std::string name;
  std::string ring;
  std::vector<Assignment> images;
  std::optional<Expr> relation;
};

/// inverse(A, B) mod {..}, {..}: the first ideal is for A o B, the second for B o A.
struct InverseDecl {
  std::string first;
  std::string second;
  std::vector<Expr> forward_mod;
  std::vector<Expr> backward_mod;
  bool has_mod = false;
  bool single_mod = false;  ///< one ideal given for both directions
};

struct ClaimDecl {
  std::string label;
  std::string kind;
  std::vector<Expr> args;
  bool expect = true;
  std::string anchor;
};

struct Item {
  enum class Kind { ring, let, map, derivation, inverse, claim };
  Kind kind;
  SourcePos pos;
  std::string scope;                  ///< ring in force at this item ("" before the first ring)
  std::vector<std::string> comments;  ///< comment lines directly above the item, without '#'
  RingDecl ring;
  LetDecl let;
  MapDecl map;
  DerivationDecl derivation;
  InverseDecl inverse;
  ClaimDecl claim;
};

struct SourceUnit {
  std::vector<Item> items;
  std::vector<std::string> trailing_comments;

  const Item* find_ring(std::string_view name) const;
};

/// Functions callable inside expressions.
const std::vector<std::string>& builtin_functions();
/// Claim kinds accepted after a claim label.
const std::vector<std::string>& claim_kinds();

/// Parses and name-resolves a manifest. Throws ParseError at the first problem.
SourceUnit parse(std::string_view text);

/// Parses one polynomial over `table` (arithmetic only; identifiers are table variables).
Polynomial parse_polynomial(std::string_view text, const TablePtr& table);

/// Parses one expression without name resolution.
Expr parse_expression(std::string_view text);

/// Canonical polynomial rendering (same as Polynomial::to_string).
std::string render(const Polynomial& p);

/// Source rendering of an expression with minimal parentheses.
std::string render(const Expr& e);

/// Canonical layout of a whole unit; format(parse(format(parse(s)))) == format(parse(s)).
std::string format(const SourceUnit& unit);

/// "line:column: message (expected ...)".
std::string describe(const ParseError& e);

}  // namespace krv

#endif  // KRV_PARSER_HPP
