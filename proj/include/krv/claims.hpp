#ifndef KRV_CLAIMS_HPP
#define KRV_CLAIMS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krv/derivation.hpp"
#include "krv/parser.hpp"
#include "krv/ring_map.hpp"

namespace krv {

/// Result of evaluating an expression of the manifest language.
struct Value {
  enum class Kind { poly, map, derivation, list, set, mapping, string };

  Kind kind = Kind::string;
  std::optional<Polynomial> poly;
  std::shared_ptr<const RingMap> map;
  std::shared_ptr<const Derivation> derivation;
  std::vector<Value> items;        ///< list and set elements, mapping values
  std::vector<std::string> keys;   ///< mapping keys
  std::string text;                ///< string contents; declared name of a map

  static Value of(Polynomial p);
  static Value of(RingMap m, std::string name = {});
  static Value of(Derivation d);

  std::string render() const;
};

std::string kind_name(Value::Kind kind);

enum class ClaimStatus { pass, fail, error };
std::string to_string(ClaimStatus s);

struct ClaimResult {
  std::string label;
  std::string kind;
  std::string anchor;
  ClaimStatus status = ClaimStatus::error;
  bool expected = true;
  std::optional<bool> outcome;  ///< absent on error
  std::string lhs;              ///< rendered sides, filled for failing eq claims
  std::string rhs;
  std::string detail;           ///< cofactors, orders, classifications, error messages
  bool narrative = false;
  bool internal_error = false;
  double millis = 0;
};

struct Report {
  std::vector<ClaimResult> claims;

  std::size_t count(ClaimStatus s) const;
  bool all_pass() const { return count(ClaimStatus::pass) == claims.size(); }
};

struct RunOptions {
  bool parallel = false;
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Holds the evaluated declarations of a unit. Values are immutable once built, so claims can be
/// evaluated from several threads.
class Evaluator {
 public:
  explicit Evaluator(const SourceUnit& unit);

  TablePtr ring(const std::string& name) const;
  /// Last ring declared in the unit.
  TablePtr default_ring() const;

  Value evaluate(const Expr& e, const std::string& ring) const;
  Polynomial polynomial(const Expr& e, const std::string& ring) const;

  ClaimResult run_claim(const Item& item) const;

  /// Value bound to a declared name; throws Error if its declaration failed.
  const Value& lookup(const std::string& name) const;

 private:
  struct Binding {
    std::optional<Value> value;
    std::string error;
  };
  struct InverseInfo {
    std::string other;
    std::vector<Polynomial> forward_mod;  ///< for self o other
    std::vector<Polynomial> backward_mod; ///< for other o self
    std::string error;
  };

  Value call(const Expr& e, const std::string& ring) const;
  bool evaluate_claim(const ClaimDecl& c, const std::string& ring, ClaimResult& out) const;
  const InverseInfo& inverse_of(const std::string& map) const;
  std::string map_name(const Expr& e) const;

  std::map<std::string, TablePtr> rings_;
  std::string last_ring_;
  std::map<std::string, Binding> bindings_;
  std::map<std::string, InverseInfo> inverses_;
};

/// Evaluates every claim; errors are recorded per claim and never abort the run. Narrative claims
/// pass iff every claim they cite passes.
Report run_manifest(const SourceUnit& unit, const RunOptions& options = {});

std::string render_text(const Report& report, bool timing = true);
std::string render_json(const Report& report, bool timing = true);

/// 0 all pass, 1 some claim failed or errored, 3 an internal invariant was violated.
int exit_code(const Report& report);

}  // namespace krv

#endif  // KRV_CLAIMS_HPP
