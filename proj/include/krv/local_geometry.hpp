#ifndef KRV_LOCAL_GEOMETRY_HPP
#define KRV_LOCAL_GEOMETRY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "krv/polynomial.hpp"

namespace krv {

enum class ConeTag { double_hyperplane, two_distinct_hyperplanes, other };

std::string to_string(ConeTag tag);
std::optional<ConeTag> parse_cone_tag(std::string_view text);

struct ConeClass {
  ConeTag tag;
  Polynomial form;  ///< the quadric after specialization
};

/// Lowest homogeneous part of f translated to `point` (one coordinate per non-parameter variable,
/// constants or parameter expressions). Throws DomainError if f does not vanish at the point and
/// EmptyConeError if the translate is zero.
Polynomial tangent_cone(const Polynomial& f, const std::vector<Polynomial>& point);

/// Classifies a quadratic form by the rank of its symmetric matrix over Q(w): rank 1 is a double
/// hyperplane, rank 2 a pair of distinct hyperplanes. Every parameter that occurs must be
/// specialized. Throws DomainError if the specialized form is not a nonzero quadratic form.
ConeClass classify_quadric(const Polynomial& form, const std::map<std::string, Coefficient>& specialization = {});

/// f = u*v + g with u a nonzero constant and g free of v.
bool graph_variable_check(const Polynomial& f, std::string_view v);

}  // namespace krv

#endif  // KRV_LOCAL_GEOMETRY_HPP
