#pragma once

#include "modgeo/poly.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace modgeo {

using Json = nlohmann::json;

/// Exact rational from "123", "-7/3", "3.25" or "1.5e-3".
mpq_class parse_exact_rational(std::string_view text);
/// Integers as plain decimals, other rationals as "p/q".
std::string rational_to_string(const mpq_class& q);

/// {"degree": d, "total_degree": t, "terms": [{"i", "j", "c"}]} with c a
/// decimal string; "degree" is the largest degree in either variable.
Json to_json(const IntegerBivariatePoly& p);
IntegerBivariatePoly integer_poly_from_json(const Json& j);

/// Same layout as IntegerBivariatePoly plus an optional imaginary part "ci"
/// per term. Accepts any integer-polynomial document as well.
Json to_json(const GaussianBivariatePoly& p);
GaussianBivariatePoly gaussian_poly_from_json(const Json& j);

/// {"vars": ["X1","Y1","X2","Y2"], "terms": [{"e": [i,j,k,l], "c": string}]}
Json to_json(const RealQuadruplePoly& p);
RealQuadruplePoly real_quadruple_from_json(const Json& j);

}  // namespace modgeo
