#pragma once

#include <nlohmann/json.hpp>

#include "wplab/operators.hpp"
#include "wplab/poly.hpp"
#include "wplab/space.hpp"

namespace wplab {

using Json = nlohmann::ordered_json;

// [{"e":[...],"re":x,"im":y}, ...] in graded lex order.
Json poly_to_json(const Poly& f);
// d < 0 infers the dimension from the first term (d = 1 for an empty array).
Poly poly_from_json(const Json& j, int d = -1);

// {"family":"hardy|da|dirichlet|custom","d":int,"coeffs":[...]} (coeffs only for custom).
Json space_to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const Json& j);

// "hardy", "dirichlet", "da<d>".
SpaceSpec space_from_name(std::string_view name);

// {"rows","cols","domain_degree","codomain_degree","conj_codomain","entries":[[re,im],...]} row-major.
Json op_matrix_to_json(const OpMatrix& m);

}  // namespace wplab
