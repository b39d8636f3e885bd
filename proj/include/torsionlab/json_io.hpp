#pragma once

// JSON forms shared by the CLI, the experiment runner and the tests.
//
//   polynomial: [[[e1, ..., en], "coef"], ...]   (a string such as "t^2 - t + 1"
//               is accepted on input)
//   matrix:     {"nvars": n, "rows": r, "cols": c, "entries": [[poly, ...], ...]}
//   subgroup:   integer matrix as rows, columns = generators

#include "torsionlab/lattices.hpp"
#include "torsionlab/laurent.hpp"
#include "torsionlab/presmod.hpp"

#include "json.hpp"

namespace torsionlab {

using Json = nlohmann::json;

Json poly_to_json(const LaurentPoly& f);
/// nvars = 0 infers the variable count (from exponent length or the variable names).
LaurentPoly poly_from_json(const Json& j, std::size_t nvars = 0);

Json matrix_to_json(const PolyMatrix& m);
PolyMatrix matrix_from_json(const Json& j);

Json subgroup_to_json(const Subgroup& g);
Subgroup subgroup_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace torsionlab
