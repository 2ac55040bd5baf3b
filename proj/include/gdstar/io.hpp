#pragma once

#include <string>

#include "json.hpp"

#include "gdstar/check.hpp"

namespace gdstar {

using Json = nlohmann::json;

// Matrix files: {"rows": r, "cols": c, "data": [[[re, im], ...], ...]},
// row-major. Doubles are written in shortest round-trip form, so a
// write/read cycle is bit-exact.

Json matrix_to_json(const CMat& A);
/// Throws InputError on anything that is not a well-formed matrix file.
CMat matrix_from_json(const Json& j);

CMat read_matrix(const std::string& path);
void write_matrix(const std::string& path, const CMat& A);

/// An n x 1 or 1 x n matrix file as a vector.
CVec read_vector(const std::string& path);

Json report_to_json(const CheckReport& rep);
Json tolerance_to_json(const Tolerance& tol);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace gdstar
