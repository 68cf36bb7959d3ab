#pragma once

#include <string>
#include <string_view>

#include "asymspec/family.hpp"
#include "asymspec/matrix.hpp"

namespace asymspec {

// Family files:
//
//   {"dim": 2, "node": NODE}
//
//   NODE := {"kind": "constant",  "matrix": MATRIX}
//         | {"kind": "jordan",    "eigenvalue": [re, im]}
//         | {"kind": "diag_expr", "entries": ["1", "2+h", ...]}
//         | {"kind": "h_scaled",  "inner": NODE}
//         | {"kind": "sum",       "terms": [NODE, ...]}
//         | {"kind": "product",   "factors": [NODE, ...]}
//         | {"kind": "random",    "seed": 7, "scale": 1.0}
//
//   MATRIX := {"dim": n, "re": [n*n numbers], "im": [n*n numbers]}, row-major.
//
// Violations throw SchemaError with the JSON pointer of the offending value.

FamilySpec family_from_json(std::string_view text);
/// Functional-calculus families have no file form (BadParameter).
std::string family_to_json(const FamilySpec& spec);

ComplexMatrix matrix_from_json(std::string_view text);
std::string matrix_to_json(const ComplexMatrix& m);

/// IoError when the file cannot be read.
FamilySpec load_family(const std::string& path);

/// Writes `text` verbatim. IoError on failure.
void write_report(const std::string& text, const std::string& path);

}  // namespace asymspec
