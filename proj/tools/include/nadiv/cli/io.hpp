#pragma once

#include "nadiv/algebra.hpp"
#include "nadiv/structure.hpp"

#include <string>

namespace nadiv::cli {

/// JSON text of an algebra file; reals use 17 significant digits.
std::string algebra_to_json(const Algebra& A);
Algebra algebra_from_json(const std::string& text);

void write_algebra_file(const std::string& path, const Algebra& A);
Algebra read_algebra_file(const std::string& path);

/// Matrix files hold a single field "matrix" as nested row arrays.
std::string matrix_to_json(const Mat& M);
void write_matrix_file(const std::string& path, const Mat& M);
Mat read_matrix_file(const std::string& path);

/// Quadratic structure files hold "form" (m x m) and "wedge" (m x m x m).
QuadraticStructure read_quadratic_file(const std::string& path);

/// Shortest text for v that is exact after 17-digit rounding.
std::string real17(double v);

}  // namespace nadiv::cli
