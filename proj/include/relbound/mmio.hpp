#pragma once

#include <iosfwd>
#include <string>

#include "relbound/matrix.hpp"

namespace relbound {

/// Reads a Matrix Market file (array or coordinate; real, integer, or complex
/// field; general or hermitian symmetry). Hermitian files store the lower
/// triangle only and are mirrored on read.
Matrix read_matrix(const std::string& path);
Matrix read_matrix(std::istream& in, const std::string& name = "<stream>");

/// Writes in array format with 17 significant digits; Hermitian matrices are
/// detected and written with the `hermitian` qualifier (lower triangle only).
void write_matrix(const std::string& path, const Matrix& m);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace relbound
