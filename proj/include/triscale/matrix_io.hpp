#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "triscale/upper_triangular.hpp"

namespace triscale {

// Plain-text matrix file:
//
//   # comment lines start with '#'
//   n
//   (re,im) (re,im) ... n entries per row, n rows
//
// Entries are written with 17 significant digits, so parse(write(T)) is
// bit-exact for every finite double. Parse errors carry the line number.

/// Parses a square matrix without the triangularity check.
Matrix parse_matrix_dense(std::istream& in, const std::string& source = "<stream>");
/// Parses and validates; a nonzero strictly-lower entry is reported with its
/// line and (row, column).
UpperTriangular parse_matrix(std::istream& in, const std::string& source = "<stream>");
void format_matrix(std::ostream& out, const UpperTriangular& t);

UpperTriangular read_matrix(const std::filesystem::path& path);
void write_matrix(const UpperTriangular& t, const std::filesystem::path& path);

/// "(re,im)" with 17 significant digits per component.
std::string format_complex(Complex z);

}  // namespace triscale
