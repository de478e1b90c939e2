// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Plain-text matrix and vector files.
//
//   matrix:  "m n" header, then m lines of n numbers
//   vector:  "m" header, then m lines of one number
//
// Blank lines and lines starting with '#' are skipped. Values are written
// with 17 significant digits so a write/read round trip is exact.

#pragma once

#include <iosfwd>
#include <string>

#include "core/linalg.hpp"

namespace l1rev {

/// Parse errors throw ErrorCode::parse naming `source` and the line number.
Matrix parse_matrix(std::istream& in, const std::string& source = "<input>");
Vector parse_vector(std::istream& in, const std::string& source = "<input>");

Matrix read_matrix(const std::string& path);
Vector read_vector(const std::string& path);

void format_matrix(std::ostream& out, const Matrix& a);
void format_vector(std::ostream& out, std::span<const double> v);

/// Throws ErrorCode::io when the file cannot be written.
void write_matrix(const std::string& path, const Matrix& a);
void write_vector(const std::string& path, std::span<const double> v);

}  // namespace l1rev
