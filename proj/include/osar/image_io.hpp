#pragma once

#include <iosfwd>
#include <string>

#include "osar/types.hpp"

namespace osar {

/// Binary 8-bit PGM of |image|, scaled so the maximum maps to 255.
/// An all-zero image is written as black.
void write_pgm(std::ostream& out, const RealMatrix& image);

/// Plain-text matrix, one row per line, comma separated, full precision.
void write_csv_matrix(std::ostream& out, const RealMatrix& image);

/// Places images left to right with a one-pixel separator column.
RealMatrix side_by_side(const RealMatrix& left, const RealMatrix& right);

void write_pgm_file(const std::string& path, const RealMatrix& image);
void write_csv_file(const std::string& path, const RealMatrix& image);

}  // namespace osar
