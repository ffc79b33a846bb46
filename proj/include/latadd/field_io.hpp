#pragma once

#include <iosfwd>
#include <string>

#include "latadd/lattice.hpp"

namespace latadd {

/// CSV grid format: one comma-separated line of decimal reals per grid
/// row, '.' decimal separator, LF line endings, no header.
LatticeField read_field_csv(const std::string& path);
LatticeField read_field_csv(std::istream& in);
void write_field_csv(const LatticeField& field, const std::string& path);
void write_field_csv(const LatticeField& field, std::ostream& out);

/// PGM image (P2 ASCII or P5 binary, maxval up to 65535). Pixel
/// intensities are taken verbatim as field values.
LatticeField read_field_pgm(const std::string& path);
LatticeField read_field_pgm(std::istream& in);

/// Dispatch on filename extension (".pgm" vs everything-else-is-CSV).
LatticeField read_field_auto(const std::string& path);

}  // namespace latadd
