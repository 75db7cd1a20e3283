#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tdnls/field.hpp"

namespace tdnls {

/// CSV with header `t,x,re,im` (plus `abs` when requested), one row per grid
/// point and slices in order. Numbers use 17 significant digits.
void write_fields_csv(std::ostream& os, const std::vector<ComplexField>& slices, bool with_abs = false);
void write_fields_csv(const std::string& path, const std::vector<ComplexField>& slices, bool with_abs = false);

/// Reads the format above (extra columns ignored). Rows are grouped into
/// slices by consecutive equal t; each slice must hold a uniform grid.
/// Throws ConfigError on malformed input.
std::vector<ComplexField> read_fields_csv(std::istream& is);
std::vector<ComplexField> read_fields_csv(const std::string& path);

/// "%.17g".
std::string format_double(double v);

} // namespace tdnls
