#pragma once

#include <string>

#include "lrprop/grid.hpp"

namespace lrprop::grid_io {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);
std::string format_name(Format format);

// 17-significant-digit decimal rendering; round-trips binary64 exactly.
std::string format_double(double value);

// CSV layout: '#'-prefixed key=value metadata lines, then one row with the
// time values, then one row per distance (leading column = distance).
std::string serialize_grid(const SpacetimeGrid& grid, Format format);
SpacetimeGrid parse_grid(const std::string& text, Format format);

// Curves carry named columns; absent cells serialize as empty CSV fields or
// JSON nulls.
std::string serialize_curve(const Curve& curve, Format format);
Curve parse_curve(const std::string& text, Format format);

// Writes via a temp file in the same directory plus rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lrprop::grid_io
