#pragma once

#include <string>

#include "curvlayer/grid.hpp"

namespace curvlayer {

// Field exchange format. Both variants start with five text lines
//   nx <int>
//   ny <int>
//   hx <real>
//   hy <real>
//   origin <x0> <y0>
// The CSV variant follows with ny rows of nx comma-separated values (row j
// holds y = y0 + j*hy). The binary variant follows with nx*ny little-endian
// IEEE doubles in the same order.
void write_field_csv(const std::string& path, const Field2D& field);
Field2D read_field_csv(const std::string& path);
void write_field_binary(const std::string& path, const Field2D& field);
Field2D read_field_binary(const std::string& path);

// Dispatches on the extension: ".bin" is binary, anything else CSV.
Field2D read_field(const std::string& path);

}  // namespace curvlayer
