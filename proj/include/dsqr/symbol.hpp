#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "dsqr/codec.hpp"
#include "dsqr/format.hpp"
#include "dsqr/grid.hpp"
#include "dsqr/rscode.hpp"

namespace dsqr {

// Writes the same on-grid format word into both copies.
void write_format(ModuleGrid& grid, std::uint16_t on_grid_word);

struct FormatRead {
  std::uint16_t copy1 = 0;
  std::uint16_t copy2 = 0;
};
FormatRead read_format(const ModuleGrid& grid);

// Places 26 codewords in zigzag order and applies mask m to data cells.
void place_codewords(ModuleGrid& grid, const CodewordBlock& codewords, MaskId m);
// Inverse of place_codewords.
CodewordBlock read_codewords(const ModuleGrid& grid, MaskId m);

// Complete single-sided Version 1-L symbol for a padded payload.
ModuleGrid encode_single_sided(const Payload& payload, MaskId m);
ModuleGrid encode_text(const std::string& text, Mode mode, MaskId m);

// 19 data bytes from a padded payload.
DataBlock payload_bytes(const Payload& payload);

}  // namespace dsqr
