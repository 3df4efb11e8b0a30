#pragma once

#include <string>
#include <string_view>

#include "dsqr/grid.hpp"

namespace dsqr {

// "##" per dark module, "  " per light one; one line per row.
std::string to_ascii(const ModuleGrid& grid, int quiet = 0);

// Netpbm plain bitmap (P1), dark = 1, (21 + 2*quiet)*scale pixels square.
std::string to_pbm(const ModuleGrid& grid, int scale = 1, int quiet = 4);

// Accepts any P1 image of a symbol with an arbitrary light quiet zone. The
// symbol is located by the bounding box of dark pixels (the three finders
// pin its corners), then each module is sampled by majority vote. Data cell
// kinds come from the Version 1 template. Throws Error(Stage::Input) for a
// malformed header, a non-square symbol or indivisible dimensions.
ModuleGrid parse_pbm(std::string_view pbm);

// One rect per dark module; the viewBox includes the quiet zone.
std::string to_svg(const ModuleGrid& grid, int quiet = 4);

}  // namespace dsqr
