#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dsqr/codec.hpp"
#include "dsqr/format.hpp"
#include "dsqr/grid.hpp"
#include "dsqr/rscode.hpp"

namespace dsqr {

enum class Orientation { Straight, Transposed };

const char* to_string(Orientation o);

struct DecodeReport {
  Orientation orientation = Orientation::Straight;
  std::string text;
  Mode mode = Mode::Alphanumeric;
  int declared_length = 0;
  MaskId mask{0};
  EcLevel ec = EcLevel::L;
  int format_distance = 0;
  int format_copy = 1;  // copy the format was taken from
  std::vector<int> corrected_bytes;
  CodewordBlock corrected_codewords{};
};

// Scanner emulation on a discrete grid. Throws dsqr::Error with the failing
// stage: FunctionPattern, FormatDecode, ReedSolomon or PayloadParse.
DecodeReport decode_grid(const ModuleGrid& grid, Orientation orientation);

// Decodes both orientations and compares against the expected texts. Throws
// Error(Stage::Mismatch) naming the side on a wrong text; decoding failures
// propagate with their own stage and the side prefixed to the message.
std::pair<DecodeReport, DecodeReport> verify_double_sided(const ModuleGrid& grid,
                                                          const std::string& expect_a,
                                                          const std::string& expect_b);

}  // namespace dsqr
