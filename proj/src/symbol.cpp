#include "dsqr/symbol.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsqr {

void write_format(ModuleGrid& grid, std::uint16_t word) {
  const FormatPositions& fp = format_positions();
  for (int bit = 0; bit < kFormatBits; ++bit) {
    const bool v = ((word >> bit) & 1) != 0;
    grid.set_dark(fp.copy1_bit(bit), v);
    grid.set_dark(fp.copy2_bit(bit), v);
  }
}

FormatRead read_format(const ModuleGrid& grid) {
  const FormatPositions& fp = format_positions();
  FormatRead r;
  for (int bit = 0; bit < kFormatBits; ++bit) {
    if (grid.dark(fp.copy1_bit(bit))) r.copy1 |= static_cast<std::uint16_t>(1u << bit);
    if (grid.dark(fp.copy2_bit(bit))) r.copy2 |= static_cast<std::uint16_t>(1u << bit);
  }
  return r;
}

void place_codewords(ModuleGrid& grid, const CodewordBlock& codewords, MaskId m) {
  const auto& order = data_placement_order();
  for (int i = 0; i < kDataCells; ++i) {
    const bool bit = ((codewords[i / 8] >> (7 - i % 8)) & 1) != 0;
    grid.set_dark(order[i], bit != mask_bit(m, order[i]));
  }
}

CodewordBlock read_codewords(const ModuleGrid& grid, MaskId m) {
  const auto& order = data_placement_order();
  CodewordBlock out{};
  for (int i = 0; i < kDataCells; ++i) {
    if (grid.dark(order[i]) != mask_bit(m, order[i])) {
      out[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    }
  }
  return out;
}

DataBlock payload_bytes(const Payload& payload) {
  if (!payload.padded || payload.bits.size() != static_cast<std::size_t>(kPayloadBits)) {
    throw std::invalid_argument("payload must be padded to 152 bits");
  }
  const auto bytes = payload.bits.to_bytes();
  DataBlock out{};
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

ModuleGrid encode_single_sided(const Payload& payload, MaskId m) {
  ModuleGrid grid = function_pattern_grid();
  place_codewords(grid, rs_codeword(payload_bytes(payload)), m);
  write_format(grid, encode_format({EcLevel::L, m}));
  return grid;
}

ModuleGrid encode_text(const std::string& text, Mode mode, MaskId m) {
  return encode_single_sided(assemble_payload(Segment{mode, text}, true), m);
}

}  // namespace dsqr
