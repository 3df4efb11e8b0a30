#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dsqr {

// Version 1 symbol geometry.
inline constexpr int kSymbolSize = 21;
inline constexpr int kCellCount = kSymbolSize * kSymbolSize;
inline constexpr int kDataCells = 208;
inline constexpr int kPayloadBits = 152;
inline constexpr int kParityBits = 56;
inline constexpr int kFormatBits = 15;

struct CellCoord {
  int row = 0;
  int col = 0;

  constexpr bool valid() const {
    return row >= 0 && row < kSymbolSize && col >= 0 && col < kSymbolSize;
  }
  constexpr int linear() const { return row * kSymbolSize + col; }

  friend constexpr auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

std::string to_string(CellCoord c);

inline constexpr CellCoord kDarkModule{13, 8};

enum class CellKind : std::uint8_t {
  Data,      // carries payload or parity after masking
  Function,  // finder, separator, timing, dark module
  Format,    // format information; fixed but written per symbol
};

class ModuleGrid {
 public:
  ModuleGrid();

  bool dark(CellCoord c) const { return dark_[index(c)] != 0; }
  void set_dark(CellCoord c, bool value) { dark_[index(c)] = value ? 1 : 0; }
  void flip(CellCoord c) { dark_[index(c)] ^= 1; }

  CellKind kind(CellCoord c) const { return kind_[index(c)]; }
  void set_kind(CellCoord c, CellKind k) { kind_[index(c)] = k; }
  bool is_fixed(CellCoord c) const { return kind(c) != CellKind::Data; }

  // Reflection about the main diagonal, applied to values and kinds alike.
  ModuleGrid transposed() const;

  int dark_count() const;
  int count(CellKind k) const;

  friend bool operator==(const ModuleGrid&, const ModuleGrid&) = default;

 private:
  static int index(CellCoord c);

  std::array<std::uint8_t, kCellCount> dark_{};
  std::array<CellKind, kCellCount> kind_{};
};

// Version 1 template: finders with separators, timing row/column, dark
// module. Format cells are marked CellKind::Format and left light; every
// other cell is a light data cell.
ModuleGrid function_pattern_grid();

// True iff c is a function-pattern cell whose template value is dark.
bool template_dark(CellCoord c);

// Standard two-column zigzag from the bottom-right corner. Indices 0..151 are
// payload bits, 152..207 parity bits; bit 7-k of codeword n sits at 8n+k.
const std::array<CellCoord, kDataCells>& data_placement_order();

// Inverse of data_placement_order(); -1 for non-data cells.
int placement_index(CellCoord c);

constexpr CellCoord transpose_map(CellCoord c) { return {c.col, c.row}; }

// Each list is ordered by format bit index 14 down to 0, so element k holds
// bit 14 - k.
struct FormatPositions {
  std::array<CellCoord, kFormatBits> copy1;
  std::array<CellCoord, kFormatBits> copy2;

  CellCoord copy1_bit(int bit) const { return copy1[14 - bit]; }
  CellCoord copy2_bit(int bit) const { return copy2[14 - bit]; }
};

const FormatPositions& format_positions();

// Which format bit of which copy the transposed dark module lands on.
struct FormatBitRef {
  int copy = 0;
  int bit = 0;
};
FormatBitRef dark_module_format_collision();

// ---------------------------------------------------------------------------
// Overlap partition: classification of data cells by the role they play for
// the straight reader (side A) and the transposed reader (side B).

enum class Zone : std::uint8_t { A, B, C, D, E, F, G, H, I };
inline constexpr int kZoneCount = 9;

char zone_label(Zone z);

enum class Region : std::uint8_t {
  Payload,  // pinned message prefix
  Filler,   // remaining data bits, free for that side
  Parity,   // RS parity bits
};

struct CellRole {
  Region region = Region::Filler;
  int bit = 0;  // placement index as seen by that side
};

// Zones, with PA/PB the payload prefixes and EA/EB the parity regions:
//   a = PA∩PB  b = PA only  c = PA∩EB  d = PB only  e = PB∩EA
//   f = EA only  g = neither  h = EB only  i = EA∩EB
// so that data_A = a+b+c+d+g+h, data_B = a+b+d+e+f+g, parity_A = e+f+i and
// parity_B = c+h+i. Conflicts are confined to a, c, e, i.
class OverlapPartition {
 public:
  int payload_bits_a() const { return len_a_; }
  int payload_bits_b() const { return len_b_; }

  const std::vector<CellCoord>& zone(Zone z) const {
    return zones_[static_cast<int>(z)];
  }
  Zone zone_of(CellCoord c) const;
  bool is_conflict(Zone z) const;

  CellRole side_a(CellCoord c) const;
  CellRole side_b(CellCoord c) const;

  // Cells of zones a, c, e, i in placement order of side A.
  std::vector<CellCoord> conflict_cells() const;
  // Codeword byte indices (0..25) touching a conflict zone, per side.
  std::vector<int> conflict_bytes_a() const;
  std::vector<int> conflict_bytes_b() const;

  // Union of zones as cell count, e.g. |data_A ∩ data_B|.
  int count(std::initializer_list<Zone> zones) const;

 private:
  friend OverlapPartition overlap_partition(int, int);

  int len_a_ = 0;
  int len_b_ = 0;
  std::array<std::vector<CellCoord>, kZoneCount> zones_;
  std::array<std::int8_t, kCellCount> zone_of_{};
};

// Throws std::invalid_argument when either length is outside 0..152.
OverlapPartition overlap_partition(int len_a_bits, int len_b_bits);

}  // namespace dsqr
