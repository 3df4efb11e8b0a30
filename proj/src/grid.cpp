#include "dsqr/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "dsqr/error.hpp"

namespace dsqr {

const char* to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::Input: return "input";
    case Stage::FormatSelection: return "format selection";
    case Stage::FunctionPattern: return "function pattern";
    case Stage::FormatDecode: return "format decode";
    case Stage::ReedSolomon: return "RS budget";
    case Stage::PayloadParse: return "payload parse";
    case Stage::SystemInfeasible: return "system infeasible";
    case Stage::Mismatch: return "decode mismatch";
  }
  return "unknown";
}

std::string to_string(CellCoord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

ModuleGrid::ModuleGrid() { kind_.fill(CellKind::Data); }

int ModuleGrid::index(CellCoord c) {
  if (!c.valid()) throw std::out_of_range("cell outside 21x21 grid: " + to_string(c));
  return c.linear();
}

ModuleGrid ModuleGrid::transposed() const {
  ModuleGrid t;
  for (int r = 0; r < kSymbolSize; ++r) {
    for (int c = 0; c < kSymbolSize; ++c) {
      t.dark_[c * kSymbolSize + r] = dark_[r * kSymbolSize + c];
      t.kind_[c * kSymbolSize + r] = kind_[r * kSymbolSize + c];
    }
  }
  return t;
}

int ModuleGrid::dark_count() const {
  return static_cast<int>(std::count(dark_.begin(), dark_.end(), 1));
}

int ModuleGrid::count(CellKind k) const {
  return static_cast<int>(std::count(kind_.begin(), kind_.end(), k));
}

namespace {

void draw_finder(ModuleGrid& g, int top, int left) {
  // 7x7 finder plus a one-module light separator, clipped to the symbol.
  for (int dr = -1; dr <= 7; ++dr) {
    for (int dc = -1; dc <= 7; ++dc) {
      CellCoord c{top + dr, left + dc};
      if (!c.valid()) continue;
      int ring = std::max(std::abs(dr - 3), std::abs(dc - 3));
      g.set_kind(c, CellKind::Function);
      g.set_dark(c, ring != 2 && ring != 4);
    }
  }
}

ModuleGrid build_template() {
  ModuleGrid g;
  draw_finder(g, 0, 0);
  draw_finder(g, 0, kSymbolSize - 7);
  draw_finder(g, kSymbolSize - 7, 0);
  for (int i = 8; i < kSymbolSize - 8; ++i) {
    g.set_kind({6, i}, CellKind::Function);
    g.set_dark({6, i}, i % 2 == 0);
    g.set_kind({i, 6}, CellKind::Function);
    g.set_dark({i, 6}, i % 2 == 0);
  }
  const FormatPositions& fp = format_positions();
  for (int k = 0; k < kFormatBits; ++k) {
    g.set_kind(fp.copy1[k], CellKind::Format);
    g.set_kind(fp.copy2[k], CellKind::Format);
  }
  g.set_kind(kDarkModule, CellKind::Function);
  g.set_dark(kDarkModule, true);
  return g;
}

const ModuleGrid& template_grid() {
  static const ModuleGrid grid = build_template();
  return grid;
}

FormatPositions build_format_positions() {
  // Indexed by bit first, then stored most-significant first.
  std::array<CellCoord, kFormatBits> by_bit1{};
  std::array<CellCoord, kFormatBits> by_bit2{};
  for (int i = 0; i <= 5; ++i) by_bit1[i] = {i, 8};
  by_bit1[6] = {7, 8};
  by_bit1[7] = {8, 8};
  by_bit1[8] = {8, 7};
  for (int i = 9; i < 15; ++i) by_bit1[i] = {8, 14 - i};
  for (int i = 0; i < 8; ++i) by_bit2[i] = {8, kSymbolSize - 1 - i};
  for (int i = 8; i < 15; ++i) by_bit2[i] = {kSymbolSize - 15 + i, 8};

  FormatPositions fp{};
  for (int bit = 0; bit < kFormatBits; ++bit) {
    fp.copy1[14 - bit] = by_bit1[bit];
    fp.copy2[14 - bit] = by_bit2[bit];
  }
  return fp;
}

std::array<CellCoord, kDataCells> build_placement() {
  const ModuleGrid& tpl = template_grid();
  std::array<CellCoord, kDataCells> order{};
  int n = 0;
  for (int right = kSymbolSize - 1; right >= 1; right -= 2) {
    if (right == 6) right = 5;
    const bool upward = ((right + 1) & 2) == 0;
    for (int step = 0; step < kSymbolSize; ++step) {
      const int row = upward ? kSymbolSize - 1 - step : step;
      for (int j = 0; j < 2; ++j) {
        CellCoord c{row, right - j};
        if (tpl.is_fixed(c)) continue;
        if (n >= kDataCells) throw std::logic_error("placement overflow");
        order[n++] = c;
      }
    }
  }
  if (n != kDataCells) throw std::logic_error("placement does not cover the data region");
  return order;
}

std::array<std::int16_t, kCellCount> build_placement_index() {
  std::array<std::int16_t, kCellCount> idx{};
  idx.fill(-1);
  const auto& order = data_placement_order();
  for (int i = 0; i < kDataCells; ++i) idx[order[i].linear()] = static_cast<std::int16_t>(i);
  return idx;
}

}  // namespace

ModuleGrid function_pattern_grid() { return template_grid(); }

bool template_dark(CellCoord c) {
  const ModuleGrid& tpl = template_grid();
  return tpl.kind(c) == CellKind::Function && tpl.dark(c);
}

const FormatPositions& format_positions() {
  static const FormatPositions fp = build_format_positions();
  return fp;
}

const std::array<CellCoord, kDataCells>& data_placement_order() {
  static const auto order = build_placement();
  return order;
}

int placement_index(CellCoord c) {
  static const auto idx = build_placement_index();
  if (!c.valid()) return -1;
  return idx[c.linear()];
}

FormatBitRef dark_module_format_collision() {
  const CellCoord image = transpose_map(kDarkModule);
  const FormatPositions& fp = format_positions();
  for (int bit = 0; bit < kFormatBits; ++bit) {
    if (fp.copy1_bit(bit) == image) return {1, bit};
    if (fp.copy2_bit(bit) == image) return {2, bit};
  }
  return {0, -1};
}

// ---------------------------------------------------------------------------

char zone_label(Zone z) { return static_cast<char>('a' + static_cast<int>(z)); }

namespace {

CellRole role_for(int bit, int payload_len) {
  if (bit >= kPayloadBits) return {Region::Parity, bit};
  if (bit < payload_len) return {Region::Payload, bit};
  return {Region::Filler, bit};
}

Zone classify(Region a, Region b) {
  using R = Region;
  if (a == R::Payload) return b == R::Payload ? Zone::A : b == R::Parity ? Zone::C : Zone::B;
  if (a == R::Parity) return b == R::Payload ? Zone::E : b == R::Parity ? Zone::I : Zone::F;
  return b == R::Payload ? Zone::D : b == R::Parity ? Zone::H : Zone::G;
}

}  // namespace

Zone OverlapPartition::zone_of(CellCoord c) const {
  const int z = c.valid() ? zone_of_[c.linear()] : -1;
  if (z < 0) throw std::invalid_argument("not a data cell: " + to_string(c));
  return static_cast<Zone>(z);
}

bool OverlapPartition::is_conflict(Zone z) const {
  return z == Zone::A || z == Zone::C || z == Zone::E || z == Zone::I;
}

CellRole OverlapPartition::side_a(CellCoord c) const {
  const int bit = placement_index(c);
  if (bit < 0) throw std::invalid_argument("not a data cell: " + to_string(c));
  return role_for(bit, len_a_);
}

CellRole OverlapPartition::side_b(CellCoord c) const {
  const int bit = placement_index(transpose_map(c));
  if (bit < 0) throw std::invalid_argument("not a data cell: " + to_string(c));
  return role_for(bit, len_b_);
}

std::vector<CellCoord> OverlapPartition::conflict_cells() const {
  std::vector<CellCoord> out;
  for (const CellCoord& c : data_placement_order()) {
    if (is_conflict(zone_of(c))) out.push_back(c);
  }
  return out;
}

std::vector<int> OverlapPartition::conflict_bytes_a() const {
  std::vector<int> bytes;
  for (const CellCoord& c : conflict_cells()) bytes.push_back(side_a(c).bit / 8);
  std::sort(bytes.begin(), bytes.end());
  bytes.erase(std::unique(bytes.begin(), bytes.end()), bytes.end());
  return bytes;
}

std::vector<int> OverlapPartition::conflict_bytes_b() const {
  std::vector<int> bytes;
  for (const CellCoord& c : conflict_cells()) bytes.push_back(side_b(c).bit / 8);
  std::sort(bytes.begin(), bytes.end());
  bytes.erase(std::unique(bytes.begin(), bytes.end()), bytes.end());
  return bytes;
}

int OverlapPartition::count(std::initializer_list<Zone> zones) const {
  int n = 0;
  for (Zone z : zones) n += static_cast<int>(zone(z).size());
  return n;
}

OverlapPartition overlap_partition(int len_a_bits, int len_b_bits) {
  if (len_a_bits < 0 || len_a_bits > kPayloadBits || len_b_bits < 0 || len_b_bits > kPayloadBits) {
    throw std::invalid_argument("payload length must be within 0..152 bits");
  }
  OverlapPartition p;
  p.len_a_ = len_a_bits;
  p.len_b_ = len_b_bits;
  p.zone_of_.fill(-1);
  for (const CellCoord& c : data_placement_order()) {
    const Zone z = classify(p.side_a(c).region, p.side_b(c).region);
    p.zones_[static_cast<int>(z)].push_back(c);
    p.zone_of_[c.linear()] = static_cast<std::int8_t>(z);
  }
  return p;
}

}  // namespace dsqr
