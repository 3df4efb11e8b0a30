#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsqr/codec.hpp"
#include "dsqr/error.hpp"
#include "dsqr/format.hpp"
#include "dsqr/gf2.hpp"
#include "dsqr/grid.hpp"
#include "dsqr/verify.hpp"

namespace dsqr {

enum class Side { A, B };

// Codeword bytes each side may leave damaged for its RS decoder to repair.
struct ErrorAllocation {
  std::vector<int> side_a;  // ascending byte indices 0..25
  std::vector<int> side_b;

  int total() const { return static_cast<int>(side_a.size() + side_b.size()); }
  bool contains(Side side, int byte) const;
  std::string to_string() const;

  friend bool operator==(const ErrorAllocation&, const ErrorAllocation&) = default;
};

enum class RowOrigin { MessageA, MessageB, ParityA, ParityB };

struct RowTag {
  RowOrigin origin = RowOrigin::MessageA;
  int bit = 0;  // message bit, or parity bit 0..55 (byte 19 + bit/8)
};

// One variable per data cell holding its physical (masked, on-grid) value,
// indexed by side-A placement order, followed by 8 error variables per
// allocated data byte. A side reads logical bit i as
//   cell ^ error(i) ^ mask(cell)
// where error(i) exists only when i's byte is allocated on that side. Parity
// rows of allocated parity bytes are omitted; allocated data bytes keep their
// rows but route them through the error variables, so the logical codeword
// stays an RS codeword while the physical bits may differ from it.
struct LinearSystem {
  Gf2System equations;
  std::vector<RowTag> tags;
  MaskId mask_a{0};
  MaskId mask_b{0};
  int payload_bits_a = 0;
  int payload_bits_b = 0;
  ErrorAllocation allocation;
  std::vector<std::pair<Side, int>> error_bytes;  // group g owns vars 208+8g..208+8g+7

  // Error variable for bit i (0..207) of a side, or -1.
  int error_variable(Side side, int bit) const;
};

// Throws Error(Stage::Input) for an asymmetric mask or payloads over 152 bits.
LinearSystem build_constraint_system(const BitString& msg_a, const BitString& msg_b,
                                     const MirrorFormat& fmt, const ErrorAllocation& alloc);

struct Solution {
  std::vector<std::uint8_t> assignment;   // every variable
  std::array<std::uint8_t, kDataCells> cells{};  // physical data cells, side-A order
  int free_variable_count = 0;
  int rank = 0;
  std::vector<int> free_variables;
};

std::optional<Solution> solve_gf2(const LinearSystem& system, const FreeBitPolicy& policy);

// Cells both sides pin to different physical values.
std::vector<CellCoord> pinned_conflicts(const BitString& msg_a, const BitString& msg_b,
                                        MaskId mask_a, MaskId mask_b);

// Allocations in increasing total size (ties: smaller larger side, then fewer
// side-A bytes, then lexicographic), at most 3 bytes per side, drawn only
// from bytes that touch the conflict zones a, c, e, i.
class AllocationEnumerator {
 public:
  explicit AllocationEnumerator(const OverlapPartition& part, int max_per_side = 3);
  AllocationEnumerator(std::vector<int> bytes_a, std::vector<int> bytes_b, int max_per_side = 3);

  std::optional<ErrorAllocation> next();

  const std::vector<int>& candidates_a() const { return bytes_a_; }
  const std::vector<int>& candidates_b() const { return bytes_b_; }

 private:
  bool start_split();
  bool advance(std::vector<int>& idx, int n);

  std::vector<int> bytes_a_;
  std::vector<int> bytes_b_;
  std::vector<std::pair<int, int>> splits_;  // (na, nb) in visiting order
  std::size_t split_ = 0;
  std::vector<int> idx_a_;
  std::vector<int> idx_b_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<ErrorAllocation> enumerate_error_allocations(const OverlapPartition& part);

// Fast feasibility test for many allocations of one message pair: the cell
// variables are eliminated once, leaving a small residual system over the
// error variables of every candidate byte.
class AllocationScreen {
 public:
  AllocationScreen(const BitString& msg_a, const BitString& msg_b, const MirrorFormat& fmt,
                   const std::vector<int>& bytes_a, const std::vector<int>& bytes_b);

  bool feasible(const ErrorAllocation& alloc) const;
  std::size_t residual_rows() const { return rows_.size(); }

 private:
  std::vector<std::pair<Side, int>> groups_;
  std::vector<std::vector<std::uint8_t>> rows_;  // per residual row: coefficient byte per group
  std::vector<std::uint8_t> rhs_;
};

struct BruteForceResult {
  std::optional<ModuleGrid> grid;
  std::uint64_t trials_used = 0;
  int best_damage_b = kCodewordBytes;  // fewest damaged side-B bytes seen
};

// Randomized search over the filler cells: each trial fills free cells at
// random, pins both payloads, writes side B's honest parity where side A
// leaves room, then writes side A completely (data and parity) and checks the
// transposed read. Deterministic for a given seed.
BruteForceResult brute_force_search(const BitString& msg_a, const std::string& text_a,
                                    const BitString& msg_b, const std::string& text_b,
                                    const MirrorFormat& fmt, std::uint64_t trials,
                                    std::uint64_t seed);

enum class Method { Analytic, Brute, Auto };
const char* to_string(Method m);

enum class FillPolicy { PadPattern, Zeros, Random };

struct ConstructionOptions {
  Method method = Method::Analytic;
  std::optional<Mode> mode_a;  // default: most compact mode for the text
  std::optional<Mode> mode_b;
  bool try_all_formats = true;  // fall back to other admissible witnesses
  FillPolicy fill = FillPolicy::PadPattern;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct ConstructionReport {
  std::string method;  // "analytic" or "brute"
  std::string text_a;
  std::string text_b;
  MirrorFormat format;
  ErrorAllocation allocation;
  int payload_bits_a = 0;
  int payload_bits_b = 0;
  int free_vars = 0;
  int rank = 0;
  std::vector<int> side_a_corrections;
  std::vector<int> side_b_corrections;
  int format_distance_a = 0;
  int format_distance_b = 0;
  std::uint64_t trials = 0;
  std::uint64_t allocations_tried = 0;
  int formats_tried = 0;
  // Diagnostics for failures: smallest feasible allocation found without the
  // 3+3 cap (-1 when none exists), and the best brute-force side-B damage.
  int uncapped_bytes_a = -1;
  int uncapped_bytes_b = -1;
  int best_brute_damage_b = -1;
};

struct ConstructionResult {
  ModuleGrid grid;
  ConstructionReport report;
};

class ConstructionFailure : public Error {
 public:
  ConstructionFailure(Stage stage, const std::string& what, ConstructionReport report)
      : Error(stage, what), report_(std::move(report)) {}
  const ConstructionReport& report() const { return report_; }

 private:
  ConstructionReport report_;
};

// Full pipeline; throws ConstructionFailure when every allocation (and the
// brute-force budget, when enabled) is exhausted.
ConstructionResult construct_double_sided(const std::string& text_a, const std::string& text_b,
                                          const ConstructionOptions& options = {});

// Grid with the given physical data cells, function patterns and the format
// witness written to both copies.
ModuleGrid materialize(const std::array<std::uint8_t, kDataCells>& cells, std::uint16_t witness);

}  // namespace dsqr
