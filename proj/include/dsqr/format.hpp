#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsqr/masks.hpp"

namespace dsqr {

enum class EcLevel { L, M, Q, H };

const char* to_string(EcLevel ec);
// Two-bit field value: L=01, M=00, Q=11, H=10.
int ec_bits(EcLevel ec);
EcLevel ec_from_bits(int bits);

struct FormatInfo {
  EcLevel ec = EcLevel::L;
  MaskId mask{0};

  // 5 info bits: ec bits then mask bits.
  std::uint8_t info_bits() const;
  static FormatInfo from_info_bits(std::uint8_t info);

  friend bool operator==(const FormatInfo&, const FormatInfo&) = default;
};

// BCH(15,5) with generator x^10+x^8+x^5+x^4+x^2+x+1.
inline constexpr std::uint16_t kBchGenerator = 0x537;
// Standard on-grid XOR pattern 101010000010010.
inline constexpr std::uint16_t kFormatMask = 0x5412;

std::uint16_t bch_encode(std::uint8_t info);

struct BchDecode {
  std::uint8_t info = 0;
  int distance = 0;
};

// Nearest codeword within Hamming distance 3, else nullopt.
std::optional<BchDecode> bch_decode(std::uint16_t word);

std::uint16_t apply_format_mask(std::uint16_t word);
std::uint16_t reverse_bits15(std::uint16_t word);

// MSB (bit 14) first.
std::string format_bits_string(std::uint16_t word);
std::uint16_t parse_format_bits(std::string_view text);

// Masked on-grid word for info.
std::uint16_t encode_format(const FormatInfo& info);

enum class FormatDomain {
  Raw,     // BCH codewords as computed, before the standard XOR
  OnGrid,  // strings as they appear on the symbol
};

const char* to_string(FormatDomain d);

// Decode in a domain: OnGrid words are unmasked first.
std::optional<BchDecode> decode_in_domain(std::uint16_t word, FormatDomain d);

struct FlipEdge {
  std::uint8_t from = 0;  // node info values
  std::uint8_t to = 0;
  std::uint16_t witness = 0;  // best witness: minimal total distance, then lowest value
  int from_distance = 0;
  int to_distance = 0;
  int witness_count = 0;

  int total_distance() const { return from_distance + to_distance; }
};

// Directed view of the undirected flip-graph: (A,B) is present iff some C
// decodes to A within 3 and reversed(C) decodes to B within 3.
struct FlipGraph {
  FormatDomain domain = FormatDomain::OnGrid;
  std::array<std::uint16_t, 32> nodes{};  // node word in the graph's domain, by info
  std::vector<FlipEdge> edges;            // sorted by (from, to)

  std::size_t shell_candidates = 0;     // 32 * C(15,3)
  std::size_t ball_candidates = 0;      // 32 * (1+15+105+455)
  std::size_t distinct_candidates = 0;  // distinct strings across all balls

  const FlipEdge* edge(std::uint8_t from, std::uint8_t to) const;
  std::size_t undirected_edge_count() const;
};

FlipGraph build_flip_graph(FormatDomain domain);

// Node label = 5-bit info string; edge label = witness and distances.
std::string to_dot(const FlipGraph& graph);

struct MirrorFormat {
  FormatDomain domain = FormatDomain::OnGrid;
  std::uint16_t witness = 0;
  FormatInfo straight{};    // decode of the witness as read straight
  FormatInfo transposed{};  // decode of the reversed witness
  int straight_distance = 0;
  int transposed_distance = 0;

  bool self_loop() const { return straight == transposed; }
  int total_distance() const { return straight_distance + transposed_distance; }
};

// Every witness whose straight and reversed decodes are level L with a
// symmetric mask and whose middle bit (index 7) is 1, best first: total
// distance, then self-loops, then lowest straight mask, then smallest larger
// side distance, then lowest witness value. With one_per_mask_pair only the
// best witness per (straight mask, transposed mask) is kept.
std::vector<MirrorFormat> admissible_mirror_formats(FormatDomain domain, bool one_per_mask_pair = false);

// Front of admissible_mirror_formats. Throws Error(Stage::FormatSelection)
// when nothing qualifies.
MirrorFormat select_mirror_format(FormatDomain domain = FormatDomain::OnGrid);

}  // namespace dsqr
