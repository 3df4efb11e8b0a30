#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <vector>

#include "dsqr/grid.hpp"

namespace dsqr {

namespace gf256 {

// GF(2^8) with primitive polynomial x^8+x^4+x^3+x^2+1 and generator 2.
inline constexpr unsigned kPrimitive = 0x11D;

std::uint8_t exp(int k);  // alpha^k, k taken mod 255
int log(std::uint8_t x);  // throws std::domain_error for 0
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t div(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);

}  // namespace gf256

inline constexpr int kDataBytes = 19;
inline constexpr int kParityBytes = 7;
inline constexpr int kCodewordBytes = kDataBytes + kParityBytes;
inline constexpr int kMaxByteErrors = kParityBytes / 2;

using DataBlock = std::array<std::uint8_t, kDataBytes>;
using ParityBlock = std::array<std::uint8_t, kParityBytes>;
using CodewordBlock = std::array<std::uint8_t, kCodewordBytes>;

// Degree-7 generator with roots alpha^0..alpha^6, highest degree first
// (monic leading 1 included).
const std::array<std::uint8_t, kParityBytes + 1>& rs_generator();

ParityBlock rs_encode(const DataBlock& data);
CodewordBlock rs_codeword(const DataBlock& data);

// S_j = c(alpha^j) with byte 0 as the highest-degree coefficient.
std::array<std::uint8_t, kParityBytes> rs_syndromes(const CodewordBlock& received);

struct RsDecodeResult {
  DataBlock data{};
  CodewordBlock codeword{};
  std::vector<int> corrected_positions;  // ascending byte indices
};

// Bounded-distance decoding up to 3 byte errors (Berlekamp-Massey, Chien
// search, Forney). nullopt when no consistent error pattern of weight <= 3
// exists.
std::optional<RsDecodeResult> rs_decode(const CodewordBlock& received);

// Parity bits as a GF(2)-linear map of the 152 data bits.
class ParityMatrix {
 public:
  ParityMatrix();

  // Row k: which data bits feed parity bit k.
  const std::bitset<kPayloadBits>& row(int parity_bit) const { return rows_[parity_bit]; }
  bool at(int parity_bit, int data_bit) const { return rows_[parity_bit][data_bit]; }
  std::bitset<kParityBits> apply(const std::bitset<kPayloadBits>& data) const;

 private:
  std::array<std::bitset<kPayloadBits>, kParityBits> rows_;
};

const ParityMatrix& parity_matrix();

// Bit i of the bitset is bit i of the MSB-first stream.
std::bitset<kPayloadBits> data_bits(const DataBlock& data);
std::bitset<kParityBits> parity_bits(const ParityBlock& parity);

}  // namespace dsqr
