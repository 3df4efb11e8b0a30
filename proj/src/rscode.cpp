#include "dsqr/rscode.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsqr {

namespace gf256 {

namespace {

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<int, 256> log{};
};

constexpr Tables kTables = [] {
  Tables t{};
  unsigned x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.log[x] = i;
    x <<= 1;
    if (x & 0x100) x ^= kPrimitive;
  }
  for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  t.log[0] = -1;
  return t;
}();

}  // namespace

std::uint8_t exp(int k) { return kTables.exp[((k % 255) + 255) % 255]; }

int log(std::uint8_t x) {
  if (x == 0) throw std::domain_error("log of zero in GF(256)");
  return kTables.log[x];
}

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw std::domain_error("division by zero in GF(256)");
  if (a == 0) return 0;
  return kTables.exp[kTables.log[a] + 255 - kTables.log[b]];
}

std::uint8_t inv(std::uint8_t a) { return div(1, a); }

}  // namespace gf256

namespace {

using Poly = std::vector<std::uint8_t>;  // lowest degree first

std::uint8_t eval_low_first(const Poly& p, std::uint8_t x) {
  std::uint8_t y = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) y = gf256::mul(y, x) ^ *it;
  return y;
}

std::array<std::uint8_t, kParityBytes + 1> build_generator() {
  // prod (x - alpha^i), kept highest degree first.
  std::vector<std::uint8_t> g{1};
  for (int i = 0; i < kParityBytes; ++i) {
    std::vector<std::uint8_t> next(g.size() + 1, 0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j] ^= g[j];
      next[j + 1] ^= gf256::mul(g[j], gf256::exp(i));
    }
    g = std::move(next);
  }
  std::array<std::uint8_t, kParityBytes + 1> out{};
  std::copy(g.begin(), g.end(), out.begin());
  return out;
}

}  // namespace

const std::array<std::uint8_t, kParityBytes + 1>& rs_generator() {
  static const auto g = build_generator();
  return g;
}

ParityBlock rs_encode(const DataBlock& data) {
  const auto& g = rs_generator();
  ParityBlock r{};
  for (std::uint8_t d : data) {
    const std::uint8_t factor = d ^ r[0];
    std::rotate(r.begin(), r.begin() + 1, r.end());
    r.back() = 0;
    for (int j = 0; j < kParityBytes; ++j) r[j] ^= gf256::mul(g[j + 1], factor);
  }
  return r;
}

CodewordBlock rs_codeword(const DataBlock& data) {
  CodewordBlock cw{};
  std::copy(data.begin(), data.end(), cw.begin());
  const ParityBlock p = rs_encode(data);
  std::copy(p.begin(), p.end(), cw.begin() + kDataBytes);
  return cw;
}

std::array<std::uint8_t, kParityBytes> rs_syndromes(const CodewordBlock& received) {
  std::array<std::uint8_t, kParityBytes> s{};
  for (int j = 0; j < kParityBytes; ++j) {
    const std::uint8_t x = gf256::exp(j);
    std::uint8_t y = 0;
    for (std::uint8_t c : received) y = gf256::mul(y, x) ^ c;
    s[j] = y;
  }
  return s;
}

std::optional<RsDecodeResult> rs_decode(const CodewordBlock& received) {
  const auto synd = rs_syndromes(received);
  RsDecodeResult result;
  result.codeword = received;
  if (std::all_of(synd.begin(), synd.end(), [](std::uint8_t s) { return s == 0; })) {
    std::copy_n(received.begin(), kDataBytes, result.data.begin());
    return result;
  }

  // Berlekamp-Massey for the error locator Lambda(x), lowest degree first.
  Poly lambda{1};
  Poly prev{1};
  int len = 0;
  int shift = 1;
  std::uint8_t prev_disc = 1;
  for (int n = 0; n < kParityBytes; ++n) {
    std::uint8_t disc = synd[n];
    for (int i = 1; i <= len && i < static_cast<int>(lambda.size()); ++i) {
      disc ^= gf256::mul(lambda[i], synd[n - i]);
    }
    if (disc == 0) {
      ++shift;
      continue;
    }
    const std::uint8_t coef = gf256::div(disc, prev_disc);
    Poly updated = lambda;
    if (updated.size() < prev.size() + shift) updated.resize(prev.size() + shift, 0);
    for (std::size_t i = 0; i < prev.size(); ++i) updated[i + shift] ^= gf256::mul(coef, prev[i]);
    if (2 * len <= n) {
      prev = lambda;
      len = n + 1 - len;
      prev_disc = disc;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(updated);
  }
  while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
  const int degree = static_cast<int>(lambda.size()) - 1;
  if (degree != len || degree > kMaxByteErrors) return std::nullopt;

  // Chien search. Byte i carries power n-1-i, so its locator is alpha^(n-1-i).
  std::vector<int> positions;
  std::vector<std::uint8_t> locators;
  for (int i = 0; i < kCodewordBytes; ++i) {
    const int power = kCodewordBytes - 1 - i;
    if (eval_low_first(lambda, gf256::exp(-power)) == 0) {
      positions.push_back(i);
      locators.push_back(gf256::exp(power));
    }
  }
  if (static_cast<int>(positions.size()) != degree) return std::nullopt;

  // Omega(x) = S(x) Lambda(x) mod x^7, S(x) = sum S_j x^j.
  Poly omega(kParityBytes, 0);
  for (int i = 0; i < kParityBytes; ++i) {
    for (int j = 0; j <= i && j < static_cast<int>(lambda.size()); ++j) {
      omega[i] ^= gf256::mul(lambda[j], synd[i - j]);
    }
  }
  // Formal derivative: odd-degree terms survive.
  Poly dlambda(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
  for (std::size_t i = 1; i < lambda.size(); i += 2) dlambda[i - 1] = lambda[i];

  // Forney with first consecutive root alpha^0: e = X * Omega(X^-1) / Lambda'(X^-1).
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const std::uint8_t x_inv = gf256::inv(locators[k]);
    const std::uint8_t denom = eval_low_first(dlambda, x_inv);
    if (denom == 0) return std::nullopt;
    const std::uint8_t magnitude =
        gf256::mul(locators[k], gf256::div(eval_low_first(omega, x_inv), denom));
    if (magnitude == 0) return std::nullopt;
    result.codeword[positions[k]] ^= magnitude;
  }

  const auto check = rs_syndromes(result.codeword);
  if (!std::all_of(check.begin(), check.end(), [](std::uint8_t s) { return s == 0; })) {
    return std::nullopt;
  }
  std::copy_n(result.codeword.begin(), kDataBytes, result.data.begin());
  result.corrected_positions = std::move(positions);
  return result;
}

std::bitset<kPayloadBits> data_bits(const DataBlock& data) {
  std::bitset<kPayloadBits> bits;
  for (int i = 0; i < kPayloadBits; ++i) bits[i] = (data[i / 8] >> (7 - i % 8)) & 1;
  return bits;
}

std::bitset<kParityBits> parity_bits(const ParityBlock& parity) {
  std::bitset<kParityBits> bits;
  for (int i = 0; i < kParityBits; ++i) bits[i] = (parity[i / 8] >> (7 - i % 8)) & 1;
  return bits;
}

ParityMatrix::ParityMatrix() {
  for (int j = 0; j < kPayloadBits; ++j) {
    DataBlock unit{};
    unit[j / 8] = static_cast<std::uint8_t>(0x80 >> (j % 8));
    const auto column = parity_bits(rs_encode(unit));
    for (int k = 0; k < kParityBits; ++k) rows_[k][j] = column[k];
  }
}

std::bitset<kParityBits> ParityMatrix::apply(const std::bitset<kPayloadBits>& data) const {
  std::bitset<kParityBits> out;
  for (int k = 0; k < kParityBits; ++k) out[k] = (rows_[k] & data).count() % 2 == 1;
  return out;
}

const ParityMatrix& parity_matrix() {
  static const ParityMatrix m;
  return m;
}

}  // namespace dsqr
