#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace dsqr {

using BitVector = boost::dynamic_bitset<std::uint64_t>;

// Dense system of linear equations over GF(2): rows[i] . x = rhs[i].
class Gf2System {
 public:
  explicit Gf2System(int variables = 0) : variables_(variables) {}

  int variables() const { return variables_; }
  std::size_t size() const { return rows_.size(); }

  BitVector blank_row() const { return BitVector(static_cast<std::size_t>(variables_)); }
  void add(BitVector row, bool rhs);

  const BitVector& row(std::size_t i) const { return rows_[i]; }
  bool rhs(std::size_t i) const { return rhs_[i] != 0; }

  // Every row satisfied by assignment (one byte per variable, 0 or 1).
  bool satisfied_by(std::span<const std::uint8_t> assignment) const;

 private:
  int variables_;
  std::vector<BitVector> rows_;
  std::vector<std::uint8_t> rhs_;
};

// How free variables are assigned once the system is in reduced form.
struct FreeBitPolicy {
  enum class Kind { Zeros, Random, Preferred };

  Kind kind = Kind::Zeros;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> preferred;  // Kind::Preferred, one entry per variable

  static FreeBitPolicy zeros() { return {}; }
  static FreeBitPolicy random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
  static FreeBitPolicy prefer(std::vector<std::uint8_t> values) {
    return {Kind::Preferred, 0, std::move(values)};
  }
};

struct Gf2Solution {
  std::vector<std::uint8_t> assignment;
  std::vector<int> pivot_columns;
  std::vector<int> free_columns;

  int rank() const { return static_cast<int>(pivot_columns.size()); }
  int free_variable_count() const { return static_cast<int>(free_columns.size()); }
};

// Gauss-Jordan elimination. nullopt iff some row reduces to 0 = 1.
std::optional<Gf2Solution> solve_gf2(const Gf2System& system, const FreeBitPolicy& policy);

// Partial elimination restricted to columns [0, pivot_limit). Rows that end up
// with no coefficient in that range are returned as the residual: a system in
// which the pivoted variables no longer appear.
struct Gf2Residual {
  std::vector<BitVector> rows;
  std::vector<std::uint8_t> rhs;
  int eliminated_rank = 0;
};
Gf2Residual eliminate_prefix(const Gf2System& system, int pivot_limit);

}  // namespace dsqr
