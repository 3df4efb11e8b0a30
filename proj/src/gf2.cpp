#include "dsqr/gf2.hpp"

#include <random>
#include <stdexcept>

namespace dsqr {

void Gf2System::add(BitVector row, bool rhs) {
  if (row.size() != static_cast<std::size_t>(variables_)) {
    throw std::invalid_argument("row width does not match the variable count");
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs ? 1 : 0);
}

bool Gf2System::satisfied_by(std::span<const std::uint8_t> assignment) const {
  if (assignment.size() != static_cast<std::size_t>(variables_)) return false;
  BitVector x(static_cast<std::size_t>(variables_));
  for (int v = 0; v < variables_; ++v) x[v] = assignment[v] != 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (((rows_[i] & x).count() & 1) != rhs_[i]) return false;
  }
  return true;
}

namespace {

struct Reduced {
  std::vector<BitVector> rows;
  std::vector<std::uint8_t> rhs;
  std::vector<int> pivots;  // pivot column of rows[0..pivots.size())
  bool consistent = true;
};

// Row-reduces in place over columns [0, limit); pivot rows move to the front.
// When full is set, pivot columns are cleared from every other row as well.
Reduced reduce(const Gf2System& system, int limit, bool full) {
  Reduced r;
  r.rows.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    r.rows.push_back(system.row(i));
    r.rhs.push_back(system.rhs(i) ? 1 : 0);
  }
  std::size_t next = 0;
  for (int col = 0; col < limit && next < r.rows.size(); ++col) {
    std::size_t pivot = next;
    while (pivot < r.rows.size() && !r.rows[pivot].test(col)) ++pivot;
    if (pivot == r.rows.size()) continue;
    std::swap(r.rows[pivot], r.rows[next]);
    std::swap(r.rhs[pivot], r.rhs[next]);
    const std::size_t begin = full ? 0 : next + 1;
    for (std::size_t i = begin; i < r.rows.size(); ++i) {
      if (i != next && r.rows[i].test(col)) {
        r.rows[i] ^= r.rows[next];
        r.rhs[i] ^= r.rhs[next];
      }
    }
    r.pivots.push_back(col);
    ++next;
  }
  for (std::size_t i = next; i < r.rows.size(); ++i) {
    if (r.rows[i].none() && r.rhs[i]) r.consistent = false;
  }
  return r;
}

}  // namespace

std::optional<Gf2Solution> solve_gf2(const Gf2System& system, const FreeBitPolicy& policy) {
  const int n = system.variables();
  Reduced r = reduce(system, n, true);
  if (!r.consistent) return std::nullopt;

  Gf2Solution sol;
  sol.pivot_columns = r.pivots;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : r.pivots) is_pivot[c] = true;

  sol.assignment.assign(static_cast<std::size_t>(n), 0);
  std::mt19937_64 rng(policy.seed);
  for (int v = 0; v < n; ++v) {
    if (is_pivot[v]) continue;
    sol.free_columns.push_back(v);
    switch (policy.kind) {
      case FreeBitPolicy::Kind::Zeros: break;
      case FreeBitPolicy::Kind::Random: sol.assignment[v] = static_cast<std::uint8_t>(rng() & 1); break;
      case FreeBitPolicy::Kind::Preferred:
        if (policy.preferred.size() != static_cast<std::size_t>(n)) {
          throw std::invalid_argument("preferred values must cover every variable");
        }
        sol.assignment[v] = policy.preferred[v] ? 1 : 0;
        break;
    }
  }

  BitVector free_values(static_cast<std::size_t>(n));
  for (int v : sol.free_columns) free_values[v] = sol.assignment[v] != 0;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    // Reduced form: the pivot is the only pivot column left in its row.
    const bool parity = ((r.rows[i] & free_values).count() & 1) != 0;
    sol.assignment[r.pivots[i]] = static_cast<std::uint8_t>(r.rhs[i] ^ (parity ? 1 : 0));
  }
  return sol;
}

Gf2Residual eliminate_prefix(const Gf2System& system, int pivot_limit) {
  Reduced r = reduce(system, pivot_limit, false);
  Gf2Residual out;
  out.eliminated_rank = static_cast<int>(r.pivots.size());
  for (std::size_t i = r.pivots.size(); i < r.rows.size(); ++i) {
    if (r.rows[i].none() && !r.rhs[i]) continue;
    out.rows.push_back(std::move(r.rows[i]));
    out.rhs.push_back(r.rhs[i]);
  }
  return out;
}

}  // namespace dsqr
