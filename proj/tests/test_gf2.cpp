#include <random>

#include "doctest.h"
#include "dsqr/gf2.hpp"
#include "oracles.hpp"

using namespace dsqr;

namespace {

struct Random {
  std::vector<std::uint32_t> rows;
  std::vector<int> rhs;
  Gf2System sys;
};

Random make(std::mt19937_64& rng, int n, int m, double density) {
  Random r{{}, {}, Gf2System(n)};
  std::bernoulli_distribution bit(density);
  for (int i = 0; i < m; ++i) {
    std::uint32_t row = 0;
    BitVector v = r.sys.blank_row();
    for (int j = 0; j < n; ++j) {
      if (bit(rng)) {
        row |= 1u << j;
        v.set(static_cast<std::size_t>(j));
      }
    }
    const int b = static_cast<int>(rng() & 1);
    r.rows.push_back(row);
    r.rhs.push_back(b);
    r.sys.add(v, b != 0);
  }
  return r;
}

}  // namespace

TEST_CASE("solver agrees with exhaustive enumeration on 600 systems") {
  std::mt19937_64 rng(2024);
  int consistent = 0;
  for (int t = 0; t < 600; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const int m = static_cast<int>(rng() % (n + 6));
    const double density = 0.15 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
    const Random r = make(rng, n, m, density);
    const std::uint64_t solutions = oracle::count_solutions(r.rows, r.rhs, n);
    for (const auto& policy : {FreeBitPolicy::zeros(), FreeBitPolicy::random(static_cast<std::uint64_t>(t))}) {
      const auto sol = solve_gf2(r.sys, policy);
      CHECK(sol.has_value() == (solutions > 0));
      if (!sol) continue;
      CHECK(r.sys.satisfied_by(sol->assignment));
      CHECK((std::uint64_t{1} << sol->free_variable_count()) == solutions);
      CHECK(sol->rank() + sol->free_variable_count() == n);
    }
    consistent += solutions > 0;
  }
  CHECK(consistent > 100);
  CHECK(consistent < 600);
}

TEST_CASE("preferred values are kept on free variables") {
  Gf2System sys(4);
  BitVector row = sys.blank_row();
  row.set(0);
  row.set(1);
  sys.add(row, true);  // x0 + x1 = 1
  const auto sol = solve_gf2(sys, FreeBitPolicy::prefer({0, 0, 1, 1}));
  REQUIRE(sol);
  CHECK(sol->assignment[2] == 1);
  CHECK(sol->assignment[3] == 1);
  CHECK((sol->assignment[0] ^ sol->assignment[1]) == 1);
  CHECK(sol->free_variable_count() == 3);
}

TEST_CASE("empty and contradictory systems") {
  Gf2System empty(3);
  const auto s = solve_gf2(empty, FreeBitPolicy::zeros());
  REQUIRE(s);
  CHECK(s->free_variable_count() == 3);
  Gf2System bad(2);
  bad.add(bad.blank_row(), true);
  CHECK(!solve_gf2(bad, FreeBitPolicy::zeros()));
}

TEST_CASE("prefix elimination leaves an equivalent residual") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 4 + static_cast<int>(rng() % 14);
    const int limit = static_cast<int>(rng() % n);
    const Random r = make(rng, n, static_cast<int>(rng() % (n + 4)), 0.4);
    const Gf2Residual res = eliminate_prefix(r.sys, limit);
    // The residual only mentions columns >= limit, and the full system is
    // consistent iff the residual is.
    std::vector<std::uint32_t> rows;
    std::vector<int> rhs;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      std::uint32_t row = 0;
      for (int j = 0; j < n; ++j) {
        if (res.rows[i][static_cast<std::size_t>(j)]) {
          CHECK(j >= limit);
          row |= 1u << j;
        }
      }
      rows.push_back(row);
      rhs.push_back(res.rhs[i]);
    }
    const bool full = oracle::count_solutions(r.rows, r.rhs, n) > 0;
    const bool residual = oracle::count_solutions(rows, rhs, n) > 0;
    CHECK(full == residual);
    CHECK(res.eliminated_rank <= limit);
  }
}
