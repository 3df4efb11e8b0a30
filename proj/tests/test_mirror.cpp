#include <algorithm>
#include <random>
#include <optional>
#include <set>

#include "doctest.h"
#include "dsqr/codec.hpp"
#include "dsqr/masks.hpp"
#include "dsqr/mirror.hpp"
#include "dsqr/symbol.hpp"
#include "oracles.hpp"

using namespace dsqr;

namespace {

BitString alnum(const std::string& s) { return encode_segment({Mode::Alphanumeric, s}); }

std::string random_alnum(std::mt19937_64& rng, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += oracle::kAlnum[rng() % 45];
  return s;
}

// Every corrected byte lies inside the allocation of its side.
void check_corrections(const ConstructionReport& r) {
  for (int b : r.side_a_corrections) CHECK(r.allocation.contains(Side::A, b));
  for (int b : r.side_b_corrections) CHECK(r.allocation.contains(Side::B, b));
  CHECK(r.side_a_corrections.size() <= 3);
  CHECK(r.side_b_corrections.size() <= 3);
  CHECK(r.format_distance_a <= 3);
  CHECK(r.format_distance_b <= 3);
}

}  // namespace

TEST_CASE("same-mode indicators conflict in exactly 2 cells") {
  const auto c = pinned_conflicts(alnum("HARRY"), alnum("BOVIK"), MaskId(3), MaskId(3));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == CellCoord{20, 19});
  CHECK(c[1] == CellCoord{19, 20});
  CHECK(pinned_conflicts(alnum("HELLO"), alnum("HELLO"), MaskId(3), MaskId(3)).size() == 2);
  // Numeric 0001 is unchanged when its middle bits swap.
  const BitString n = encode_segment({Mode::Numeric, "12345"});
  CHECK(pinned_conflicts(n, n, MaskId(3), MaskId(3)).empty());
}

TEST_CASE("constraint system rows and solutions") {
  const MirrorFormat fmt = select_mirror_format();
  const BitString a = alnum("HARRY"), b = alnum("BOVIK");
  const ErrorAllocation alloc{{}, {0}};
  const LinearSystem sys = build_constraint_system(a, b, fmt, alloc);
  CHECK(sys.equations.variables() == kDataCells + 8);
  CHECK(sys.equations.size() == 41 + 41 + 56 + 56);
  CHECK(sys.error_variable(Side::B, 3) == kDataCells + 3);
  CHECK(sys.error_variable(Side::A, 3) == -1);

  // Allocating a parity byte drops its 8 rows instead.
  const LinearSystem sys2 = build_constraint_system(a, b, fmt, {{20}, {}});
  CHECK(sys2.equations.size() == 41 + 41 + 48 + 56);
  CHECK(sys2.equations.variables() == kDataCells);

  const auto sol = solve_gf2(sys, FreeBitPolicy::zeros());
  REQUIRE(sol);
  CHECK(sys.equations.satisfied_by(sol->assignment));

  // Physical consistency: side B's reader sees the shared cells.
  const ModuleGrid g = materialize(sol->cells, fmt.witness);
  const CodewordBlock read_b = read_codewords(g.transposed(), fmt.transposed.mask);
  const BitString bits_b = BitString::from_bytes(read_b);
  const auto rs = rs_decode(read_b);
  REQUIRE(rs);
  for (int p : rs->corrected_positions) CHECK(alloc.contains(Side::B, p));
  const BitString logical_b = BitString::from_bytes(rs->codeword);
  CHECK(logical_b.prefix(41) == b);
  for (int i = 8; i < 208; ++i) CHECK(bits_b[i] == logical_b[i]);
  const CodewordBlock read_a = read_codewords(g, fmt.straight.mask);
  const auto s = rs_syndromes(read_a);
  CHECK(std::all_of(s.begin(), s.end(), [](std::uint8_t v) { return v == 0; }));
  CHECK(BitString::from_bytes(read_a).prefix(41) == a);
}

TEST_CASE("infeasible allocations have no solution") {
  const MirrorFormat fmt = select_mirror_format();
  const LinearSystem sys = build_constraint_system(alnum("HARRY"), alnum("BOVIK"), fmt, {});
  CHECK(!solve_gf2(sys, FreeBitPolicy::zeros()));
}

TEST_CASE("asymmetric masks and oversize payloads are rejected") {
  MirrorFormat fmt = select_mirror_format();
  fmt.transposed.mask = MaskId(1);
  CHECK_THROWS_AS(build_constraint_system(alnum("A"), alnum("B"), fmt, {}), Error);
  BitString big;
  big.append(0, 20);
  for (int i = 0; i < 8; ++i) big.append(0, 20);
  CHECK_THROWS_AS(build_constraint_system(big, alnum("B"), select_mirror_format(), {}), Error);
}

TEST_CASE("allocation enumeration order and size") {
  AllocationEnumerator none(std::vector<int>{}, std::vector<int>{});
  const auto first = none.next();
  REQUIRE(first);
  CHECK(first->total() == 0);
  CHECK(!none.next());

  AllocationEnumerator one({4}, {7});
  std::vector<ErrorAllocation> seq;
  while (auto a = one.next()) seq.push_back(*a);
  REQUIRE(seq.size() == 4);
  CHECK(seq[0].total() == 0);
  CHECK(seq[1].total() == 1);
  CHECK(seq[2].total() == 1);
  CHECK(seq[3].total() == 2);

  const OverlapPartition part = overlap_partition(57, 74);
  const auto all = enumerate_error_allocations(part);
  const auto na = static_cast<long>(part.conflict_bytes_a().size());
  const auto nb = static_cast<long>(part.conflict_bytes_b().size());
  auto choose = [](long n, long k) {
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  long expected = 0;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) expected += choose(na, i) * choose(nb, j);
  }
  CHECK(static_cast<long>(all.size()) == expected);
  std::set<std::pair<std::vector<int>, std::vector<int>>> unique;
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].side_a.size() <= 3);
    CHECK(all[i].side_b.size() <= 3);
    CHECK(std::is_sorted(all[i].side_a.begin(), all[i].side_a.end()));
    if (i) CHECK(all[i - 1].total() <= all[i].total());
    unique.insert({all[i].side_a, all[i].side_b});
  }
  CHECK(unique.size() == all.size());
}

TEST_CASE("screen agrees with the full solver") {
  std::mt19937_64 rng(77);
  const MirrorFormat fmt = select_mirror_format();
  for (auto [la, lb] : {std::pair{5, 5}, std::pair{8, 11}, std::pair{3, 9}}) {
    const BitString a = alnum(random_alnum(rng, la));
    const BitString b = alnum(random_alnum(rng, lb));
    const OverlapPartition part = overlap_partition(static_cast<int>(a.size()), static_cast<int>(b.size()));
    const AllocationScreen screen(a, b, fmt, part.conflict_bytes_a(), part.conflict_bytes_b());
    const auto all = enumerate_error_allocations(part);
    int feasible = 0;
    for (int t = 0; t < 150; ++t) {
      const ErrorAllocation& alloc = all[rng() % all.size()];
      const bool fast = screen.feasible(alloc);
      const bool full = solve_gf2(build_constraint_system(a, b, fmt, alloc), FreeBitPolicy::zeros()).has_value();
      CHECK(fast == full);
      feasible += full;
    }
    MESSAGE(la << "/" << lb << ": " << feasible << " of 150 sampled allocations feasible");
  }
}

TEST_CASE("first screened allocation is the first solvable one") {
  const MirrorFormat fmt = select_mirror_format();
  const BitString a = alnum("ABCDEFGH"), b = alnum("ABCDEFGHIJK");
  const OverlapPartition part = overlap_partition(static_cast<int>(a.size()), static_cast<int>(b.size()));
  const AllocationScreen screen(a, b, fmt, part.conflict_bytes_a(), part.conflict_bytes_b());
  AllocationEnumerator en(part);
  std::vector<ErrorAllocation> before;
  std::optional<ErrorAllocation> found;
  while (auto alloc = en.next()) {
    if (screen.feasible(*alloc)) {
      found = alloc;
      break;
    }
    before.push_back(*alloc);
  }
  REQUIRE(found);
  const auto sol = solve_gf2(build_constraint_system(a, b, fmt, *found), FreeBitPolicy::zeros());
  REQUIRE(sol);
  CHECK(build_constraint_system(a, b, fmt, *found).equations.satisfied_by(sol->assignment));
  // Every 40th rejected allocation, plus the last ones, really is unsolvable.
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (i % 40 != 0 && i + 5 < before.size()) continue;
    CHECK(!solve_gf2(build_constraint_system(a, b, fmt, before[i]), FreeBitPolicy::zeros()));
  }
}

TEST_CASE("HARRY / BOVIK") {
  const ConstructionResult r = construct_double_sided("HARRY", "BOVIK");
  const auto [a, b] = verify_double_sided(r.grid, "HARRY", "BOVIK");
  CHECK(a.text == "HARRY");
  CHECK(b.text == "BOVIK");
  CHECK(r.report.method == "analytic");
  CHECK(r.report.allocation.total() >= 1);
  check_corrections(r.report);
  CHECK(r.report.side_a_corrections == a.corrected_bytes);
  CHECK(r.report.side_b_corrections == b.corrected_bytes);
}

TEST_CASE("identical numeric messages need no corrections") {
  const ConstructionResult r = construct_double_sided("12345", "12345");
  CHECK(r.report.allocation.total() == 0);
  CHECK(r.report.side_a_corrections.empty());
  CHECK(r.report.side_b_corrections.empty());
  const auto [a, b] = verify_double_sided(r.grid, "12345", "12345");
  CHECK(a.text == b.text);
}

TEST_CASE("identical alphanumeric messages need one sacrificed byte with equal masks") {
  ConstructionOptions opt;
  opt.try_all_formats = false;
  const ConstructionResult r = construct_double_sided("HELLO", "HELLO", opt);
  CHECK(r.report.allocation.total() == 1);
  check_corrections(r.report);
}

TEST_CASE("every allocation is tried before giving up") {
  ConstructionOptions opt;
  opt.try_all_formats = false;
  try {
    construct_double_sided("ABCDEFGHIJK", "ABCDEFGHIJKL", opt);
    FAIL("expected infeasibility");
  } catch (const ConstructionFailure& e) {
    CHECK(e.stage() == Stage::SystemInfeasible);
    const OverlapPartition part = overlap_partition(74, 79);
    CHECK(e.report().allocations_tried == enumerate_error_allocations(part).size());
    CHECK(e.report().formats_tried == 1);
  }
}

TEST_CASE("short pairs always construct and self-verify") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::string a = random_alnum(rng, 1 + static_cast<int>(rng() % 8));
    const std::string b = random_alnum(rng, 1 + static_cast<int>(rng() % 8));
    const ConstructionResult r = construct_double_sided(a, b);
    CHECK_NOTHROW(verify_double_sided(r.grid, a, b));
    check_corrections(r.report);
  }
}

TEST_CASE("mixed modes") {
  const ConstructionResult r = construct_double_sided("2024", "hi!");
  CHECK_NOTHROW(verify_double_sided(r.grid, "2024", "hi!"));
  CHECK_THROWS_AS(construct_double_sided(std::string(18, 'x'), "A"), Error);
}

TEST_CASE("fill policies all produce valid grids") {
  for (FillPolicy f : {FillPolicy::PadPattern, FillPolicy::Zeros, FillPolicy::Random}) {
    ConstructionOptions opt;
    opt.fill = f;
    const ConstructionResult r = construct_double_sided("HARRY", "BOVIK", opt);
    CHECK_NOTHROW(verify_double_sided(r.grid, "HARRY", "BOVIK"));
  }
}

TEST_CASE("brute force is reproducible") {
  const MirrorFormat fmt = select_mirror_format();
  const BruteForceResult x = brute_force_search(alnum("AB"), "AB", alnum("CD"), "CD", fmt, 3000, 42);
  const BruteForceResult y = brute_force_search(alnum("AB"), "AB", alnum("CD"), "CD", fmt, 3000, 42);
  CHECK(x.trials_used == y.trials_used);
  CHECK(x.best_damage_b == y.best_damage_b);
  CHECK(x.grid.has_value() == y.grid.has_value());
  if (x.grid) CHECK(*x.grid == *y.grid);
}

TEST_CASE("brute force on 11-character messages finds nothing in a small budget") {
  const MirrorFormat fmt = select_mirror_format();
  const BruteForceResult r = brute_force_search(alnum("ABCDEFGHIJK"), "ABCDEFGHIJK",
                                                alnum("ZYXWVUTSRQP"), "ZYXWVUTSRQP", fmt, 2000, 1);
  CHECK(!r.grid);
  CHECK(r.trials_used == 2000);
  CHECK(r.best_damage_b > 3);
}

// A found grid is the hoped-for outcome; the search runs unmodified and
// whatever it finds is reported.
TEST_CASE("brute force on 2-character messages, 10^6 trials" * doctest::may_fail()) {
  const MirrorFormat fmt = select_mirror_format();
  const BruteForceResult r = brute_force_search(alnum("AB"), "AB", alnum("CD"), "CD", fmt, 1000000, 1);
  MESSAGE("trials " << r.trials_used << ", best side-B damage " << r.best_damage_b << " bytes");
  CHECK(r.grid.has_value());
}

TEST_CASE("brute-force method reports its budget on failure") {
  ConstructionOptions opt;
  opt.method = Method::Brute;
  opt.trials = 500;
  try {
    construct_double_sided("AB", "CD", opt);
    FAIL("brute force is not expected to succeed in 500 trials");
  } catch (const ConstructionFailure& e) {
    CHECK(e.report().trials == 500);
    CHECK(e.report().best_brute_damage_b > 3);
  }
}
