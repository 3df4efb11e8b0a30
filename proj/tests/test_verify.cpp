#include <random>

#include "doctest.h"
#include "dsqr/masks.hpp"
#include "dsqr/mirror.hpp"
#include "dsqr/symbol.hpp"
#include "dsqr/verify.hpp"
#include "oracles.hpp"

using namespace dsqr;

TEST_CASE("single-sided HELLO decodes cleanly") {
  const ModuleGrid g = encode_text("HELLO", Mode::Alphanumeric, MaskId(0));
  const DecodeReport r = decode_grid(g, Orientation::Straight);
  CHECK(r.text == "HELLO");
  CHECK(r.corrected_bytes.empty());
  CHECK(r.format_distance == 0);
  CHECK(r.mask == MaskId(0));
  CHECK(r.ec == EcLevel::L);
}

TEST_CASE("three corrupted codewords are repaired") {
  ModuleGrid g = encode_text("HELLO WORLD", Mode::Alphanumeric, MaskId(3));
  const auto& order = data_placement_order();
  for (int byte : {2, 11, 24}) g.flip(order[8 * byte + 3]);
  const DecodeReport r = decode_grid(g, Orientation::Straight);
  CHECK(r.text == "HELLO WORLD");
  CHECK(r.corrected_bytes == std::vector<int>{2, 11, 24});
  for (int byte : {5, 6, 7, 8}) g.flip(order[8 * byte]);
  CHECK_THROWS_AS(decode_grid(g, Orientation::Straight), Error);
}

TEST_CASE("failures carry distinct stages") {
  auto stage_of = [](const ModuleGrid& g) {
    try {
      decode_grid(g, Orientation::Straight);
    } catch (const Error& e) {
      return e.stage();
    }
    return Stage::Input;
  };
  ModuleGrid g = encode_text("HELLO", Mode::Alphanumeric, MaskId(0));
  ModuleGrid broken = g;
  broken.flip({0, 0});
  CHECK(stage_of(broken) == Stage::FunctionPattern);

  ModuleGrid fmt = g;
  for (int bit = 0; bit < 5; ++bit) {
    fmt.flip(format_positions().copy1_bit(bit));
    fmt.flip(format_positions().copy2_bit(bit));
  }
  CHECK(stage_of(fmt) == Stage::FormatDecode);

  ModuleGrid m = g;
  write_format(m, encode_format({EcLevel::M, MaskId(0)}));
  CHECK(stage_of(m) == Stage::FormatDecode);

  ModuleGrid light = function_pattern_grid();
  write_format(light, encode_format({EcLevel::L, MaskId(0)}));
  const Stage s = stage_of(light);
  CHECK((s == Stage::ReedSolomon || s == Stage::PayloadParse));
}

TEST_CASE("all-light data never decodes silently") {
  for (int m = 0; m < 8; ++m) {
    ModuleGrid light = function_pattern_grid();
    write_format(light, encode_format({EcLevel::L, MaskId(m)}));
    CHECK_THROWS_AS(decode_grid(light, Orientation::Straight), Error);
  }
}

TEST_CASE("format copy reconciliation prefers the closer copy") {
  ModuleGrid g = encode_text("ABC", Mode::Alphanumeric, MaskId(5));
  g.flip(format_positions().copy1_bit(2));
  g.flip(format_positions().copy1_bit(9));
  const DecodeReport r = decode_grid(g, Orientation::Straight);
  CHECK(r.format_copy == 2);
  CHECK(r.format_distance == 0);
  g.flip(format_positions().copy2_bit(0));
  g.flip(format_positions().copy2_bit(1));
  const DecodeReport tie = decode_grid(g, Orientation::Straight);
  CHECK(tie.format_copy == 1);
  CHECK(tie.format_distance == 2);
}

TEST_CASE("encode/decode identity on 200 random messages per symmetric mask") {
  std::mt19937_64 rng(31);
  for (MaskId m : symmetric_masks()) {
    for (int t = 0; t < 200; ++t) {
      const bool byte = t % 2 == 1;
      const int n = static_cast<int>(rng() % (byte ? 18 : 26));
      std::string s;
      for (int i = 0; i < n; ++i) {
        s += byte ? static_cast<char>(32 + rng() % 95) : oracle::kAlnum[rng() % 45];
      }
      const Mode mode = byte ? Mode::Byte : Mode::Alphanumeric;
      const ModuleGrid g = encode_text(s, mode, m);
      const DecodeReport r = decode_grid(g, Orientation::Straight);
      CHECK(r.text == s);
      CHECK(r.mode == mode);
      CHECK(r.mask == m);
      CHECK(r.corrected_bytes.empty());
    }
  }
}

TEST_CASE("decode is orientation-correct") {
  const ConstructionResult c = construct_double_sided("HARRY", "BOVIK");
  const DecodeReport x = decode_grid(c.grid.transposed(), Orientation::Straight);
  const DecodeReport y = decode_grid(c.grid, Orientation::Transposed);
  CHECK(x.text == y.text);
  CHECK(x.corrected_bytes == y.corrected_bytes);
  CHECK(x.format_distance == y.format_distance);
}

TEST_CASE("self-mirror grid reads the same both ways") {
  const ConstructionResult c = construct_double_sided("12345", "12345");
  const auto [a, b] = verify_double_sided(c.grid, "12345", "12345");
  CHECK(a.text == b.text);
  CHECK(a.corrected_bytes == b.corrected_bytes);
  CHECK(a.mask == b.mask);
}

TEST_CASE("single-sided grid checked as double-sided names side B") {
  const ModuleGrid g = encode_text("HELLO", Mode::Alphanumeric, MaskId(3));
  try {
    verify_double_sided(g, "HELLO", "WORLD");
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("side B") != std::string::npos);
  }
  try {
    verify_double_sided(g, "HELP", "WORLD");
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(e.stage() == Stage::Mismatch);
    CHECK(std::string(e.what()).find("side A") != std::string::npos);
  }
}

TEST_CASE("single-cell perturbations are accepted or rejected, never crash") {
  const ConstructionResult c = construct_double_sided("HARRY", "BOVIK");
  int accepted = 0;
  for (const CellCoord& cell : data_placement_order()) {
    ModuleGrid g = c.grid;
    g.flip(cell);
    try {
      verify_double_sided(g, "HARRY", "BOVIK");
      ++accepted;
    } catch (const Error&) {
    }
  }
  CHECK(accepted > 0);
  MESSAGE(accepted << " of 208 single-cell flips still verify");
}
