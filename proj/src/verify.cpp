#include "dsqr/verify.hpp"

#include "dsqr/error.hpp"
#include "dsqr/symbol.hpp"

namespace dsqr {

const char* to_string(Orientation o) {
  return o == Orientation::Straight ? "straight" : "transposed";
}

DecodeReport decode_grid(const ModuleGrid& input, Orientation orientation) {
  const ModuleGrid grid = orientation == Orientation::Transposed ? input.transposed() : input;
  DecodeReport report;
  report.orientation = orientation;

  const ModuleGrid tpl = function_pattern_grid();
  for (int r = 0; r < kSymbolSize; ++r) {
    for (int c = 0; c < kSymbolSize; ++c) {
      const CellCoord cell{r, c};
      if (tpl.kind(cell) != CellKind::Function) continue;
      if (grid.dark(cell) != tpl.dark(cell)) {
        throw Error(Stage::FunctionPattern, "function pattern mismatch at " + to_string(cell));
      }
    }
  }

  // Reconcile the two copies: smaller BCH distance wins, ties go to copy 1.
  const FormatRead fr = read_format(grid);
  const auto f1 = bch_decode(apply_format_mask(fr.copy1));
  const auto f2 = bch_decode(apply_format_mask(fr.copy2));
  if (!f1 && !f2) throw Error(Stage::FormatDecode, "neither format copy decodes within 3 bits");
  const bool use2 = !f1 || (f2 && f2->distance < f1->distance);
  const BchDecode& fmt = use2 ? *f2 : *f1;
  const FormatInfo info = FormatInfo::from_info_bits(fmt.info);
  report.format_copy = use2 ? 2 : 1;
  report.format_distance = fmt.distance;
  report.mask = info.mask;
  report.ec = info.ec;
  if (info.ec != EcLevel::L) {
    throw Error(Stage::FormatDecode,
                std::string("error correction level ") + to_string(info.ec) + " is not supported");
  }

  const auto rs = rs_decode(read_codewords(grid, info.mask));
  if (!rs) throw Error(Stage::ReedSolomon, "more than 3 damaged codewords");
  report.corrected_bytes = rs->corrected_positions;
  report.corrected_codewords = rs->codeword;

  const ParsedPayload parsed = parse_payload(BitString::from_bytes(rs->data));
  report.text = parsed.text;
  report.mode = parsed.mode;
  report.declared_length = parsed.declared_length;
  return report;
}

namespace {

DecodeReport decode_side(const ModuleGrid& grid, Orientation o, const char* side,
                         const std::string& expect) {
  DecodeReport rep;
  try {
    rep = decode_grid(grid, o);
  } catch (const Error& e) {
    throw Error(e.stage(), std::string("side ") + side + ": " + e.what());
  }
  if (rep.text != expect) {
    throw Error(Stage::Mismatch, std::string("side ") + side + ": expected \"" + expect +
                                     "\" but decoded \"" + rep.text + "\"");
  }
  return rep;
}

}  // namespace

std::pair<DecodeReport, DecodeReport> verify_double_sided(const ModuleGrid& grid,
                                                          const std::string& expect_a,
                                                          const std::string& expect_b) {
  DecodeReport a = decode_side(grid, Orientation::Straight, "A", expect_a);
  DecodeReport b = decode_side(grid, Orientation::Transposed, "B", expect_b);
  return {std::move(a), std::move(b)};
}

}  // namespace dsqr
