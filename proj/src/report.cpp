#include "dsqr/report.hpp"

namespace dsqr {

using nlohmann::json;

json to_json(const MirrorFormat& fmt) {
  return {
      {"domain", to_string(fmt.domain)},
      {"witness", format_bits_string(fmt.witness)},
      {"straight", {{"ec", to_string(fmt.straight.ec)}, {"mask", fmt.straight.mask.value()},
                    {"distance", fmt.straight_distance}}},
      {"transposed", {{"ec", to_string(fmt.transposed.ec)}, {"mask", fmt.transposed.mask.value()},
                      {"distance", fmt.transposed_distance}}},
  };
}

json to_json(const ErrorAllocation& alloc) {
  return {{"side_a", alloc.side_a}, {"side_b", alloc.side_b}};
}

json to_json(const ConstructionReport& r) {
  json j = {
      {"method", r.method},
      {"text_a", r.text_a},
      {"text_b", r.text_b},
      {"format_witness", format_bits_string(r.format.witness)},
      {"format", to_json(r.format)},
      {"mask_id", r.format.straight.mask.value()},
      {"mask_id_transposed", r.format.transposed.mask.value()},
      {"payload_bits", {r.payload_bits_a, r.payload_bits_b}},
      {"allocation", to_json(r.allocation)},
      {"free_vars", r.free_vars},
      {"rank", r.rank},
      {"side_a_corrections", r.side_a_corrections},
      {"side_b_corrections", r.side_b_corrections},
      {"format_distance", {r.format_distance_a, r.format_distance_b}},
      {"trials", r.trials},
      {"allocations_tried", r.allocations_tried},
      {"formats_tried", r.formats_tried},
  };
  if (r.uncapped_bytes_a >= 0) j["uncapped_allocation"] = {r.uncapped_bytes_a, r.uncapped_bytes_b};
  if (r.best_brute_damage_b >= 0) j["best_brute_damage_b"] = r.best_brute_damage_b;
  return j;
}

json to_json(const DecodeReport& r) {
  return {
      {"orientation", to_string(r.orientation)},
      {"text", r.text},
      {"mode", to_string(r.mode)},
      {"declared_length", r.declared_length},
      {"mask_id", r.mask.value()},
      {"ec_level", to_string(r.ec)},
      {"format_distance", r.format_distance},
      {"format_copy", r.format_copy},
      {"corrected_bytes", r.corrected_bytes},
  };
}

json error_json(const Error& e) {
  return {{"stage", to_string(e.stage())}, {"message", e.what()}};
}

}  // namespace dsqr
