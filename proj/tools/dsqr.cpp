// dsqr: single- and double-sided Version 1-L QR codes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsqr/codec.hpp"
#include "dsqr/error.hpp"
#include "dsqr/format.hpp"
#include "dsqr/grid.hpp"
#include "dsqr/masks.hpp"
#include "dsqr/mirror.hpp"
#include "dsqr/render.hpp"
#include "dsqr/report.hpp"
#include "dsqr/symbol.hpp"
#include "dsqr/verify.hpp"

using namespace dsqr;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RenderOptions {
  std::string output;
  int scale = 1;
  int quiet = 4;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Stage::Input, "cannot open " + path + " for writing");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Stage::Input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output format follows the extension: .svg, .txt (ASCII art), otherwise PBM.
void write_grid(const ModuleGrid& grid, const RenderOptions& ro) {
  if (ends_with(ro.output, ".svg")) {
    write_text(ro.output, to_svg(grid, ro.quiet));
  } else if (ends_with(ro.output, ".txt")) {
    write_text(ro.output, to_ascii(grid, ro.quiet));
  } else {
    write_text(ro.output, to_pbm(grid, ro.scale, ro.quiet));
  }
}

void add_render_options(CLI::App* cmd, RenderOptions& ro) {
  cmd->add_option("-o,--output", ro.output, "Output file (.pbm, .svg or .txt; - for stdout)")
      ->required();
  cmd->add_option("--scale", ro.scale, "Pixels per module (PBM only)")
      ->check(CLI::Range(1, 100));
  cmd->add_option("--quiet", ro.quiet, "Quiet zone in modules")->check(CLI::Range(0, 40));
}

Mode parse_mode(const std::string& name, const std::string& text) {
  if (name == "alnum") return Mode::Alphanumeric;
  if (name == "byte") return Mode::Byte;
  if (name == "numeric") return Mode::Numeric;
  return choose_mode(text);
}

std::string hex_bytes(const CodewordBlock& cw) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < cw.size(); ++i) {
    if (i) s += ' ';
    s += digits[cw[i] >> 4];
    s += digits[cw[i] & 15];
  }
  return s;
}

int run_encode(const std::string& text, const std::string& mode_name, int mask,
               const RenderOptions& ro) {
  const Mode mode = parse_mode(mode_name, text);
  write_grid(encode_text(text, mode, MaskId(mask)), ro);
  return 0;
}

struct MirrorArgs {
  std::string text_a;
  std::string text_b;
  std::string method = "analytic";
  std::string fill = "pad";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string report;
  bool single_format = false;
};

int run_mirror(const MirrorArgs& args, const RenderOptions& ro, bool json_errors) {
  ConstructionOptions opt;
  opt.method = args.method == "brute"  ? Method::Brute
               : args.method == "auto" ? Method::Auto
                                       : Method::Analytic;
  opt.fill = args.fill == "zeros"    ? FillPolicy::Zeros
             : args.fill == "random" ? FillPolicy::Random
                                     : FillPolicy::PadPattern;
  opt.trials = args.trials;
  opt.seed = args.seed;
  opt.try_all_formats = !args.single_format;
  try {
    const ConstructionResult result = construct_double_sided(args.text_a, args.text_b, opt);
    write_grid(result.grid, ro);
    if (!args.report.empty()) write_text(args.report, to_json(result.report).dump(2) + "\n");
    return 0;
  } catch (const ConstructionFailure& e) {
    if (!args.report.empty()) {
      json j = to_json(e.report());
      j["error"] = error_json(e);
      write_text(args.report, j.dump(2) + "\n");
    }
    if (json_errors) {
      json j = error_json(e);
      j["report"] = to_json(e.report());
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "dsqr: " << to_string(e.stage()) << ": " << e.what() << "\n";
    }
    return kExitFailure;
  }
}

int run_flipgraph(const std::string& domain_name, const std::string& dot_path) {
  const FormatDomain domain = domain_name == "raw" ? FormatDomain::Raw : FormatDomain::OnGrid;
  const FlipGraph g = build_flip_graph(domain);
  if (!dot_path.empty()) write_text(dot_path, to_dot(g));
  json j = {
      {"domain", to_string(domain)},
      {"nodes", g.nodes.size()},
      {"edges", g.undirected_edge_count()},
      {"shell_candidates", g.shell_candidates},
      {"ball_candidates", g.ball_candidates},
      {"distinct_candidates", g.distinct_candidates},
  };
  const auto admissible = admissible_mirror_formats(domain);
  j["admissible_witnesses"] = admissible.size();
  if (!admissible.empty()) j["selected"] = to_json(admissible.front());
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct SideDecode {
  json report;
  std::optional<Stage> failed;
};

SideDecode decode_side(const ModuleGrid& grid, Orientation o) {
  try {
    return {to_json(decode_grid(grid, o)), std::nullopt};
  } catch (const Error& e) {
    return {{{"orientation", to_string(o)}, {"error", error_json(e)}}, e.stage()};
  }
}

int run_verify(const std::string& path, const std::string* expect_a, const std::string* expect_b,
               bool as_json) {
  const ModuleGrid grid = parse_pbm(read_text(path));
  const SideDecode straight = decode_side(grid, Orientation::Straight);
  const SideDecode transposed = decode_side(grid, Orientation::Transposed);

  std::string failure;
  Stage stage = Stage::Mismatch;
  auto check = [&](const SideDecode& d, const std::string* expect, const char* side) {
    if (!failure.empty() || !expect) return;
    if (d.failed) {
      failure = std::string("side ") + side + ": " + d.report["error"]["message"].get<std::string>();
      stage = *d.failed;
    } else if (d.report["text"] != *expect) {
      failure = std::string("side ") + side + ": expected \"" + *expect + "\" but decoded \"" +
                d.report["text"].get<std::string>() + "\"";
    }
  };
  check(straight, expect_a, "A");
  check(transposed, expect_b, "B");

  if (as_json) {
    json out = {{"straight", straight.report}, {"transposed", transposed.report}, {"ok", failure.empty()}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const json* rep : {&straight.report, &transposed.report}) {
      std::cout << (*rep)["orientation"].get<std::string>() << ": ";
      if (rep->contains("error")) {
        std::cout << "error (" << (*rep)["error"]["stage"].get<std::string>() << ") "
                  << (*rep)["error"]["message"].get<std::string>() << "\n";
      } else {
        std::cout << "\"" << (*rep)["text"].get<std::string>() << "\" mask "
                  << (*rep)["mask_id"] << " format distance " << (*rep)["format_distance"]
                  << " corrected " << (*rep)["corrected_bytes"].dump() << "\n";
      }
    }
  }
  if (failure.empty()) return 0;
  throw Error(stage, failure);
}

json inspect_side(const ModuleGrid& input, Orientation o) {
  const ModuleGrid grid = o == Orientation::Transposed ? input.transposed() : input;
  const FormatRead fr = read_format(grid);
  json j = {{"orientation", to_string(o)},
            {"format_copy1", format_bits_string(fr.copy1)},
            {"format_copy2", format_bits_string(fr.copy2)}};
  for (const auto& [name, word] : {std::pair{"copy1", fr.copy1}, std::pair{"copy2", fr.copy2}}) {
    if (const auto d = bch_decode(apply_format_mask(word))) {
      const FormatInfo info = FormatInfo::from_info_bits(d->info);
      j[std::string("decoded_") + name] = {
          {"ec", to_string(info.ec)}, {"mask", info.mask.value()}, {"distance", d->distance}};
      if (!j.contains("codewords")) j["codewords"] = hex_bytes(read_codewords(grid, info.mask));
    } else {
      j[std::string("decoded_") + name] = nullptr;
    }
  }
  j["decode"] = decode_side(input, o).report;
  return j;
}

int run_inspect(const std::string& path) {
  const ModuleGrid grid = parse_pbm(read_text(path));
  json j = {{"straight", inspect_side(grid, Orientation::Straight)},
            {"transposed", inspect_side(grid, Orientation::Transposed)}};
  int len[2] = {0, 0};
  for (int s = 0; s < 2; ++s) {
    const json& dec = j[s == 0 ? "straight" : "transposed"]["decode"];
    if (!dec.contains("text")) continue;
    const Mode mode = dec["mode"] == "numeric" ? Mode::Numeric
                      : dec["mode"] == "byte"  ? Mode::Byte
                                               : Mode::Alphanumeric;
    len[s] = segment_bit_length(mode, dec["declared_length"].get<int>());
  }
  const OverlapPartition part = overlap_partition(len[0], len[1]);
  json zones = json::object();
  for (int z = 0; z < kZoneCount; ++z) {
    zones[std::string(1, zone_label(static_cast<Zone>(z)))] = part.zone(static_cast<Zone>(z)).size();
  }
  j["zones"] = {{"payload_bits", {len[0], len[1]}}, {"counts", zones}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single- and double-sided Version 1-L QR codes"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output and diagnostics");

  RenderOptions enc_ro;
  std::string enc_text, enc_mode = "auto";
  int enc_mask = 0;
  auto* enc = app.add_subcommand("encode", "Single-sided Version 1-L symbol");
  enc->add_option("text", enc_text, "Message")->required();
  enc->add_option("--mode", enc_mode, "Encoding mode")
      ->check(CLI::IsMember({"auto", "alnum", "byte", "numeric"}));
  enc->add_option("--mask", enc_mask, "Mask pattern")->check(CLI::Range(0, 7));
  add_render_options(enc, enc_ro);

  RenderOptions mir_ro;
  MirrorArgs mir;
  auto* mirror = app.add_subcommand("mirror", "Double-sided symbol: A straight, B transposed");
  mirror->add_option("textA", mir.text_a, "Message read straight")->required();
  mirror->add_option("textB", mir.text_b, "Message read transposed")->required();
  mirror->add_option("--method", mir.method, "Construction method")
      ->check(CLI::IsMember({"analytic", "brute", "auto"}));
  mirror->add_option("--fill", mir.fill, "Free-variable fill")
      ->check(CLI::IsMember({"pad", "zeros", "random"}));
  mirror->add_option("--trials", mir.trials, "Brute-force trial budget");
  mirror->add_option("--seed", mir.seed, "Random seed");
  mirror->add_option("--report", mir.report, "Write the construction report as JSON");
  mirror->add_flag("--single-format", mir.single_format,
                   "Use only the preferred format witness");
  add_render_options(mirror, mir_ro);

  std::string fg_domain = "grid", fg_dot;
  auto* flip = app.add_subcommand("flipgraph", "Format flip-graph summary and DOT export");
  flip->add_option("--domain", fg_domain, "Format word domain")
      ->check(CLI::IsMember({"grid", "raw"}));
  flip->add_option("--dot", fg_dot, "Write the graph in DOT format");

  std::string ver_path, expect_a, expect_b;
  auto* ver = app.add_subcommand("verify", "Decode a PBM in both orientations");
  ver->add_option("input", ver_path, "PBM image")->required();
  auto* opt_a = ver->add_option("--expect-a", expect_a, "Expected straight text");
  auto* opt_b = ver->add_option("--expect-b", expect_b, "Expected transposed text");

  std::string ins_path;
  auto* ins = app.add_subcommand("inspect", "Dump format words, codewords and zones");
  ins->add_option("input", ins_path, "PBM image")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*enc) return run_encode(enc_text, enc_mode, enc_mask, enc_ro);
    if (*mirror) return run_mirror(mir, mir_ro, as_json);
    if (*flip) return run_flipgraph(fg_domain, fg_dot);
    if (*ver) {
      return run_verify(ver_path, *opt_a ? &expect_a : nullptr, *opt_b ? &expect_b : nullptr,
                        as_json);
    }
    if (*ins) return run_inspect(ins_path);
  } catch (const Error& e) {
    if (as_json) {
      std::cerr << error_json(e).dump() << "\n";
    } else {
      std::cerr << "dsqr: " << to_string(e.stage()) << ": " << e.what() << "\n";
    }
    return e.stage() == Stage::Input ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "dsqr: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
