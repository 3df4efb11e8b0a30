#include "dsqr/format.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "dsqr/error.hpp"

namespace dsqr {

const char* to_string(EcLevel ec) {
  switch (ec) {
    case EcLevel::L: return "L";
    case EcLevel::M: return "M";
    case EcLevel::Q: return "Q";
    case EcLevel::H: return "H";
  }
  return "?";
}

int ec_bits(EcLevel ec) {
  switch (ec) {
    case EcLevel::L: return 0b01;
    case EcLevel::M: return 0b00;
    case EcLevel::Q: return 0b11;
    case EcLevel::H: return 0b10;
  }
  return 0;
}

EcLevel ec_from_bits(int bits) {
  switch (bits & 3) {
    case 0b01: return EcLevel::L;
    case 0b00: return EcLevel::M;
    case 0b11: return EcLevel::Q;
    default: return EcLevel::H;
  }
}

std::uint8_t FormatInfo::info_bits() const {
  return static_cast<std::uint8_t>((ec_bits(ec) << 3) | mask.value());
}

FormatInfo FormatInfo::from_info_bits(std::uint8_t info) {
  return {ec_from_bits(info >> 3), MaskId{info & 7}};
}

std::uint16_t bch_encode(std::uint8_t info) {
  if (info > 31) throw std::invalid_argument("format info must fit in 5 bits");
  unsigned rem = info;
  for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * kBchGenerator);
  return static_cast<std::uint16_t>((info << 10) | (rem & 0x3FF));
}

std::optional<BchDecode> bch_decode(std::uint16_t word) {
  static const auto codewords = [] {
    std::array<std::uint16_t, 32> cw{};
    for (std::uint8_t info = 0; info < 32; ++info) cw[info] = bch_encode(info);
    return cw;
  }();
  BchDecode best{0, 16};
  for (std::uint8_t info = 0; info < 32; ++info) {
    const int d = std::popcount(static_cast<unsigned>(codewords[info] ^ (word & 0x7FFF)));
    if (d < best.distance) best = {info, d};
  }
  if (best.distance > 3) return std::nullopt;
  return best;
}

std::uint16_t apply_format_mask(std::uint16_t word) {
  return static_cast<std::uint16_t>(word ^ kFormatMask);
}

std::uint16_t reverse_bits15(std::uint16_t word) {
  std::uint16_t out = 0;
  for (int i = 0; i < 15; ++i) {
    if ((word >> i) & 1) out |= static_cast<std::uint16_t>(1u << (14 - i));
  }
  return out;
}

std::string format_bits_string(std::uint16_t word) {
  std::string s;
  for (int i = 14; i >= 0; --i) s.push_back(((word >> i) & 1) ? '1' : '0');
  return s;
}

std::uint16_t parse_format_bits(std::string_view text) {
  if (text.size() != 15) throw std::invalid_argument("format string must have 15 bits");
  std::uint16_t w = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("format string must be binary");
    w = static_cast<std::uint16_t>((w << 1) | (ch == '1'));
  }
  return w;
}

std::uint16_t encode_format(const FormatInfo& info) {
  return apply_format_mask(bch_encode(info.info_bits()));
}

const char* to_string(FormatDomain d) {
  return d == FormatDomain::Raw ? "raw" : "on-grid";
}

std::optional<BchDecode> decode_in_domain(std::uint16_t word, FormatDomain d) {
  return bch_decode(d == FormatDomain::OnGrid ? apply_format_mask(word) : word);
}

const FlipEdge* FlipGraph::edge(std::uint8_t from, std::uint8_t to) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(from, to),
                             [](const FlipEdge& e, const std::pair<std::uint8_t, std::uint8_t>& key) {
                               return std::tie(e.from, e.to) < std::tie(key.first, key.second);
                             });
  if (it == edges.end() || it->from != from || it->to != to) return nullptr;
  return &*it;
}

std::size_t FlipGraph::undirected_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const FlipEdge& e) { return e.from <= e.to; }));
}

FlipGraph build_flip_graph(FormatDomain domain) {
  FlipGraph g;
  g.domain = domain;
  const std::uint16_t offset = domain == FormatDomain::OnGrid ? kFormatMask : 0;
  for (std::uint8_t info = 0; info < 32; ++info) {
    g.nodes[info] = static_cast<std::uint16_t>(bch_encode(info) ^ offset);
  }

  std::map<std::pair<std::uint8_t, std::uint8_t>, FlipEdge> best;
  std::set<std::uint16_t> distinct;
  for (std::uint8_t a = 0; a < 32; ++a) {
    for (std::uint16_t w = 0; w < (1u << 15); ++w) {
      const int da = std::popcount(static_cast<unsigned>(w ^ g.nodes[a]));
      if (da > 3) continue;
      ++g.ball_candidates;
      if (da == 3) ++g.shell_candidates;
      distinct.insert(w);
      const auto rev = decode_in_domain(reverse_bits15(w), domain);
      if (!rev) continue;
      const auto key = std::make_pair(a, rev->info);
      FlipEdge cand{a, rev->info, w, da, rev->distance, 1};
      auto [it, inserted] = best.try_emplace(key, cand);
      if (inserted) continue;
      FlipEdge& cur = it->second;
      ++cur.witness_count;
      if (cand.total_distance() < cur.total_distance() ||
          (cand.total_distance() == cur.total_distance() && w < cur.witness)) {
        cand.witness_count = cur.witness_count;
        cur = cand;
      }
    }
  }
  g.distinct_candidates = distinct.size();
  for (auto& [key, e] : best) g.edges.push_back(e);
  return g;
}

std::string to_dot(const FlipGraph& graph) {
  auto label = [](std::uint8_t info) {
    std::string s;
    for (int i = 4; i >= 0; --i) s.push_back(((info >> i) & 1) ? '1' : '0');
    return s;
  };
  std::ostringstream out;
  out << "graph flip_" << (graph.domain == FormatDomain::Raw ? "raw" : "grid") << " {\n";
  for (std::uint8_t info = 0; info < 32; ++info) {
    out << "  n" << label(info) << " [label=\"" << label(info) << "\"];\n";
  }
  for (const FlipEdge& e : graph.edges) {
    if (e.from > e.to) continue;
    out << "  n" << label(e.from) << " -- n" << label(e.to) << " [label=\""
        << format_bits_string(e.witness) << " (" << e.from_distance << "," << e.to_distance
        << ")\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::vector<MirrorFormat> admissible_mirror_formats(FormatDomain domain, bool one_per_mask_pair) {
  std::vector<MirrorFormat> out;
  for (std::uint16_t w = 0; w < (1u << 15); ++w) {
    if (((w >> 7) & 1) == 0) continue;
    const auto straight = decode_in_domain(w, domain);
    if (!straight) continue;
    const auto transposed = decode_in_domain(reverse_bits15(w), domain);
    if (!transposed) continue;
    const FormatInfo fs = FormatInfo::from_info_bits(straight->info);
    const FormatInfo ft = FormatInfo::from_info_bits(transposed->info);
    if (fs.ec != EcLevel::L || ft.ec != EcLevel::L) continue;
    if (!is_symmetric(fs.mask) || !is_symmetric(ft.mask)) continue;
    out.push_back({domain, w, fs, ft, straight->distance, transposed->distance});
  }
  auto rank = [](const MirrorFormat& m) {
    return std::make_tuple(m.total_distance(), m.self_loop() ? 0 : 1, m.straight.mask.value(),
                           std::max(m.straight_distance, m.transposed_distance),
                           m.transposed.mask.value(), m.witness);
  };
  std::sort(out.begin(), out.end(),
            [&](const MirrorFormat& a, const MirrorFormat& b) { return rank(a) < rank(b); });
  if (one_per_mask_pair) {
    std::set<std::pair<int, int>> seen;
    std::erase_if(out, [&](const MirrorFormat& m) {
      return !seen.insert({m.straight.mask.value(), m.transposed.mask.value()}).second;
    });
  }
  return out;
}

MirrorFormat select_mirror_format(FormatDomain domain) {
  auto all = admissible_mirror_formats(domain);
  if (all.empty()) {
    throw Error(Stage::FormatSelection,
                std::string("no palindrome-compatible L-level format witness in the ") +
                    to_string(domain) + " domain");
  }
  return all.front();
}

}  // namespace dsqr
