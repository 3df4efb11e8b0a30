#include "dsqr/mirror.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dsqr/masks.hpp"
#include "dsqr/rscode.hpp"
#include "dsqr/symbol.hpp"

namespace dsqr {

bool ErrorAllocation::contains(Side side, int byte) const {
  const auto& v = side == Side::A ? side_a : side_b;
  return std::find(v.begin(), v.end(), byte) != v.end();
}

std::string ErrorAllocation::to_string() const {
  auto list = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s + "]";
  };
  return "A" + list(side_a) + " B" + list(side_b);
}

int LinearSystem::error_variable(Side side, int bit) const {
  const int byte = bit / 8;
  for (std::size_t g = 0; g < error_bytes.size(); ++g) {
    if (error_bytes[g].first == side && error_bytes[g].second == byte) {
      return kDataCells + 8 * static_cast<int>(g) + bit % 8;
    }
  }
  return -1;
}

namespace {

// Physical variable (side-A placement index) holding side B's bit i.
const std::array<int, kDataCells>& side_b_variables() {
  static const auto table = [] {
    std::array<int, kDataCells> t{};
    const auto& order = data_placement_order();
    for (int i = 0; i < kDataCells; ++i) t[i] = placement_index(transpose_map(order[i]));
    return t;
  }();
  return table;
}

// Mask value each side XORs onto its bit i, in its own frame.
std::array<std::uint8_t, kDataCells> mask_constants(MaskId m) {
  std::array<std::uint8_t, kDataCells> t{};
  const auto& order = data_placement_order();
  for (int i = 0; i < kDataCells; ++i) t[i] = mask_bit(m, order[i]) ? 1 : 0;
  return t;
}

void check_inputs(const BitString& msg_a, const BitString& msg_b, const MirrorFormat& fmt) {
  if (!is_symmetric(fmt.straight.mask) || !is_symmetric(fmt.transposed.mask)) {
    throw Error(Stage::Input, "mirror construction requires transpose-symmetric masks");
  }
  if (msg_a.size() > static_cast<std::size_t>(kPayloadBits) ||
      msg_b.size() > static_cast<std::size_t>(kPayloadBits)) {
    throw Error(Stage::Input, "payload exceeds 152 bits");
  }
}

void check_allocation(const ErrorAllocation& alloc) {
  for (const auto* v : {&alloc.side_a, &alloc.side_b}) {
    for (int byte : *v) {
      if (byte < 0 || byte >= kCodewordBytes) throw Error(Stage::Input, "allocated byte out of range");
    }
  }
}

// With parity_errors set, allocated parity bytes also get error variables
// instead of losing their rows; both forms have the same solutions over the
// cell variables.
LinearSystem build_system(const BitString& msg_a, const BitString& msg_b, const MirrorFormat& fmt,
                          const ErrorAllocation& alloc, bool parity_errors) {
  check_inputs(msg_a, msg_b, fmt);
  check_allocation(alloc);

  LinearSystem sys;
  sys.mask_a = fmt.straight.mask;
  sys.mask_b = fmt.transposed.mask;
  sys.payload_bits_a = static_cast<int>(msg_a.size());
  sys.payload_bits_b = static_cast<int>(msg_b.size());
  sys.allocation = alloc;
  std::sort(sys.allocation.side_a.begin(), sys.allocation.side_a.end());
  std::sort(sys.allocation.side_b.begin(), sys.allocation.side_b.end());

  const int limit = parity_errors ? kCodewordBytes : kDataBytes;
  for (int b : sys.allocation.side_a) {
    if (b < limit) sys.error_bytes.emplace_back(Side::A, b);
  }
  for (int b : sys.allocation.side_b) {
    if (b < limit) sys.error_bytes.emplace_back(Side::B, b);
  }
  sys.equations = Gf2System(kDataCells + 8 * static_cast<int>(sys.error_bytes.size()));

  std::array<std::array<int, kCodewordBytes>, 2> group{};
  for (auto& g : group) g.fill(-1);
  for (std::size_t g = 0; g < sys.error_bytes.size(); ++g) {
    group[sys.error_bytes[g].first == Side::A ? 0 : 1][sys.error_bytes[g].second] = static_cast<int>(g);
  }

  const auto& vb = side_b_variables();
  const std::array<std::array<std::uint8_t, kDataCells>, 2> masks{mask_constants(sys.mask_a),
                                                                   mask_constants(sys.mask_b)};

  // Adds logical bit i of a side to row; returns its mask constant.
  auto term = [&](BitVector& row, int s, int bit) -> bool {
    row.flip(static_cast<std::size_t>(s == 0 ? bit : vb[bit]));
    const int g = group[s][bit / 8];
    if (g >= 0) row.flip(static_cast<std::size_t>(kDataCells + 8 * g + bit % 8));
    return masks[s][bit] != 0;
  };

  for (int s = 0; s < 2; ++s) {
    const BitString& msg = s == 0 ? msg_a : msg_b;
    for (std::size_t i = 0; i < msg.size(); ++i) {
      BitVector row = sys.equations.blank_row();
      const bool m = term(row, s, static_cast<int>(i));
      sys.equations.add(std::move(row), msg[i] != m);
      sys.tags.push_back({s == 0 ? RowOrigin::MessageA : RowOrigin::MessageB, static_cast<int>(i)});
    }
  }

  const ParityMatrix& pm = parity_matrix();
  for (int s = 0; s < 2; ++s) {
    const Side side = s == 0 ? Side::A : Side::B;
    for (int k = 0; k < kParityBits; ++k) {
      const int byte = kDataBytes + k / 8;
      if (!parity_errors && sys.allocation.contains(side, byte)) continue;
      BitVector row = sys.equations.blank_row();
      bool rhs = term(row, s, kPayloadBits + k);
      const auto& deps = pm.row(k);
      for (int j = 0; j < kPayloadBits; ++j) {
        if (deps[j]) rhs ^= term(row, s, j);
      }
      sys.equations.add(std::move(row), rhs);
      sys.tags.push_back({s == 0 ? RowOrigin::ParityA : RowOrigin::ParityB, k});
    }
  }
  return sys;
}

}  // namespace

LinearSystem build_constraint_system(const BitString& msg_a, const BitString& msg_b,
                                     const MirrorFormat& fmt, const ErrorAllocation& alloc) {
  return build_system(msg_a, msg_b, fmt, alloc, false);
}

std::optional<Solution> solve_gf2(const LinearSystem& system, const FreeBitPolicy& policy) {
  auto raw = solve_gf2(system.equations, policy);
  if (!raw) return std::nullopt;
  Solution s;
  s.assignment = std::move(raw->assignment);
  std::copy_n(s.assignment.begin(), kDataCells, s.cells.begin());
  s.rank = raw->rank();
  s.free_variable_count = raw->free_variable_count();
  s.free_variables = std::move(raw->free_columns);
  return s;
}

std::vector<CellCoord> pinned_conflicts(const BitString& msg_a, const BitString& msg_b,
                                        MaskId mask_a, MaskId mask_b) {
  const auto& order = data_placement_order();
  const auto& vb = side_b_variables();
  const auto ma = mask_constants(mask_a);
  const auto mb = mask_constants(mask_b);
  std::vector<CellCoord> out;
  for (std::size_t i = 0; i < msg_b.size(); ++i) {
    const int v = vb[i];
    if (static_cast<std::size_t>(v) >= msg_a.size()) continue;
    const bool phys_a = msg_a[v] != (ma[v] != 0);
    const bool phys_b = msg_b[i] != (mb[i] != 0);
    if (phys_a != phys_b) out.push_back(order[v]);
  }
  std::sort(out.begin(), out.end(), [](CellCoord x, CellCoord y) {
    return placement_index(x) < placement_index(y);
  });
  return out;
}

// ---------------------------------------------------------------------------

AllocationEnumerator::AllocationEnumerator(const OverlapPartition& part, int max_per_side)
    : AllocationEnumerator(part.conflict_bytes_a(), part.conflict_bytes_b(), max_per_side) {}

AllocationEnumerator::AllocationEnumerator(std::vector<int> bytes_a, std::vector<int> bytes_b,
                                           int max_per_side)
    : bytes_a_(std::move(bytes_a)), bytes_b_(std::move(bytes_b)) {
  std::sort(bytes_a_.begin(), bytes_a_.end());
  std::sort(bytes_b_.begin(), bytes_b_.end());
  const int ca = std::min<int>(max_per_side, static_cast<int>(bytes_a_.size()));
  const int cb = std::min<int>(max_per_side, static_cast<int>(bytes_b_.size()));
  for (int na = 0; na <= ca; ++na) {
    for (int nb = 0; nb <= cb; ++nb) splits_.emplace_back(na, nb);
  }
  std::stable_sort(splits_.begin(), splits_.end(), [](auto x, auto y) {
    const auto key = [](std::pair<int, int> p) {
      return std::make_tuple(p.first + p.second, std::max(p.first, p.second), p.first);
    };
    return key(x) < key(y);
  });
}

bool AllocationEnumerator::start_split() {
  if (split_ >= splits_.size()) return false;
  idx_a_.resize(splits_[split_].first);
  idx_b_.resize(splits_[split_].second);
  for (std::size_t i = 0; i < idx_a_.size(); ++i) idx_a_[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < idx_b_.size(); ++i) idx_b_[i] = static_cast<int>(i);
  return true;
}

bool AllocationEnumerator::advance(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<ErrorAllocation> AllocationEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    if (!start_split()) {
      done_ = true;
      return std::nullopt;
    }
  } else if (!advance(idx_b_, static_cast<int>(bytes_b_.size()))) {
    for (std::size_t i = 0; i < idx_b_.size(); ++i) idx_b_[i] = static_cast<int>(i);
    if (!advance(idx_a_, static_cast<int>(bytes_a_.size()))) {
      ++split_;
      if (!start_split()) {
        done_ = true;
        return std::nullopt;
      }
    }
  }
  ErrorAllocation alloc;
  for (int i : idx_a_) alloc.side_a.push_back(bytes_a_[i]);
  for (int i : idx_b_) alloc.side_b.push_back(bytes_b_[i]);
  return alloc;
}

std::vector<ErrorAllocation> enumerate_error_allocations(const OverlapPartition& part) {
  std::vector<ErrorAllocation> out;
  AllocationEnumerator en(part);
  while (auto a = en.next()) out.push_back(std::move(*a));
  return out;
}

// ---------------------------------------------------------------------------

AllocationScreen::AllocationScreen(const BitString& msg_a, const BitString& msg_b,
                                   const MirrorFormat& fmt, const std::vector<int>& bytes_a,
                                   const std::vector<int>& bytes_b) {
  const ErrorAllocation all{bytes_a, bytes_b};
  const LinearSystem sys = build_system(msg_a, msg_b, fmt, all, true);
  groups_ = sys.error_bytes;
  const Gf2Residual res = eliminate_prefix(sys.equations, kDataCells);
  for (std::size_t r = 0; r < res.rows.size(); ++r) {
    std::vector<std::uint8_t> coeff(groups_.size(), 0);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (int b = 0; b < 8; ++b) {
        if (res.rows[r][kDataCells + 8 * g + b]) coeff[g] |= static_cast<std::uint8_t>(1u << b);
      }
    }
    rows_.push_back(std::move(coeff));
    rhs_.push_back(res.rhs[r]);
  }
}

bool AllocationScreen::feasible(const ErrorAllocation& alloc) const {
  std::vector<std::size_t> selected;
  auto pick = [&](Side side, const std::vector<int>& bytes) {
    for (int byte : bytes) {
      const auto it = std::find(groups_.begin(), groups_.end(), std::make_pair(side, byte));
      if (it == groups_.end()) throw std::invalid_argument("byte is not a screened candidate");
      selected.push_back(static_cast<std::size_t>(it - groups_.begin()));
    }
  };
  pick(Side::A, alloc.side_a);
  pick(Side::B, alloc.side_b);
  if (selected.size() > 7) throw std::invalid_argument("screen handles at most 7 bytes");

  constexpr std::uint64_t kRhs = std::uint64_t{1} << 63;
  const int width = 8 * static_cast<int>(selected.size());
  std::array<std::uint64_t, 56> basis{};
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint64_t v = rhs_[r] ? kRhs : 0;
    for (std::size_t k = 0; k < selected.size(); ++k) {
      v |= std::uint64_t{rows_[r][selected[k]]} << (8 * k);
    }
    for (int bit = width - 1; bit >= 0; --bit) {
      if (!((v >> bit) & 1)) continue;
      if (basis[bit]) {
        v ^= basis[bit];
      } else {
        basis[bit] = v;
        break;
      }
    }
    if (v == kRhs) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

ModuleGrid materialize(const std::array<std::uint8_t, kDataCells>& cells, std::uint16_t witness) {
  ModuleGrid grid = function_pattern_grid();
  const auto& order = data_placement_order();
  for (int v = 0; v < kDataCells; ++v) grid.set_dark(order[v], cells[v] != 0);
  write_format(grid, witness);
  return grid;
}

namespace {

template <std::size_t N>
void pack_bytes(const std::array<std::uint8_t, kDataCells>& bits, int first,
                std::array<std::uint8_t, N>& out) {
  for (std::size_t n = 0; n < N; ++n) {
    std::uint8_t b = 0;
    for (int k = 0; k < 8; ++k) b = static_cast<std::uint8_t>((b << 1) | bits[first + 8 * n + k]);
    out[n] = b;
  }
}

template <std::size_t N>
void unpack_bytes(const std::array<std::uint8_t, N>& bytes, int first,
                  std::array<std::uint8_t, kDataCells>& bits) {
  for (std::size_t n = 0; n < N; ++n) {
    for (int k = 0; k < 8; ++k) bits[first + 8 * n + k] = (bytes[n] >> (7 - k)) & 1;
  }
}

}  // namespace

BruteForceResult brute_force_search(const BitString& msg_a, const std::string& text_a,
                                    const BitString& msg_b, const std::string& text_b,
                                    const MirrorFormat& fmt, std::uint64_t trials,
                                    std::uint64_t seed) {
  check_inputs(msg_a, msg_b, fmt);
  const int la = static_cast<int>(msg_a.size());
  const int lb = static_cast<int>(msg_b.size());
  const auto& vb = side_b_variables();
  const auto ma = mask_constants(fmt.straight.mask);
  const auto mb = mask_constants(fmt.transposed.mask);
  auto a_filler = [&](int v) { return v >= la && v < kPayloadBits; };

  BruteForceResult result;
  std::mt19937_64 rng(seed);
  std::array<std::uint8_t, kDataCells> x{};
  std::array<std::uint8_t, kDataCells> logical{};

  for (std::uint64_t t = 0; t < trials; ++t) {
    result.trials_used = t + 1;
    for (int v = 0; v < kDataCells; v += 64) {
      const std::uint64_t r = rng();
      for (int k = 0; k < 64 && v + k < kDataCells; ++k) x[v + k] = (r >> k) & 1;
    }
    for (int i = 0; i < lb; ++i) {
      if (a_filler(vb[i])) x[vb[i]] = msg_b[i] ^ mb[i];
    }
    for (int i = 0; i < la; ++i) x[i] = msg_a[i] ^ ma[i];

    // Side B's intended codeword: what it reads, with its payload forced.
    for (int j = 0; j < kDataCells; ++j) logical[j] = x[vb[j]] ^ mb[j];
    for (int j = 0; j < lb; ++j) logical[j] = msg_b[j];
    DataBlock data_b{};
    pack_bytes(logical, 0, data_b);
    const CodewordBlock target_b = rs_codeword(data_b);
    std::array<std::uint8_t, kDataCells> target_bits{};
    unpack_bytes(target_b, 0, target_bits);
    for (int k = kPayloadBits; k < kDataCells; ++k) {
      if (a_filler(vb[k])) x[vb[k]] = target_bits[k] ^ mb[k];
    }

    // Side A written completely.
    for (int i = 0; i < kPayloadBits; ++i) logical[i] = x[i] ^ ma[i];
    DataBlock data_a{};
    pack_bytes(logical, 0, data_a);
    ParityBlock parity_a = rs_encode(data_a);
    std::array<std::uint8_t, kDataCells> parity_bits_a{};
    unpack_bytes(parity_a, kPayloadBits, parity_bits_a);
    for (int k = kPayloadBits; k < kDataCells; ++k) x[k] = parity_bits_a[k] ^ ma[k];

    for (int j = 0; j < kDataCells; ++j) logical[j] = x[vb[j]] ^ mb[j];
    CodewordBlock read_b{};
    pack_bytes(logical, 0, read_b);
    int damage = 0;
    for (int n = 0; n < kCodewordBytes; ++n) damage += read_b[n] != target_b[n];
    result.best_damage_b = std::min(result.best_damage_b, damage);

    const auto rs = rs_decode(read_b);
    if (!rs) continue;
    try {
      if (parse_payload(BitString::from_bytes(rs->data)).text != text_b) continue;
    } catch (const Error&) {
      continue;
    }
    ModuleGrid grid = materialize(x, fmt.witness);
    try {
      verify_double_sided(grid, text_a, text_b);
    } catch (const Error&) {
      continue;
    }
    result.best_damage_b = std::min<int>(result.best_damage_b, static_cast<int>(rs->corrected_positions.size()));
    result.grid = std::move(grid);
    return result;
  }
  return result;
}

// ---------------------------------------------------------------------------

const char* to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Brute: return "brute";
    case Method::Auto: return "auto";
  }
  return "?";
}

namespace {

FreeBitPolicy fill_policy(const ConstructionOptions& options, const LinearSystem& sys,
                          const Payload& padded_a) {
  switch (options.fill) {
    case FillPolicy::Zeros: return FreeBitPolicy::zeros();
    case FillPolicy::Random: return FreeBitPolicy::random(options.seed);
    case FillPolicy::PadPattern: break;
  }
  // Lean towards side A's ordinary single-sided encoding.
  const CodewordBlock cw = rs_codeword(payload_bytes(padded_a));
  std::array<std::uint8_t, kDataCells> bits{};
  unpack_bytes(cw, 0, bits);
  const auto ma = mask_constants(sys.mask_a);
  std::vector<std::uint8_t> pref(static_cast<std::size_t>(sys.equations.variables()), 0);
  for (int v = 0; v < kDataCells; ++v) pref[v] = bits[v] ^ ma[v];
  return FreeBitPolicy::prefer(std::move(pref));
}

bool solvable(const BitString& a, const BitString& b, const MirrorFormat& fmt,
              const ErrorAllocation& alloc) {
  return solve_gf2(build_constraint_system(a, b, fmt, alloc), FreeBitPolicy::zeros()).has_value();
}

// Greedy shrink from "every candidate byte allocated": the size of a
// minimal (not necessarily minimum) feasible allocation with no per-side cap.
void uncapped_diagnostic(const BitString& a, const BitString& b, const MirrorFormat& fmt,
                         const OverlapPartition& part, ConstructionReport& rep) {
  ErrorAllocation alloc{part.conflict_bytes_a(), part.conflict_bytes_b()};
  if (!solvable(a, b, fmt, alloc)) return;
  for (auto* side : {&alloc.side_a, &alloc.side_b}) {
    for (std::size_t i = 0; i < side->size();) {
      const int byte = (*side)[i];
      side->erase(side->begin() + static_cast<std::ptrdiff_t>(i));
      if (solvable(a, b, fmt, alloc)) continue;
      side->insert(side->begin() + static_cast<std::ptrdiff_t>(i), byte);
      ++i;
    }
  }
  rep.uncapped_bytes_a = static_cast<int>(alloc.side_a.size());
  rep.uncapped_bytes_b = static_cast<int>(alloc.side_b.size());
}

void record_decodes(ConstructionReport& rep, const DecodeReport& ra, const DecodeReport& rb) {
  rep.side_a_corrections = ra.corrected_bytes;
  rep.side_b_corrections = rb.corrected_bytes;
  rep.format_distance_a = ra.format_distance;
  rep.format_distance_b = rb.format_distance;
}

}  // namespace

ConstructionResult construct_double_sided(const std::string& text_a, const std::string& text_b,
                                          const ConstructionOptions& options) {
  const Segment seg_a{options.mode_a.value_or(choose_mode(text_a)), text_a};
  const Segment seg_b{options.mode_b.value_or(choose_mode(text_b)), text_b};
  const Payload pa = assemble_payload(seg_a, false);
  const Payload pb = assemble_payload(seg_b, false);
  const Payload padded_a = assemble_payload(seg_a, true);

  ConstructionReport rep;
  rep.text_a = text_a;
  rep.text_b = text_b;
  rep.payload_bits_a = static_cast<int>(pa.bits.size());
  rep.payload_bits_b = static_cast<int>(pb.bits.size());

  std::vector<MirrorFormat> formats{select_mirror_format(FormatDomain::OnGrid)};
  if (options.try_all_formats) {
    for (const auto& f : admissible_mirror_formats(FormatDomain::OnGrid, true)) {
      if (f.witness != formats.front().witness) formats.push_back(f);
    }
  }
  rep.format = formats.front();
  const OverlapPartition part = overlap_partition(rep.payload_bits_a, rep.payload_bits_b);

  if (options.method != Method::Brute) {
    rep.method = "analytic";
    for (const auto& fmt : formats) {
      ++rep.formats_tried;
      const AllocationScreen screen(pa.bits, pb.bits, fmt, part.conflict_bytes_a(),
                                    part.conflict_bytes_b());
      AllocationEnumerator en(part);
      while (auto alloc = en.next()) {
        ++rep.allocations_tried;
        if (!screen.feasible(*alloc)) continue;
        const LinearSystem sys = build_constraint_system(pa.bits, pb.bits, fmt, *alloc);
        auto sol = solve_gf2(sys, fill_policy(options, sys, padded_a));
        if (!sol) continue;
        ModuleGrid grid = materialize(sol->cells, fmt.witness);
        try {
          const auto [ra, rb] = verify_double_sided(grid, text_a, text_b);
          rep.format = fmt;
          rep.allocation = *alloc;
          rep.free_vars = sol->free_variable_count;
          rep.rank = sol->rank;
          record_decodes(rep, ra, rb);
          return {std::move(grid), std::move(rep)};
        } catch (const Error&) {
          continue;
        }
      }
    }
    uncapped_diagnostic(pa.bits, pb.bits, formats.front(), part, rep);
  }

  if (options.method != Method::Analytic) {
    rep.method = "brute";
    const MirrorFormat& fmt = formats.front();
    const BruteForceResult bf =
        brute_force_search(pa.bits, text_a, pb.bits, text_b, fmt, options.trials, options.seed);
    rep.trials = bf.trials_used;
    rep.best_brute_damage_b = bf.best_damage_b;
    if (bf.grid) {
      const auto [ra, rb] = verify_double_sided(*bf.grid, text_a, text_b);
      rep.format = fmt;
      record_decodes(rep, ra, rb);
      return {*bf.grid, std::move(rep)};
    }
  }

  std::string why = "no error allocation within 3+3 damaged bytes satisfies both sides";
  if (rep.uncapped_bytes_a >= 0) {
    why += " (smallest uncapped allocation found: " + std::to_string(rep.uncapped_bytes_a) +
           "+" + std::to_string(rep.uncapped_bytes_b) + " bytes)";
  }
  if (options.method == Method::Brute) {
    why = "brute force found no grid in " + std::to_string(rep.trials) +
          " trials (best side-B damage " + std::to_string(rep.best_brute_damage_b) + " bytes)";
  } else if (options.method == Method::Auto) {
    why += "; brute force found none in " + std::to_string(rep.trials) + " trials";
  }
  throw ConstructionFailure(Stage::SystemInfeasible, why, std::move(rep));
}

}  // namespace dsqr
