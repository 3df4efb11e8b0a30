#include "dsqr/codec.hpp"

#include <algorithm>
#include <stdexcept>

#include "dsqr/error.hpp"
#include "dsqr/grid.hpp"

namespace dsqr {

namespace {

constexpr std::string_view kAlphanumeric = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ $%*+-./:";

int alnum_value(char ch) {
  const auto pos = kAlphanumeric.find(ch);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

}  // namespace

BitString BitString::from_string(std::string_view text) {
  BitString out;
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string contains non-binary character");
    out.push_back(ch == '1');
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  BitString out;
  for (std::uint8_t b : bytes) out.append(b, 8);
  return out;
}

void BitString::append(std::uint32_t value, int width) {
  if (width < 0 || width > 31 || (value >> width) != 0) {
    throw std::invalid_argument("value does not fit in field width");
  }
  for (int i = width - 1; i >= 0; --i) bits_.push_back(((value >> i) & 1) != 0);
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint32_t BitString::read(std::size_t pos, int width) const {
  if (pos + width > bits_.size()) throw std::out_of_range("bit read past end");
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (bits_[pos + i] ? 1u : 0u);
  return v;
}

BitString BitString::prefix(std::size_t n) const {
  BitString out;
  out.bits_.assign(bits_.begin(), bits_.begin() + std::min(n, bits_.size()));
  return out;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::Numeric: return "numeric";
    case Mode::Alphanumeric: return "alphanumeric";
    case Mode::Byte: return "byte";
  }
  return "unknown";
}

int mode_indicator(Mode mode) {
  switch (mode) {
    case Mode::Numeric: return 0b0001;
    case Mode::Alphanumeric: return 0b0010;
    case Mode::Byte: return 0b0100;
  }
  return 0;
}

int length_field_bits(Mode mode) {
  switch (mode) {
    case Mode::Numeric: return 10;
    case Mode::Alphanumeric: return 9;
    case Mode::Byte: return 8;
  }
  return 0;
}

bool is_encodable(Mode mode, std::string_view text) {
  switch (mode) {
    case Mode::Numeric: return std::all_of(text.begin(), text.end(), is_digit);
    case Mode::Alphanumeric:
      return std::all_of(text.begin(), text.end(), [](char ch) { return alnum_value(ch) >= 0; });
    case Mode::Byte: return true;
  }
  return false;
}

Mode choose_mode(std::string_view text) {
  if (is_encodable(Mode::Numeric, text)) return Mode::Numeric;
  if (is_encodable(Mode::Alphanumeric, text)) return Mode::Alphanumeric;
  return Mode::Byte;
}

int segment_bit_length(Mode mode, int n) {
  int data = 0;
  switch (mode) {
    case Mode::Numeric: data = 10 * (n / 3) + (n % 3 == 0 ? 0 : n % 3 == 1 ? 4 : 7); break;
    case Mode::Alphanumeric: data = 11 * (n / 2) + 6 * (n % 2); break;
    case Mode::Byte: data = 8 * n; break;
  }
  return 4 + length_field_bits(mode) + data;
}

BitString encode_segment(const Segment& segment) {
  const std::string& text = segment.text;
  if (!is_encodable(segment.mode, text)) {
    throw Error(Stage::Input, std::string("text contains characters outside the ") +
                                  to_string(segment.mode) + " alphabet");
  }
  const int n = static_cast<int>(text.size());
  if (n >= (1 << length_field_bits(segment.mode))) {
    throw Error(Stage::Input, "character count overflows the length field");
  }

  BitString bits;
  bits.append(static_cast<std::uint32_t>(mode_indicator(segment.mode)), 4);
  bits.append(static_cast<std::uint32_t>(n), length_field_bits(segment.mode));
  switch (segment.mode) {
    case Mode::Numeric:
      for (int i = 0; i < n; i += 3) {
        const int len = std::min(3, n - i);
        bits.append(static_cast<std::uint32_t>(std::stoi(text.substr(i, len))), 3 * len + 1);
      }
      break;
    case Mode::Alphanumeric:
      for (int i = 0; i + 1 < n; i += 2) {
        bits.append(static_cast<std::uint32_t>(alnum_value(text[i]) * 45 + alnum_value(text[i + 1])), 11);
      }
      if (n % 2 == 1) bits.append(static_cast<std::uint32_t>(alnum_value(text[n - 1])), 6);
      break;
    case Mode::Byte:
      for (char ch : text) bits.append(static_cast<std::uint8_t>(ch), 8);
      break;
  }
  return bits;
}

Payload assemble_payload(std::span<const Segment> segments, bool pad) {
  Payload p;
  for (const Segment& s : segments) {
    p.bits.append(encode_segment(s));
    p.declared_length += static_cast<int>(s.text.size());
  }
  if (p.bits.size() > static_cast<std::size_t>(kPayloadBits)) {
    throw Error(Stage::Input, "payload needs " + std::to_string(p.bits.size()) +
                                  " bits; Version 1-L holds 152");
  }
  p.padded = pad;
  if (!pad) return p;

  const std::size_t cap = kPayloadBits;
  const int terminator = static_cast<int>(std::min<std::size_t>(4, cap - p.bits.size()));
  p.bits.append(0, terminator);
  while (p.bits.size() % 8 != 0) p.bits.push_back(false);
  for (bool first = true; p.bits.size() < cap; first = !first) p.bits.append(first ? 0xEC : 0x11, 8);
  return p;
}

Payload assemble_payload(const Segment& segment, bool pad) {
  return assemble_payload(std::span<const Segment>(&segment, 1), pad);
}

ParsedPayload parse_payload(const BitString& bits) {
  if (bits.size() < 4) throw Error(Stage::PayloadParse, "payload shorter than a mode indicator");
  ParsedPayload out;
  const std::uint32_t indicator = bits.read(0, 4);
  switch (indicator) {
    case 0b0001: out.mode = Mode::Numeric; break;
    case 0b0010: out.mode = Mode::Alphanumeric; break;
    case 0b0100: out.mode = Mode::Byte; break;
    default:
      throw Error(Stage::PayloadParse, "unsupported mode indicator " + bits.prefix(4).to_string());
  }
  const int len_bits = length_field_bits(out.mode);
  if (bits.size() < static_cast<std::size_t>(4 + len_bits)) {
    throw Error(Stage::PayloadParse, "payload truncated inside the length field");
  }
  const int n = static_cast<int>(bits.read(4, len_bits));
  const int total = segment_bit_length(out.mode, n);
  if (static_cast<std::size_t>(total) > bits.size()) {
    throw Error(Stage::PayloadParse, "declared length " + std::to_string(n) +
                                         " exceeds the available bits");
  }
  out.declared_length = n;

  std::size_t pos = 4 + len_bits;
  switch (out.mode) {
    case Mode::Numeric:
      for (int i = 0; i < n; i += 3) {
        const int len = std::min(3, n - i);
        const std::uint32_t v = bits.read(pos, 3 * len + 1);
        pos += 3 * len + 1;
        static constexpr std::uint32_t kLimit[] = {0, 10, 100, 1000};
        if (v >= kLimit[len]) throw Error(Stage::PayloadParse, "numeric group out of range");
        std::string digits = std::to_string(v);
        out.text += std::string(len - digits.size(), '0') + digits;
      }
      break;
    case Mode::Alphanumeric:
      for (int i = 0; i + 1 < n; i += 2) {
        const std::uint32_t v = bits.read(pos, 11);
        pos += 11;
        if (v >= 45 * 45) throw Error(Stage::PayloadParse, "alphanumeric pair out of range");
        out.text.push_back(kAlphanumeric[v / 45]);
        out.text.push_back(kAlphanumeric[v % 45]);
      }
      if (n % 2 == 1) {
        const std::uint32_t v = bits.read(pos, 6);
        pos += 6;
        if (v >= 45) throw Error(Stage::PayloadParse, "alphanumeric symbol out of range");
        out.text.push_back(kAlphanumeric[v]);
      }
      break;
    case Mode::Byte:
      for (int i = 0; i < n; ++i) {
        out.text.push_back(static_cast<char>(bits.read(pos, 8)));
        pos += 8;
      }
      break;
  }
  out.consumed_bits = static_cast<int>(pos);
  return out;
}

}  // namespace dsqr
