#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dsqr {

// Ordered bit sequence, most significant bit of each appended field first.
class BitString {
 public:
  BitString() = default;

  // Parses '0'/'1' characters; spaces are ignored, anything else throws.
  static BitString from_string(std::string_view text);
  static BitString from_bytes(std::span<const std::uint8_t> bytes);

  void append(std::uint32_t value, int width);
  void append(const BitString& other);
  void push_back(bool bit) { bits_.push_back(bit); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool bit) { bits_[i] = bit; }

  // Reads `width` bits starting at `pos` as an unsigned integer.
  std::uint32_t read(std::size_t pos, int width) const;
  BitString prefix(std::size_t n) const;

  // Zero-pads to a byte boundary.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<bool> bits_;
};

enum class Mode { Numeric, Alphanumeric, Byte };

const char* to_string(Mode mode);
int mode_indicator(Mode mode);
// Character count field width at Version 1.
int length_field_bits(Mode mode);

bool is_encodable(Mode mode, std::string_view text);
// Most compact mode that can represent text.
Mode choose_mode(std::string_view text);

// Bit cost of a single segment of n characters, header included.
int segment_bit_length(Mode mode, int chars);

struct Segment {
  Mode mode = Mode::Alphanumeric;
  std::string text;
};

// Throws Error(Stage::Input) for characters outside the mode's alphabet or a
// character count that overflows the length field.
BitString encode_segment(const Segment& segment);

struct Payload {
  BitString bits;
  int declared_length = 0;  // characters, summed over segments
  bool padded = false;
};

// With pad set: terminator (up to 4 zeros), zero fill to a byte boundary,
// then alternating 0xEC/0x11 to exactly 152 bits. Without pad: the raw
// segment bits. Throws Error(Stage::Input) beyond 152 bits.
Payload assemble_payload(std::span<const Segment> segments, bool pad);
Payload assemble_payload(const Segment& segment, bool pad);

struct ParsedPayload {
  std::string text;
  Mode mode = Mode::Alphanumeric;
  int declared_length = 0;
  int consumed_bits = 0;
};

// Reads one segment and ignores everything after its declared length.
// Throws Error(Stage::PayloadParse) on an unsupported mode indicator or a
// declared length that does not fit in the available bits.
ParsedPayload parse_payload(const BitString& bits);

}  // namespace dsqr
