#include "dsqr/render.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dsqr/error.hpp"

namespace dsqr {

std::string to_ascii(const ModuleGrid& grid, int quiet) {
  if (quiet < 0) throw std::invalid_argument("quiet zone must be non-negative");
  const int n = kSymbolSize + 2 * quiet;
  std::string out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const CellCoord cell{r - quiet, c - quiet};
      out += (cell.valid() && grid.dark(cell)) ? "##" : "  ";
    }
    out += '\n';
  }
  return out;
}

std::string to_pbm(const ModuleGrid& grid, int scale, int quiet) {
  if (scale < 1) throw std::invalid_argument("scale must be at least 1");
  if (quiet < 0) throw std::invalid_argument("quiet zone must be non-negative");
  const int n = (kSymbolSize + 2 * quiet) * scale;
  std::string out = "P1\n" + std::to_string(n) + " " + std::to_string(n) + "\n";
  for (int y = 0; y < n; ++y) {
    int column = 0;
    for (int x = 0; x < n; ++x) {
      const CellCoord cell{y / scale - quiet, x / scale - quiet};
      if (column == 70) {
        out += '\n';
        column = 0;
      }
      out += (cell.valid() && grid.dark(cell)) ? '1' : '0';
      ++column;
    }
    out += '\n';
  }
  return out;
}

namespace {

class PbmReader {
 public:
  explicit PbmReader(std::string_view text) : text_(text) {}

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  int read_int() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    int v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) throw Error(Stage::Input, "PBM dimension too large");
      ++pos_;
    }
    if (pos_ == start) throw Error(Stage::Input, "malformed PBM header");
    return v;
  }

  bool read_bit() {
    skip_space_and_comments();
    if (pos_ >= text_.size()) throw Error(Stage::Input, "PBM raster truncated");
    const char ch = text_[pos_++];
    if (ch != '0' && ch != '1') throw Error(Stage::Input, "PBM raster contains a non-bit character");
    return ch == '1';
  }

  std::string_view take(std::size_t n) {
    skip_space_and_comments();
    const auto s = text_.substr(pos_, n);
    pos_ += s.size();
    return s;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ModuleGrid parse_pbm(std::string_view pbm) {
  PbmReader in(pbm);
  if (in.take(2) != "P1") throw Error(Stage::Input, "not a plain PBM (P1) image");
  const int width = in.read_int();
  const int height = in.read_int();
  if (width <= 0 || height <= 0) throw Error(Stage::Input, "PBM dimensions must be positive");

  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height);
  int top = height, bottom = -1, left = width, right = -1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool dark = in.read_bit();
      px[static_cast<std::size_t>(y) * width + x] = dark ? 1 : 0;
      if (dark) {
        top = std::min(top, y);
        bottom = std::max(bottom, y);
        left = std::min(left, x);
        right = std::max(right, x);
      }
    }
  }
  if (bottom < 0) throw Error(Stage::Input, "PBM image contains no dark modules");
  const int w = right - left + 1;
  const int h = bottom - top + 1;
  if (w != h) throw Error(Stage::Input, "symbol area is not square");
  if (w % kSymbolSize != 0) throw Error(Stage::Input, "symbol size is not a multiple of 21 pixels");
  const int scale = w / kSymbolSize;

  ModuleGrid grid = function_pattern_grid();
  for (int r = 0; r < kSymbolSize; ++r) {
    for (int c = 0; c < kSymbolSize; ++c) {
      int dark = 0;
      for (int dy = 0; dy < scale; ++dy) {
        for (int dx = 0; dx < scale; ++dx) {
          dark += px[static_cast<std::size_t>(top + r * scale + dy) * width + left + c * scale + dx];
        }
      }
      grid.set_dark({r, c}, 2 * dark > scale * scale);
    }
  }
  return grid;
}

std::string to_svg(const ModuleGrid& grid, int quiet) {
  if (quiet < 0) throw std::invalid_argument("quiet zone must be non-negative");
  const int n = kSymbolSize + 2 * quiet;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << n << ' ' << n
      << "\" shape-rendering=\"crispEdges\" style=\"background-color:#ffffff\">\n";
  for (int r = 0; r < kSymbolSize; ++r) {
    for (int c = 0; c < kSymbolSize; ++c) {
      if (!grid.dark({r, c})) continue;
      out << "  <rect x=\"" << c + quiet << "\" y=\"" << r + quiet
          << "\" width=\"1\" height=\"1\" fill=\"#000000\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dsqr
