#include "dsqr/masks.hpp"

#include <algorithm>

namespace dsqr {

bool mask_bit(MaskId m, CellCoord c) {
  const int i = c.row;
  const int j = c.col;
  switch (m.value()) {
    case 0: return (i + j) % 2 == 0;
    case 1: return i % 2 == 0;
    case 2: return j % 3 == 0;
    case 3: return (i + j) % 3 == 0;
    case 4: return (i / 2 + j / 3) % 2 == 0;
    case 5: return (i * j) % 2 + (i * j) % 3 == 0;
    case 6: return ((i * j) % 2 + (i * j) % 3) % 2 == 0;
    case 7: return ((i + j) % 2 + (i * j) % 3) % 2 == 0;
  }
  return false;
}

bool is_symmetric(MaskId m) {
  for (int r = 0; r < kSymbolSize; ++r) {
    for (int c = r + 1; c < kSymbolSize; ++c) {
      if (mask_bit(m, {r, c}) != mask_bit(m, {c, r})) return false;
    }
  }
  return true;
}

std::vector<MaskId> symmetric_masks() {
  std::vector<MaskId> out;
  for (int id = 0; id < 8; ++id) {
    if (is_symmetric(MaskId{id})) out.push_back(MaskId{id});
  }
  return out;
}

}  // namespace dsqr
