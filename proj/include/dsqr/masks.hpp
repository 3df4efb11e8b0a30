#pragma once

#include <compare>
#include <stdexcept>
#include <vector>

#include "dsqr/grid.hpp"

namespace dsqr {

class MaskId {
 public:
  constexpr explicit MaskId(int id) : id_(id) {
    if (id < 0 || id > 7) throw std::out_of_range("mask id must be within 0..7");
  }
  constexpr int value() const { return id_; }

  friend constexpr auto operator<=>(const MaskId&, const MaskId&) = default;

 private:
  int id_;
};

// 1 iff mask m inverts the data module at c.
bool mask_bit(MaskId m, CellCoord c);

// Masks whose pattern equals its own transpose.
std::vector<MaskId> symmetric_masks();
bool is_symmetric(MaskId m);

}  // namespace dsqr
