#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bodyttc {

/// Integer lattice coordinate or displacement (row, col).
struct Cell {
  int row = 0;
  int col = 0;
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.row + b.row, a.col + b.col}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.row - b.row, a.col - b.col}; }
  friend constexpr Cell operator-(Cell a) { return {-a.row, -a.col}; }
  friend constexpr bool operator==(Cell, Cell) = default;
};

struct Extent {
  int height = 0;
  int width = 0;
  friend constexpr bool operator==(Extent, Extent) = default;
};

/// Inclusive world-space rectangle of lattice cells.
struct CellBox {
  Cell min;
  Cell max;
};

/// Occupancy grid placed on the unbounded world lattice. Bit (r, c) sits at
/// world cell origin + (r, c).
class BinaryMask {
 public:
  BinaryMask(Cell origin, Extent extent) : BinaryMask(origin, extent, {}) {}

  BinaryMask(Cell origin, Extent extent, std::vector<std::uint8_t> bits)
      : origin_(origin), extent_(extent), bits_(std::move(bits)) {
    if (extent.height <= 0 || extent.width <= 0) throw std::invalid_argument("mask extent must be positive");
    const auto n = static_cast<std::size_t>(extent.height) * static_cast<std::size_t>(extent.width);
    if (bits_.empty()) bits_.assign(n, 0);
    if (bits_.size() != n) throw std::invalid_argument("mask bit count does not match extent");
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  Cell origin() const { return origin_; }
  Extent extent() const { return extent_; }
  int height() const { return extent_.height; }
  int width() const { return extent_.width; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  bool at(int r, int c) const { return bits_[index(r, c)] != 0; }
  void set(int r, int c, bool on = true) { bits_[index(r, c)] = on ? 1 : 0; }

  /// Occupancy at a world cell; false outside the stored grid.
  bool test_world(Cell w) const {
    const int r = w.row - origin_.row;
    const int c = w.col - origin_.col;
    if (r < 0 || c < 0 || r >= extent_.height || c >= extent_.width) return false;
    return at(r, c);
  }

  std::size_t popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }
  bool empty() const { return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) == bits_.end(); }

  /// World bounding box of the stored grid.
  CellBox frame() const {
    return {origin_, {origin_.row + extent_.height - 1, origin_.col + extent_.width - 1}};
  }

  /// Tight world bounding box of the set cells, if any.
  std::optional<CellBox> occupied_box() const {
    int r0 = extent_.height, r1 = -1, c0 = extent_.width, c1 = -1;
    for (int r = 0; r < extent_.height; ++r) {
      for (int c = 0; c < extent_.width; ++c) {
        if (!at(r, c)) continue;
        r0 = std::min(r0, r);
        r1 = std::max(r1, r);
        c0 = std::min(c0, c);
        c1 = std::max(c1, c);
      }
    }
    if (r1 < 0) return std::nullopt;
    return CellBox{origin_ + Cell{r0, c0}, origin_ + Cell{r1, c1}};
  }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(extent_.width) + static_cast<std::size_t>(c);
  }

  Cell origin_;
  Extent extent_;
  std::vector<std::uint8_t> bits_;
};

/// Copy of `mask` re-framed to `box` (cells outside the old frame are unset).
inline BinaryMask reframe(const BinaryMask& mask, CellBox box) {
  BinaryMask out(box.min, {box.max.row - box.min.row + 1, box.max.col - box.min.col + 1});
  for (int r = 0; r < out.height(); ++r)
    for (int c = 0; c < out.width(); ++c)
      if (mask.test_world(box.min + Cell{r, c})) out.set(r, c);
  return out;
}

/// Shrink to the tight box of set cells. An empty mask becomes a 1x1 empty
/// mask at its origin.
inline BinaryMask crop(const BinaryMask& mask) {
  const auto box = mask.occupied_box();
  if (!box) return BinaryMask(mask.origin(), {1, 1});
  return reframe(mask, *box);
}

/// Same bits, origin moved by `displacement`. Never loses cells.
inline BinaryMask translate(const BinaryMask& mask, Cell displacement) {
  std::vector<std::uint8_t> bits(mask.bits().begin(), mask.bits().end());
  return BinaryMask(mask.origin() + displacement, mask.extent(), std::move(bits));
}

/// Overlap of `a` shifted by `da` with `b` shifted by `db`, scanning only the
/// intersection of the shifted frames.
inline bool overlap_shifted(const BinaryMask& a, Cell da, const BinaryMask& b, Cell db) {
  const Cell ao = a.origin() + da;
  const Cell bo = b.origin() + db;
  const int r0 = std::max(ao.row, bo.row);
  const int r1 = std::min(ao.row + a.height(), bo.row + b.height());
  const int c0 = std::max(ao.col, bo.col);
  const int c1 = std::min(ao.col + a.width(), bo.col + b.width());
  if (r0 >= r1 || c0 >= c1) return false;
  const auto abits = a.bits();
  const auto bbits = b.bits();
  for (int r = r0; r < r1; ++r) {
    const std::uint8_t* pa = abits.data() + static_cast<std::size_t>(r - ao.row) * static_cast<std::size_t>(a.width());
    const std::uint8_t* pb = bbits.data() + static_cast<std::size_t>(r - bo.row) * static_cast<std::size_t>(b.width());
    for (int c = c0; c < c1; ++c)
      if (pa[c - ao.col] & pb[c - bo.col]) return true;
  }
  return false;
}

/// True iff some world cell is set in both masks.
inline bool overlap(const BinaryMask& a, const BinaryMask& b) { return overlap_shifted(a, {}, b, {}); }

/// World-set inclusion a ⊆ b.
inline bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  for (int r = 0; r < a.height(); ++r)
    for (int c = 0; c < a.width(); ++c)
      if (a.at(r, c) && !b.test_world(a.origin() + Cell{r, c})) return false;
  return true;
}

/// World-set equality, independent of how each mask is framed.
inline bool same_cells(const BinaryMask& a, const BinaryMask& b) { return is_subset(a, b) && is_subset(b, a); }

/// Union on the smallest frame covering both inputs.
inline BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
  const CellBox fa = a.frame(), fb = b.frame();
  const CellBox box{{std::min(fa.min.row, fb.min.row), std::min(fa.min.col, fb.min.col)},
                    {std::max(fa.max.row, fb.max.row), std::max(fa.max.col, fb.max.col)}};
  BinaryMask out(box.min, {box.max.row - box.min.row + 1, box.max.col - box.min.col + 1});
  for (int r = 0; r < out.height(); ++r)
    for (int c = 0; c < out.width(); ++c) {
      const Cell w = box.min + Cell{r, c};
      if (a.test_world(w) || b.test_world(w)) out.set(r, c);
    }
  return out;
}

/// Cells of `a` that are also in `b`, in a's frame.
inline BinaryMask intersect(const BinaryMask& a, const BinaryMask& b) {
  BinaryMask out(a.origin(), a.extent());
  for (int r = 0; r < a.height(); ++r)
    for (int c = 0; c < a.width(); ++c)
      if (a.at(r, c) && b.test_world(a.origin() + Cell{r, c})) out.set(r, c);
  return out;
}

/// Copy of `mask` padded by `pad` cells on every side.
inline BinaryMask pad(const BinaryMask& mask, int pad) {
  const CellBox f = mask.frame();
  return reframe(mask, {f.min - Cell{pad, pad}, f.max + Cell{pad, pad}});
}

}  // namespace bodyttc
