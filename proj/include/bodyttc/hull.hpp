#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/mask.hpp"

namespace bodyttc {

namespace detail {

inline std::int64_t cross3(Cell o, Cell a, Cell b) {
  // (x, y) = (col, row)
  return static_cast<std::int64_t>(a.col - o.col) * (b.row - o.row) -
         static_cast<std::int64_t>(a.row - o.row) * (b.col - o.col);
}

}  // namespace detail

/// Convex hull of lattice points, counter-clockwise in (col, row) space,
/// without collinear points (Andrew's monotone chain, exact integers).
inline std::vector<Cell> convex_hull(std::vector<Cell> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Cell a, Cell b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Cell> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Cell& p : pts) {
    while (k >= 2 && detail::cross3(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && detail::cross3(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// True iff lattice point p lies in the closed convex polygon `hull`
/// (as produced by convex_hull, including its 1- and 2-point cases).
inline bool in_convex_hull(const std::vector<Cell>& hull, Cell p) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) {
    const Cell a = hull[0], b = hull[1];
    if (detail::cross3(a, b, p) != 0) return false;
    return std::min(a.col, b.col) <= p.col && p.col <= std::max(a.col, b.col) &&
           std::min(a.row, b.row) <= p.row && p.row <= std::max(a.row, b.row);
  }
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (detail::cross3(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

/// Pixel-centre rasterization of the convex hull of the set cells, in the
/// input's frame. Cell centres are lattice points, so the test is exact.
inline BinaryMask convex_hull_mask(const BinaryMask& mask) {
  std::vector<Cell> pts;
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      if (mask.at(r, c)) pts.push_back(mask.origin() + Cell{r, c});
  if (pts.empty()) throw EmptyMask("convex hull of an empty mask");
  const auto hull = convex_hull(std::move(pts));
  BinaryMask out(mask.origin(), mask.extent());
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      if (in_convex_hull(hull, mask.origin() + Cell{r, c})) out.set(r, c);
  return out;
}

}  // namespace bodyttc
