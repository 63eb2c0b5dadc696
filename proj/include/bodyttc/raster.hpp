#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "bodyttc/geometry.hpp"
#include "bodyttc/mask.hpp"
#include "bodyttc/polygon.hpp"

namespace bodyttc {

/// World-space centre of lattice cell (row, col).
constexpr Vec2 cell_center(Cell c) { return {c.col + 0.5, c.row + 0.5}; }

namespace detail {

inline void fill_polygon(BinaryMask& out, std::span<const Vec2> world) {
  const Box b = bounding_box(world);
  const Cell o = out.origin();
  // Candidate rows/cols whose centres can fall inside the polygon box.
  const int r0 = std::max(0, static_cast<int>(std::floor(b.min.y - 0.5 - kGeomEps)) - o.row);
  const int r1 = std::min(out.height() - 1, static_cast<int>(std::ceil(b.max.y - 0.5 + kGeomEps)) - o.row);
  const int c0 = std::max(0, static_cast<int>(std::floor(b.min.x - 0.5 - kGeomEps)) - o.col);
  const int c1 = std::min(out.width() - 1, static_cast<int>(std::ceil(b.max.x - 0.5 + kGeomEps)) - o.col);
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c)
      if (locate_point(cell_center(o + Cell{r, c}), world) != Containment::outside) out.set(r, c);
}

}  // namespace detail

/// Pixel-centre rasterization of `polygon` placed at `position` onto a canvas
/// with origin (0, 0). Centres on the boundary count as inside.
inline BinaryMask rasterize(const Polygon& polygon, Vec2 position, Extent canvas) {
  BinaryMask out({0, 0}, canvas);
  const auto world = translated(polygon.vertices, position);
  detail::fill_polygon(out, world);
  return out;
}

/// Same cell set as `rasterize` on an unbounded canvas, framed tightly
/// around the polygon's bounding box.
inline BinaryMask rasterize_unbounded(std::span<const Vec2> world) {
  const Box b = bounding_box(world);
  const Cell lo{static_cast<int>(std::floor(b.min.y - 0.5)), static_cast<int>(std::floor(b.min.x - 0.5))};
  const Cell hi{static_cast<int>(std::ceil(b.max.y - 0.5)), static_cast<int>(std::ceil(b.max.x - 0.5))};
  BinaryMask out(lo, {hi.row - lo.row + 1, hi.col - lo.col + 1});
  detail::fill_polygon(out, world);
  return out;
}

inline BinaryMask rasterize_unbounded(const Polygon& polygon, Vec2 position) {
  return rasterize_unbounded(translated(polygon.vertices, position));
}

}  // namespace bodyttc
