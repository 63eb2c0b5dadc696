#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bodyttc/mask.hpp"

namespace bodyttc {

/// Stand-in for "no feature cell in the grid".
inline constexpr double kFarSquared = 1e20;

namespace detail {

// Lower envelope of parabolas (Felzenszwalb & Huttenlocher) on one line.
// `f` holds squared distances along the orthogonal axis; `d` receives the
// exact squared Euclidean distance.
inline void edt_line(const double* f, std::size_t f_stride, double* d, std::size_t d_stride, std::size_t n,
                     std::vector<int>& v, std::vector<double>& z) {
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -HUGE_VAL;
  z[1] = HUGE_VAL;
  const auto F = [&](std::size_t i) { return f[i * f_stride]; };
  for (std::size_t qi = 1; qi < n; ++qi) {
    const double q = static_cast<double>(qi);
    const auto intersect = [&](std::size_t pi) {
      const double p = static_cast<double>(pi);
      return ((F(qi) + q * q) - (F(pi) + p * p)) / (2.0 * (q - p));
    };
    double s = intersect(static_cast<std::size_t>(v[static_cast<std::size_t>(k)]));
    while (s <= z[static_cast<std::size_t>(k)]) {  // z[0] is -inf, so k stays >= 0
      --k;
      s = intersect(static_cast<std::size_t>(v[static_cast<std::size_t>(k)]));
    }
    ++k;
    v[static_cast<std::size_t>(k)] = static_cast<int>(qi);
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = HUGE_VAL;
  }
  k = 0;
  for (std::size_t qi = 0; qi < n; ++qi) {
    const double q = static_cast<double>(qi);
    while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
    const double p = static_cast<double>(v[static_cast<std::size_t>(k)]);
    d[qi * d_stride] = (q - p) * (q - p) + F(static_cast<std::size_t>(p));
  }
}

}  // namespace detail

/// Exact squared Euclidean distance from every cell of an H x W grid to the
/// nearest cell whose `feature` flag is set (kFarSquared-scale when none).
inline std::vector<double> squared_distance(std::span<const std::uint8_t> feature, int height, int width) {
  const auto H = static_cast<std::size_t>(height);
  const auto W = static_cast<std::size_t>(width);
  std::vector<double> g(H * W);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = feature[i] ? 0.0 : kFarSquared;
  std::vector<double> tmp(std::max(H, W));
  std::vector<double> out(H * W);
  std::vector<int> v;
  std::vector<double> z;
  // Columns, then rows.
  for (std::size_t c = 0; c < W; ++c) {
    detail::edt_line(g.data() + c, W, tmp.data(), 1, H, v, z);
    for (std::size_t r = 0; r < H; ++r) g[r * W + c] = tmp[r];
  }
  for (std::size_t r = 0; r < H; ++r) detail::edt_line(g.data() + r * W, 1, out.data() + r * W, 1, W, v, z);
  return out;
}

/// Squared distance of every cell in `mask`'s frame to the nearest set cell
/// (`to_set`) or to the nearest unset cell (`!to_set`). Cells beyond the frame
/// are not considered, so callers pad the frame when the outside matters.
inline std::vector<double> squared_distance_field(const BinaryMask& mask, bool to_set) {
  std::vector<std::uint8_t> feature(mask.bits().begin(), mask.bits().end());
  if (!to_set)
    for (auto& f : feature) f = f ? 0 : 1;
  return squared_distance(feature, mask.height(), mask.width());
}

/// Signed distance per cell: distance to the set for unset cells, minus the
/// distance to the complement for set cells (negative inside). The frame is
/// assumed to carry at least one unset border cell.
inline std::vector<double> signed_distance(const BinaryMask& mask) {
  const auto outside = squared_distance_field(mask, true);
  const auto inside = squared_distance_field(mask, false);
  std::vector<double> sdf(outside.size());
  for (std::size_t i = 0; i < sdf.size(); ++i)
    sdf[i] = mask.bits()[i] ? -std::sqrt(inside[i]) : std::sqrt(outside[i]);
  return sdf;
}

}  // namespace bodyttc
