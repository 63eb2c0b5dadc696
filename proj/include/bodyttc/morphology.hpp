#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "bodyttc/distance.hpp"
#include "bodyttc/mask.hpp"

namespace bodyttc {

/// Discrete disk of radius r: offsets (dr, dc) with dr² + dc² <= r². Only the
/// integer bound floor(r²) matters.
inline std::int64_t disk_bound(double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("disk radius must be non-negative");
  return static_cast<std::int64_t>(std::floor(radius * radius + 1e-9));
}

/// Squared radii at which the discrete disk gains cells, up to `bound`
/// (sums of two squares).
inline std::vector<std::int64_t> disk_bounds_upto(std::int64_t bound) {
  std::set<std::int64_t> s;
  for (std::int64_t a = 0; a * a <= bound; ++a)
    for (std::int64_t b = a; a * a + b * b <= bound; ++b) s.insert(a * a + b * b);
  return {s.begin(), s.end()};
}

namespace detail {

inline int disk_pad(std::int64_t bound) {
  return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(bound)))) + 1;
}

// Dilation by the disk with squared bound k, given distances to the set.
inline std::vector<std::uint8_t> threshold_le(const std::vector<double>& d2, std::int64_t k) {
  std::vector<std::uint8_t> out(d2.size());
  for (std::size_t i = 0; i < d2.size(); ++i) out[i] = d2[i] <= static_cast<double>(k) ? 1 : 0;
  return out;
}

// Erosion by the disk with squared bound k: a cell survives when no unset
// cell lies within the disk. Requires an unset border in the frame.
inline std::vector<std::uint8_t> erode_bits(const std::vector<std::uint8_t>& bits, int h, int w, std::int64_t k) {
  std::vector<std::uint8_t> complement(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) complement[i] = bits[i] ? 0 : 1;
  const auto d2 = squared_distance(complement, h, w);
  std::vector<std::uint8_t> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = d2[i] > static_cast<double>(k) ? 1 : 0;
  return out;
}

}  // namespace detail

/// Dilation by the discrete disk; the frame grows so no cell is lost.
inline BinaryMask dilate(const BinaryMask& mask, double radius) {
  const std::int64_t k = disk_bound(radius);
  const BinaryMask padded = pad(mask, detail::disk_pad(k));
  const auto d2 = squared_distance_field(padded, true);
  return BinaryMask(padded.origin(), padded.extent(), detail::threshold_le(d2, k));
}

/// Erosion by the discrete disk; cells outside the frame count as unset.
inline BinaryMask erode(const BinaryMask& mask, double radius) {
  const std::int64_t k = disk_bound(radius);
  const BinaryMask padded = pad(mask, 1);
  auto bits = detail::erode_bits({padded.bits().begin(), padded.bits().end()}, padded.height(), padded.width(), k);
  return reframe(BinaryMask(padded.origin(), padded.extent(), std::move(bits)), mask.frame());
}

/// Classic closing (dilate then erode) by a single discrete disk. Not
/// monotone in the radius for every pair of radii; see `closing`.
inline BinaryMask disk_closing(const BinaryMask& mask, double radius) {
  const std::int64_t k = disk_bound(radius);
  const BinaryMask padded = pad(mask, detail::disk_pad(k));
  const auto dilated = detail::threshold_le(squared_distance_field(padded, true), k);
  auto bits = detail::erode_bits(dilated, padded.height(), padded.width(), k);
  return BinaryMask(padded.origin(), padded.extent(), std::move(bits));
}

/// Union of the closings by every discrete disk of radius <= `radius`.
/// Extensive and monotone in the radius.
inline BinaryMask closing(const BinaryMask& mask, double radius) {
  const std::int64_t bound = disk_bound(radius);
  const BinaryMask padded = pad(mask, detail::disk_pad(bound));
  const auto d2 = squared_distance_field(padded, true);
  std::vector<std::uint8_t> acc(padded.bits().begin(), padded.bits().end());
  for (std::int64_t k : disk_bounds_upto(bound)) {
    if (k == 0) continue;
    const auto closed = detail::erode_bits(detail::threshold_le(d2, k), padded.height(), padded.width(), k);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= closed[i];
  }
  return BinaryMask(padded.origin(), padded.extent(), std::move(acc));
}

}  // namespace bodyttc
