#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "bodyttc/geometry.hpp"

namespace bodyttc {

namespace detail {

// Earliest t >= 0 at which p + t*d lies on the closed segment [a, b].
inline double ray_segment_time(Vec2 p, Vec2 d, Vec2 a, Vec2 b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Vec2 e = b - a;
  const double denom = cross(d, e);
  const double scale = norm(d) * norm(e);
  if (scale == 0.0) return inf;
  if (std::abs(denom) > 1e-12 * scale) {
    const Vec2 ap = a - p;
    const double t = cross(ap, e) / denom;
    const double s = cross(ap, d) / denom;
    const double s_tol = kGeomEps / norm(e);
    if (t >= -1e-12 && s >= -s_tol && s <= 1.0 + s_tol) return std::max(0.0, t);
    return inf;
  }
  // Parallel: contact only if collinear, at whichever endpoint comes first.
  if (std::abs(cross(a - p, d)) / norm(d) > kGeomEps) return inf;
  const double dd = dot(d, d);
  const double ta = dot(a - p, d) / dd;
  const double tb = dot(b - p, d) / dd;
  if (std::max(ta, tb) < 0.0) return inf;
  if (std::min(ta, tb) <= 0.0) return 0.0;
  return std::min(ta, tb);
}

}  // namespace detail

/// Continuous first-contact time, in frames, of polygon `moving` translating
/// with velocity `w` (world units per frame) toward the fixed polygon
/// `fixed`. Both polygons are in world coordinates. Returns nullopt when the
/// polygons never touch. Overlapping or touching polygons give 0.
///
/// Under pure translation the first contact always pairs a vertex of one
/// polygon with an edge of the other, so the answer is the minimum over all
/// vertex/edge crossing times in both directions.
inline std::optional<double> first_contact_frames(std::span<const Vec2> fixed, std::span<const Vec2> moving, Vec2 w) {
  if (polygons_intersect(fixed, moving)) return 0.0;
  if (norm(w) == 0.0) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t nf = fixed.size();
  const std::size_t nm = moving.size();
  for (const Vec2& p : moving)
    for (std::size_t i = 0; i < nf; ++i)
      best = std::min(best, detail::ray_segment_time(p, w, fixed[i], fixed[(i + 1) % nf]));
  for (const Vec2& p : fixed)
    for (std::size_t i = 0; i < nm; ++i)
      best = std::min(best, detail::ray_segment_time(p, -w, moving[i], moving[(i + 1) % nm]));
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

}  // namespace bodyttc
