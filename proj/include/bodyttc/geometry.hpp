#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace bodyttc {

/// World-space point or vector. x grows with image column, y with image row.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Rotation by +90 degrees.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// Absolute tolerance for on-boundary and touching predicates, in world units.
inline constexpr double kGeomEps = 1e-9;

struct Box {
  Vec2 min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void extend(Vec2 p) {
    min = {std::min(min.x, p.x), std::min(min.y, p.y)};
    max = {std::max(max.x, p.x), std::max(max.y, p.y)};
  }
  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
};

inline Box bounding_box(std::span<const Vec2> pts) {
  Box b;
  for (const Vec2& p : pts) b.extend(p);
  return b;
}

/// Shoelace area; positive for counter-clockwise vertex order.
inline double signed_area(std::span<const Vec2> poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * acc;
}

inline double perimeter(std::span<const Vec2> poly) {
  double acc = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) acc += norm(poly[(i + 1) % n] - poly[i]);
  return acc;
}

inline Vec2 area_centroid(std::span<const Vec2> poly) {
  double a = 0.0;
  Vec2 c;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = poly[i];
    const Vec2 q = poly[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    c = c + w * (p + q);
  }
  if (std::abs(a) < 1e-300) return poly.empty() ? Vec2{} : poly[0];
  return (1.0 / (3.0 * a)) * c;
}

inline std::vector<Vec2> translated(std::span<const Vec2> poly, Vec2 offset) {
  std::vector<Vec2> out;
  out.reserve(poly.size());
  for (const Vec2& p : poly) out.push_back(p + offset);
  return out;
}

/// Turn at vertex i: cross(v_i - v_{i-1}, v_{i+1} - v_i). Positive means a
/// convex vertex for counter-clockwise polygons.
inline double vertex_turn(std::span<const Vec2> poly, std::size_t i) {
  const std::size_t n = poly.size();
  const Vec2 prev = poly[(i + n - 1) % n];
  const Vec2 next = poly[(i + 1) % n];
  return cross(poly[i] - prev, next - poly[i]);
}

inline bool point_on_segment(Vec2 p, Vec2 a, Vec2 b, double eps = kGeomEps) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  if (len == 0.0) return norm(p - a) <= eps;
  if (std::abs(cross(ab, p - a)) / len > eps) return false;
  const double t = dot(p - a, ab) / (len * len);
  return t >= -eps / len && t <= 1.0 + eps / len;
}

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return norm(p - (a + t * d));
}

/// Distance from p to the polygon outline.
inline double boundary_distance(Vec2 p, std::span<const Vec2> poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

/// Closed-segment intersection test (touching and collinear overlap count).
inline bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, double eps = kGeomEps) {
  const auto side = [eps](Vec2 o, Vec2 d, Vec2 p) {
    const double len = norm(d);
    const double c = cross(d, p - o);
    const double scaled = len > 0.0 ? c / len : 0.0;
    return scaled > eps ? 1 : (scaled < -eps ? -1 : 0);
  };
  const int d1 = side(b0, b1 - b0, a0);
  const int d2 = side(b0, b1 - b0, a1);
  const int d3 = side(a0, a1 - a0, b0);
  const int d4 = side(a0, a1 - a0, b1);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  return point_on_segment(a0, b0, b1, eps) || point_on_segment(a1, b0, b1, eps) ||
         point_on_segment(b0, a0, a1, eps) || point_on_segment(b1, a0, a1, eps);
}

/// O(n^2) simplicity check: non-adjacent edges must not meet, adjacent edges
/// may only share their common vertex.
inline bool is_simple(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a0 = poly[i];
    const Vec2 a1 = poly[(i + 1) % n];
    if (norm(a1 - a0) <= kGeomEps) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 b0 = poly[j];
      const Vec2 b1 = poly[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex only: the far endpoints must not lie on the other edge.
        const Vec2 a_far = (j == i + 1) ? a0 : a1;
        const Vec2 b_far = (j == i + 1) ? b1 : b0;
        if (point_on_segment(a_far, b0, b1) || point_on_segment(b_far, a0, a1)) return false;
        continue;
      }
      if (segments_intersect(a0, a1, b0, b1)) return false;
    }
  }
  return true;
}

enum class Containment { outside, boundary, inside };

/// Even-odd point location with explicit boundary detection.
inline Containment locate_point(Vec2 p, std::span<const Vec2> poly, double eps = kGeomEps) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[j];
    const Vec2 b = poly[i];
    if (point_on_segment(p, a, b, eps)) return Containment::boundary;
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Containment::inside : Containment::outside;
}

/// True iff the closed polygonal regions share at least one point.
inline bool polygons_intersect(std::span<const Vec2> a, std::span<const Vec2> b) {
  const Box ba = bounding_box(a);
  const Box bb = bounding_box(b);
  if (ba.max.x < bb.min.x - kGeomEps || bb.max.x < ba.min.x - kGeomEps ||
      ba.max.y < bb.min.y - kGeomEps || bb.max.y < ba.min.y - kGeomEps) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
    }
  }
  return locate_point(a[0], b) != Containment::outside ||
         locate_point(b[0], a) != Containment::outside;
}

/// Clip a polygon to the half-plane dot(p, normal) >= offset (single-plane
/// Sutherland-Hodgman). Exact for convex input.
inline std::vector<Vec2> clip_half_plane(std::span<const Vec2> poly, Vec2 normal, double offset) {
  std::vector<Vec2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const double dc = dot(cur, normal) - offset;
    const double dn = dot(nxt, normal) - offset;
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

}  // namespace bodyttc
