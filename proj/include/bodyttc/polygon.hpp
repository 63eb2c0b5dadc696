#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/geometry.hpp"
#include "bodyttc/rng.hpp"

namespace bodyttc {

/// Inclusive run of vertex indices forming one notch. Runs never wrap past
/// index 0 because generated polygons always start on a convex vertex.
struct ConcavitySpan {
  int first = 0;
  int last = 0;
  friend bool operator==(const ConcavitySpan&, const ConcavitySpan&) = default;
};

struct Polygon {
  std::vector<Vec2> vertices;  // counter-clockwise, local coordinates
  std::vector<ConcavitySpan> concavity_spans;
  int color_index = 0;

  std::size_t size() const { return vertices.size(); }
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr std::size_t kPaletteSize = 24;
using Palette = std::array<Rgb, kPaletteSize>;

/// 24 hues spaced 15 degrees apart at full value and 0.8 saturation.
inline Palette default_palette() {
  Palette p{};
  for (std::size_t i = 0; i < kPaletteSize; ++i) {
    const double h = static_cast<double>(i) / 4.0;  // sextant in [0, 6)
    const int sector = static_cast<int>(h) % 6;
    const double f = h - std::floor(h);
    const double v = 1.0, s = 0.8;
    const double pv = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
    double r = 0, g = 0, b = 0;
    switch (sector) {
      case 0: r = v, g = t, b = pv; break;
      case 1: r = q, g = v, b = pv; break;
      case 2: r = pv, g = v, b = t; break;
      case 3: r = pv, g = q, b = v; break;
      case 4: r = t, g = pv, b = v; break;
      default: r = v, g = pv, b = q; break;
    }
    const auto to8 = [](double c) { return static_cast<std::uint8_t>(std::lround(c * 255.0)); };
    p[i] = {to8(r), to8(g), to8(b)};
  }
  return p;
}

/// Geometry of the rectangular notch carried by matched-pair agents.
struct NotchConfig {
  double mouth = 16.0;              // notch width across the leading face
  double depth = 24.0;              // notch depth along the motion axis
  double body_width = 56.0;         // leading-face width of the agent
  double body_length = 48.0;        // half-ellipse depth behind the face
  double patient_width_ratio = 0.6; // patient lateral extent / mouth, in (0, 1)
  double patient_face_cut = 0.15;   // fraction of patient depth cut to a flat face
};

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::pair<int, int> vertex_range{5, 12};
  std::pair<int, int> concavity_range{0, 3};
  double irregularity = 0.3;
  double spikiness = 0.15;
  double radius = 60.0;  // mean vertex radius, world units
  Palette palette = default_palette();
  int canvas_height = 512;
  int canvas_width = 512;
  int max_attempts = 1000;
  NotchConfig notch;

  void validate() const {
    if (vertex_range.first < 3 || vertex_range.first > vertex_range.second)
      throw std::invalid_argument("vertex_range must be non-empty with min >= 3");
    if (concavity_range.first < 0 || concavity_range.first > concavity_range.second)
      throw std::invalid_argument("concavity_range must be non-empty and non-negative");
    if (!(irregularity >= 0.0 && irregularity <= 1.0))
      throw std::invalid_argument("irregularity must lie in [0, 1]");
    if (!(spikiness >= 0.0 && spikiness <= 1.0))
      throw std::invalid_argument("spikiness must lie in [0, 1]");
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    if (canvas_height <= 0 || canvas_width <= 0) throw std::invalid_argument("canvas must be non-empty");
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  }
};

/// Largest number of separated reflex runs an n-gon can carry: every run
/// needs a convex separator and at least three vertices stay convex.
constexpr int max_feasible_concavities(int n) { return std::max(0, std::min(n - 3, n / 2)); }

/// Recompute concavity spans as maximal runs of reflex vertices. Requires
/// vertex 0 to be convex.
inline std::vector<ConcavitySpan> reflex_runs(std::span<const Vec2> poly) {
  std::vector<ConcavitySpan> spans;
  const int n = static_cast<int>(poly.size());
  int i = 0;
  while (i < n) {
    if (vertex_turn(poly, static_cast<std::size_t>(i)) < 0.0) {
      int j = i;
      while (j + 1 < n && vertex_turn(poly, static_cast<std::size_t>(j + 1)) < 0.0) ++j;
      spans.push_back({i, j});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return spans;
}

inline int reflex_count(std::span<const Vec2> poly) {
  int count = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (vertex_turn(poly, i) < 0.0) ++count;
  return count;
}

/// Checks every Polygon invariant except the configured vertex bounds.
inline bool satisfies_polygon_invariants(const Polygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3 || !is_simple(v) || signed_area(v) <= 0.0) return false;
  std::vector<bool> in_span(v.size(), false);
  for (const auto& s : poly.concavity_spans) {
    if (s.first < 0 || s.last < s.first || s.last >= static_cast<int>(v.size())) return false;
    bool has_reflex = false;
    for (int i = s.first; i <= s.last; ++i) {
      in_span[static_cast<std::size_t>(i)] = true;
      if (vertex_turn(v, static_cast<std::size_t>(i)) < 0.0) has_reflex = true;
    }
    if (!has_reflex) return false;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!in_span[i] && !(vertex_turn(v, i) > 0.0)) return false;
  return true;
}

namespace detail {

// Distance along the ray from the origin at `angle` to the chord p-q.
inline double ray_to_chord(double angle, Vec2 p, Vec2 q) {
  const Vec2 u{std::cos(angle), std::sin(angle)};
  const Vec2 e = q - p;
  const double denom = cross(u, e);
  if (denom <= 0.0) return -1.0;
  return cross(p, e) / denom;
}

// Rotate so that index 0 is a convex vertex.
inline void start_on_convex(std::vector<Vec2>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (vertex_turn(v, i) > 0.0) {
      std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
      return;
    }
  }
}

}  // namespace detail

/// Radial polygon sampler.
///
/// Draw order: vertex count, concavity count, color, then per attempt the
/// start angle, angular steps (jittered by irregularity), radii (jittered by
/// spikiness), notch indices and notch radii. A notch vertex is pulled
/// inside the chord of its neighbours, which makes it reflex; any other
/// vertex left reflex by the radial jitter is pushed out past its chord.
/// Attempts whose reflex runs still do not match the sampled concavity count
/// are rejected.
inline Polygon generate_polygon(const GeneratorConfig& config, Rng& rng) {
  config.validate();
  const int n = static_cast<int>(rng.uniform_int(config.vertex_range.first, config.vertex_range.second));
  const int k_hi = std::min(config.concavity_range.second, max_feasible_concavities(n));
  if (config.concavity_range.first > k_hi)
    throw GenerationExhausted("no " + std::to_string(n) + "-gon can carry " +
                              std::to_string(config.concavity_range.first) + " concavities");
  const int k = static_cast<int>(rng.uniform_int(config.concavity_range.first, k_hi));
  const int color = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(kPaletteSize) - 1));

  const double two_pi = 2.0 * std::numbers::pi;
  const double base = two_pi / n;
  const double R = config.radius;

  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const double start = rng.uniform(0.0, two_pi);
    std::vector<double> steps(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& s : steps) {
      s = base * (1.0 + 0.9 * config.irregularity * rng.uniform(-1.0, 1.0));
      total += s;
    }
    std::vector<double> angles(static_cast<std::size_t>(n));
    double acc = start;
    for (int i = 0; i < n; ++i) {
      angles[static_cast<std::size_t>(i)] = acc;
      acc += steps[static_cast<std::size_t>(i)] * two_pi / total;
    }
    std::vector<double> radii(static_cast<std::size_t>(n));
    for (auto& r : radii) r = std::max(0.05 * R, R * (1.0 + config.spikiness * rng.uniform(-1.0, 1.0)));

    // Notch indices: pairwise non-adjacent on the cycle.
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    std::vector<bool> notch(static_cast<std::size_t>(n), false);
    int placed = 0;
    for (int idx : order) {
      if (placed == k) break;
      const auto prev = static_cast<std::size_t>((idx + n - 1) % n);
      const auto next = static_cast<std::size_t>((idx + 1) % n);
      if (notch[prev] || notch[next]) continue;
      notch[static_cast<std::size_t>(idx)] = true;
      ++placed;
    }
    if (placed < k) continue;

    const auto point = [&](int i) {
      const auto u = static_cast<std::size_t>(i);
      return Vec2{radii[u] * std::cos(angles[u]), radii[u] * std::sin(angles[u])};
    };
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!notch[static_cast<std::size_t>(i)]) continue;
      const double chord = detail::ray_to_chord(angles[static_cast<std::size_t>(i)], point((i + n - 1) % n),
                                                point((i + 1) % n));
      if (chord <= 0.0) ok = false;
      radii[static_cast<std::size_t>(i)] = chord * rng.uniform(0.35, 0.75);
    }
    if (!ok) continue;

    // Spikiness can leave other vertices reflex. Push them 5% past their
    // neighbours' chord; repeat while the fix makes a neighbour reflex.
    const double tol = 1e-6 * R * R;
    const auto turn_at = [&](int i) {
      const Vec2 a = point((i + n - 1) % n), b = point(i), c = point((i + 1) % n);
      return cross(b - a, c - b);
    };
    for (int pass = 0; pass < 4 * n; ++pass) {
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        if (notch[u] || turn_at(i) > tol) continue;
        const double chord = detail::ray_to_chord(angles[u], point((i + n - 1) % n), point((i + 1) % n));
        if (chord <= 0.0) continue;
        radii[u] = 1.05 * chord;
        changed = true;
      }
      if (!changed) break;
    }

    std::vector<Vec2> verts;
    verts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) verts.push_back(point(i));

    // Reject near-collinear vertices; they are neither convex nor reflex.
    bool degenerate = false;
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (std::abs(vertex_turn(verts, i)) < tol) degenerate = true;
    if (degenerate) continue;

    detail::start_on_convex(verts);
    Polygon poly{std::move(verts), {}, color};
    poly.concavity_spans = reflex_runs(poly.vertices);
    if (static_cast<int>(poly.concavity_spans.size()) != k) continue;
    if (!is_simple(poly.vertices) || signed_area(poly.vertices) <= 0.0) continue;
    return poly;
  }
  throw GenerationExhausted("no valid polygon after " + std::to_string(config.max_attempts) + " attempts");
}

}  // namespace bodyttc
