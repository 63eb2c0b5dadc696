#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "bodyttc/components.hpp"
#include "bodyttc/error.hpp"
#include "bodyttc/geometry.hpp"
#include "bodyttc/mask.hpp"
#include "bodyttc/raster.hpp"
#include "bodyttc/scenario.hpp"

namespace bodyttc {

struct TtcQuery {
  BinaryMask m1;
  BinaryMask m2;
  Vec2 v1;  // pixels per frame, x = column
  Vec2 v2;
  double frame_rate = 30.0;
  int horizon_frames = 300;  // N_max; frame 0 is always examined
};

struct TtcResult {
  bool collided = false;
  std::optional<int> first_overlap_frame;
  std::optional<double> ttc_seconds;

  static TtcResult hit(int frame, double frame_rate) {
    return {true, frame, static_cast<double>(frame) / frame_rate};
  }
  static TtcResult miss() { return {}; }
};

/// Lattice displacement after n frames: round(n * v) per component, half
/// away from zero, computed directly from n.
inline Cell displacement_at(int n, Vec2 v) {
  return {static_cast<int>(std::round(n * v.y)), static_cast<int>(std::round(n * v.x))};
}

namespace detail {

// Frames that can be skipped from frame n without missing an overlap. The
// relative displacement along one axis changes by at most k*|w| + 2 over k
// frames (each rounding contributes < 1 cell of slack), so bounding boxes
// separated by `gap` cells cannot meet before k*|w| + 2 >= gap.
inline int safe_skip(int gap, double speed) {
  if (gap <= 2) return 1;
  if (speed == 0.0) return -1;  // separated forever along this axis
  const double k = std::ceil((gap - 2) / speed - 1e-9);
  return std::max(1, static_cast<int>(std::min(k, 1e9)));
}

inline int axis_gap(int a0, int a1, int b0, int b1) {
  if (b0 > a1) return b0 - a1;
  if (a0 > b1) return a0 - b1;
  return 0;
}

}  // namespace detail

/// Minimal frame n in [0, N_max] at which the translated masks share a cell.
/// Steps over frames that the bounding-box gap rules out, and returns the
/// same n as a frame-by-frame scan.
inline TtcResult simulate_ttc(const TtcQuery& q) {
  if (!(q.frame_rate > 0.0)) throw std::invalid_argument("frame_rate must be positive");
  if (q.horizon_frames < 0) throw std::invalid_argument("horizon_frames must be >= 0");
  if (q.m1.empty() || q.m2.empty()) throw std::invalid_argument("TTC masks must be non-empty");
  const BinaryMask a = crop(q.m1);
  const BinaryMask b = crop(q.m2);
  const Vec2 w = q.v2 - q.v1;
  int n = 0;
  while (n <= q.horizon_frames) {
    const Cell da = displacement_at(n, q.v1);
    const Cell db = displacement_at(n, q.v2);
    const CellBox fa = a.frame(), fb = b.frame();
    const int gap_r = detail::axis_gap(fa.min.row + da.row, fa.max.row + da.row, fb.min.row + db.row, fb.max.row + db.row);
    const int gap_c = detail::axis_gap(fa.min.col + da.col, fa.max.col + da.col, fb.min.col + db.col, fb.max.col + db.col);
    if (gap_r == 0 && gap_c == 0) {
      if (overlap_shifted(a, da, b, db)) return TtcResult::hit(n, q.frame_rate);
      ++n;
      continue;
    }
    const int skip_r = gap_r > 0 ? detail::safe_skip(gap_r, std::abs(w.y)) : 1;
    const int skip_c = gap_c > 0 ? detail::safe_skip(gap_c, std::abs(w.x)) : 1;
    if (skip_r < 0 || skip_c < 0) break;
    n += std::max(skip_r, skip_c);
  }
  throw NoCollisionWithinHorizon(q.horizon_frames);
}

/// Horizon in frames for a horizon in seconds.
inline int horizon_frames_for(double horizon_s, double frame_rate) {
  if (!(horizon_s >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  return static_cast<int>(std::ceil(horizon_s * frame_rate - 1e-9));
}

/// Agent and patient masks of one scenario.
struct ObjectMasks {
  BinaryMask agent;
  BinaryMask patient;
};

/// Exact rasterizations of both objects at frame 0, unbounded lattice.
inline ObjectMasks exact_masks(const Scenario& s) {
  return {rasterize_unbounded(s.agent, s.agent_position), rasterize_unbounded(s.patient, s.patient_position)};
}

inline Vec2 mask_centroid(const BinaryMask& m) {
  double sr = 0.0, sc = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c)
      if (m.at(r, c)) {
        sr += m.origin().row + r + 0.5;
        sc += m.origin().col + c + 0.5;
        ++n;
      }
  if (n == 0) return {};
  return {sc / static_cast<double>(n), sr / static_cast<double>(n)};
}

/// Segment a scene mask holding both objects: take the two largest
/// components and assign them to agent/patient by nearest polygon centroid.
/// The returned masks are cropped to their occupied cells.
inline ObjectMasks segment_objects(const Scenario& s, const BinaryMask& scene) {
  auto [full1, full2] = two_largest(scene);
  BinaryMask m1 = crop(full1), m2 = crop(full2);
  const Vec2 ca = area_centroid(s.agent_world());
  const Vec2 cp = area_centroid(s.patient_world());
  const Vec2 c1 = mask_centroid(m1), c2 = mask_centroid(m2);
  const double keep = norm(c1 - ca) + norm(c2 - cp);
  const double swap = norm(c2 - ca) + norm(c1 - cp);
  if (swap < keep) return {std::move(m2), std::move(m1)};
  return {std::move(m1), std::move(m2)};
}

struct ScenarioTtc {
  std::string scenario_id;
  std::string pair_id;
  Condition condition = Condition::concave;
  double tau_gt_s = 0.0;
  TtcResult result;
};

/// Simulate one scenario from its object masks with the true kinematics.
inline ScenarioTtc scenario_ttc(const Scenario& s, const ObjectMasks& masks, double horizon_s) {
  const TtcQuery q{masks.agent, masks.patient, s.v_agent, s.v_patient, s.frame_rate,
                   horizon_frames_for(horizon_s, s.frame_rate)};
  return {s.id, s.pair_id, s.condition, s.tau_gt, simulate_ttc(q)};
}

}  // namespace bodyttc
