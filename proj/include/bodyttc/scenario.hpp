#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bodyttc/contact.hpp"
#include "bodyttc/error.hpp"
#include "bodyttc/geometry.hpp"
#include "bodyttc/polygon.hpp"
#include "bodyttc/rng.hpp"

namespace bodyttc {

enum class Condition { concave, convex };

inline std::string_view to_string(Condition c) { return c == Condition::concave ? "concave" : "convex"; }

inline Condition parse_condition(std::string_view s) {
  if (s == "concave") return Condition::concave;
  if (s == "convex") return Condition::convex;
  throw std::invalid_argument("unknown condition '" + std::string(s) + "'");
}

/// One stimulus video: two polygons under linear motion.
struct Scenario {
  std::string id;
  std::string pair_id;
  Polygon agent;
  Polygon patient;
  Vec2 agent_position;    // world position of the agent's local origin at frame 0
  Vec2 patient_position;
  Vec2 v_agent;           // pixels per frame
  Vec2 v_patient;
  double frame_rate = 30.0;  // frames per second
  double tau_gt = 0.0;       // seconds
  Condition condition = Condition::concave;

  std::vector<Vec2> agent_world() const { return translated(agent.vertices, agent_position); }
  std::vector<Vec2> patient_world() const { return translated(patient.vertices, patient_position); }
};

struct Kinematics {
  Vec2 v_agent;
  Vec2 v_patient;
  double frame_rate = 30.0;
  double tau_gt = 1.0;
};

/// Exact-geometry time to collision in seconds.
inline double ground_truth_ttc(const Scenario& s) {
  if (!(s.frame_rate > 0.0)) throw std::invalid_argument("frame_rate must be positive");
  const auto frames = first_contact_frames(s.agent_world(), s.patient_world(), s.v_patient - s.v_agent);
  if (!frames) throw NoCollision("scenario '" + s.id + "': polygons never intersect");
  return *frames / s.frame_rate;
}

namespace detail {

// Local frame: u along the axis pointing from agent to patient, p = perp(u).
inline Vec2 from_local(Vec2 axis, double u, double p) { return u * axis + p * perp(axis); }

// Thinnest wall allowed between the notch floor and the back of the agent,
// so the rasterized agent stays one connected component.
inline constexpr double kMinAgentWall = 2.0;

// Back cap of the agent in local (u, p) coordinates: `m` points of a half
// ellipse behind the face, running from p = +W/2 to p = -W/2. Resampled until
// the notch floor corners sit at least kMinAgentWall inside the filled body.
inline std::vector<Vec2> sample_back_cap(const NotchConfig& nc, int m, double irregularity, Rng& rng,
                                         int max_attempts) {
  const double half_w = nc.body_width / 2.0;
  const double half_m = nc.mouth / 2.0;
  const double step = std::numbers::pi / (m + 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Vec2> cap;
    for (int i = 1; i <= m; ++i) {
      const double jitter = 0.45 * irregularity * rng.uniform(-1.0, 1.0);
      const double phi = std::numbers::pi / 2.0 + step * (i + jitter);
      cap.push_back({nc.body_length * std::cos(phi), half_w * std::sin(phi)});
    }
    std::vector<Vec2> body{{0.0, -half_w}, {0.0, half_w}};
    body.insert(body.end(), cap.begin(), cap.end());
    bool ok = true;
    for (const Vec2 corner : {Vec2{-nc.depth, -half_m}, Vec2{-nc.depth, half_m}})
      if (locate_point(corner, body) != Containment::inside || boundary_distance(corner, body) < kMinAgentWall)
        ok = false;
    if (ok) return cap;
  }
  throw PairConstructionFailed("no back cap leaves a wall behind the notch; deepen the body or reduce the notch");
}

inline Polygon make_agent(const NotchConfig& nc, Vec2 axis, std::span<const Vec2> cap, bool with_notch) {
  const double half_w = nc.body_width / 2.0;
  const double half_m = nc.mouth / 2.0;
  std::vector<Vec2> v;
  v.push_back(from_local(axis, 0.0, -half_w));
  if (with_notch) {
    v.push_back(from_local(axis, 0.0, -half_m));
    v.push_back(from_local(axis, -nc.depth, -half_m));
    v.push_back(from_local(axis, -nc.depth, half_m));
    v.push_back(from_local(axis, 0.0, half_m));
  }
  v.push_back(from_local(axis, 0.0, half_w));
  for (const Vec2& q : cap) v.push_back(from_local(axis, q.x, q.y));
  Polygon poly{std::move(v), {}, 0};
  if (with_notch) poly.concavity_spans = {{2, 3}};
  return poly;
}

// Convex patient with a flat leading face; local origin at the face centre.
inline Polygon make_patient(const GeneratorConfig& config, Vec2 axis, Rng& rng) {
  GeneratorConfig pc = config;
  pc.concavity_range = {0, 0};
  Polygon base = generate_polygon(pc, rng);
  // Express in (u, p) coordinates, cut the leading (-u) side flat.
  std::vector<Vec2> local;
  for (const Vec2& q : base.vertices) local.push_back({dot(q, axis), dot(q, perp(axis))});
  const Box b0 = bounding_box(local);
  const double cut = b0.min.x + config.notch.patient_face_cut * b0.width();
  local = clip_half_plane(local, {1.0, 0.0}, cut);
  // Drop near-duplicate or collinear vertices introduced by the cut.
  std::vector<Vec2> clean;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const Vec2 prev = clean.empty() ? local.back() : clean.back();
    if (norm(local[i] - prev) > 1e-9) clean.push_back(local[i]);
  }
  for (std::size_t i = 0; i < clean.size();) {
    if (clean.size() > 3 && std::abs(vertex_turn(clean, i)) < 1e-9) {
      clean.erase(clean.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  const Box b = bounding_box(clean);
  const double scale = config.notch.patient_width_ratio * config.notch.mouth / b.height();
  const double p_mid = 0.5 * (b.min.y + b.max.y);
  std::vector<Vec2> world;
  for (const Vec2& q : clean) world.push_back(from_local(axis, scale * (q.x - b.min.x), scale * (q.y - p_mid)));
  return Polygon{std::move(world), {}, base.color_index};
}

}  // namespace detail

/// Build a concave/convex matched pair with identical kinematics and exact
/// time to collision.
///
/// The agent carries a rectangular notch centred on the face that leads
/// toward the patient; the patient is narrower than the notch mouth, so in
/// the concave condition the first contact is on the notch floor. The convex
/// agent is the same silhouette with the notch filled, moved back along the
/// motion axis until its exact contact time matches.
inline std::pair<Scenario, Scenario> make_matched_pair(const GeneratorConfig& config, const Kinematics& kin,
                                                       Rng& rng, const std::string& pair_id) {
  config.validate();
  const NotchConfig& nc = config.notch;
  if (!(nc.mouth > 0.0 && nc.depth > 0.0 && nc.body_length > 0.0))
    throw std::invalid_argument("notch mouth, depth and body length must be positive");
  if (!(nc.body_width > nc.mouth + 2.0)) throw std::invalid_argument("body_width must exceed mouth + 2");
  if (!(nc.patient_width_ratio > 0.0 && nc.patient_width_ratio < 1.0))
    throw std::invalid_argument("patient must be strictly narrower than the notch mouth");
  const double half_m_ratio = nc.mouth / nc.body_width;
  if (!(nc.depth < nc.body_length * std::sqrt(1.0 - half_m_ratio * half_m_ratio)))
    throw std::invalid_argument("notch depth exceeds the body behind it");
  if (!(kin.frame_rate > 0.0)) throw std::invalid_argument("frame_rate must be positive");
  if (!(kin.tau_gt > 0.0)) throw PairConstructionFailed("tau_gt must be positive");

  const Vec2 w = kin.v_patient - kin.v_agent;
  const double speed = norm(w);
  if (speed == 0.0) throw PairConstructionFailed("relative velocity is zero");
  const Vec2 axis = (-1.0 / speed) * w;

  // The filled agent has 2 face vertices plus the back cap; at least three
  // cap vertices keep the body behind the notch thick enough.
  const int back_vertices = static_cast<int>(
      rng.uniform_int(std::max(3, config.vertex_range.first - 2), std::max(3, config.vertex_range.second - 2)));
  const auto cap = detail::sample_back_cap(nc, back_vertices, config.irregularity, rng, config.max_attempts);
  Polygon concave_agent = detail::make_agent(nc, axis, cap, true);
  Polygon convex_agent = detail::make_agent(nc, axis, cap, false);
  Polygon patient = detail::make_patient(config, axis, rng);
  const int color_agent = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(kPaletteSize) - 1));
  concave_agent.color_index = convex_agent.color_index = color_agent;

  const double gap = kin.tau_gt * kin.frame_rate * speed;
  Vec2 agent_pos{0.0, 0.0};
  Vec2 patient_pos = (gap - nc.depth) * axis;
  Vec2 convex_pos = agent_pos - nc.depth * axis;

  Scenario concave{pair_id + "_concave", pair_id, concave_agent, patient, agent_pos, patient_pos,
                   kin.v_agent, kin.v_patient, kin.frame_rate, kin.tau_gt, Condition::concave};
  Scenario convex{pair_id + "_convex", pair_id, convex_agent, patient, convex_pos, patient_pos,
                  kin.v_agent, kin.v_patient, kin.frame_rate, kin.tau_gt, Condition::convex};

  // Centre the joint layout on the canvas with an integer shift.
  Box layout;
  for (const Scenario* s : {&concave, &convex}) {
    for (const Vec2& p : s->agent_world()) layout.extend(p);
    for (const Vec2& p : s->patient_world()) layout.extend(p);
  }
  if (layout.width() + 4.0 > config.canvas_width || layout.height() + 4.0 > config.canvas_height)
    throw PairConstructionFailed("pair layout does not fit the canvas");
  const Vec2 shift{std::round(config.canvas_width / 2.0 - 0.5 * (layout.min.x + layout.max.x)),
                   std::round(config.canvas_height / 2.0 - 0.5 * (layout.min.y + layout.max.y))};
  for (Scenario* s : {&concave, &convex}) {
    s->agent_position = s->agent_position + shift;
    s->patient_position = s->patient_position + shift;
  }

  const auto check = [&](const Scenario& s) {
    double t = 0.0;
    try {
      t = ground_truth_ttc(s);
    } catch (const NoCollision&) {
      throw PairConstructionFailed("pair '" + pair_id + "': " + std::string(to_string(s.condition)) +
                                   " scenario never collides");
    }
    return t;
  };
  const double t_concave = check(concave);
  if (std::abs(t_concave - kin.tau_gt) >= 1e-6)
    throw PairConstructionFailed("pair '" + pair_id + "': concave contact misses the notch floor");
  // One correction step absorbs rounding in the closed-form placement.
  const double t_convex0 = check(convex);
  if (std::abs(t_convex0 - t_concave) > 1e-12)
    convex.agent_position = convex.agent_position + ((t_convex0 - t_concave) * kin.frame_rate * speed) * axis;
  const double t_convex = check(convex);
  if (std::abs(t_convex - t_concave) >= 1e-6)
    throw PairConstructionFailed("pair '" + pair_id + "': cannot equalize contact times");
  return {std::move(concave), std::move(convex)};
}

}  // namespace bodyttc
