#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/scenario.hpp"

using namespace bodyttc;

namespace {

Polygon box_polygon(double w, double h) { return Polygon{{{0, 0}, {w, 0}, {w, h}, {0, h}}, {}, 0}; }

Scenario two_bodies(const Polygon& a, Vec2 pa, const Polygon& b, Vec2 pb, Vec2 va, Vec2 vb, double fr = 30.0) {
  Scenario s;
  s.id = "s";
  s.pair_id = "p";
  s.agent = a;
  s.patient = b;
  s.agent_position = pa;
  s.patient_position = pb;
  s.v_agent = va;
  s.v_patient = vb;
  s.frame_rate = fr;
  return s;
}

// Independent overlap test for closed simple polygons: an edge crossing or a
// vertex of one inside the other (winding number).
double orient(Vec2 a, Vec2 b, Vec2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

bool edges_meet(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0) || d1 == 0 || d2 == 0) && ((d3 > 0) != (d4 > 0) || d3 == 0 || d4 == 0) &&
         std::min(p1.x, p2.x) <= std::max(q1.x, q2.x) && std::min(q1.x, q2.x) <= std::max(p1.x, p2.x) &&
         std::min(p1.y, p2.y) <= std::max(q1.y, q2.y) && std::min(q1.y, q2.y) <= std::max(p1.y, p2.y);
}

bool winding_inside(Vec2 p, const std::vector<Vec2>& poly) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++wn;
    } else if (b.y <= p.y && orient(a, b, p) < 0) {
      --wn;
    }
  }
  return wn != 0;
}

bool oracle_overlap(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (edges_meet(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()])) return true;
  return winding_inside(a[0], b) || winding_inside(b[0], a);
}

// Dense time sweep: coarse steps of 0.01 frames locate the first overlapping
// step, then steps of 1e-4 frames refine it.
std::optional<double> dense_sweep_frames(const Scenario& s, double max_frames) {
  const auto at = [&](double t) {
    return oracle_overlap(translated(s.agent.vertices, s.agent_position + t * s.v_agent),
                          translated(s.patient.vertices, s.patient_position + t * s.v_patient));
  };
  if (at(0.0)) return 0.0;
  for (double t = 0.01; t <= max_frames; t += 0.01) {
    if (!at(t)) continue;
    for (double f = t - 0.01; f <= t; f += 1e-4)
      if (at(f)) return f;
    return t;
  }
  return std::nullopt;
}

GeneratorConfig pair_config(std::uint64_t seed) {
  GeneratorConfig c;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(GroundTruthTtc, SquaresClosingAlongX) {
  // Facing edges 30 apart, closing at 3 units per frame: 10 frames.
  const Scenario s = two_bodies(box_polygon(1, 1), {0, 0}, box_polygon(1, 1), {31, 0}, {3, 0}, {0, 0});
  EXPECT_NEAR(ground_truth_ttc(s), 10.0 / 30.0, 1e-12);
  const Scenario both = two_bodies(box_polygon(1, 1), {0, 0}, box_polygon(1, 1), {31, 0}, {1.5, 0}, {-1.5, 0});
  EXPECT_NEAR(ground_truth_ttc(both), 10.0 / 30.0, 1e-12);
}

TEST(GroundTruthTtc, TouchingAtStartIsZero) {
  const Scenario s = two_bodies(box_polygon(2, 2), {0, 0}, box_polygon(2, 2), {2, 0}, {1, 0}, {0, 0});
  EXPECT_EQ(ground_truth_ttc(s), 0.0);
  const Scenario overlapping = two_bodies(box_polygon(2, 2), {0, 0}, box_polygon(2, 2), {1, 1}, {-1, 0}, {1, 0});
  EXPECT_EQ(ground_truth_ttc(overlapping), 0.0);
}

TEST(GroundTruthTtc, DivergingOrMissingRaisesNoCollision) {
  const Scenario diverging = two_bodies(box_polygon(1, 1), {0, 0}, box_polygon(1, 1), {10, 0}, {-1, 0}, {1, 0});
  EXPECT_THROW(ground_truth_ttc(diverging), NoCollision);
  const Scenario passing = two_bodies(box_polygon(1, 1), {0, 0}, box_polygon(1, 1), {10, 5}, {1, 0}, {0, 0});
  EXPECT_THROW(ground_truth_ttc(passing), NoCollision);
  const Scenario still = two_bodies(box_polygon(1, 1), {0, 0}, box_polygon(1, 1), {10, 0}, {0, 0}, {0, 0});
  EXPECT_THROW(ground_truth_ttc(still), NoCollision);
}

TEST(GroundTruthTtc, VertexFirstContact) {
  // A diamond's tip meets a wall: tip at x = 4, wall at x = 10, speed 2.
  const Polygon diamond{{{0, 2}, {2, 0}, {4, 2}, {2, 4}}, {}, 0};
  const Polygon wall = box_polygon(1, 20);
  const Scenario s = two_bodies(diamond, {0, 0}, wall, {10, -8}, {2, 0}, {0, 0}, 10.0);
  EXPECT_NEAR(ground_truth_ttc(s), 3.0 / 10.0, 1e-12);
}

TEST(GroundTruthTtc, AgreesWithDenseSweepOn100RandomScenarios) {
  GeneratorConfig c;
  c.radius = 15.0;
  c.seed = 21;
  Rng rng(21, 1000);
  int collided = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng ra(c.seed, 2 * i), rb(c.seed, 2 * i + 1);
    const Polygon a = generate_polygon(c, ra);
    const Polygon b = generate_polygon(c, rb);
    const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Vec2 dir{std::cos(heading), std::sin(heading)};
    const Vec2 pb = rng.uniform(45.0, 80.0) * dir + rng.uniform(-20.0, 20.0) * perp(dir);
    const Vec2 va = rng.uniform(0.5, 3.0) * dir + rng.uniform(-0.2, 0.2) * perp(dir);
    const Vec2 vb = rng.uniform(-0.5, 0.5) * dir;
    const Scenario s = two_bodies(a, {0, 0}, b, pb, va, vb);
    const auto sweep = dense_sweep_frames(s, 400.0);
    std::optional<double> exact;
    try {
      exact = ground_truth_ttc(s) * s.frame_rate;
    } catch (const NoCollision&) {
    }
    ASSERT_EQ(sweep.has_value(), exact.has_value()) << "scenario " << i;
    if (!exact) continue;
    ++collided;
    // The sweep reports the first overlapping step, at most one step late.
    EXPECT_NEAR(*sweep, *exact, 2e-4) << "scenario " << i;
  }
  EXPECT_GT(collided, 50);
}

TEST(MatchedPair, TauOneSecondAtThirtyFps) {
  Rng rng(1);
  const auto [concave, convex] = make_matched_pair(pair_config(1), {{2, 0}, {0, 0}, 30.0, 1.0}, rng, "p");
  EXPECT_NEAR(ground_truth_ttc(concave), 1.0, 1e-6);
  EXPECT_NEAR(ground_truth_ttc(convex), 1.0, 1e-6);
  EXPECT_EQ(concave.condition, Condition::concave);
  EXPECT_EQ(convex.condition, Condition::convex);
  EXPECT_EQ(concave.pair_id, "p");
  EXPECT_EQ(convex.pair_id, "p");
  EXPECT_NE(concave.id, convex.id);
}

TEST(MatchedPair, HundredPairsShareKinematicsAndContactTime) {
  Rng pick(99);
  for (std::uint64_t i = 0; i < 100; ++i) {
    GeneratorConfig c = pair_config(i);
    c.notch.mouth = std::vector<double>{8, 12, 16, 24}[i % 4];
    const double angle = pick.uniform(0.0, 2.0 * std::numbers::pi);
    const double speed = pick.uniform(0.5, 4.0);
    const Kinematics kin{{speed * std::cos(angle), speed * std::sin(angle)},
                         {pick.uniform(-0.3, 0.3), pick.uniform(-0.3, 0.3)},
                         pick.uniform(15.0, 60.0),
                         pick.uniform(0.3, 2.0)};
    Rng rng(i, 7);
    const auto [a, b] = make_matched_pair(c, kin, rng, "pair");
    EXPECT_LT(std::abs(ground_truth_ttc(a) - ground_truth_ttc(b)), 1e-6) << i;
    EXPECT_NEAR(ground_truth_ttc(a), kin.tau_gt, 1e-6) << i;
    EXPECT_EQ(a.v_agent, b.v_agent);
    EXPECT_EQ(a.v_patient, b.v_patient);
    EXPECT_EQ(a.frame_rate, b.frame_rate);
    EXPECT_EQ(a.tau_gt, b.tau_gt);
    EXPECT_FALSE(polygons_intersect(a.agent_world(), a.patient_world()));
    EXPECT_FALSE(polygons_intersect(b.agent_world(), b.patient_world()));
    EXPECT_TRUE(satisfies_polygon_invariants(a.agent)) << i;
    EXPECT_TRUE(satisfies_polygon_invariants(b.agent)) << i;
    EXPECT_TRUE(satisfies_polygon_invariants(a.patient)) << i;
  }
}

TEST(MatchedPair, ConcaveContactIsOnTheNotchFloor) {
  Rng rng(3);
  const GeneratorConfig c = pair_config(3);
  const Kinematics kin{{2, 0}, {0, 0}, 30.0, 1.5};
  const auto [concave, convex] = make_matched_pair(c, kin, rng, "p");
  // Notch floor corners are agent vertices 2 and 3.
  const double frames = kin.tau_gt * kin.frame_rate;
  const auto agent = translated(concave.agent.vertices, concave.agent_position + frames * kin.v_agent);
  const auto patient = translated(concave.patient.vertices, concave.patient_position + frames * kin.v_patient);
  double gap = 1e9;
  for (const Vec2& p : patient) gap = std::min(gap, point_segment_distance(p, agent[2], agent[3]));
  EXPECT_LT(gap, 1e-6);
  // The patient fits through the mouth.
  const Vec2 axis = (kin.v_patient - kin.v_agent) * (-1.0 / norm(kin.v_patient - kin.v_agent));
  double lo = 1e9, hi = -1e9;
  for (const Vec2& p : concave.patient.vertices) {
    lo = std::min(lo, dot(p, perp(axis)));
    hi = std::max(hi, dot(p, perp(axis)));
  }
  EXPECT_LT(hi - lo, c.notch.mouth);
}

TEST(MatchedPair, FillingTheNotchAdvancesContact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const Kinematics kin{{0, -1.5}, {0.2, 0.5}, 30.0, 1.0};
    auto [concave, convex] = make_matched_pair(pair_config(seed), kin, rng, "p");
    // Drop the four notch vertices; the face becomes a straight edge.
    auto& v = concave.agent.vertices;
    v.erase(v.begin() + 1, v.begin() + 5);
    concave.agent.concavity_spans.clear();
    EXPECT_LT(ground_truth_ttc(concave), kin.tau_gt - 1e-3) << seed;
  }
}

TEST(MatchedPair, RejectsDegenerateKinematics) {
  Rng rng(1);
  EXPECT_THROW(make_matched_pair(pair_config(1), {{1, 1}, {1, 1}, 30.0, 1.0}, rng, "p"), PairConstructionFailed);
  EXPECT_THROW(make_matched_pair(pair_config(1), {{1, 0}, {0, 0}, 30.0, 0.0}, rng, "p"), PairConstructionFailed);
  GeneratorConfig wide = pair_config(1);
  wide.notch.patient_width_ratio = 1.2;
  EXPECT_THROW(make_matched_pair(wide, {{1, 0}, {0, 0}, 30.0, 1.0}, rng, "p"), std::invalid_argument);
}

TEST(MatchedPair, DeterministicForSameRngState) {
  Rng r1(5, 2), r2(5, 2);
  const auto a = make_matched_pair(pair_config(5), {{2, 0}, {0, 0}, 30.0, 1.0}, r1, "p");
  const auto b = make_matched_pair(pair_config(5), {{2, 0}, {0, 0}, 30.0, 1.0}, r2, "p");
  EXPECT_EQ(a.first.agent.vertices.size(), b.first.agent.vertices.size());
  for (std::size_t i = 0; i < a.first.patient.vertices.size(); ++i)
    EXPECT_EQ(a.first.patient.vertices[i], b.first.patient.vertices[i]);
  EXPECT_EQ(a.second.agent_position, b.second.agent_position);
}

TEST(Condition, RoundTripsThroughText) {
  EXPECT_EQ(parse_condition(to_string(Condition::concave)), Condition::concave);
  EXPECT_EQ(parse_condition(to_string(Condition::convex)), Condition::convex);
  EXPECT_THROW(parse_condition("flat"), std::invalid_argument);
}
