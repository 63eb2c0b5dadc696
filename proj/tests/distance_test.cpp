#include <gtest/gtest.h>

#include <cmath>

#include "bodyttc/distance.hpp"
#include "support.hpp"

using namespace bodyttc;
namespace bt = bodyttc::testing;

namespace {

double brute_squared(const BinaryMask& m, int r, int c, bool to_set) {
  double best = kFarSquared;
  for (int rr = 0; rr < m.height(); ++rr)
    for (int cc = 0; cc < m.width(); ++cc)
      if (m.at(rr, cc) == to_set) best = std::min(best, static_cast<double>((rr - r) * (rr - r) + (cc - c) * (cc - c)));
  return best;
}

}  // namespace

TEST(SquaredDistance, SingleFeatureCell) {
  BinaryMask m({0, 0}, {5, 7});
  m.set(2, 3);
  const auto d = squared_distance_field(m, true);
  EXPECT_EQ(d[0], 13.0);
  EXPECT_EQ(d[2 * 7 + 3], 0.0);
  EXPECT_EQ(d[4 * 7 + 6], 13.0);
}

TEST(SquaredDistance, NoFeatureStaysFar) {
  const auto d = squared_distance_field(BinaryMask({0, 0}, {3, 3}), true);
  for (double v : d) EXPECT_GE(v, kFarSquared);
}

TEST(SquaredDistance, MatchesBruteForce) {
  Rng rng(21, 0);
  for (int t = 0; t < 100; ++t) {
    const BinaryMask m = bt::random_mask(rng, 24, 24, rng.uniform(0.02, 0.4));
    for (bool to_set : {true, false}) {
      const auto d = squared_distance_field(m, to_set);
      for (int r = 0; r < m.height(); ++r)
        for (int c = 0; c < m.width(); ++c) {
          const double expected = brute_squared(m, r, c, to_set);
          const double got = d[static_cast<std::size_t>(r * m.width() + c)];
          if (expected >= kFarSquared) {
            ASSERT_GE(got, kFarSquared);
          } else {
            ASSERT_EQ(got, expected) << "trial " << t << " cell " << r << "," << c;
          }
        }
    }
  }
}

TEST(SignedDistance, NegativeInsidePositiveOutside) {
  const BinaryMask m = pad(bt::rect_mask({0, 0}, 5, 5), 2);
  const auto sdf = signed_distance(m);
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) {
      const double v = sdf[static_cast<std::size_t>(r * m.width() + c)];
      if (m.at(r, c)) {
        EXPECT_LT(v, 0.0);
      } else {
        EXPECT_GT(v, 0.0);
      }
    }
  EXPECT_DOUBLE_EQ(sdf[static_cast<std::size_t>(4 * m.width() + 4)], -3.0);  // centre of the 5x5 block
  EXPECT_DOUBLE_EQ(sdf[0], std::sqrt(8.0));
}
