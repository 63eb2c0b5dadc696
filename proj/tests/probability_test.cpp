#include <gtest/gtest.h>

#include <cmath>

#include "bodyttc/probability.hpp"
#include "support.hpp"

using namespace bodyttc;
namespace bt = bodyttc::testing;

namespace {

ProbabilityMap uniform_map(Extent e, float bg, float obj) {
  ProbabilityMap m{e, {}};
  for (int i = 0; i < e.height * e.width; ++i) {
    m.values.push_back(bg);
    m.values.push_back(obj);
  }
  return m;
}

}  // namespace

TEST(MaskFromProbability, AllBackgroundIsEmpty) {
  EXPECT_TRUE(mask_from_probability(uniform_map({4, 5}, 1.0f, 0.0f)).empty());
}

TEST(MaskFromProbability, AllObjectIsFull) {
  EXPECT_EQ(mask_from_probability(uniform_map({4, 5}, 0.0f, 1.0f)).popcount(), 20u);
}

TEST(MaskFromProbability, ExactTieGoesToBackground) {
  EXPECT_TRUE(mask_from_probability(uniform_map({3, 3}, 0.5f, 0.5f)).empty());
}

TEST(MaskFromProbability, OneHotRoundTripIsIdentity) {
  Rng rng(3, 0);
  for (int t = 0; t < 100; ++t) {
    BinaryMask m = bt::random_mask(rng, 12, 12, 0.4, 0);
    m = BinaryMask({0, 0}, m.extent(), {m.bits().begin(), m.bits().end()});
    const ProbabilityMap p = one_hot(m);
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(mask_from_probability(p), m);
  }
}

TEST(Softmax, ChannelsSumToOneAndPreserveArgmax) {
  Rng rng(4, 0);
  const Extent e{6, 7};
  std::vector<float> logits;
  for (int i = 0; i < 2 * e.height * e.width; ++i) logits.push_back(static_cast<float>(rng.uniform(-30.0, 30.0)));
  logits[0] = 500.0f;  // overflow guard
  logits[1] = -500.0f;
  const ProbabilityMap p = softmax(e, logits);
  EXPECT_NO_THROW(p.validate());
  for (std::size_t i = 0; i < logits.size(); i += 2) {
    EXPECT_NEAR(p.values[i] + p.values[i + 1], 1.0f, 1e-6f);
    if (logits[i + 1] > logits[i] + 1e-3f) {
      EXPECT_GT(p.values[i + 1], p.values[i]);
    }
  }
}

TEST(ProbabilityMap, ValidateRejectsBadShapesAndValues) {
  ProbabilityMap short_map{{2, 2}, std::vector<float>(7, 0.5f)};
  EXPECT_THROW(short_map.validate(), std::invalid_argument);
  ProbabilityMap unnormalized = uniform_map({2, 2}, 0.7f, 0.7f);
  EXPECT_THROW(unnormalized.validate(), std::invalid_argument);
  EXPECT_NO_THROW(unnormalized.validate(false));
  ProbabilityMap negative = uniform_map({1, 1}, 1.5f, -0.5f);
  EXPECT_THROW(negative.validate(), std::invalid_argument);
}
