#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bodyttc/mask.hpp"

namespace bodyttc {

/// Two-class per-pixel scores, stored H x W x 2 row-major (background
/// channel first).
struct ProbabilityMap {
  Extent extent;
  std::vector<float> values;

  float background(int r, int c) const { return values[offset(r, c)]; }
  float object(int r, int c) const { return values[offset(r, c) + 1]; }

  std::size_t offset(int r, int c) const {
    return 2 * (static_cast<std::size_t>(r) * static_cast<std::size_t>(extent.width) + static_cast<std::size_t>(c));
  }

  /// Shape check plus, when `require_normalized`, the probability invariants
  /// (values in [0, 1], channels summing to 1 within 1e-5).
  void validate(bool require_normalized = true) const {
    if (extent.height <= 0 || extent.width <= 0) throw std::invalid_argument("probability map extent must be positive");
    if (values.size() != 2 * static_cast<std::size_t>(extent.height) * static_cast<std::size_t>(extent.width))
      throw std::invalid_argument("probability map value count does not match H x W x 2");
    if (!require_normalized) return;
    for (std::size_t i = 0; i < values.size(); i += 2) {
      const float bg = values[i], obj = values[i + 1];
      if (!(bg >= 0.0f && bg <= 1.0f && obj >= 0.0f && obj <= 1.0f) || std::abs(bg + obj - 1.0f) > 1e-5f)
        throw std::invalid_argument("probability map is not normalized");
    }
  }
};

/// Channel softmax of raw logits laid out like ProbabilityMap.
inline ProbabilityMap softmax(Extent extent, const std::vector<float>& logits) {
  ProbabilityMap out{extent, logits};
  out.validate(false);
  for (std::size_t i = 0; i < out.values.size(); i += 2) {
    const double a = logits[i], b = logits[i + 1];
    const double m = std::max(a, b);
    const double ea = std::exp(a - m), eb = std::exp(b - m);
    out.values[i] = static_cast<float>(ea / (ea + eb));
    out.values[i + 1] = static_cast<float>(eb / (ea + eb));
  }
  return out;
}

/// Argmax over the two classes; exact ties go to background.
inline BinaryMask mask_from_probability(const ProbabilityMap& map) {
  map.validate(false);
  BinaryMask out({0, 0}, map.extent);
  for (int r = 0; r < map.extent.height; ++r)
    for (int c = 0; c < map.extent.width; ++c)
      if (map.object(r, c) > map.background(r, c)) out.set(r, c);
  return out;
}

inline ProbabilityMap one_hot(const BinaryMask& mask) {
  ProbabilityMap out{mask.extent(), std::vector<float>(2 * mask.bits().size(), 0.0f)};
  for (std::size_t i = 0; i < mask.bits().size(); ++i) out.values[2 * i + (mask.bits()[i] ? 1 : 0)] = 1.0f;
  return out;
}

}  // namespace bodyttc
