#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bodyttc/distance.hpp"
#include "bodyttc/hull.hpp"
#include "bodyttc/mask.hpp"
#include "bodyttc/morphology.hpp"

namespace bodyttc {

enum class CoarseningKind { identity, closing, hull_blend, alpha_smooth, blur_threshold };

inline std::string_view to_string(CoarseningKind k) {
  switch (k) {
    case CoarseningKind::identity: return "identity";
    case CoarseningKind::closing: return "closing";
    case CoarseningKind::hull_blend: return "hull_blend";
    case CoarseningKind::alpha_smooth: return "alpha_smooth";
    case CoarseningKind::blur_threshold: return "blur_threshold";
  }
  return "identity";
}

/// A point on the exact-outline to convex-hull continuum.
/// strength: disk radius (closing, alpha_smooth), Gaussian sigma
/// (blur_threshold) or blend weight in [0, 1] (hull_blend).
struct CoarseningOp {
  CoarseningKind kind = CoarseningKind::identity;
  double strength = 0.0;

  void validate() const {
    if (!std::isfinite(strength) || strength < 0.0) throw std::invalid_argument("coarsening strength must be >= 0");
    if (kind == CoarseningKind::identity && strength != 0.0)
      throw std::invalid_argument("identity coarsening takes strength 0");
    if (kind == CoarseningKind::hull_blend && strength > 1.0)
      throw std::invalid_argument("hull_blend strength must lie in [0, 1]");
  }

  friend bool operator==(const CoarseningOp&, const CoarseningOp&) = default;
};

/// "kind:strength" (strength optional for identity).
inline CoarseningOp parse_coarsening(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  CoarseningOp op;
  if (name == "identity") op.kind = CoarseningKind::identity;
  else if (name == "closing") op.kind = CoarseningKind::closing;
  else if (name == "hull_blend") op.kind = CoarseningKind::hull_blend;
  else if (name == "alpha_smooth") op.kind = CoarseningKind::alpha_smooth;
  else if (name == "blur_threshold") op.kind = CoarseningKind::blur_threshold;
  else throw std::invalid_argument("unknown coarsening kind '" + std::string(name) + "'");
  if (colon != std::string_view::npos) {
    const std::string_view num = text.substr(colon + 1);
    const auto res = std::from_chars(num.data(), num.data() + num.size(), op.strength);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size())
      throw std::invalid_argument("bad coarsening strength '" + std::string(num) + "'");
  } else if (op.kind != CoarseningKind::identity) {
    throw std::invalid_argument("coarsening '" + std::string(name) + "' needs a strength");
  }
  op.validate();
  return op;
}

namespace detail {

inline BinaryMask hull_blend(const BinaryMask& mask, double lambda) {
  if (mask.empty()) return mask;
  const BinaryMask frame = pad(mask, 1);
  const BinaryMask hull = convex_hull_mask(frame);
  const auto sdf_m = signed_distance(frame);
  const auto sdf_h = signed_distance(hull);
  std::vector<std::uint8_t> bits(sdf_m.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = (1.0 - lambda) * sdf_m[i] + lambda * sdf_h[i] <= 0.0 ? 1 : 0;
  return BinaryMask(frame.origin(), frame.extent(), std::move(bits));
}

inline BinaryMask blur_threshold(const BinaryMask& mask, double sigma) {
  if (sigma == 0.0) return mask;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = w;
    total += w;
  }
  for (auto& w : kernel) w /= total;
  const BinaryMask frame = pad(mask, radius);
  const int H = frame.height(), W = frame.width();
  const auto idx = [W](int r, int c) { return static_cast<std::size_t>(r) * static_cast<std::size_t>(W) + static_cast<std::size_t>(c); };
  std::vector<double> rows(static_cast<std::size_t>(H) * static_cast<std::size_t>(W), 0.0);
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int cc = c + k;
        if (cc >= 0 && cc < W && frame.at(r, cc)) acc += kernel[static_cast<std::size_t>(k + radius)];
      }
      rows[idx(r, c)] = acc;
    }
  std::vector<std::uint8_t> bits(rows.size());
  for (int r = 0; r < H; ++r)
    for (int c = 0; c < W; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int rr = r + k;
        if (rr >= 0 && rr < H) acc += kernel[static_cast<std::size_t>(k + radius)] * rows[idx(rr, c)];
      }
      bits[idx(r, c)] = acc >= 0.5 ? 1 : 0;
    }
  return BinaryMask(frame.origin(), frame.extent(), std::move(bits));
}

}  // namespace detail

/// Apply a coarsening operator. Output frames may grow; compare results by
/// world cells (same_cells / is_subset), not by frame.
inline BinaryMask coarsen(const BinaryMask& mask, const CoarseningOp& op) {
  op.validate();
  switch (op.kind) {
    case CoarseningKind::identity:
      return mask;
    case CoarseningKind::closing:
      return closing(mask, op.strength);
    case CoarseningKind::hull_blend:
      return detail::hull_blend(mask, op.strength);
    case CoarseningKind::alpha_smooth: {
      if (mask.empty()) return mask;
      const BinaryMask closed = closing(mask, op.strength);
      return intersect(closed, convex_hull_mask(mask));
    }
    case CoarseningKind::blur_threshold:
      return detail::blur_threshold(mask, op.strength);
  }
  return mask;
}

}  // namespace bodyttc
