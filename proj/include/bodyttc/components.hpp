#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/mask.hpp"

namespace bodyttc {

/// 8-connected components, each in the parent's frame, sorted by size
/// descending. Equal sizes keep scanline order of each component's first cell.
inline std::vector<BinaryMask> connected_components(const BinaryMask& mask) {
  const int H = mask.height(), W = mask.width();
  std::vector<int> label(static_cast<std::size_t>(H) * static_cast<std::size_t>(W), -1);
  struct Found {
    std::vector<std::size_t> cells;
  };
  std::vector<Found> found;
  std::vector<std::size_t> stack;
  for (int r = 0; r < H; ++r) {
    for (int c = 0; c < W; ++c) {
      const std::size_t seed = static_cast<std::size_t>(r) * static_cast<std::size_t>(W) + static_cast<std::size_t>(c);
      if (!mask.at(r, c) || label[seed] >= 0) continue;
      const int id = static_cast<int>(found.size());
      found.push_back({});
      label[seed] = id;
      stack.push_back(seed);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        found.back().cells.push_back(cur);
        const int cr = static_cast<int>(cur / static_cast<std::size_t>(W));
        const int cc = static_cast<int>(cur % static_cast<std::size_t>(W));
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            const int nr = cr + dr, nc = cc + dc;
            if (nr < 0 || nc < 0 || nr >= H || nc >= W || !mask.at(nr, nc)) continue;
            const std::size_t ni = static_cast<std::size_t>(nr) * static_cast<std::size_t>(W) + static_cast<std::size_t>(nc);
            if (label[ni] >= 0) continue;
            label[ni] = id;
            stack.push_back(ni);
          }
        }
      }
    }
  }
  // Components were discovered in scanline order of their first cell, so a
  // stable sort on size alone applies the tie rule.
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return found[a].cells.size() > found[b].cells.size(); });
  std::vector<BinaryMask> out;
  out.reserve(found.size());
  for (std::size_t idx : order) {
    BinaryMask m(mask.origin(), mask.extent());
    for (std::size_t cell : found[idx].cells)
      m.set(static_cast<int>(cell / static_cast<std::size_t>(W)), static_cast<int>(cell % static_cast<std::size_t>(W)));
    out.push_back(std::move(m));
  }
  return out;
}

/// The two largest components, larger first.
inline std::pair<BinaryMask, BinaryMask> two_largest(const BinaryMask& mask) {
  auto comps = connected_components(mask);
  if (comps.size() < 2)
    throw TooFewObjects("expected two objects, found " + std::to_string(comps.size()) + " component(s)");
  return {std::move(comps[0]), std::move(comps[1])};
}

}  // namespace bodyttc
