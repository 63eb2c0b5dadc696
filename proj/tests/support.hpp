#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>

#include "bodyttc/mask.hpp"
#include "bodyttc/rng.hpp"

namespace bodyttc::testing {

/// Fresh, empty directory below the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(BODYTTC_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

using CellSet = std::set<std::pair<int, int>>;

inline CellSet world_cells(const BinaryMask& m) {
  CellSet out;
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c)
      if (m.at(r, c)) out.insert({m.origin().row + r, m.origin().col + c});
  return out;
}

inline BinaryMask rect_mask(Cell origin, int h, int w) {
  BinaryMask m(origin, {h, w});
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) m.set(r, c);
  return m;
}

/// Random occupancy grid with a random origin; may be empty.
inline BinaryMask random_mask(Rng& rng, int max_h, int max_w, double density, int origin_span = 20) {
  const int h = static_cast<int>(rng.uniform_int(1, max_h));
  const int w = static_cast<int>(rng.uniform_int(1, max_w));
  const Cell origin{static_cast<int>(rng.uniform_int(-origin_span, origin_span)),
                    static_cast<int>(rng.uniform_int(-origin_span, origin_span))};
  BinaryMask m(origin, {h, w});
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      if (rng.uniform() < density) m.set(r, c);
  return m;
}

/// Random blob: union of a few random rectangles, never empty.
inline BinaryMask random_blob(Rng& rng, int size, int rects = 3) {
  BinaryMask m({static_cast<int>(rng.uniform_int(-10, 10)), static_cast<int>(rng.uniform_int(-10, 10))}, {size, size});
  for (int k = 0; k < rects; ++k) {
    const int r0 = static_cast<int>(rng.uniform_int(0, size - 1));
    const int c0 = static_cast<int>(rng.uniform_int(0, size - 1));
    const int r1 = static_cast<int>(rng.uniform_int(r0, size - 1));
    const int c1 = static_cast<int>(rng.uniform_int(c0, size - 1));
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) m.set(r, c);
  }
  return m;
}

}  // namespace bodyttc::testing
