#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/io/mask_io.hpp"
#include "bodyttc/io/png.hpp"
#include "bodyttc/polygon.hpp"
#include "bodyttc/raster.hpp"
#include "bodyttc/rng.hpp"
#include "bodyttc/scenario.hpp"

namespace bodyttc {

enum class Split { train, val };

inline std::string_view to_string(Split s) { return s == Split::train ? "train" : "val"; }

struct DatasetEntry {
  std::string image_path;  // relative to the dataset directory
  std::string mask_path;
  Split split = Split::train;
  std::uint64_t seed = 0;
  std::uint64_t draw_index = 0;
  int vertex_count = 0;
  int concavity_count = 0;
};

struct DatasetManifest {
  std::vector<DatasetEntry> entries;
};

/// Paint masks over a black canvas, later masks on top.
inline std::vector<std::uint8_t> paint_rgb(Extent canvas, const std::vector<std::pair<const BinaryMask*, Rgb>>& layers) {
  std::vector<std::uint8_t> px(3 * static_cast<std::size_t>(canvas.height) * static_cast<std::size_t>(canvas.width), 0);
  for (const auto& [mask, color] : layers) {
    for (int r = 0; r < canvas.height; ++r)
      for (int c = 0; c < canvas.width; ++c) {
        if (!mask->test_world({r, c})) continue;
        const std::size_t i = 3 * (static_cast<std::size_t>(r) * canvas.width + c);
        px[i] = color.r;
        px[i + 1] = color.g;
        px[i + 2] = color.b;
      }
  }
  return px;
}

/// One dataset sample: polygon plus a canvas position keeping its bounding
/// box inside the canvas.
struct DatasetDraw {
  Polygon polygon;
  Vec2 position;
};

inline DatasetDraw draw_sample(const GeneratorConfig& config, std::uint64_t draw_index) {
  Rng rng(config.seed, draw_index);
  DatasetDraw d{generate_polygon(config, rng), {}};
  const Box box = bounding_box(d.polygon.vertices);
  const double lo_x = -box.min.x, hi_x = config.canvas_width - box.max.x;
  const double lo_y = -box.min.y, hi_y = config.canvas_height - box.max.y;
  if (hi_x < lo_x || hi_y < lo_y) throw std::invalid_argument("polygon radius too large for the canvas");
  d.position = {rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
  return d;
}

/// Writes n_train + n_val single-polygon images (uniform colour on black)
/// with their {0, 255} masks under out_dir/{images,masks}/{train,val}/.
/// Draw i uses stream i of the seed; a draw whose vertex list repeats an
/// earlier one is skipped, so no polygon appears in both splits.
inline DatasetManifest render_dataset(const GeneratorConfig& config, int n_train, int n_val,
                                      const std::filesystem::path& out_dir) {
  config.validate();
  if (n_train < 0 || n_val < 0) throw std::invalid_argument("image counts must be non-negative");
  DatasetManifest manifest;
  if (n_train + n_val == 0) return manifest;

  namespace fs = std::filesystem;
  const Extent canvas{config.canvas_height, config.canvas_width};
  std::set<std::vector<std::pair<double, double>>> seen;
  std::uint64_t draw = 0;
  for (Split split : {Split::train, Split::val}) {
    const int count = split == Split::train ? n_train : n_val;
    if (count == 0) continue;
    const std::string name(to_string(split));
    std::error_code ec;
    fs::create_directories(out_dir / "images" / name, ec);
    fs::create_directories(out_dir / "masks" / name, ec);
    if (ec) throw IoError("cannot create dataset directories under '" + out_dir.string() + "': " + ec.message());
    for (int i = 0; i < count; ++draw) {
      DatasetDraw d = draw_sample(config, draw);
      std::vector<std::pair<double, double>> key;
      for (const Vec2& v : d.polygon.vertices) key.emplace_back(v.x, v.y);
      if (!seen.insert(std::move(key)).second) continue;

      const BinaryMask mask = rasterize(d.polygon, d.position, canvas);
      char stem[16];
      std::snprintf(stem, sizeof stem, "%06d", i);
      DatasetEntry e{"images/" + name + "/" + stem + ".png", "masks/" + name + "/" + stem + ".png", split,
                     config.seed, draw, static_cast<int>(d.polygon.size()),
                     static_cast<int>(d.polygon.concavity_spans.size())};
      const Rgb color = config.palette[static_cast<std::size_t>(d.polygon.color_index)];
      write_png_rgb((out_dir / e.image_path).string(), canvas, paint_rgb(canvas, {{&mask, color}}));
      save_mask(out_dir / e.mask_path, mask);
      manifest.entries.push_back(std::move(e));
      ++i;
    }
  }
  return manifest;
}

/// Initial frame of a scenario: RGB image and the union mask of both objects,
/// both cropped to the configured canvas.
struct ScenarioFrame {
  std::vector<std::uint8_t> rgb;
  BinaryMask scene;
};

inline ScenarioFrame render_scenario_frame(const Scenario& s, const GeneratorConfig& config) {
  const Extent canvas{config.canvas_height, config.canvas_width};
  const BinaryMask agent = rasterize(s.agent, s.agent_position, canvas);
  const BinaryMask patient = rasterize(s.patient, s.patient_position, canvas);
  const auto color = [&](const Polygon& p) { return config.palette[static_cast<std::size_t>(p.color_index)]; };
  return {paint_rgb(canvas, {{&patient, color(s.patient)}, {&agent, color(s.agent)}}), unite(agent, patient)};
}

}  // namespace bodyttc
