#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bodyttc/dataset.hpp"
#include "bodyttc/error.hpp"
#include "bodyttc/io/text.hpp"
#include "bodyttc/metrics.hpp"
#include "bodyttc/polygon.hpp"
#include "bodyttc/scenario.hpp"

namespace bodyttc {

using json = nlohmann::json;

inline json to_json(Vec2 v) { return json::array({v.x, v.y}); }

inline Vec2 vec2_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json to_json(const NotchConfig& n) {
  return {{"mouth", n.mouth},
          {"depth", n.depth},
          {"body_width", n.body_width},
          {"body_length", n.body_length},
          {"patient_width_ratio", n.patient_width_ratio},
          {"patient_face_cut", n.patient_face_cut}};
}

inline json to_json(const GeneratorConfig& c) {
  json palette = json::array();
  for (const Rgb& p : c.palette) palette.push_back({p.r, p.g, p.b});
  return {{"seed", c.seed},
          {"vertex_range", {c.vertex_range.first, c.vertex_range.second}},
          {"concavity_range", {c.concavity_range.first, c.concavity_range.second}},
          {"irregularity", c.irregularity},
          {"spikiness", c.spikiness},
          {"radius", c.radius},
          {"canvas", {c.canvas_height, c.canvas_width}},
          {"max_attempts", c.max_attempts},
          {"notch", to_json(c.notch)},
          {"palette", palette}};
}

inline json to_json(const Polygon& p, Vec2 position) {
  json verts = json::array();
  for (const Vec2& v : p.vertices) verts.push_back(to_json(v));
  json spans = json::array();
  for (const auto& s : p.concavity_spans) spans.push_back({s.first, s.last});
  return {{"position", to_json(position)}, {"vertices", verts}, {"concavity_spans", spans}, {"color_index", p.color_index}};
}

inline Polygon polygon_from_json(const json& j) {
  Polygon p;
  for (const auto& v : j.at("vertices")) p.vertices.push_back(vec2_from_json(v));
  for (const auto& s : j.at("concavity_spans")) p.concavity_spans.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
  p.color_index = j.at("color_index").get<int>();
  return p;
}

inline json to_json(const Scenario& s) {
  return {{"id", s.id},
          {"pair_id", s.pair_id},
          {"condition", std::string(to_string(s.condition))},
          {"tau_gt_s", s.tau_gt},
          {"frame_rate", s.frame_rate},
          {"v_agent", to_json(s.v_agent)},
          {"v_patient", to_json(s.v_patient)},
          {"agent", to_json(s.agent, s.agent_position)},
          {"patient", to_json(s.patient, s.patient_position)}};
}

inline Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.id = j.at("id").get<std::string>();
  s.pair_id = j.at("pair_id").get<std::string>();
  s.condition = parse_condition(j.at("condition").get<std::string>());
  s.tau_gt = j.at("tau_gt_s").get<double>();
  s.frame_rate = j.at("frame_rate").get<double>();
  s.v_agent = vec2_from_json(j.at("v_agent"));
  s.v_patient = vec2_from_json(j.at("v_patient"));
  s.agent = polygon_from_json(j.at("agent"));
  s.agent_position = vec2_from_json(j.at("agent").at("position"));
  s.patient = polygon_from_json(j.at("patient"));
  s.patient_position = vec2_from_json(j.at("patient").at("position"));
  return s;
}

/// Parsed scenario manifest. Relative file entries resolve against `dir`.
struct ScenarioManifest {
  std::filesystem::path dir;
  json header;  // seed, config and other top-level fields
  std::vector<Scenario> scenarios;
  std::vector<std::string> mask_files;  // per scenario, may be empty
};

inline ScenarioManifest load_scenario_manifest(const std::filesystem::path& path) {
  ScenarioManifest m;
  m.dir = path.parent_path();
  try {
    const json j = json::parse(read_text_file(path.string()));
    m.header = j;
    m.header.erase("scenarios");
    for (const auto& e : j.at("scenarios")) {
      m.scenarios.push_back(scenario_from_json(e));
      m.mask_files.push_back(e.value("mask", std::string()));
    }
  } catch (const json::exception& e) {
    throw SchemaError("bad scenario manifest '" + path.string() + "': " + e.what());
  }
  return m;
}

inline json to_json(const VideoMetaMap& meta) {
  json j = json::object();
  for (const auto& [id, m] : meta)
    j[id] = {{"tau_gt_s", m.tau_gt_s},
             {"condition", std::string(to_string(m.condition))},
             {"pair_id", m.pair_id},
             {"v_agent", to_json(m.v_agent)},
             {"v_patient", to_json(m.v_patient)},
             {"frame_rate", m.frame_rate}};
  return j;
}

/// Video meta JSON: `{video_id: {tau_gt_s, condition, pair_id, v_agent,
/// v_patient, frame_rate}}`. Only tau_gt_s and condition are required.
inline VideoMetaMap video_meta_from_json(const json& j) {
  VideoMetaMap meta;
  for (const auto& [id, e] : j.items()) {
    if (id.starts_with("_")) continue;  // reserved for provenance fields
    VideoMeta m;
    m.tau_gt_s = e.at("tau_gt_s").get<double>();
    m.condition = parse_condition(e.at("condition").get<std::string>());
    m.pair_id = e.value("pair_id", std::string());
    if (e.contains("v_agent")) m.v_agent = vec2_from_json(e.at("v_agent"));
    if (e.contains("v_patient")) m.v_patient = vec2_from_json(e.at("v_patient"));
    m.frame_rate = e.value("frame_rate", 30.0);
    meta[id] = m;
  }
  return meta;
}

inline VideoMetaMap load_video_meta(const std::filesystem::path& path) {
  try {
    return video_meta_from_json(json::parse(read_text_file(path.string())));
  } catch (const json::exception& e) {
    throw SchemaError("bad video meta '" + path.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError("bad video meta '" + path.string() + "': " + e.what());
  }
}

inline json to_json(const DatasetEntry& e) {
  return {{"image_path", e.image_path},
          {"mask_path", e.mask_path},
          {"split", std::string(to_string(e.split))},
          {"seed", e.seed},
          {"draw_index", e.draw_index},
          {"vertex_count", e.vertex_count},
          {"concavity_count", e.concavity_count}};
}

inline DatasetEntry dataset_entry_from_json(const json& j) {
  DatasetEntry e;
  e.image_path = j.at("image_path").get<std::string>();
  e.mask_path = j.at("mask_path").get<std::string>();
  const auto split = j.at("split").get<std::string>();
  if (split != "train" && split != "val") throw SchemaError("unknown split '" + split + "'");
  e.split = split == "train" ? Split::train : Split::val;
  e.seed = j.at("seed").get<std::uint64_t>();
  e.draw_index = j.at("draw_index").get<std::uint64_t>();
  e.vertex_count = j.at("vertex_count").get<int>();
  e.concavity_count = j.at("concavity_count").get<int>();
  return e;
}

inline json to_json(const DatasetManifest& m) {
  json entries = json::array();
  for (const auto& e : m.entries) entries.push_back(to_json(e));
  return entries;
}

}  // namespace bodyttc
