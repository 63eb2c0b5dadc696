#include <gtest/gtest.h>

#include <bit>
#include <cstring>

#include "bodyttc/io/manifest.hpp"
#include "bodyttc/io/mask_io.hpp"
#include "support.hpp"

using namespace bodyttc;
namespace bt = bodyttc::testing;

namespace {

ProbabilityMap random_pmap(Rng& rng, int h, int w) {
  ProbabilityMap m{{h, w}, {}};
  for (int i = 0; i < h * w; ++i) {
    const auto p = static_cast<float>(rng.uniform());
    m.values.push_back(1.0f - p);
    m.values.push_back(p);
  }
  return m;
}

// Hand-built .npy bytes, independent of write_npy.
std::string npy_bytes(int major, const std::string& dict, const std::string& body) {
  std::string header = dict;
  const std::size_t prefix = major == 1 ? 10 : 12;
  while ((prefix + header.size() + 1) % 64 != 0) header.push_back(' ');
  header.push_back('\n');
  std::string out = "\x93NUMPY";
  out.push_back(static_cast<char>(major));
  out.push_back('\0');
  const std::size_t len_bytes = major == 1 ? 2 : 4;
  for (std::size_t i = 0; i < len_bytes; ++i) out.push_back(static_cast<char>((header.size() >> (8 * i)) & 0xFF));
  return out + header + body;
}

template <typename T>
std::string le_bytes(const std::vector<T>& values) {
  std::string out(values.size() * sizeof(T), '\0');
  std::memcpy(out.data(), values.data(), out.size());  // test host is little-endian
  return out;
}

void expect_same_vec(Vec2 a, Vec2 b) {
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}

}  // namespace

TEST(MaskIo, RoundTripKeepsCellsAndOrigin) {
  const auto dir = bt::scratch_dir("mask_io");
  Rng rng(71, 0);
  for (int t = 0; t < 10; ++t) {
    BinaryMask m = bt::random_mask(rng, 15, 15, 0.5);
    m = translate(m, {-7 + t, 3 - 2 * t});
    const auto path = dir / ("m" + std::to_string(t) + ".png");
    save_mask(path, m);
    EXPECT_TRUE(std::filesystem::exists(mask_sidecar_path(path)));
    const BinaryMask back = load_mask(path);
    EXPECT_EQ(back.origin(), m.origin());
    EXPECT_EQ(back.extent(), m.extent());
    EXPECT_EQ(bt::world_cells(back), bt::world_cells(m));
  }
}

TEST(MaskIo, PixelsAreZeroOr255) {
  const auto dir = bt::scratch_dir("mask_px");
  const BinaryMask m = bt::rect_mask({1, 1}, 2, 3);
  const BinaryMask padded = pad(m, 1);
  save_mask(dir / "p.png", padded);
  const GrayImage img = read_png_gray((dir / "p.png").string());
  ASSERT_EQ(img.extent, padded.extent());
  for (std::size_t i = 0; i < img.pixels.size(); ++i) EXPECT_EQ(img.pixels[i], padded.bits()[i] ? 255 : 0);
}

TEST(MaskIo, MissingSidecarMeansOriginZeroAndNonzeroIsSet) {
  const auto dir = bt::scratch_dir("mask_nosidecar");
  const std::vector<std::uint8_t> px{0, 1, 128, 0, 0, 255};
  write_png_gray((dir / "raw.png").string(), {2, 3}, px);
  const BinaryMask m = load_mask(dir / "raw.png");
  EXPECT_EQ(m.origin(), (Cell{0, 0}));
  EXPECT_FALSE(m.test_world({0, 0}));
  EXPECT_TRUE(m.test_world({0, 1}));
  EXPECT_TRUE(m.test_world({0, 2}));
  EXPECT_FALSE(m.test_world({1, 1}));
  EXPECT_TRUE(m.test_world({1, 2}));
}

TEST(MaskIo, BadSidecarOrFileIsIoError) {
  const auto dir = bt::scratch_dir("mask_bad");
  save_mask(dir / "a.png", bt::rect_mask({0, 0}, 2, 2));
  write_text_file(mask_sidecar_path(dir / "a.png").string(), "{\"origin\": [1]}");
  EXPECT_THROW(load_mask(dir / "a.png"), IoError);
  write_text_file(mask_sidecar_path(dir / "a.png").string(), "not json");
  EXPECT_THROW(load_mask(dir / "a.png"), IoError);
  EXPECT_THROW(load_mask(dir / "missing.png"), IoError);
  write_text_file((dir / "junk.png").string(), "junk");
  EXPECT_THROW(load_mask(dir / "junk.png"), IoError);
}

TEST(ProbabilityIo, PmapRoundTripIsBitExact) {
  const auto dir = bt::scratch_dir("pmap");
  Rng rng(72, 0);
  const ProbabilityMap m = random_pmap(rng, 7, 5);
  write_pmap(dir / "a.pmap", m);
  const std::string data = read_text_file((dir / "a.pmap").string());
  ASSERT_EQ(data.size(), 16u + 7 * 5 * 2 * 4);
  EXPECT_EQ(data.substr(0, 4), "PMAP");
  EXPECT_EQ(data.substr(4, 12), le_bytes<std::uint32_t>({7, 5, 2}));
  EXPECT_EQ(data.substr(16), le_bytes(m.values));
  const ProbabilityMap back = load_probability(dir / "a.pmap");
  EXPECT_EQ(back.extent, m.extent);
  EXPECT_EQ(back.values, m.values);
}

TEST(ProbabilityIo, PmapErrors) {
  const std::string header = "PMAP" + le_bytes<std::uint32_t>({1, 2, 2});
  EXPECT_NO_THROW(parse_pmap(header + le_bytes<float>({1, 0, 0, 1}), "ok"));
  EXPECT_THROW(parse_pmap("PMAX" + header.substr(4) + le_bytes<float>({1, 0, 0, 1}), "x"), IoError);
  EXPECT_THROW(parse_pmap("PMAP" + le_bytes<std::uint32_t>({1, 2, 3}) + le_bytes<float>({1, 0, 0, 1, 0, 0}), "x"),
               IoError);
  EXPECT_THROW(parse_pmap(header + le_bytes<float>({1, 0, 0}), "x"), IoError);
  EXPECT_THROW(parse_pmap(header + le_bytes<float>({1, 0, 0, 1, 0}), "x"), IoError);
  EXPECT_THROW(parse_pmap("PMAP" + le_bytes<std::uint32_t>({0, 2, 2}), "x"), IoError);
  EXPECT_THROW(parse_pmap("PMA", "x"), IoError);
}

TEST(ProbabilityIo, NpyRoundTripAndHeaderAlignment) {
  const auto dir = bt::scratch_dir("npy");
  Rng rng(73, 0);
  const ProbabilityMap m = random_pmap(rng, 4, 9);
  write_npy(dir / "a.npy", m);
  const std::string data = read_text_file((dir / "a.npy").string());
  EXPECT_EQ(data.substr(0, 8), std::string("\x93NUMPY\x01\x00", 8));
  const std::size_t header_len = static_cast<unsigned char>(data[8]) | static_cast<unsigned char>(data[9]) << 8;
  EXPECT_EQ((10 + header_len) % 64, 0u);
  EXPECT_EQ(data[10 + header_len - 1], '\n');
  EXPECT_NE(data.find("'shape': (4, 9, 2)"), std::string::npos);
  const ProbabilityMap back = load_probability(dir / "a.npy");
  EXPECT_EQ(back.extent, m.extent);
  EXPECT_EQ(back.values, m.values);
}

TEST(ProbabilityIo, NpyAcceptsFloat64AndLaterVersions) {
  const std::vector<double> v{0.25, 0.75, 1.0, 0.0};
  const std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (2, 1, 2), }";
  for (int major : {1, 2, 3}) {
    const ProbabilityMap m = parse_npy(npy_bytes(major, dict, le_bytes(v)), "v");
    EXPECT_EQ(m.extent, (Extent{2, 1}));
    EXPECT_EQ(m.values, (std::vector<float>{0.25f, 0.75f, 1.0f, 0.0f})) << major;
  }
  const std::string f4 = "{'descr': '<f4', 'fortran_order': False, 'shape': (1, 1, 2)}";
  EXPECT_EQ(parse_npy(npy_bytes(2, f4, le_bytes<float>({0.5f, 0.5f})), "v").values, (std::vector<float>{0.5f, 0.5f}));
}

TEST(ProbabilityIo, NpyErrors) {
  const std::string body = le_bytes<float>({1, 0, 0, 1});
  const auto dict = [](const std::string& descr, const std::string& order, const std::string& shape) {
    return "{'descr': '" + descr + "', 'fortran_order': " + order + ", 'shape': " + shape + ", }";
  };
  EXPECT_NO_THROW(parse_npy(npy_bytes(1, dict("<f4", "False", "(1, 2, 2)"), body), "ok"));
  EXPECT_THROW(parse_npy(npy_bytes(1, dict("<f4", "True", "(1, 2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(1, dict(">f4", "False", "(1, 2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(1, dict("<i4", "False", "(1, 2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(1, dict("<f4", "False", "(2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(1, dict("<f4", "False", "(1, 1, 4)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(1, dict("<f4", "False", "(2, 2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy(npy_bytes(4, dict("<f4", "False", "(1, 2, 2)"), body), "x"), IoError);
  EXPECT_THROW(parse_npy("\x93NUMPX" + body, "x"), IoError);
  EXPECT_THROW(parse_npy(std::string("\x93NUMPY\x01\x00\xff\x00", 10), "x"), IoError);
}

TEST(Text, DoublesRoundTrip) {
  Rng rng(74, 0);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform_int(-8, 8));
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(parse_double(" +1.5\r"), 1.5);
  EXPECT_EQ(parse_double("-3e2"), -300.0);
  for (const char* bad : {"", "  ", "abc", "1.5x", "1,5", "--1"}) EXPECT_FALSE(parse_double(bad).has_value()) << bad;
}

TEST(Text, CsvSplittingAndComments) {
  EXPECT_EQ(split_csv_line("a, b ,c\r"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(split_csv_line("a,,"), (std::vector<std::string>{"a", "", ""}));
  EXPECT_EQ(split_csv_line(""), (std::vector<std::string>{""}));
  const auto dir = bt::scratch_dir("csv");
  write_text_file((dir / "a.csv").string(), "# seed: 3\nh1,h2\r\n\n1,2\n# trailing\n3,4");
  EXPECT_EQ(read_csv_lines((dir / "a.csv").string()), (std::vector<std::string>{"h1,h2", "1,2", "3,4"}));
  EXPECT_THROW(read_csv_lines((dir / "missing.csv").string()), IoError);
  EXPECT_THROW(read_text_file((dir / "missing.txt").string()), IoError);
}

TEST(Manifest, ScenarioRoundTrip) {
  GeneratorConfig c;
  c.seed = 5;
  Rng rng(5, 0);
  auto [a, b] = make_matched_pair(c, {{2, 0}, {0, 0}, 30.0, 1.5}, rng, "p0");
  for (const Scenario& s : {a, b}) {
    const Scenario back = scenario_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(back.id, s.id);
    EXPECT_EQ(back.pair_id, s.pair_id);
    EXPECT_EQ(back.condition, s.condition);
    EXPECT_EQ(back.tau_gt, s.tau_gt);
    EXPECT_EQ(back.frame_rate, s.frame_rate);
    expect_same_vec(back.v_agent, s.v_agent);
    expect_same_vec(back.v_patient, s.v_patient);
    expect_same_vec(back.agent_position, s.agent_position);
    expect_same_vec(back.patient_position, s.patient_position);
    for (const auto* poly : {&s.agent, &s.patient}) {
      const Polygon& q = poly == &s.agent ? back.agent : back.patient;
      ASSERT_EQ(q.vertices.size(), poly->vertices.size());
      for (std::size_t i = 0; i < q.vertices.size(); ++i) expect_same_vec(q.vertices[i], poly->vertices[i]);
      EXPECT_EQ(q.concavity_spans.size(), poly->concavity_spans.size());
      EXPECT_EQ(q.color_index, poly->color_index);
    }
  }
}

TEST(Manifest, ScenarioManifestFileAndSchemaErrors) {
  const auto dir = bt::scratch_dir("manifest");
  GeneratorConfig c;
  Rng rng(6, 0);
  auto [a, b] = make_matched_pair(c, {{2, 0}, {0, 0}, 30.0, 1.0}, rng, "p0");
  json j = {{"seed", 6}, {"scenarios", json::array({to_json(a), to_json(b)})}};
  j["scenarios"][0]["mask"] = "masks/a.png";
  write_text_file((dir / "s.json").string(), j.dump());
  const ScenarioManifest m = load_scenario_manifest(dir / "s.json");
  EXPECT_EQ(m.dir, dir);
  EXPECT_EQ(m.header.at("seed"), 6);
  EXPECT_FALSE(m.header.contains("scenarios"));
  ASSERT_EQ(m.scenarios.size(), 2u);
  EXPECT_EQ(m.mask_files, (std::vector<std::string>{"masks/a.png", ""}));

  j["scenarios"][1].erase("tau_gt_s");
  write_text_file((dir / "bad.json").string(), j.dump());
  EXPECT_THROW(load_scenario_manifest(dir / "bad.json"), SchemaError);
  write_text_file((dir / "junk.json").string(), "{");
  EXPECT_THROW(load_scenario_manifest(dir / "junk.json"), SchemaError);
  EXPECT_THROW(load_scenario_manifest(dir / "missing.json"), IoError);
}

TEST(Manifest, VideoMetaRoundTripSkipsReservedKeys) {
  VideoMetaMap meta;
  meta["v1"] = {0.5, Condition::concave, "p1", {2, 0}, {0, -1}, 24.0};
  meta["v2"] = {2.0, Condition::convex, "p1", {1.5, 0.5}, {0, 0}, 30.0};
  json j = to_json(meta);
  j["_provenance"] = {{"seed", 1}};
  const auto dir = bt::scratch_dir("video_meta");
  write_text_file((dir / "m.json").string(), j.dump());
  const VideoMetaMap back = load_video_meta(dir / "m.json");
  ASSERT_EQ(back.size(), 2u);
  for (const auto& [id, m] : meta) {
    const VideoMeta& b = back.at(id);
    EXPECT_EQ(b.tau_gt_s, m.tau_gt_s);
    EXPECT_EQ(b.condition, m.condition);
    EXPECT_EQ(b.pair_id, m.pair_id);
    expect_same_vec(b.v_agent, m.v_agent);
    expect_same_vec(b.v_patient, m.v_patient);
    EXPECT_EQ(b.frame_rate, m.frame_rate);
  }

  const VideoMetaMap minimal = video_meta_from_json(json::parse(R"({"x": {"tau_gt_s": 1, "condition": "convex"}})"));
  EXPECT_EQ(minimal.at("x").frame_rate, 30.0);
  EXPECT_EQ(minimal.at("x").pair_id, "");

  write_text_file((dir / "bad.json").string(), R"({"x": {"tau_gt_s": 1, "condition": "round"}})");
  EXPECT_THROW(load_video_meta(dir / "bad.json"), SchemaError);
  write_text_file((dir / "bad2.json").string(), R"({"x": {"condition": "convex"}})");
  EXPECT_THROW(load_video_meta(dir / "bad2.json"), SchemaError);
}

TEST(Manifest, DatasetEntryRoundTrip) {
  const DatasetEntry e{"images/000001.png", "masks/000001.png", Split::val, 42, 17, 9, 2};
  const DatasetEntry back = dataset_entry_from_json(json::parse(to_json(e).dump()));
  EXPECT_EQ(back.image_path, e.image_path);
  EXPECT_EQ(back.mask_path, e.mask_path);
  EXPECT_EQ(back.split, e.split);
  EXPECT_EQ(back.seed, e.seed);
  EXPECT_EQ(back.draw_index, e.draw_index);
  EXPECT_EQ(back.vertex_count, e.vertex_count);
  EXPECT_EQ(back.concavity_count, e.concavity_count);
  json bad = to_json(e);
  bad["split"] = "test";
  EXPECT_THROW(dataset_entry_from_json(bad), SchemaError);
}
