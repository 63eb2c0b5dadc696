#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bodyttc/bodyttc.hpp"

namespace bodyttc::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kToolVersion = "0.1.0";

// Raised for invocation problems that should print usage and exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  for (auto& f : split_csv_line(text)) out.push_back(f);
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& f : split_list(text)) {
    const auto v = parse_double(f);
    if (!v) throw std::invalid_argument(flag + ": '" + f + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

Vec2 parse_vec2(const std::string& text, const std::string& flag) {
  const auto v = parse_doubles(text, flag);
  if (v.size() != 2) throw std::invalid_argument(flag + " expects two comma-separated numbers");
  return {v[0], v[1]};
}

std::pair<int, int> parse_int_pair(const std::string& text, const std::string& flag) {
  const auto v = parse_doubles(text, flag);
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw std::invalid_argument(flag + " expects two comma-separated integers");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

// Generator flags shared by gen-dataset and gen-scenarios.
struct GeneratorFlags {
  std::uint64_t seed = 0;
  std::string vertices = "5,12";
  std::string concavities = "0,3";
  double irregularity = 0.3;
  double spikiness = 0.15;
  double radius = 60.0;
  std::string canvas = "512,512";
  int max_attempts = 1000;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
    app->add_option("--vertices", vertices, "vertex count range min,max")->capture_default_str();
    app->add_option("--concavities", concavities, "concavity count range min,max")->capture_default_str();
    app->add_option("--irregularity", irregularity, "angular jitter in [0,1]")->capture_default_str();
    app->add_option("--spikiness", spikiness, "radial jitter in [0,1]")->capture_default_str();
    app->add_option("--radius", radius, "mean polygon radius in pixels")->capture_default_str();
    app->add_option("--canvas", canvas, "canvas size H,W")->capture_default_str();
    app->add_option("--max-attempts", max_attempts, "rejection-sampling budget per polygon")->capture_default_str();
  }

  GeneratorConfig config() const {
    GeneratorConfig c;
    c.seed = seed;
    c.vertex_range = parse_int_pair(vertices, "--vertices");
    c.concavity_range = parse_int_pair(concavities, "--concavities");
    c.irregularity = irregularity;
    c.spikiness = spikiness;
    c.radius = radius;
    const auto hw = parse_int_pair(canvas, "--canvas");
    c.canvas_height = hw.first;
    c.canvas_width = hw.second;
    c.max_attempts = max_attempts;
    c.validate();
    return c;
  }
};

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  throw UsageError("--out is required (or set " + std::string(kOutDirEnv) + ")");
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

json provenance(const std::string& command, std::uint64_t seed, json config) {
  return {{"tool", "bodyttc"}, {"version", kToolVersion}, {"command", command}, {"seed", seed}, {"config", std::move(config)}};
}

// CSV preamble: '#' lines carrying the seed and the normalized config.
std::string csv_preamble(const json& prov) {
  std::string s = "# bodyttc " + prov.at("command").get<std::string>() + " " + kToolVersion + "\n";
  s += "# seed: " + prov.at("seed").dump() + "\n";
  s += "# config: " + prov.at("config").dump() + "\n";
  return s;
}

void write_json(const fs::path& path, const json& j) { write_text_file(path.string(), j.dump(2) + "\n"); }

std::uint64_t manifest_seed(const ScenarioManifest& m) { return m.header.value("seed", std::uint64_t{0}); }

// ---------------------------------------------------------------- gen-dataset

struct GenDatasetArgs {
  GeneratorFlags gen;
  int train = 500;
  int val = 200;
  std::string out;
};

int cmd_gen_dataset(const GenDatasetArgs& a, std::ostream& out, std::ostream&) {
  const fs::path dir = resolve_out(a.out);
  const GeneratorConfig config = a.gen.config();
  if (a.train < 0 || a.val < 0) throw std::invalid_argument("--train and --val must be >= 0");
  make_dir(dir);
  const DatasetManifest manifest = render_dataset(config, a.train, a.val, dir);
  json j = provenance("gen-dataset", config.seed, to_json(config));
  j["n_train"] = a.train;
  j["n_val"] = a.val;
  j["entries"] = to_json(manifest);
  write_json(dir / "manifest.json", j);
  out << "wrote " << manifest.entries.size() << " image/mask pairs to " << dir.string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- gen-scenarios

struct GenScenariosArgs {
  GeneratorFlags gen;
  int pairs = 12;
  std::string taus = "0.5,1,1.5,2";
  std::string mouths;
  double notch_depth = NotchConfig{}.depth;
  double body_width = NotchConfig{}.body_width;
  double body_length = NotchConfig{}.body_length;
  double patient_ratio = NotchConfig{}.patient_width_ratio;
  std::string v_agent = "2,0";
  std::string v_patient = "0,0";
  double frame_rate = 30.0;
  int retries = 20;
  std::string out;
};

int cmd_gen_scenarios(const GenScenariosArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir = resolve_out(a.out);
  GeneratorConfig config = a.gen.config();
  config.notch.depth = a.notch_depth;
  config.notch.body_width = a.body_width;
  config.notch.body_length = a.body_length;
  config.notch.patient_width_ratio = a.patient_ratio;
  if (a.pairs < 0) throw std::invalid_argument("--pairs must be >= 0");
  if (a.retries < 1) throw std::invalid_argument("--retries must be >= 1");

  std::vector<double> taus;
  for (double t : parse_doubles(a.taus, "--taus")) {
    if (!(t > 0.0)) throw std::invalid_argument("--taus entries must be positive");
    if (std::find(taus.begin(), taus.end(), t) != taus.end()) {
      err << "warning: duplicate tau " << format_double(t) << " ignored\n";
      continue;
    }
    taus.push_back(t);
  }
  if (taus.empty()) throw std::invalid_argument("--taus must list at least one value");
  std::vector<double> mouths = a.mouths.empty() ? std::vector<double>{config.notch.mouth} : parse_doubles(a.mouths, "--mouths");
  config.notch.mouth = mouths.front();
  const Vec2 v_agent = parse_vec2(a.v_agent, "--v-agent");
  const Vec2 v_patient = parse_vec2(a.v_patient, "--v-patient");

  std::vector<Scenario> scenarios;
  for (int i = 0; i < a.pairs; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const Kinematics kin{v_agent, v_patient, a.frame_rate, taus[ui % taus.size()]};
    GeneratorConfig pc = config;
    pc.notch.mouth = mouths[(ui / taus.size()) % mouths.size()];
    char id[32];
    std::snprintf(id, sizeof id, "pair%04d", i);
    std::optional<std::pair<Scenario, Scenario>> pair;
    std::string last_error;
    for (int attempt = 0; attempt < a.retries && !pair; ++attempt) {
      Rng rng(config.seed, (static_cast<std::uint64_t>(attempt) << 32) | ui);
      try {
        pair = make_matched_pair(pc, kin, rng, id);
      } catch (const PairConstructionFailed& e) {
        last_error = e.what();
      }
    }
    if (!pair) throw PairConstructionFailed(std::string(id) + ": retry budget exhausted: " + last_error);
    scenarios.push_back(std::move(pair->first));
    scenarios.push_back(std::move(pair->second));
  }

  json cfg = to_json(config);
  cfg["notch"].erase("mouth");
  cfg["mouths"] = mouths;
  cfg["taus"] = taus;
  cfg["pairs"] = a.pairs;
  cfg["v_agent"] = to_json(v_agent);
  cfg["v_patient"] = to_json(v_patient);
  cfg["frame_rate"] = a.frame_rate;
  cfg["retries"] = a.retries;
  const json prov = provenance("gen-scenarios", config.seed, cfg);

  make_dir(dir);
  if (!scenarios.empty()) {
    make_dir(dir / "masks");
    make_dir(dir / "frames");
  }
  json manifest = prov;
  manifest["canvas"] = {config.canvas_height, config.canvas_width};
  manifest["scenarios"] = json::array();
  const Extent canvas{config.canvas_height, config.canvas_width};
  for (const Scenario& s : scenarios) {
    json e = to_json(s);
    e["mask"] = "masks/" + s.id + ".png";
    e["frame"] = "frames/" + s.id + ".png";
    const ScenarioFrame frame = render_scenario_frame(s, config);
    save_mask(dir / e["mask"].get<std::string>(), frame.scene);
    write_png_rgb((dir / e["frame"].get<std::string>()).string(), canvas, frame.rgb);
    manifest["scenarios"].push_back(std::move(e));
  }
  write_json(dir / "scenarios.json", manifest);
  json meta = to_json(meta_of(scenarios));
  meta["_provenance"] = prov;
  write_json(dir / "video_meta.json", meta);
  out << "wrote " << scenarios.size() << " scenarios (" << a.pairs << " pairs) to " << dir.string() << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- synth-humans

struct SynthHumansArgs {
  std::string scenarios;
  SyntheticHumanConfig cfg;
  std::string out;
};

int cmd_synth_humans(const SynthHumansArgs& a, std::ostream& out, std::ostream&) {
  const fs::path dir = resolve_out(a.out);
  const ScenarioManifest m = load_scenario_manifest(a.scenarios);
  const HumanResponseTable table = synthesize_humans(m.scenarios, a.cfg);
  const json prov = provenance("synth-humans", a.cfg.seed,
                               {{"scenarios", a.scenarios},
                                {"scenario_seed", manifest_seed(m)},
                                {"participants", a.cfg.participants},
                                {"bias_concave_s", a.cfg.bias_concave_s},
                                {"bias_convex_s", a.cfg.bias_convex_s},
                                {"sigma_s", a.cfg.sigma_s}});
  std::string csv = csv_preamble(prov) + "video_id,participant_id,ttc_response_s\n";
  for (const auto& r : table.rows) csv += r.video_id + "," + r.participant_id + "," + format_double(r.ttc_response_s) + "\n";
  make_dir(dir);
  write_text_file((dir / "human.csv").string(), csv);
  out << "wrote " << table.rows.size() << " responses from " << table.participant_count << " participants\n";
  return kExitOk;
}

// ------------------------------------------------------------------- run-ttc

struct RunTtcArgs {
  std::string scenarios;
  std::string masks = "exact";
  std::string mask_dir;
  std::string coarsen = "identity";
  double horizon = kDefaultHorizonS;
  unsigned jobs = 1;
  std::string out;
};

BinaryMask load_scene(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".pmap" || ext == ".npy") return mask_from_probability(load_probability(path));
  return load_mask(path);
}

fs::path find_mask_file(const fs::path& dir, const std::string& id) {
  for (const char* ext : {".png", ".pmap", ".npy"}) {
    const fs::path p = dir / (id + ext);
    if (fs::exists(p)) return p;
  }
  throw IoError("no mask file for '" + id + "' in '" + dir.string() + "'");
}

std::string ttc_csv(const json& prov, const std::vector<BatchRow>& rows) {
  std::string csv = csv_preamble(prov);
  csv += "scenario_id,pair_id,condition,tau_gt_s,ttc_model_s,first_overlap_frame,collided\n";
  for (const auto& row : rows) {
    const auto& t = row.ttc;
    csv += t.scenario_id + "," + t.pair_id + "," + std::string(to_string(t.condition)) + "," + format_double(t.tau_gt_s) + ",";
    if (t.result.collided)
      csv += format_double(*t.result.ttc_seconds) + "," + std::to_string(*t.result.first_overlap_frame) + ",true\n";
    else
      csv += ",,false\n";
  }
  return csv;
}

int cmd_run_ttc(const RunTtcArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir = resolve_out(a.out);
  const CoarseningOp op = parse_coarsening(a.coarsen);
  if (!(a.horizon >= 0.0)) throw std::invalid_argument("--horizon must be >= 0");
  std::string mode = a.masks;
  if (!a.mask_dir.empty()) mode = "files";
  if (mode != "exact" && mode != "files") throw std::invalid_argument("--masks must be 'exact' or 'files'");
  if (!a.mask_dir.empty() && !fs::is_directory(a.mask_dir))
    throw IoError("mask directory '" + a.mask_dir + "' does not exist");

  const ScenarioManifest m = load_scenario_manifest(a.scenarios);
  const auto load = [&](std::size_t i) -> ObjectMasks {
    const Scenario& s = m.scenarios[i];
    if (mode == "exact") return exact_masks(s);
    fs::path file;
    if (!a.mask_dir.empty()) {
      file = find_mask_file(a.mask_dir, s.id);
    } else {
      if (m.mask_files[i].empty()) throw IoError("manifest lists no mask for '" + s.id + "'");
      file = m.dir / m.mask_files[i];
    }
    return segment_objects(s, load_scene(file));
  };
  const auto rows = run_batch_with(m.scenarios, load, op, a.horizon, a.jobs);

  std::size_t excluded = 0;
  for (const auto& row : rows)
    if (!row.error.empty()) {
      ++excluded;
      err << "excluded " << row.ttc.scenario_id << ": " << row.error << "\n";
    }
  json cfg = {{"scenarios", a.scenarios},
              {"masks", mode},
              {"mask_dir", a.mask_dir},
              {"coarsen", {{"kind", std::string(to_string(op.kind))}, {"strength", op.strength}}},
              {"horizon_s", a.horizon}};
  make_dir(dir);
  write_text_file((dir / "ttc.csv").string(), ttc_csv(provenance("run-ttc", manifest_seed(m), cfg), rows));
  out << "simulated " << rows.size() << " scenarios, " << excluded << " excluded\n";
  return kExitOk;
}

// ------------------------------------------------------------------- compare

struct CompareArgs {
  std::string model;
  std::string human;
  std::string meta;
  std::string out;
};

struct ModelCsv {
  std::map<std::string, double> ttc;          // collided rows
  std::map<std::string, double> excluded_tau;  // non-collided rows
};

ModelCsv load_model_csv(const std::string& path) {
  const auto lines = read_csv_lines(path);
  if (lines.empty()) throw SchemaError("'" + path + "' has no header");
  const auto header = split_csv_line(lines[0]);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("'" + path + "' lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_id = column("scenario_id"), c_tau = column("tau_gt_s"), c_ttc = column("ttc_model_s"),
                    c_hit = column("collided");
  ModelCsv out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() < header.size()) throw SchemaError("'" + path + "' row " + std::to_string(i) + " is short");
    const bool hit = f[c_hit] == "true" || f[c_hit] == "1";
    const auto ttc = parse_double(f[c_ttc]);
    if (hit && ttc) {
      out.ttc[f[c_id]] = *ttc;
    } else {
      const auto tau = parse_double(f[c_tau]);
      out.excluded_tau[f[c_id]] = tau ? *tau : 0.0;
    }
  }
  return out;
}

std::string report_csv(const json& prov, const AlignmentReport& rep) {
  std::string csv = csv_preamble(prov);
  csv += "tau_gt_s,delta_human_s,delta_model_s,error_s,n_concave,n_convex,n_excluded\n";
  std::size_t nc = 0, nv = 0, nx = 0;
  for (const auto& [tau, r] : rep.per_tau) {
    csv += format_double(tau) + "," + format_double(r.delta_human_s) + "," + format_double(r.delta_model_s) + "," +
           format_double(r.error_s) + "," + std::to_string(r.n_concave) + "," + std::to_string(r.n_convex) + "," +
           std::to_string(r.n_excluded) + "\n";
    nc += r.n_concave;
    nv += r.n_convex;
    nx += r.n_excluded;
  }
  csv += "mean,,," + format_double(rep.mean_error_s) + "," + std::to_string(nc) + "," + std::to_string(nv) + "," +
         std::to_string(nx) + "\n";
  return csv;
}

json report_json(const json& prov, const AlignmentReport& rep) {
  json per_tau = json::array();
  for (const auto& [tau, r] : rep.per_tau)
    per_tau.push_back({{"tau_gt_s", tau},
                       {"delta_human_s", r.delta_human_s},
                       {"delta_model_s", r.delta_model_s},
                       {"error_s", r.error_s},
                       {"n_concave", r.n_concave},
                       {"n_convex", r.n_convex},
                       {"n_excluded", r.n_excluded}});
  json j = prov;
  j["per_tau"] = per_tau;
  j["mean_error_s"] = rep.mean_error_s;
  j["tau_set"] = rep.tau_set;
  j["unmatched_taus"] = rep.unmatched_taus;
  return j;
}

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir = resolve_out(a.out);
  const VideoMetaMap meta = load_video_meta(a.meta);
  const HumanResponseTable human = load_human_csv(a.human, meta);
  const ModelCsv model = load_model_csv(a.model);
  const auto human_means = per_video_mean(human);

  // Join on video id: only videos present in both sources count.
  std::map<std::string, double> model_joined, human_joined;
  std::map<double, std::size_t> excluded_per_tau;
  for (const auto& [id, h] : human_means.means) {
    if (const auto it = model.ttc.find(id); it != model.ttc.end()) {
      model_joined[id] = it->second;
      human_joined[id] = h;
    } else if (model.excluded_tau.contains(id)) {
      human_joined[id] = h;
      ++excluded_per_tau[meta.at(id).tau_gt_s];
    }
  }
  if (human_joined.empty()) throw EmptyIntersection("model and human files share no video id");
  for (const auto& [id, v] : model.ttc)
    if (!meta.contains(id)) throw UnknownVideo("model video '" + id + "' has no metadata");

  const AlignmentReport rep = build_alignment_report(condition_average(model_joined, meta),
                                                     condition_average(human_joined, meta), excluded_per_tau);
  for (double tau : rep.unmatched_taus) err << "warning: tau " << format_double(tau) << " left out of the mean\n";
  const json prov = provenance("compare", 0,
                               {{"model", a.model},
                                {"human", a.human},
                                {"meta", a.meta},
                                {"participants", human.participant_count},
                                {"dropped_rows", human.dropped_rows},
                                {"joined_videos", human_joined.size()}});
  make_dir(dir);
  write_text_file((dir / "report.csv").string(), report_csv(prov, rep));
  write_json(dir / "report.json", report_json(prov, rep));
  out << "mean_error_s=" << format_double(rep.mean_error_s) << "\n";
  return kExitOk;
}

// --------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string scenarios;
  std::string human;
  std::string ops;
  std::string kind = "closing";
  std::string strengths = "0,2,4,6,8,10,12,14,16";
  double horizon = kDefaultHorizonS;
  double margin = kDefaultUMarginS;
  unsigned jobs = 1;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
  const fs::path dir = resolve_out(a.out);
  std::vector<CoarseningOp> ops;
  if (!a.ops.empty()) {
    for (const auto& t : split_list(a.ops)) ops.push_back(parse_coarsening(t));
  } else {
    for (double s : parse_doubles(a.strengths, "--strengths")) ops.push_back(parse_coarsening(a.kind + ":" + format_double(s)));
  }
  if (!(a.horizon >= 0.0)) throw std::invalid_argument("--horizon must be >= 0");
  const ScenarioManifest m = load_scenario_manifest(a.scenarios);
  const HumanResponseTable human = load_human_csv(a.human, meta_of(m.scenarios));
  const SweepResult res = run_sweep(m.scenarios, human, ops, {a.horizon, a.margin, a.jobs});

  json ops_json = json::array();
  for (const auto& op : ops) ops_json.push_back({{"kind", std::string(to_string(op.kind))}, {"strength", op.strength}});
  const std::string verdict = std::string("u_shaped=") + (res.is_u_shaped ? "true" : "false") +
                              " argmin=" + format_double(res.points[res.argmin_index].param_value);
  const json prov = provenance("sweep", manifest_seed(m),
                               {{"scenarios", a.scenarios},
                                {"human", a.human},
                                {"ops", ops_json},
                                {"horizon_s", a.horizon},
                                {"margin_s", a.margin}});
  std::string csv = csv_preamble(prov) + "# verdict: " + verdict + "\n" + "param_value,mean_error_s,n_excluded\n";
  for (const auto& p : res.points)
    csv += format_double(p.param_value) + "," + format_double(p.mean_error_s) + "," + std::to_string(p.n_excluded) + "\n";
  make_dir(dir);
  write_text_file((dir / "sweep.csv").string(), csv);
  out << verdict << "\n";
  return kExitOk;
}

// Runs a command body with the shared exit-code mapping.
template <typename Fn>
int guarded(CLI::App* sub, std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Body-representation time-to-collision toolkit", "bodyttc"};
  app.require_subcommand(1);

  GenDatasetArgs gd;
  auto* c_gd = app.add_subcommand("gen-dataset", "render a synthetic single-polygon image/mask dataset");
  gd.gen.attach(c_gd);
  c_gd->add_option("--train", gd.train, "training images")->capture_default_str();
  c_gd->add_option("--val", gd.val, "validation images")->capture_default_str();
  c_gd->add_option("--out", gd.out, "output directory");

  GenScenariosArgs gs;
  auto* c_gs = app.add_subcommand("gen-scenarios", "generate matched concave/convex collision scenarios");
  gs.gen.attach(c_gs);
  c_gs->add_option("--pairs", gs.pairs, "matched pairs to generate")->capture_default_str();
  c_gs->add_option("--taus", gs.taus, "ground-truth TTC grid in seconds, cycled over pairs")->capture_default_str();
  c_gs->add_option("--mouths", gs.mouths, "notch mouth widths, cycled once per tau round (default 16)");
  c_gs->add_option("--notch-depth", gs.notch_depth, "notch depth in pixels")->capture_default_str();
  c_gs->add_option("--body-width", gs.body_width, "agent leading-face width")->capture_default_str();
  c_gs->add_option("--body-length", gs.body_length, "agent body length behind the face")->capture_default_str();
  c_gs->add_option("--patient-ratio", gs.patient_ratio, "patient width / mouth, in (0,1)")->capture_default_str();
  c_gs->add_option("--v-agent", gs.v_agent, "agent velocity x,y in pixels/frame")->capture_default_str();
  c_gs->add_option("--v-patient", gs.v_patient, "patient velocity x,y in pixels/frame")->capture_default_str();
  c_gs->add_option("--frame-rate", gs.frame_rate, "frames per second")->capture_default_str();
  c_gs->add_option("--retries", gs.retries, "construction attempts per pair")->capture_default_str();
  c_gs->add_option("--out", gs.out, "output directory");

  SynthHumansArgs sh;
  auto* c_sh = app.add_subcommand("synth-humans", "synthesize a human response table for a scenario manifest");
  c_sh->add_option("--scenarios", sh.scenarios, "scenario manifest (scenarios.json)")->required();
  c_sh->add_option("--participants", sh.cfg.participants, "participants")->capture_default_str();
  c_sh->add_option("--bias-concave", sh.cfg.bias_concave_s, "response bias for concave videos, s")->capture_default_str();
  c_sh->add_option("--bias-convex", sh.cfg.bias_convex_s, "response bias for convex videos, s")->capture_default_str();
  c_sh->add_option("--sigma", sh.cfg.sigma_s, "response noise std, s")->capture_default_str();
  c_sh->add_option("--seed", sh.cfg.seed, "RNG seed")->capture_default_str();
  c_sh->add_option("--out", sh.out, "output directory");

  RunTtcArgs rt;
  auto* c_rt = app.add_subcommand("run-ttc", "simulate model TTC for every scenario");
  c_rt->add_option("--scenarios", rt.scenarios, "scenario manifest (scenarios.json)")->required();
  c_rt->add_option("--masks", rt.masks, "exact (rasterize polygons) or files (manifest mask entries)")->capture_default_str();
  c_rt->add_option("--mask-dir", rt.mask_dir, "directory of <scenario_id>.png|.pmap|.npy scene masks");
  c_rt->add_option("--coarsen", rt.coarsen, "coarsening operator kind:strength")->capture_default_str();
  c_rt->add_option("--horizon", rt.horizon, "simulation horizon in seconds")->capture_default_str();
  c_rt->add_option("--jobs", rt.jobs, "worker threads")->capture_default_str();
  c_rt->add_option("--out", rt.out, "output directory");

  CompareArgs cp;
  auto* c_cp = app.add_subcommand("compare", "alignment report from model TTC and human responses");
  c_cp->add_option("--model", cp.model, "model TTC CSV (ttc.csv)")->required();
  c_cp->add_option("--human", cp.human, "human response CSV")->required();
  c_cp->add_option("--meta", cp.meta, "video meta JSON")->required();
  c_cp->add_option("--out", cp.out, "output directory");

  SweepArgs sw;
  auto* c_sw = app.add_subcommand("sweep", "alignment error as a function of coarsening strength");
  c_sw->add_option("--scenarios", sw.scenarios, "scenario manifest (scenarios.json)")->required();
  c_sw->add_option("--human", sw.human, "human response CSV")->required();
  c_sw->add_option("--ops", sw.ops, "explicit operator list kind:strength,... (overrides --kind/--strengths)");
  c_sw->add_option("--kind", sw.kind, "operator kind")->capture_default_str();
  c_sw->add_option("--strengths", sw.strengths, "operator strengths")->capture_default_str();
  c_sw->add_option("--horizon", sw.horizon, "simulation horizon in seconds")->capture_default_str();
  c_sw->add_option("--margin", sw.margin, "U-shape margin in seconds")->capture_default_str();
  c_sw->add_option("--jobs", sw.jobs, "worker threads")->capture_default_str();
  c_sw->add_option("--out", sw.out, "output directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitUsage;
  }

  if (c_gd->parsed()) return guarded(c_gd, err, [&] { return cmd_gen_dataset(gd, out, err); });
  if (c_gs->parsed()) return guarded(c_gs, err, [&] { return cmd_gen_scenarios(gs, out, err); });
  if (c_sh->parsed()) return guarded(c_sh, err, [&] { return cmd_synth_humans(sh, out, err); });
  if (c_rt->parsed()) return guarded(c_rt, err, [&] { return cmd_run_ttc(rt, out, err); });
  if (c_cp->parsed()) return guarded(c_cp, err, [&] { return cmd_compare(cp, out, err); });
  return guarded(c_sw, err, [&] { return cmd_sweep(sw, out, err); });
}

}  // namespace bodyttc::cli
