#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "bodyttc/coarsen.hpp"
#include "bodyttc/metrics.hpp"
#include "bodyttc/parallel.hpp"
#include "bodyttc/rng.hpp"
#include "bodyttc/ttc.hpp"

namespace bodyttc {

inline constexpr double kDefaultHorizonS = 10.0;
inline constexpr double kDefaultUMarginS = 0.02;

/// Outcome of one scenario in a batch; `error` is set when the scenario was
/// excluded (no collision within the horizon, too few objects, ...).
struct BatchRow {
  ScenarioTtc ttc;
  std::string error;
};

/// scenario_ttc over many scenarios. `load(i)` supplies the object masks of
/// scenario i and may throw; its failures exclude the scenario like any
/// other. Row i always belongs to scenario i.
template <typename MaskSource>
std::vector<BatchRow> run_batch_with(std::span<const Scenario> scenarios, MaskSource&& load, const CoarseningOp& op,
                                     double horizon_s, unsigned jobs = 1) {
  op.validate();
  std::vector<BatchRow> rows(scenarios.size());
  parallel_for(scenarios.size(), jobs, [&](std::size_t i) {
    const Scenario& s = scenarios[i];
    BatchRow& row = rows[i];
    row.ttc = {s.id, s.pair_id, s.condition, s.tau_gt, TtcResult::miss()};
    try {
      const auto& masks = load(i);
      const ObjectMasks coarse{coarsen(masks.agent, op), coarsen(masks.patient, op)};
      row.ttc = scenario_ttc(s, coarse, horizon_s);
    } catch (const Error& e) {
      row.error = e.what();
    } catch (const std::invalid_argument& e) {
      row.error = e.what();
    }
  });
  return rows;
}

inline std::vector<BatchRow> run_batch(std::span<const Scenario> scenarios, std::span<const ObjectMasks> masks,
                                       const CoarseningOp& op, double horizon_s, unsigned jobs = 1) {
  if (scenarios.size() != masks.size()) throw std::invalid_argument("one mask pair per scenario required");
  return run_batch_with(
      scenarios, [&](std::size_t i) -> const ObjectMasks& { return masks[i]; }, op, horizon_s, jobs);
}

/// Model condition table from batch rows plus excluded counts per tau.
struct ModelAggregate {
  ConditionTable table;
  std::map<double, std::size_t> excluded_per_tau;
  std::size_t excluded = 0;
};

inline ModelAggregate aggregate_model(std::span<const BatchRow> rows, const VideoMetaMap& meta) {
  ModelAggregate agg;
  std::map<std::string, double> per_video;
  for (const auto& r : rows) {
    if (!r.ttc.result.collided) {
      ++agg.excluded;
      ++agg.excluded_per_tau[r.ttc.tau_gt_s];
      continue;
    }
    per_video[r.ttc.scenario_id] = *r.ttc.result.ttc_seconds;
  }
  agg.table = condition_average(per_video, meta);
  return agg;
}

struct SweepPoint {
  double param_value = 0.0;
  double mean_error_s = 0.0;
  std::size_t n_excluded = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::size_t argmin_index = 0;
  bool is_u_shaped = false;
  double margin_s = kDefaultUMarginS;
};

struct SweepOptions {
  double horizon_s = kDefaultHorizonS;
  double margin_s = kDefaultUMarginS;
  unsigned jobs = 1;
};

/// Mean alignment error as a function of coarsening strength. Each operator
/// coarsens the exact object masks of every scenario, the model concavity
/// effect is compared with the human one, and the series is tested for a
/// U shape.
inline SweepResult run_sweep(std::span<const Scenario> scenarios, const HumanResponseTable& human,
                             std::span<const CoarseningOp> ops, const SweepOptions& opt = {}) {
  if (ops.empty()) throw std::invalid_argument("sweep needs at least one operator");
  for (std::size_t i = 1; i < ops.size(); ++i)
    if (ops[i].strength < ops[i - 1].strength) throw std::invalid_argument("sweep operators must be sorted by strength");
  for (const auto& op : ops) op.validate();

  const auto human_means = per_video_mean(human);
  const ConditionTable human_table = condition_average(human_means.means, human.video_meta);

  std::vector<ObjectMasks> masks;
  masks.reserve(scenarios.size());
  for (const auto& s : scenarios) masks.push_back(exact_masks(s));
  const VideoMetaMap meta = meta_of(scenarios);

  SweepResult out;
  out.margin_s = opt.margin_s;
  for (const auto& op : ops) {
    const auto rows = run_batch(scenarios, masks, op, opt.horizon_s, opt.jobs);
    const ModelAggregate agg = aggregate_model(rows, meta);
    const AlignmentReport rep = build_alignment_report(agg.table, human_table, agg.excluded_per_tau);
    out.points.push_back({op.strength, rep.mean_error_s, agg.excluded});
  }
  std::vector<double> errors;
  for (const auto& p : out.points) errors.push_back(p.mean_error_s);
  out.argmin_index = static_cast<std::size_t>(std::min_element(errors.begin(), errors.end()) - errors.begin());
  out.is_u_shaped = errors.size() >= 3 && detect_u_shape(errors, opt.margin_s);
  return out;
}

/// Stand-in for the behavioural dataset: response = tau_gt + bias(condition)
/// + N(0, sigma), redrawn until positive. Video i uses stream i of `seed`.
struct SyntheticHumanConfig {
  int participants = 20;
  double bias_concave_s = -0.2;
  double bias_convex_s = 0.0;
  double sigma_s = 0.05;
  std::uint64_t seed = 0;
};

inline HumanResponseTable synthesize_humans(std::span<const Scenario> scenarios, const SyntheticHumanConfig& cfg) {
  if (cfg.participants < 1) throw std::invalid_argument("need at least one participant");
  if (!(cfg.sigma_s >= 0.0)) throw std::invalid_argument("sigma must be >= 0");
  HumanResponseTable table;
  table.video_meta = meta_of(scenarios);
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    Rng rng(cfg.seed, i);
    const double mean = s.tau_gt + (s.condition == Condition::concave ? cfg.bias_concave_s : cfg.bias_convex_s);
    for (int p = 0; p < cfg.participants; ++p) {
      double t = 0.0;
      for (int tries = 0; tries < 1000 && !(t > 0.0); ++tries) t = rng.normal(mean, cfg.sigma_s);
      if (!(t > 0.0)) throw std::invalid_argument("synthetic responses keep falling below zero");
      table.rows.push_back({s.id, "p" + std::to_string(p + 1), t});
    }
  }
  table.finalize();
  return table;
}

}  // namespace bodyttc
