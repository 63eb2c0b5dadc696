#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bodyttc/error.hpp"
#include "bodyttc/geometry.hpp"
#include "bodyttc/io/text.hpp"
#include "bodyttc/scenario.hpp"

namespace bodyttc {

struct VideoMeta {
  double tau_gt_s = 0.0;
  Condition condition = Condition::concave;
  std::string pair_id;
  Vec2 v_agent;
  Vec2 v_patient;
  double frame_rate = 30.0;
};

using VideoMetaMap = std::map<std::string, VideoMeta>;

inline VideoMeta meta_of(const Scenario& s) {
  return {s.tau_gt, s.condition, s.pair_id, s.v_agent, s.v_patient, s.frame_rate};
}

inline VideoMetaMap meta_of(std::span<const Scenario> scenarios) {
  VideoMetaMap m;
  for (const auto& s : scenarios) m[s.id] = meta_of(s);
  return m;
}

struct HumanResponse {
  std::string video_id;
  std::string participant_id;
  double ttc_response_s = 0.0;
};

struct HumanResponseTable {
  std::vector<HumanResponse> rows;
  int participant_count = 0;
  VideoMetaMap video_meta;
  std::size_t dropped_rows = 0;  // missing or non-positive responses

  /// Recompute the participant count and check the table invariants.
  void finalize() {
    std::set<std::string> participants;
    for (const auto& r : rows) {
      if (!(r.ttc_response_s > 0.0)) throw SchemaError("non-positive response for video '" + r.video_id + "'");
      if (!video_meta.contains(r.video_id)) throw UnknownVideo("video '" + r.video_id + "' has no metadata");
      participants.insert(r.participant_id);
    }
    participant_count = static_cast<int>(participants.size());
  }
};

/// Reads `video_id,participant_id,ttc_response_s` (columns in any order,
/// extra columns ignored). Rows with a missing, unparsable or non-positive
/// response are dropped and counted.
inline HumanResponseTable load_human_csv(const std::string& path, const VideoMetaMap& meta) {
  const auto lines = read_csv_lines(path);
  if (lines.empty()) throw SchemaError("'" + path + "' has no header");
  const auto header = split_csv_line(lines[0]);
  const auto column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("'" + path + "' lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_video = column("video_id");
  const std::size_t c_part = column("participant_id");
  const std::size_t c_resp = column("ttc_response_s");
  HumanResponseTable table;
  table.video_meta = meta;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    const auto get = [&](std::size_t c) { return c < f.size() ? f[c] : std::string(); };
    const std::string video = get(c_video);
    if (!meta.contains(video)) throw UnknownVideo("row " + std::to_string(i) + ": unknown video '" + video + "'");
    const auto resp = parse_double(get(c_resp));
    if (!resp || !(*resp > 0.0) || !std::isfinite(*resp)) {
      ++table.dropped_rows;
      continue;
    }
    table.rows.push_back({video, get(c_part), *resp});
  }
  table.finalize();
  return table;
}

struct PerVideoMeans {
  std::map<std::string, double> means;
  std::vector<std::string> excluded;  // videos in meta with no surviving rows
};

/// Mean response per video over its participants, summed in row order.
inline PerVideoMeans per_video_mean(const HumanResponseTable& table) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& r : table.rows) {
    auto& a = acc[r.video_id];
    a.first += r.ttc_response_s;
    ++a.second;
  }
  PerVideoMeans out;
  for (const auto& [id, a] : acc) out.means[id] = a.first / static_cast<double>(a.second);
  for (const auto& [id, m] : table.video_meta)
    if (!out.means.contains(id)) out.excluded.push_back(id);
  return out;
}

struct ConditionCell {
  double mean_ttc_s = 0.0;
  std::size_t count = 0;
};

struct ConditionRow {
  std::optional<ConditionCell> concave;
  std::optional<ConditionCell> convex;

  const std::optional<ConditionCell>& get(Condition c) const { return c == Condition::concave ? concave : convex; }
  std::optional<ConditionCell>& get(Condition c) { return c == Condition::concave ? concave : convex; }
  bool complete() const { return concave.has_value() && convex.has_value(); }
};

/// Condition means keyed by exact ground-truth time.
struct ConditionTable {
  std::map<double, ConditionRow> rows;

  std::vector<double> incomplete_taus() const {
    std::vector<double> out;
    for (const auto& [tau, row] : rows)
      if (!row.complete()) out.push_back(tau);
    return out;
  }
};

/// Average per-video values over the videos sharing (tau, condition), in
/// video-id order.
inline ConditionTable condition_average(const std::map<std::string, double>& per_video, const VideoMetaMap& meta) {
  std::map<double, std::pair<std::array<double, 2>, std::array<std::size_t, 2>>> acc;
  for (const auto& [id, value] : per_video) {
    const auto it = meta.find(id);
    if (it == meta.end()) throw UnknownVideo("video '" + id + "' has no metadata");
    auto& a = acc[it->second.tau_gt_s];
    const std::size_t g = it->second.condition == Condition::concave ? 0 : 1;
    a.first[g] += value;
    ++a.second[g];
  }
  ConditionTable table;
  for (const auto& [tau, a] : acc) {
    ConditionRow row;
    for (std::size_t g = 0; g < 2; ++g) {
      if (a.second[g] == 0) continue;
      row.get(g == 0 ? Condition::concave : Condition::convex) =
          ConditionCell{a.first[g] / static_cast<double>(a.second[g]), a.second[g]};
    }
    table.rows[tau] = row;
  }
  return table;
}

/// delta(tau) = cell(tau, concave) - cell(tau, convex).
///
/// With `skipped` null, a tau lacking either condition raises MissingCell;
/// otherwise such taus are left out and appended to `skipped`.
inline std::map<double, double> concavity_effect(const ConditionTable& table, std::vector<double>* skipped = nullptr) {
  std::map<double, double> out;
  for (const auto& [tau, row] : table.rows) {
    if (!row.complete()) {
      if (!skipped) throw MissingCell("tau " + format_double(tau) + " lacks a condition");
      skipped->push_back(tau);
      continue;
    }
    out[tau] = row.concave->mean_ttc_s - row.convex->mean_ttc_s;
  }
  return out;
}

struct TauAlignment {
  double delta_human_s = 0.0;
  double delta_model_s = 0.0;
  double error_s = 0.0;
  std::size_t n_concave = 0;
  std::size_t n_convex = 0;
  std::size_t n_excluded = 0;
};

struct AlignmentReport {
  std::map<double, TauAlignment> per_tau;
  double mean_error_s = 0.0;
  std::vector<double> tau_set;
  std::vector<double> unmatched_taus;  // present in only one input
};

/// E(tau) = |delta_model - delta_human| on the shared taus and their mean.
inline AlignmentReport alignment_error(const std::map<double, double>& delta_model,
                                       const std::map<double, double>& delta_human) {
  AlignmentReport rep;
  for (const auto& [tau, dm] : delta_model) {
    const auto it = delta_human.find(tau);
    if (it == delta_human.end()) {
      rep.unmatched_taus.push_back(tau);
      continue;
    }
    TauAlignment row;
    row.delta_model_s = dm;
    row.delta_human_s = it->second;
    row.error_s = std::abs(dm - it->second);
    rep.per_tau[tau] = row;
    rep.tau_set.push_back(tau);
  }
  for (const auto& [tau, dh] : delta_human)
    if (!delta_model.contains(tau)) rep.unmatched_taus.push_back(tau);
  std::sort(rep.unmatched_taus.begin(), rep.unmatched_taus.end());
  if (rep.tau_set.empty()) throw EmptyIntersection("no ground-truth time shared by model and human effects");
  double sum = 0.0;
  for (double tau : rep.tau_set) sum += rep.per_tau[tau].error_s;
  rep.mean_error_s = sum / static_cast<double>(rep.tau_set.size());
  return rep;
}

/// Full report: lenient effects on both tables, then per-tau counts from the
/// model table and the caller's exclusion tallies.
inline AlignmentReport build_alignment_report(const ConditionTable& model, const ConditionTable& human,
                                              const std::map<double, std::size_t>& excluded_per_tau = {}) {
  std::vector<double> skipped;
  const auto dm = concavity_effect(model, &skipped);
  const auto dh = concavity_effect(human, &skipped);
  AlignmentReport rep = alignment_error(dm, dh);
  for (auto& [tau, row] : rep.per_tau) {
    const auto& cells = model.rows.at(tau);
    row.n_concave = cells.concave->count;
    row.n_convex = cells.convex->count;
    if (const auto it = excluded_per_tau.find(tau); it != excluded_per_tau.end()) row.n_excluded = it->second;
  }
  for (double tau : skipped) rep.unmatched_taus.push_back(tau);
  std::sort(rep.unmatched_taus.begin(), rep.unmatched_taus.end());
  rep.unmatched_taus.erase(std::unique(rep.unmatched_taus.begin(), rep.unmatched_taus.end()), rep.unmatched_taus.end());
  return rep;
}

/// Interior minimum with both endpoints at least `margin_s` above it.
inline bool detect_u_shape(std::span<const double> errors, double margin_s) {
  if (errors.size() < 3) throw TooFewPoints("U-shape detection needs at least 3 points");
  const auto it = std::min_element(errors.begin(), errors.end());
  const auto idx = static_cast<std::size_t>(it - errors.begin());
  if (idx == 0 || idx + 1 == errors.size()) return false;
  return errors.front() - *it >= margin_s && errors.back() - *it >= margin_s;
}

}  // namespace bodyttc
