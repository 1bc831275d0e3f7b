#pragma once

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "llmfootprint/dea.hpp"
#include "llmfootprint/footprint.hpp"
#include "llmfootprint/projection.hpp"
#include "llmfootprint/registry.hpp"
#include "llmfootprint/stats.hpp"
#include "llmfootprint/svg.hpp"

namespace llmfp {

struct RunConfig {
  std::string registry_path;
  std::string quantiles_path;
  std::string out_dir = ".";
  std::vector<Scenario> scenarios{Scenario::Short, Scenario::Medium, Scenario::Long};
  std::vector<int> batch_sizes{4, 8, 16};
  Scenario dea_scenario = Scenario::Medium;
  PairingMode pairing = PairingMode::Cartesian;
  bool benevolent = false;
  bool svg = false;
  bool dea_matrix = false;
};

inline void validate(const RunConfig& cfg) {
  if (cfg.scenarios.empty())
    throw ValidationError("config: at least one scenario must be selected");
}

namespace detail {

inline std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline std::vector<Scenario> sorted_scenarios(std::vector<Scenario> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace detail

inline std::string footprint_csv(const FootprintTable& table) {
  csv::Writer w(
      "model,scenario,energy_wh_mean,energy_wh_std,water_ml_mean,water_ml_std,"
      "carbon_g_mean,carbon_g_std,energy_wh_min,energy_wh_max");
  for (const auto& r : table.records) {
    const auto& e = r.energy.summary;
    w.row({r.model_name, to_string(r.scenario), fmt6(e.mean * 1000.0), fmt6(e.std * 1000.0),
           fmt6(r.water_l.mean * 1000.0), fmt6(r.water_l.std * 1000.0),
           fmt6(r.carbon_kg.mean * 1000.0), fmt6(r.carbon_kg.std * 1000.0),
           fmt6(e.min * 1000.0), fmt6(e.max * 1000.0)});
  }
  return w.str();
}

inline std::string energy_chart_svg(const FootprintTable& table,
                                    const std::vector<Scenario>& scenarios) {
  svg::ChartSpec spec;
  spec.title = "Per-query energy by model and prompt scenario";
  spec.y_label = "energy (Wh, log scale)";
  for (Scenario s : scenarios) spec.series.push_back(to_string(s));
  for (const auto& r : table.records) {
    if (spec.groups.empty() || spec.groups.back().label != r.model_name) {
      spec.groups.push_back({r.model_name, std::vector<double>(scenarios.size(), 0.0)});
    }
    for (std::size_t si = 0; si < scenarios.size(); ++si)
      if (scenarios[si] == r.scenario)
        spec.groups.back().values[si] = r.energy.summary.mean * 1000.0;
  }
  return svg::grouped_bar_chart_log(spec);
}

// estimate: footprint.csv plus the log-scale energy chart.
inline FootprintTable cmd_estimate(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  validate(cfg);
  const Registry reg = load_registry(cfg.registry_path);
  const QuantileTable quantiles = load_quantiles(cfg.quantiles_path);
  const auto scenarios = detail::sorted_scenarios(cfg.scenarios);
  FootprintTable table = footprint_table(reg, quantiles, scenarios, cfg.pairing);
  for (const auto& o : table.omissions) diag << "note: omitted " << o << "\n";
  write_file(detail::out_path(cfg, "footprint.csv"), footprint_csv(table));
  write_file(detail::out_path(cfg, "energy_chart.svg"), energy_chart_svg(table, scenarios));
  return table;
}

inline std::string dea_csv(const CrossEfficiencyResult& res) {
  csv::Writer w("model,ai_index,ccr_efficiency,cross_efficiency_score,rank");
  for (std::size_t pos = 0; pos < res.ranking.size(); ++pos) {
    const std::size_t k = res.ranking[pos];
    w.row({res.dmus[k], fmt6(res.outputs[k]), fmt6(res.ccr[k]), fmt6(res.scores[k]),
           std::to_string(pos + 1)});
  }
  return w.str();
}

inline std::string dea_matrix_csv(const CrossEfficiencyResult& res) {
  std::string header = "owner";
  for (const auto& d : res.dmus) header += "," + d;
  csv::Writer w(header);
  for (std::size_t d = 0; d < res.dmus.size(); ++d) {
    std::vector<std::string> row{res.dmus[d]};
    for (std::size_t k = 0; k < res.dmus.size(); ++k) row.push_back(fmt6(res.matrix[d][k]));
    w.row(row);
  }
  return w.str();
}

struct RankOutput {
  CrossEfficiencyResult result;
  std::vector<DeaExclusion> excluded;
};

// rank: cross-efficiency DEA over the selected scenario's energy means.
inline RankOutput cmd_rank(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  validate(cfg);
  const Registry reg = load_registry(cfg.registry_path);
  const QuantileTable quantiles = load_quantiles(cfg.quantiles_path);
  const FootprintTable table = footprint_table(reg, quantiles, {cfg.dea_scenario}, cfg.pairing);
  DeaInstanceBuild build = make_dea_instance(reg, table, cfg.dea_scenario);
  for (const auto& ex : build.excluded)
    diag << "note: excluded from DEA: " << ex.model << " (" << ex.reason << ")\n";
  if (build.instance.dmus.empty())
    throw ValidationError("rank: no model has both an ai_index and " +
                          std::string(to_string(cfg.dea_scenario)) + " quantile data");
  RankOutput out;
  out.result = cross_efficiency(build.instance, cfg.benevolent ? SecondaryGoal::Benevolent
                                                               : SecondaryGoal::None);
  out.excluded = std::move(build.excluded);
  write_file(detail::out_path(cfg, "dea.csv"), dea_csv(out.result));
  if (cfg.dea_matrix)
    write_file(detail::out_path(cfg, "dea_matrix.csv"), dea_matrix_csv(out.result));
  if (cfg.svg) {
    svg::ChartSpec spec;
    spec.title = "Cross-efficiency DEA scores";
    spec.y_label = "score (log scale)";
    spec.series = {"cross-efficiency"};
    for (std::size_t pos = 0; pos < out.result.ranking.size(); ++pos) {
      const std::size_t k = out.result.ranking[pos];
      spec.groups.push_back({out.result.dmus[k], {out.result.scores[k]}});
    }
    write_file(detail::out_path(cfg, "dea_chart.svg"), svg::grouped_bar_chart_log(spec));
  }
  return out;
}

inline constexpr const char* kSamplesHeader = "provider_system,prompt_size,energy_wh";

inline ObservationSet load_energy_samples(const std::string& path) {
  ObservationSet obs;
  for (const auto& row : csv::read_file(path, kSamplesHeader)) {
    Observation o;
    o.group_a = row.fields[0];
    o.group_b = row.fields[1];
    o.value = csv::parse_double(row.fields[2], path, row.line, "energy_wh");
    obs.push_back(std::move(o));
  }
  if (obs.empty()) throw ValidationError(path + ": no samples");
  return obs;
}

inline std::string tukey_csv(const HardwareReport& report) {
  csv::Writer w("group_1,group_2,prompt_size,mean_diff_wh,q_stat,p_adj");
  for (const auto& row : report.rows)
    w.row({row.pair.group_1, row.pair.group_2, row.prompt_size, fmt6(row.pair.mean_diff),
           fmt6(row.pair.q_stat), fmt6(row.pair.p_adj)});
  return w.str();
}

// infer-hardware: pairwise Tukey table per prompt size plus verdict lines.
inline HardwareReport cmd_infer_hardware(const RunConfig& cfg, const std::string& samples_path,
                                         std::ostream& out = std::cout) {
  const ObservationSet obs = load_energy_samples(samples_path);
  HardwareReport report = infer_hardware(obs);
  write_file(detail::out_path(cfg, "tukey.csv"), tukey_csv(report));
  out << "reference platform: " << report.reference << "\n";
  for (const auto& v : report.verdicts) {
    out << v.prompt_size << " tokens, " << v.platform << ": " << v.verdict;
    if (!std::isnan(v.p_adj)) out << " (p_adj=" << fmt6(v.p_adj) << ")";
    out << "\n";
  }
  return report;
}

struct ProjectOptions {
  std::string model_name;
  double queries_per_day = 7.0e8;   // fleet-wide daily baseline
  double target_total = 7.72e11;    // annual query target for calibration
  double user_queries_per_day = 8;  // for the per-user summary line
};

inline std::string projection_json(const AnnualFootprint& fp) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"total_queries\": " << fmt6(fp.total_queries) << ",\n";
  out << "  \"monthly_volumes\": [";
  for (int m = 0; m < 12; ++m) out << (m ? ", " : "") << fmt6(fp.monthly_volumes[m]);
  out << "],\n";
  auto band = [&](const char* name, const Band& b, bool last = false) {
    out << "  \"" << name << "\": {\"low\": " << fmt6(b.low) << ", \"mid\": " << fmt6(b.mid)
        << ", \"high\": " << fmt6(b.high) << "}" << (last ? "\n" : ",\n");
  };
  band("energy_mwh", fp.energy_mwh);
  band("water_kl", fp.water_kl);
  band("carbon_t", fp.carbon_t);
  const Equivalents eq = equivalents(fp);
  out << "  \"equivalents\": {\"us_households\": " << fmt6(eq.us_households)
      << ", \"olympic_pools\": " << fmt6(eq.olympic_pools)
      << ", \"forest_acres\": " << fmt6(eq.forest_acres) << "}\n";
  out << "}\n";
  return out.str();
}

// project: annual fleet footprint for one model under the calibrated growth
// schedule, written as projection.json with a human summary on stdout.
inline AnnualFootprint cmd_project(const RunConfig& cfg, const ProjectOptions& opt,
                                   std::ostream& out = std::cout) {
  validate(cfg);
  const Registry reg = load_registry(cfg.registry_path);
  const QuantileTable quantiles = load_quantiles(cfg.quantiles_path);
  const ModelDeployment* dep = reg.find_model(opt.model_name);
  if (!dep) throw ValidationError("project: unknown model '" + opt.model_name + "'");

  auto record_for = [&](Scenario s) {
    auto it = quantiles.find({opt.model_name, s});
    if (it == quantiles.end())
      throw ValidationError("project: model '" + opt.model_name + "' has no " +
                            to_string(s) + " quantile data");
    return make_footprint_record(*dep, it->second, s, cfg.pairing);
  };
  const FootprintRecord short_fp = record_for(Scenario::Short);
  const FootprintRecord medium_fp = record_for(Scenario::Medium);

  GrowthSchedule schedule;
  schedule.base_daily_queries = opt.queries_per_day;
  if (opt.queries_per_day > 0.0) schedule = calibrate_decay(opt.target_total, schedule);

  const AnnualFootprint fp =
      annual_footprint(schedule, UsageMix{}, short_fp, medium_fp, dep->env);
  write_file(detail::out_path(cfg, "projection.json"), projection_json(fp));

  const DailyUserFootprint user = daily_user_footprint(opt.user_queries_per_day, short_fp);
  const Equivalents eq = equivalents(fp);
  out << opt.model_name << " annual projection\n"
      << "  queries: " << fmt6(fp.total_queries) << "\n"
      << "  energy:  " << fmt6(fp.energy_mwh.mid) << " MWh (" << fmt6(fp.energy_mwh.low) << " - "
      << fmt6(fp.energy_mwh.high) << ")\n"
      << "  water:   " << fmt6(fp.water_kl.mid) << " kL (" << fmt6(fp.water_kl.low) << " - "
      << fmt6(fp.water_kl.high) << ")\n"
      << "  carbon:  " << fmt6(fp.carbon_t.mid) << " tCO2e (" << fmt6(fp.carbon_t.low) << " - "
      << fmt6(fp.carbon_t.high) << ")\n"
      << "  equivalents: " << fmt6(eq.us_households) << " U.S. households, "
      << fmt6(eq.olympic_pools) << " Olympic pools, " << fmt6(eq.forest_acres)
      << " forest acres\n"
      << "  one user at " << fmt6(opt.user_queries_per_day)
      << " short queries/day: " << fmt6(user.energy_wh) << " +/- " << fmt6(user.spread_wh)
      << " Wh\n";
  return fp;
}

// sensitivity: per-prompt energy across batch sizes for one model.
inline std::vector<std::pair<int, std::vector<std::pair<Scenario, EstimateDistribution>>>>
cmd_sensitivity(const RunConfig& cfg, const std::string& model_name,
                std::ostream& diag = std::cerr) {
  validate(cfg);
  const Registry reg = load_registry(cfg.registry_path);
  const QuantileTable quantiles = load_quantiles(cfg.quantiles_path);
  const ModelDeployment* dep = reg.find_model(model_name);
  if (!dep) throw ValidationError("sensitivity: unknown model '" + model_name + "'");
  const auto scenarios = detail::sorted_scenarios(cfg.scenarios);

  std::vector<int> batches = cfg.batch_sizes;
  std::sort(batches.begin(), batches.end());
  std::vector<std::pair<int, std::vector<std::pair<Scenario, EstimateDistribution>>>> rows;
  for (int b : batches) rows.push_back({b, {}});

  bool any = false;
  for (Scenario s : scenarios) {
    auto it = quantiles.find({model_name, s});
    if (it == quantiles.end()) {
      diag << "note: omitted " << model_name << " " << to_string(s) << ": no quantile data\n";
      continue;
    }
    any = true;
    auto per_batch =
        batch_sensitivity(*dep, it->second, canonical_scenario(s), batches,
                          default_batch_draw_table(), cfg.pairing);
    for (std::size_t i = 0; i < per_batch.size(); ++i)
      rows[i].second.push_back({s, std::move(per_batch[i].second)});
  }
  if (!any)
    throw ValidationError("sensitivity: no quantile data for model '" + model_name + "'");

  csv::Writer w("batch,scenario,energy_wh_mean,energy_wh_std,energy_wh_min,energy_wh_max");
  for (const auto& [b, cells] : rows)
    for (const auto& [s, est] : cells)
      w.row({std::to_string(b), to_string(s), fmt6(est.summary.mean * 1000.0),
             fmt6(est.summary.std * 1000.0), fmt6(est.summary.min * 1000.0),
             fmt6(est.summary.max * 1000.0)});
  write_file(detail::out_path(cfg, "sensitivity.csv"), w.str());

  svg::ChartSpec spec;
  spec.title = "Per-query energy by batch size: " + model_name;
  spec.y_label = "energy (Wh, log scale)";
  for (Scenario s : scenarios) spec.series.push_back(to_string(s));
  for (const auto& [b, cells] : rows) {
    svg::BarGroup g{"B=" + std::to_string(b), std::vector<double>(scenarios.size(), 0.0)};
    for (const auto& [s, est] : cells)
      for (std::size_t si = 0; si < scenarios.size(); ++si)
        if (scenarios[si] == s) g.values[si] = est.summary.mean * 1000.0;
    spec.groups.push_back(std::move(g));
  }
  write_file(detail::out_path(cfg, "sensitivity_chart.svg"), svg::grouped_bar_chart_log(spec));
  return rows;
}

}  // namespace llmfp
