#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "llmfootprint/power.hpp"
#include "llmfootprint/registry.hpp"

namespace llmfp {

// Water consumed per query, in liters: evaporative on-site cooling plus
// off-site electricity generation. Consumption, not withdrawal.
inline double water_per_query(double energy_kwh, const EnvMultipliers& env) {
  if (energy_kwh < 0.0) throw ValidationError("water_per_query: energy must be >= 0");
  return (energy_kwh / env.pue) * env.wue_site + energy_kwh * env.wue_source;
}

// Purchased-electricity emissions only, in kgCO2e. On-site combustion and
// embodied emissions are outside this model by construction.
inline double carbon_per_query(double energy_kwh, const EnvMultipliers& env) {
  if (energy_kwh < 0.0) throw ValidationError("carbon_per_query: energy must be >= 0");
  return energy_kwh * env.cif;
}

// Energy, water and carbon of one (model, scenario) cell. Water and carbon
// are exact affine images of the energy samples.
struct FootprintRecord {
  std::string model_name;
  Scenario scenario = Scenario::Short;
  EstimateDistribution energy;      // kWh
  DistributionSummary water_l;      // liters
  DistributionSummary carbon_kg;    // kgCO2e
};

inline FootprintRecord make_footprint_record(const ModelDeployment& dep,
                                             const PerformanceQuantiles& q, Scenario scenario,
                                             PairingMode mode = PairingMode::Cartesian) {
  FootprintRecord rec;
  rec.model_name = dep.model_name;
  rec.scenario = scenario;
  rec.energy = estimate_energy(dep, q, canonical_scenario(scenario), mode);
  const double water_factor = dep.env.wue_site / dep.env.pue + dep.env.wue_source;
  rec.water_l = summarize(affine_image(rec.energy.samples, water_factor));
  rec.carbon_kg = summarize(affine_image(rec.energy.samples, dep.env.cif));
  return rec;
}

struct FootprintTable {
  std::vector<FootprintRecord> records;   // sorted: model name asc, scenario asc
  std::vector<std::string> omissions;     // cells skipped for lack of quantile data
};

// One record per (model, scenario) pair with quantile data. Models lacking a
// scenario (context-window limits) are omitted for that scenario and logged.
inline FootprintTable footprint_table(const Registry& reg, const QuantileTable& quantiles,
                                      const std::vector<Scenario>& scenarios,
                                      PairingMode mode = PairingMode::Cartesian) {
  std::vector<const ModelDeployment*> models;
  for (const auto& m : reg.models) models.push_back(&m);
  std::sort(models.begin(), models.end(),
            [](const auto* a, const auto* b) { return a->model_name < b->model_name; });
  std::vector<Scenario> scens = scenarios;
  std::sort(scens.begin(), scens.end());

  FootprintTable table;
  for (const auto* m : models) {
    for (Scenario s : scens) {
      auto it = quantiles.find({m->model_name, s});
      if (it == quantiles.end()) {
        table.omissions.push_back(m->model_name + " " + to_string(s) + ": no quantile data");
        continue;
      }
      table.records.push_back(make_footprint_record(*m, it->second, s, mode));
    }
  }
  return table;
}

}  // namespace llmfp
