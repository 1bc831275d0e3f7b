#pragma once

#include <map>
#include <utility>
#include <vector>

#include "llmfootprint/runtime.hpp"

namespace llmfp {

// Node-level utilization attributed to one request: G of N node GPUs drawing
// a fraction d of their max power, shared across a batch of B requests.
inline double utilization(int gpu_count, double d, int gpus_per_node, int batch_size) {
  if (gpu_count < 1 || gpus_per_node < 1 || batch_size < 1 || !(d > 0.0))
    throw InternalError("utilization: G, N, B must be >= 1 and d > 0");
  return static_cast<double>(gpu_count) * d / (static_cast<double>(gpus_per_node) * batch_size);
}

// GPU utilization evaluated at the low/mid/high per-GPU draw, plus the fixed
// non-GPU share. A degenerate draw range yields three identical points, which
// keeps the 75-sample convention stable.
struct UtilizationGrid {
  std::vector<double> u_gpu_points;
  double u_non_gpu = 0.0;
};

inline UtilizationGrid utilization_grid(const ModelDeployment& dep) {
  UtilizationGrid grid;
  const double mid = 0.5 * (dep.d_gpu_low + dep.d_gpu_high);
  for (double d : {dep.d_gpu_low, mid, dep.d_gpu_high})
    grid.u_gpu_points.push_back(
        utilization(dep.gpu_count, d, dep.hardware.gpus_per_node, dep.batch_size));
  grid.u_non_gpu =
      utilization(dep.gpu_count, dep.d_non_gpu, dep.hardware.gpus_per_node, dep.batch_size);
  return grid;
}

// Per-query energy samples in kWh.
struct EstimateDistribution {
  std::vector<WeightedSample> samples;  // value = kWh
  DistributionSummary summary;
};

// energy = t * (P_gpu * u_gpu + P_non_gpu * u_non_gpu) * PUE, evaluated over
// the full runtime x utilization product (75 samples in the default
// configuration). Idle GPUs in partially loaded nodes contribute nothing.
inline EstimateDistribution energy_per_query(const RuntimeDistribution& rt,
                                             const UtilizationGrid& grid,
                                             const HardwareProfile& hw, double pue) {
  if (grid.u_gpu_points.empty()) throw InternalError("energy_per_query: empty utilization grid");
  if (pue < 1.0) throw ValidationError("energy_per_query: pue >= 1.0");
  const double p_gpu = hw.gpu_power_kw();
  const double p_non = hw.non_gpu_power_kw();
  const double wu = 1.0 / static_cast<double>(grid.u_gpu_points.size());
  EstimateDistribution est;
  est.samples.reserve(rt.samples.size() * grid.u_gpu_points.size());
  for (const auto& t : rt.samples)
    for (double u : grid.u_gpu_points)
      est.samples.push_back({t.value * (p_gpu * u + p_non * grid.u_non_gpu) * pue,
                             t.weight * wu});
  est.summary = summarize(est.samples);
  return est;
}

inline EstimateDistribution estimate_energy(const ModelDeployment& dep,
                                            const PerformanceQuantiles& q,
                                            const PromptScenario& scenario,
                                            PairingMode mode = PairingMode::Cartesian) {
  return energy_per_query(build_runtime(q, scenario, mode), utilization_grid(dep), dep.hardware,
                          dep.env.pue);
}

// Per-GPU draw range to assume at a given batch size.
struct BatchDrawRange {
  double d_gpu_low = 0.0;
  double d_gpu_high = 0.0;
};

using BatchDrawTable = std::map<int, BatchDrawRange>;

// Draw ranges observed for large-class deployments at common batch sizes.
inline const BatchDrawTable& default_batch_draw_table() {
  static const BatchDrawTable table = {
      {4, {0.40, 0.55}}, {8, {0.45, 0.60}}, {16, {0.55, 0.70}}};
  return table;
}

// Re-estimates per-query energy under alternative batch sizes. Only the batch
// size and its draw range vary; the runtime distribution is shared.
inline std::vector<std::pair<int, EstimateDistribution>> batch_sensitivity(
    const ModelDeployment& dep, const PerformanceQuantiles& q, const PromptScenario& scenario,
    const std::vector<int>& batches, const BatchDrawTable& table = default_batch_draw_table(),
    PairingMode mode = PairingMode::Cartesian) {
  const RuntimeDistribution rt = build_runtime(q, scenario, mode);
  std::vector<std::pair<int, EstimateDistribution>> out;
  out.reserve(batches.size());
  for (int b : batches) {
    auto it = table.find(b);
    if (it == table.end())
      throw ValidationError("batch size " + std::to_string(b) +
                            " has no configured utilization range");
    ModelDeployment alt = dep;
    alt.batch_size = b;
    alt.d_gpu_low = it->second.d_gpu_low;
    alt.d_gpu_high = it->second.d_gpu_high;
    out.emplace_back(b, energy_per_query(rt, utilization_grid(alt), alt.hardware, alt.env.pue));
  }
  return out;
}

}  // namespace llmfp
