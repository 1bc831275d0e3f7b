#pragma once

#include <vector>

#include "llmfootprint/distribution.hpp"
#include "llmfootprint/model.hpp"

namespace llmfp {

// How latency and TPS quantiles are combined into runtime samples.
//   Cartesian: every latency quantile against every TPS quantile (25 samples);
//              captures both variability sources with no correlation
//              assumption.
//   Paired:    percentile i with percentile i (5 samples); assumes perfect
//              rank correlation, kept for sensitivity checks.
enum class PairingMode { Cartesian, Paired };

// Per-query wall time: samples in hours plus weighted summary statistics.
struct RuntimeDistribution {
  std::vector<WeightedSample> samples;  // value = duration in hours
  DistributionSummary summary;
};

// duration = (output_tokens / tps + latency) / 3600. A zero-output scenario
// degenerates to latency only.
inline RuntimeDistribution build_runtime(const PerformanceQuantiles& q,
                                         const PromptScenario& scenario,
                                         PairingMode mode = PairingMode::Cartesian) {
  validate(q);
  if (scenario.output_tokens < 0)
    throw ValidationError("build_runtime: output_tokens must be >= 0");
  RuntimeDistribution rt;
  const double out_tokens = scenario.output_tokens;
  if (mode == PairingMode::Cartesian) {
    const double w = 1.0 / 25.0;
    rt.samples.reserve(25);
    for (double lat : q.latency_s)
      for (double tps : q.tps)
        rt.samples.push_back({(out_tokens / tps + lat) / 3600.0, w});
  } else {
    const double w = 1.0 / 5.0;
    rt.samples.reserve(5);
    for (int i = 0; i < 5; ++i)
      rt.samples.push_back({(out_tokens / q.tps[i] + q.latency_s[i]) / 3600.0, w});
  }
  rt.summary = summarize(rt.samples);
  return rt;
}

}  // namespace llmfp
