#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "llmfootprint/errors.hpp"

namespace llmfp {

struct WeightedSample {
  double value = 0.0;
  double weight = 0.0;
};

struct DistributionSummary {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const DistributionSummary&) const = default;
};

// Weighted moments over a normalized sample set. The weights must sum to one;
// anything else indicates a construction bug upstream.
inline DistributionSummary summarize(const std::vector<WeightedSample>& samples) {
  if (samples.empty()) throw InternalError("summarize: empty sample set");
  double wsum = 0.0;
  for (const auto& s : samples) wsum += s.weight;
  if (std::abs(wsum - 1.0) > 1e-12)
    throw InternalError("summarize: weights sum to " + std::to_string(wsum) + ", expected 1");
  DistributionSummary out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    out.min = std::min(out.min, s.value);
    out.max = std::max(out.max, s.value);
  }
  if (out.min == out.max) {  // point mass: exactly zero spread
    out.mean = out.min;
    return out;
  }
  for (const auto& s : samples) out.mean += s.weight * s.value;
  out.mean /= wsum;
  double var = 0.0;
  for (const auto& s : samples) {
    const double d = s.value - out.mean;
    var += s.weight * d * d;
  }
  out.std = std::sqrt(std::max(var / wsum, 0.0));
  return out;
}

// Affine image x -> a*x + b of a weighted sample set; weights are preserved.
inline std::vector<WeightedSample> affine_image(const std::vector<WeightedSample>& samples,
                                                double a, double b = 0.0) {
  std::vector<WeightedSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({a * s.value + b, s.weight});
  return out;
}

}  // namespace llmfp
