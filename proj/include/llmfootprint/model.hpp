#pragma once

#include <array>
#include <optional>
#include <string>

#include "llmfootprint/errors.hpp"

namespace llmfp {

// Node-level power envelope of a GPU server. The critical power of a node is
// split into a GPU share (gpus_per_node x per-GPU max draw) and a non-GPU
// remainder (CPU, memory, storage, fans).
struct HardwareProfile {
  std::string name;
  int gpus_per_node = 0;
  double per_gpu_max_power_kw = 0.0;
  double node_critical_power_kw = 0.0;

  double gpu_power_kw() const { return gpus_per_node * per_gpu_max_power_kw; }
  double non_gpu_power_kw() const { return node_critical_power_kw - gpu_power_kw(); }

  bool operator==(const HardwareProfile&) const = default;
};

inline void validate(const HardwareProfile& hw) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("hardware '" + hw.name + "': " + what);
  };
  if (hw.name.empty()) throw ValidationError("hardware profile with empty name");
  if (hw.gpus_per_node < 1) fail("gpus_per_node must be >= 1");
  if (hw.node_critical_power_kw <= 0.0) fail("node_critical_power_kw must be > 0");
  if (hw.per_gpu_max_power_kw <= 0.0) fail("per_gpu_max_power_kw must be > 0");
  if (hw.gpu_power_kw() >= hw.node_critical_power_kw)
    fail("GPU power must be strictly below node critical power");
}

// Regional data-center multipliers: energy overhead (PUE), water use per kWh
// of IT energy on site and at the generation source, and grid carbon
// intensity.
struct EnvMultipliers {
  double pue = 1.0;         // total facility energy / IT energy, >= 1
  double wue_site = 0.0;    // L/kWh, on-site cooling
  double wue_source = 0.0;  // L/kWh, off-site electricity generation
  double cif = 0.0;         // kgCO2e/kWh

  bool operator==(const EnvMultipliers&) const = default;
};

enum class SizeClass { Nano, Micro, Small, Medium, Large };

inline const char* to_string(SizeClass c) {
  switch (c) {
    case SizeClass::Nano: return "Nano";
    case SizeClass::Micro: return "Micro";
    case SizeClass::Small: return "Small";
    case SizeClass::Medium: return "Medium";
    case SizeClass::Large: return "Large";
  }
  throw InternalError("unknown size class");
}

inline SizeClass parse_size_class(const std::string& s) {
  if (s == "Nano") return SizeClass::Nano;
  if (s == "Micro") return SizeClass::Micro;
  if (s == "Small") return SizeClass::Small;
  if (s == "Medium") return SizeClass::Medium;
  if (s == "Large") return SizeClass::Large;
  throw ValidationError("unknown size_class '" + s + "'");
}

// One model as deployed: hardware, GPU assignment, utilization assumptions
// and the environmental multipliers of its hosting region.
struct ModelDeployment {
  std::string model_name;
  std::string provider;
  std::string host;
  HardwareProfile hardware;  // resolved from the registry's hardware list
  SizeClass size_class = SizeClass::Large;
  int gpu_count = 1;           // G
  double d_gpu_low = 0.0;      // per-GPU draw range, fraction of max power
  double d_gpu_high = 0.0;
  double d_non_gpu = 0.5;      // fixed non-GPU utilization fraction
  int batch_size = 8;          // B
  EnvMultipliers env;
  std::optional<double> ai_index;  // composite intelligence score, [0, 100]

  bool operator==(const ModelDeployment&) const = default;
};

inline void validate(const ModelDeployment& m) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("model '" + m.model_name + "': " + what);
  };
  if (m.model_name.empty()) throw ValidationError("model with empty model_name");
  validate(m.hardware);
  if (m.gpu_count != 1 && m.gpu_count != 2 && m.gpu_count != 4 && m.gpu_count != 8)
    fail("gpu_count must be one of {1, 2, 4, 8}");
  if (m.gpu_count > m.hardware.gpus_per_node)
    fail("gpu_count exceeds gpus_per_node of '" + m.hardware.name + "'");
  if (!(m.d_gpu_low > 0.0) || !(m.d_gpu_low <= m.d_gpu_high))
    fail("d_gpu range must satisfy 0 < low <= high");
  // Sustained draw above the nominal rating is a documented A100 behaviour;
  // reject it for any other profile.
  if (m.d_gpu_high > 1.0 && m.hardware.name.find("A100") == std::string::npos)
    fail("d_gpu above 1.0 is only valid for A100-class hardware");
  if (!(m.d_non_gpu > 0.0)) fail("d_non_gpu must be > 0");
  if (m.batch_size < 1) fail("batch_size must be >= 1");
  if (m.env.pue < 1.0) fail("pue >= 1.0");
  if (m.env.wue_site < 0.0) fail("wue_site must be >= 0");
  if (m.env.wue_source < 0.0) fail("wue_source must be >= 0");
  if (m.env.cif < 0.0) fail("cif must be >= 0");
  if (m.ai_index && (*m.ai_index < 0.0 || *m.ai_index > 100.0))
    fail("ai_index must lie in [0, 100]");
}

enum class Scenario { Short, Medium, Long };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Short: return "Short";
    case Scenario::Medium: return "Medium";
    case Scenario::Long: return "Long";
  }
  throw InternalError("unknown scenario");
}

inline Scenario parse_scenario(const std::string& s) {
  if (s == "Short") return Scenario::Short;
  if (s == "Medium") return Scenario::Medium;
  if (s == "Long") return Scenario::Long;
  throw ValidationError("unknown scenario '" + s + "'");
}

// A prompt workload: tokens fed in and tokens generated.
struct PromptScenario {
  Scenario kind = Scenario::Short;
  int input_tokens = 0;
  int output_tokens = 0;

  bool operator==(const PromptScenario&) const = default;
};

// The three canonical workloads every benchmark run covers.
inline PromptScenario canonical_scenario(Scenario s) {
  switch (s) {
    case Scenario::Short: return {Scenario::Short, 100, 300};
    case Scenario::Medium: return {Scenario::Medium, 1000, 1000};
    case Scenario::Long: return {Scenario::Long, 10000, 1500};
  }
  throw InternalError("unknown scenario");
}

inline constexpr std::array<Scenario, 3> kAllScenarios = {
    Scenario::Short, Scenario::Medium, Scenario::Long};

inline constexpr std::array<int, 5> kPercentiles = {5, 25, 50, 75, 95};

// Latency (s) and decode throughput (tokens/s) at the 5th/25th/50th/75th/95th
// percentiles, as measured at the API boundary.
struct PerformanceQuantiles {
  std::array<double, 5> latency_s{};
  std::array<double, 5> tps{};

  bool operator==(const PerformanceQuantiles&) const = default;
};

inline void validate(const PerformanceQuantiles& q, const std::string& context = "quantiles") {
  for (std::size_t i = 0; i < q.tps.size(); ++i) {
    if (!(q.tps[i] > 0.0))
      throw ValidationError(context + ": tps_p" + std::to_string(kPercentiles[i]) +
                            " must be > 0");
    if (q.latency_s[i] < 0.0)
      throw ValidationError(context + ": latency_p" + std::to_string(kPercentiles[i]) +
                            " must be >= 0");
  }
  for (std::size_t i = 1; i < q.latency_s.size(); ++i) {
    if (q.latency_s[i] < q.latency_s[i - 1])
      throw ValidationError(context + ": latency quantiles must be non-decreasing (p" +
                            std::to_string(kPercentiles[i]) + " < p" +
                            std::to_string(kPercentiles[i - 1]) + ")");
    if (q.tps[i] < q.tps[i - 1])
      throw ValidationError(context + ": tps quantiles must be non-decreasing (p" +
                            std::to_string(kPercentiles[i]) + " < p" +
                            std::to_string(kPercentiles[i - 1]) + ")");
  }
}

}  // namespace llmfp
