#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "llmfootprint/csv.hpp"
#include "llmfootprint/model.hpp"

namespace llmfp {

struct Registry {
  std::vector<HardwareProfile> hardware;
  std::vector<ModelDeployment> models;

  bool operator==(const Registry&) const = default;

  const ModelDeployment* find_model(const std::string& name) const {
    for (const auto& m : models)
      if (m.model_name == name) return &m;
    return nullptr;
  }
};

using QuantileKey = std::pair<std::string, Scenario>;
using QuantileTable = std::map<QuantileKey, PerformanceQuantiles>;

namespace detail {

inline double get_num(const nlohmann::json& j, const std::string& field,
                      const std::string& context) {
  if (!j.contains(field))
    throw ParseError(context + ": missing field '" + field + "'");
  if (!j[field].is_number())
    throw ParseError(context + ": field '" + field + "' must be a number");
  return j[field].get<double>();
}

inline std::string get_str(const nlohmann::json& j, const std::string& field,
                           const std::string& context) {
  if (!j.contains(field))
    throw ParseError(context + ": missing field '" + field + "'");
  if (!j[field].is_string())
    throw ParseError(context + ": field '" + field + "' must be a string");
  return j[field].get<std::string>();
}

}  // namespace detail

// Parses and validates a registry document. `origin` names the source in
// error messages (a path, or a test label).
inline Registry parse_registry(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("hardware") || !doc.contains("models"))
    throw ParseError(origin + ": registry must be an object with 'hardware' and 'models'");

  Registry reg;
  std::set<std::string> hw_names;
  for (const auto& h : doc["hardware"]) {
    HardwareProfile hw;
    const std::string ctx = origin + ": hardware";
    hw.name = detail::get_str(h, "name", ctx);
    hw.gpus_per_node = static_cast<int>(detail::get_num(h, "gpus_per_node", ctx));
    hw.per_gpu_max_power_kw = detail::get_num(h, "per_gpu_max_power_kw", ctx);
    hw.node_critical_power_kw = detail::get_num(h, "node_critical_power_kw", ctx);
    validate(hw);
    if (!hw_names.insert(hw.name).second)
      throw ValidationError(origin + ": duplicate hardware profile '" + hw.name + "'");
    reg.hardware.push_back(std::move(hw));
  }

  std::set<std::string> model_names;
  for (const auto& j : doc["models"]) {
    const std::string name = detail::get_str(j, "model_name", origin + ": model");
    const std::string ctx = origin + ": model '" + name + "'";
    ModelDeployment m;
    m.model_name = name;
    m.provider = detail::get_str(j, "provider", ctx);
    m.host = detail::get_str(j, "host", ctx);
    const std::string hw_name = detail::get_str(j, "hardware", ctx);
    const HardwareProfile* hw = nullptr;
    for (const auto& h : reg.hardware)
      if (h.name == hw_name) hw = &h;
    if (!hw)
      throw ValidationError(ctx + ": unknown hardware profile '" + hw_name + "'");
    m.hardware = *hw;
    m.size_class = parse_size_class(detail::get_str(j, "size_class", ctx));
    m.gpu_count = static_cast<int>(detail::get_num(j, "gpu_count", ctx));
    m.d_gpu_low = detail::get_num(j, "d_gpu_low", ctx);
    m.d_gpu_high = detail::get_num(j, "d_gpu_high", ctx);
    m.d_non_gpu = j.contains("d_non_gpu") ? detail::get_num(j, "d_non_gpu", ctx) : 0.5;
    m.batch_size =
        j.contains("batch_size") ? static_cast<int>(detail::get_num(j, "batch_size", ctx)) : 8;
    m.env.pue = detail::get_num(j, "pue", ctx);
    m.env.wue_site = detail::get_num(j, "wue_site", ctx);
    m.env.wue_source = detail::get_num(j, "wue_source", ctx);
    m.env.cif = detail::get_num(j, "cif", ctx);
    if (j.contains("ai_index")) m.ai_index = detail::get_num(j, "ai_index", ctx);
    validate(m);
    if (!model_names.insert(m.model_name).second)
      throw ValidationError(origin + ": duplicate model name '" + m.model_name + "'");
    reg.models.push_back(std::move(m));
  }
  return reg;
}

inline Registry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str(), path);
}

// Inverse of parse_registry: emits the same schema, so load(serialize(r)) == r.
inline std::string serialize_registry(const Registry& reg) {
  nlohmann::ordered_json doc;
  doc["hardware"] = nlohmann::ordered_json::array();
  for (const auto& hw : reg.hardware) {
    doc["hardware"].push_back({{"name", hw.name},
                               {"gpus_per_node", hw.gpus_per_node},
                               {"per_gpu_max_power_kw", hw.per_gpu_max_power_kw},
                               {"node_critical_power_kw", hw.node_critical_power_kw}});
  }
  doc["models"] = nlohmann::ordered_json::array();
  for (const auto& m : reg.models) {
    nlohmann::ordered_json j{{"model_name", m.model_name},
                             {"provider", m.provider},
                             {"host", m.host},
                             {"hardware", m.hardware.name},
                             {"size_class", to_string(m.size_class)},
                             {"gpu_count", m.gpu_count},
                             {"d_gpu_low", m.d_gpu_low},
                             {"d_gpu_high", m.d_gpu_high},
                             {"d_non_gpu", m.d_non_gpu},
                             {"batch_size", m.batch_size},
                             {"pue", m.env.pue},
                             {"wue_site", m.env.wue_site},
                             {"wue_source", m.env.wue_source},
                             {"cif", m.env.cif}};
    if (m.ai_index) j["ai_index"] = *m.ai_index;
    doc["models"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

inline constexpr const char* kQuantilesHeader =
    "model,scenario,latency_p5,latency_p25,latency_p50,latency_p75,latency_p95,"
    "tps_p5,tps_p25,tps_p50,tps_p75,tps_p95";

inline QuantileTable parse_quantiles(const std::vector<csv::Row>& rows, const std::string& origin) {
  QuantileTable table;
  for (const auto& row : rows) {
    const auto& f = row.fields;
    const std::string& model = f[0];
    Scenario scen;
    try {
      scen = parse_scenario(f[1]);
    } catch (const ValidationError& e) {
      throw ParseError(origin + ":" + std::to_string(row.line) + ": " + e.what());
    }
    PerformanceQuantiles q;
    for (int i = 0; i < 5; ++i) {
      q.latency_s[i] = csv::parse_double(f[2 + i], origin, row.line,
                                         "latency_p" + std::to_string(kPercentiles[i]));
      q.tps[i] =
          csv::parse_double(f[7 + i], origin, row.line, "tps_p" + std::to_string(kPercentiles[i]));
    }
    try {
      validate(q, "(" + model + ", " + f[1] + ")");
    } catch (const ValidationError& e) {
      throw ValidationError(origin + ":" + std::to_string(row.line) + ": " + e.what());
    }
    if (!table.emplace(QuantileKey{model, scen}, q).second)
      throw ValidationError(origin + ":" + std::to_string(row.line) + ": duplicate entry for (" +
                            model + ", " + f[1] + ")");
  }
  return table;
}

inline QuantileTable load_quantiles(const std::string& path) {
  return parse_quantiles(csv::read_file(path, kQuantilesHeader), path);
}

}  // namespace llmfp
