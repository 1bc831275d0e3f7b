#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "llmfootprint/footprint.hpp"
#include "llmfootprint/simplex.hpp"

namespace llmfp {

// Component scores of the composite intelligence index. Knowledge and
// reasoning benchmarks carry 1/6 each, math and coding 1/8 each.
struct AiIndexComponents {
  std::optional<double> mmlu_pro, hle, gpqa;          // 1/6 each
  std::optional<double> math500, aime;                // 1/8 each
  std::optional<double> scicode, livecodebench;       // 1/8 each
};

inline std::vector<std::string> missing_components(const AiIndexComponents& c) {
  std::vector<std::string> out;
  const std::pair<const std::optional<double>*, const char*> parts[] = {
      {&c.mmlu_pro, "MMLU-Pro"}, {&c.hle, "HLE"},         {&c.gpqa, "GPQA"},
      {&c.math500, "MATH-500"},  {&c.aime, "AIME"},       {&c.scicode, "SciCode"},
      {&c.livecodebench, "LiveCodeBench"}};
  for (const auto& [p, name] : parts)
    if (!p->has_value()) out.emplace_back(name);
  return out;
}

// Composite score, or nothing if any component is absent (such a model cannot
// be fairly ranked and is excluded from DEA).
inline std::optional<double> ai_index(const AiIndexComponents& c) {
  if (!missing_components(c).empty()) return std::nullopt;
  for (double v : {*c.mmlu_pro, *c.hle, *c.gpqa, *c.math500, *c.aime, *c.scicode,
                   *c.livecodebench})
    if (v < 0.0 || v > 100.0)
      throw ValidationError("ai_index: component scores must lie in [0, 100]");
  return (*c.mmlu_pro + *c.hle + *c.gpqa) / 6.0 +
         (*c.math500 + *c.aime + *c.scicode + *c.livecodebench) / 8.0;
}

// One decision-making unit per row. The registry-backed instance uses five
// environmental inputs (energy/query kWh, PUE, WUE source, WUE site, CIF) and
// one output (the intelligence index); the solver itself is dimension
// agnostic. All entries must be strictly positive.
struct DeaInstance {
  std::vector<std::string> dmus;
  std::vector<std::vector<double>> inputs;
  std::vector<double> outputs;

  std::size_t num_inputs() const { return inputs.empty() ? 0 : inputs.front().size(); }
};

inline void validate(const DeaInstance& inst) {
  if (inst.dmus.size() != inst.inputs.size() || inst.dmus.size() != inst.outputs.size())
    throw InternalError("DeaInstance: mismatched row counts");
  for (std::size_t i = 0; i < inst.dmus.size(); ++i) {
    if (inst.inputs[i].empty() || inst.inputs[i].size() != inst.num_inputs())
      throw InternalError("DeaInstance: ragged input matrix");
    for (double v : inst.inputs[i])
      if (!(v > 0.0))
        throw ValidationError("DEA input for '" + inst.dmus[i] + "' must be strictly positive");
    if (!(inst.outputs[i] > 0.0))
      throw ValidationError("DEA output for '" + inst.dmus[i] + "' must be strictly positive");
  }
}

// Multiplier weights of one DMU's CCR solve, normalized to v . x_owner = 1.
struct DeaWeights {
  std::vector<double> v;
  double u = 0.0;
  std::string owner;
};

struct CcrResult {
  double efficiency = 0.0;
  DeaWeights weights;
};

namespace detail {

// Input-oriented CCR multiplier LP:
//   max u*y_o   s.t.   v.x_o = 1,   u*y_d - v.x_d <= 0 for all d,   u, v >= 0
// Variables are ordered (u, v1..v5); with Bland's rule this fixes the optimal
// vertex and makes cross-efficiency deterministic.
inline LpProblem ccr_problem(const DeaInstance& inst, std::size_t o) {
  const std::size_t p_in = inst.num_inputs();
  LpProblem p;
  p.maximize = true;
  p.objective.assign(1 + p_in, 0.0);
  p.objective[0] = inst.outputs[o];
  LpConstraint norm;
  norm.coeffs.assign(1 + p_in, 0.0);
  for (std::size_t j = 0; j < p_in; ++j) norm.coeffs[1 + j] = inst.inputs[o][j];
  norm.rel = Rel::Eq;
  norm.rhs = 1.0;
  p.constraints.push_back(std::move(norm));
  for (std::size_t d = 0; d < inst.dmus.size(); ++d) {
    LpConstraint c;
    c.coeffs.assign(1 + p_in, 0.0);
    c.coeffs[0] = inst.outputs[d];
    for (std::size_t j = 0; j < p_in; ++j) c.coeffs[1 + j] = -inst.inputs[d][j];
    c.rel = Rel::Le;
    c.rhs = 0.0;
    p.constraints.push_back(std::move(c));
  }
  return p;
}

}  // namespace detail

inline CcrResult solve_ccr(const DeaInstance& inst, std::size_t dmu_index) {
  validate(inst);
  if (dmu_index >= inst.dmus.size()) throw InternalError("solve_ccr: DMU index out of range");
  const LpSolution sol = solve_lp(detail::ccr_problem(inst, dmu_index));
  // With strictly positive data the multiplier LP is always feasible and
  // bounded; anything else means the instance is corrupt.
  if (sol.status != LpStatus::Optimal)
    throw InternalError("solve_ccr: multiplier LP not optimal for '" + inst.dmus[dmu_index] +
                        "'");
  CcrResult r;
  r.efficiency = sol.objective;
  r.weights.owner = inst.dmus[dmu_index];
  r.weights.u = sol.x[0];
  r.weights.v.assign(sol.x.begin() + 1, sol.x.end());
  return r;
}

inline CcrResult solve_ccr(const DeaInstance& inst, const std::string& dmu) {
  for (std::size_t i = 0; i < inst.dmus.size(); ++i)
    if (inst.dmus[i] == dmu) return solve_ccr(inst, i);
  throw ValidationError("solve_ccr: unknown DMU '" + dmu + "'");
}

enum class SecondaryGoal {
  None,        // whichever optimal vertex Bland's rule lands on
  Benevolent,  // among alternate optima, maximize peers' aggregate efficiency
};

struct CrossEfficiencyResult {
  std::vector<std::string> dmus;
  std::vector<double> outputs;              // instance outputs, kept for reporting
  std::vector<std::vector<double>> matrix;  // matrix[d][k]: DMU k under d's weights
  std::vector<double> ccr;                  // self-appraisal, matrix[k][k]
  std::vector<double> scores;               // column means, self included
  std::vector<std::size_t> ranking;         // indices, best first
};

namespace detail {

// Doyle-Green benevolent refinement: holding the owner's efficiency at its
// CCR optimum, choose among the alternate optimal weightings the one that
// maximizes the peers' aggregate output-to-input ratio.
inline DeaWeights benevolent_weights(const DeaInstance& inst, std::size_t o, double theta) {
  const std::size_t n = inst.dmus.size();
  const std::size_t p_in = inst.num_inputs();
  LpProblem p;
  p.maximize = true;
  p.objective.assign(1 + p_in, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    if (k != o) p.objective[0] += inst.outputs[k];
  LpConstraint norm;  // peers' aggregate input normalized
  norm.coeffs.assign(1 + p_in, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    if (k != o)
      for (std::size_t j = 0; j < p_in; ++j) norm.coeffs[1 + j] += inst.inputs[k][j];
  norm.rel = Rel::Eq;
  norm.rhs = 1.0;
  p.constraints.push_back(std::move(norm));
  LpConstraint own;  // u*y_o - theta * v.x_o = 0 keeps the owner's score
  own.coeffs.assign(1 + p_in, 0.0);
  own.coeffs[0] = inst.outputs[o];
  for (std::size_t j = 0; j < p_in; ++j) own.coeffs[1 + j] = -theta * inst.inputs[o][j];
  own.rel = Rel::Eq;
  own.rhs = 0.0;
  p.constraints.push_back(std::move(own));
  for (std::size_t d = 0; d < n; ++d) {
    LpConstraint c;
    c.coeffs.assign(1 + p_in, 0.0);
    c.coeffs[0] = inst.outputs[d];
    for (std::size_t j = 0; j < p_in; ++j) c.coeffs[1 + j] = -inst.inputs[d][j];
    c.rel = Rel::Le;
    c.rhs = 0.0;
    p.constraints.push_back(std::move(c));
  }
  const LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("benevolent secondary LP not optimal for '" + inst.dmus[o] + "'");
  DeaWeights w;
  w.owner = inst.dmus[o];
  w.u = sol.x[0];
  w.v.assign(sol.x.begin() + 1, sol.x.end());
  return w;
}

}  // namespace detail

// Every DMU appraised under every DMU's optimal weights; the score is the
// arithmetic column mean including self-appraisal.
inline CrossEfficiencyResult cross_efficiency(const DeaInstance& inst,
                                              SecondaryGoal goal = SecondaryGoal::None) {
  validate(inst);
  const std::size_t n = inst.dmus.size();
  if (n < 1) throw ValidationError("cross_efficiency: needs at least one DMU");
  CrossEfficiencyResult res;
  res.dmus = inst.dmus;
  res.outputs = inst.outputs;
  res.matrix.assign(n, std::vector<double>(n, 0.0));
  res.ccr.resize(n);
  std::vector<DeaWeights> weights(n);
  for (std::size_t d = 0; d < n; ++d) {
    CcrResult r = solve_ccr(inst, d);
    res.ccr[d] = r.efficiency;
    weights[d] =
        goal == SecondaryGoal::Benevolent && n > 1
            ? detail::benevolent_weights(inst, d, r.efficiency)
            : r.weights;
  }
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t k = 0; k < n; ++k) {
      const double num = weights[d].u * inst.outputs[k];
      double den = 0.0;
      for (std::size_t j = 0; j < inst.num_inputs(); ++j)
        den += weights[d].v[j] * inst.inputs[k][j];
      if (!(den > 0.0))
        throw InternalError("cross_efficiency: zero input aggregate for '" + inst.dmus[k] + "'");
      res.matrix[d][k] = num / den;
    }
  }
  res.scores.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t d = 0; d < n; ++d) res.scores[k] += res.matrix[d][k];
    res.scores[k] /= static_cast<double>(n);
  }
  res.ranking.resize(n);
  std::iota(res.ranking.begin(), res.ranking.end(), std::size_t{0});
  std::sort(res.ranking.begin(), res.ranking.end(), [&](std::size_t a, std::size_t b) {
    if (res.scores[a] != res.scores[b]) return res.scores[a] > res.scores[b];
    return res.dmus[a] < res.dmus[b];
  });
  return res;
}

struct DeaExclusion {
  std::string model;
  std::string reason;
};

struct DeaInstanceBuild {
  DeaInstance instance;
  std::vector<DeaExclusion> excluded;
};

// Assembles the DEA instance from a footprint table: energy input from the
// chosen scenario's mean, multipliers from the registry, output from the
// composite index. Models missing either are excluded with a reason.
inline DeaInstanceBuild make_dea_instance(const Registry& reg, const FootprintTable& table,
                                          Scenario energy_scenario) {
  DeaInstanceBuild build;
  std::vector<const ModelDeployment*> models;
  for (const auto& m : reg.models) models.push_back(&m);
  std::sort(models.begin(), models.end(),
            [](const auto* a, const auto* b) { return a->model_name < b->model_name; });
  for (const auto* m : models) {
    if (!m->ai_index) {
      build.excluded.push_back({m->model_name, "no intelligence index"});
      continue;
    }
    const FootprintRecord* rec = nullptr;
    for (const auto& r : table.records)
      if (r.model_name == m->model_name && r.scenario == energy_scenario) rec = &r;
    if (!rec) {
      build.excluded.push_back(
          {m->model_name, std::string("no ") + to_string(energy_scenario) + " footprint"});
      continue;
    }
    build.instance.dmus.push_back(m->model_name);
    build.instance.inputs.push_back({rec->energy.summary.mean, m->env.pue, m->env.wue_source,
                                     m->env.wue_site, m->env.cif});
    build.instance.outputs.push_back(*m->ai_index);
  }
  return build;
}

}  // namespace llmfp
