#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "llmfootprint/report.hpp"

namespace llmfp {

// Exit codes: 0 success, 2 input error, 3 internal invariant breach.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

namespace detail {

inline std::vector<Scenario> parse_scenario_list(const std::vector<std::string>& names) {
  std::vector<Scenario> out;
  for (const auto& n : names) out.push_back(parse_scenario(n));
  return out;
}

}  // namespace detail

// Full command-line front end; kept callable in-process so the exit-code
// contract is testable without spawning.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"Per-query energy, water and carbon estimation for LLM inference"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> scenario_names{"Short", "Medium", "Long"};
  app.add_option("--registry", cfg.registry_path, "registry JSON path")->required();
  app.add_option("--quantiles", cfg.quantiles_path, "performance quantiles CSV path");
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--scenarios", scenario_names, "subset of Short,Medium,Long")
      ->delimiter(',')
      ->capture_default_str();
  app.add_flag("--paired", "pair latency and TPS quantiles rank-by-rank instead of the "
                           "Cartesian product");
  app.add_flag("--benevolent", cfg.benevolent, "DEA secondary goal: maximize peer efficiency");
  app.add_flag("--svg", cfg.svg, "also emit charts where optional");

  auto* estimate = app.add_subcommand("estimate", "write footprint.csv and energy_chart.svg");
  auto* rank = app.add_subcommand("rank", "write dea.csv (cross-efficiency ranking)");
  auto* matrix_flag = rank->add_flag("--matrix", cfg.dea_matrix, "also write dea_matrix.csv");
  (void)matrix_flag;
  std::string dea_scenario_name = "Medium";
  rank->add_option("--dea-scenario", dea_scenario_name, "scenario feeding the DEA energy input")
      ->capture_default_str();

  auto* infer = app.add_subcommand("infer-hardware", "Tukey comparison of energy samples");
  std::string samples_path;
  infer->add_option("--samples", samples_path, "CSV: provider_system,prompt_size,energy_wh")
      ->required();

  auto* project = app.add_subcommand("project", "annual fleet projection for one model");
  ProjectOptions popt;
  project->add_option("model", popt.model_name, "model name")->required();
  project->add_option("--queries-per-day", popt.queries_per_day, "fleet-wide daily baseline")
      ->capture_default_str();
  project->add_option("--target-total", popt.target_total, "annual query total to calibrate to")
      ->capture_default_str();
  project->add_option("--user-queries", popt.user_queries_per_day,
                      "per-user daily queries for the summary line")
      ->capture_default_str();

  auto* sensitivity = app.add_subcommand("sensitivity", "energy across batch sizes");
  std::string sens_model;
  sensitivity->add_option("model", sens_model, "model name")->required();
  sensitivity->add_option("--batches", cfg.batch_sizes, "batch sizes to evaluate")
      ->delimiter(',')
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    cfg.scenarios = detail::parse_scenario_list(scenario_names);
    if (app.count("--paired")) cfg.pairing = PairingMode::Paired;
    if (estimate->parsed()) {
      cmd_estimate(cfg, err);
    } else if (rank->parsed()) {
      cfg.dea_scenario = parse_scenario(dea_scenario_name);
      cmd_rank(cfg, err);
    } else if (infer->parsed()) {
      cmd_infer_hardware(cfg, samples_path, out);
    } else if (project->parsed()) {
      cmd_project(cfg, popt, out);
    } else if (sensitivity->parsed()) {
      cmd_sensitivity(cfg, sens_model, err);
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace llmfp
