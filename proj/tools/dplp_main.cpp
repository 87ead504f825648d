// Copyright 2026 The dplp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dplp/attack.hpp"
#include "dplp/lp_io.hpp"
#include "dplp/objective_solver.hpp"
#include "dplp/primal_solvers.hpp"
#include "dplp/runner.hpp"
#include "dplp/verify.hpp"

namespace {

using dplp::runner::RunConfig;

void emit(const nlohmann::ordered_json& report, const std::string& output) {
  if (output.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    dplp::write_json_file(report, output);
  }
}

void add_common_options(CLI::App* cmd, RunConfig* config, std::string* output) {
  cmd->add_option("--epsilon", config->epsilon, "Privacy budget epsilon")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--delta", config->delta, "Privacy budget delta");
  cmd->add_option("--alpha", config->alpha, "Target accuracy");
  cmd->add_option("--beta", config->beta, "Failure probability");
  cmd->add_option("--seed", config->seed, "Deterministic base seed");
  cmd->add_option("--trials", config->trials, "Independent repetitions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output", *output, "Write the JSON report here");
}

void add_instance_options(CLI::App* cmd, RunConfig* config,
                          std::string* output) {
  cmd->add_option("--instance", config->instance_path, "Instance JSON file")
      ->required();
  cmd->add_option("--trace", config->trace_path,
                  "Write an engine trace (JSONL); requires --trials 1");
  cmd->add_flag("--include-charges", config->include_charges,
                "Embed the per-operation charge log in the report");
  add_common_options(cmd, config, output);
}

int run_verify(const std::vector<std::string>& suites,
               const std::string& seed_file, const std::string& output) {
  const std::vector<uint64_t> seeds = dplp::verify::load_seed_file(seed_file);
  std::vector<std::string> selected =
      suites.empty() ? dplp::verify::suite_names() : suites;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  bool passed = true;
  for (const std::string& name : selected) {
    const dplp::verify::SuiteReport report =
        dplp::verify::run_suite(name, seeds);
    for (const dplp::verify::CheckResult& check : report.checks) {
      std::cout << "[" << name << "/" << check.name << "] "
                << (check.passed ? "PASS" : "FAIL") << " (" << check.detail
                << ")\n";
    }
    passed = passed && report.all_passed();
    all.push_back(report.to_json());
  }
  if (!output.empty()) {
    nlohmann::ordered_json j;
    j["suites"] = all;
    j["passed"] = passed;
    dplp::write_json_file(j, output);
  }
  std::cout << (passed ? "verification passed" : "verification FAILED") << "\n";
  return passed ? 0 : 1;
}

int run_bound(const std::string& kind, double delta_inf, double delta_1,
              double rho, int d, int m, double epsilon, double delta,
              double beta, const std::string& output) {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  if (kind == "scalar" || kind == "row" || kind == "column") {
    dplp::AccuracyBound bound;
    if (kind == "scalar") {
      bound = dplp::scalar_accuracy_bound(delta_inf, rho, d, m, epsilon, delta,
                                          beta);
      j["parameters"] = {{"delta_inf", delta_inf}, {"rho", rho},     {"d", d},
                         {"m", m},                 {"epsilon", epsilon},
                         {"delta", delta},         {"beta", beta}};
    } else if (kind == "row") {
      bound = dplp::row_accuracy_bound(delta_inf, d, m, epsilon, delta, beta);
      j["parameters"] = {{"delta_inf", delta_inf}, {"d", d},
                         {"m", m},                 {"epsilon", epsilon},
                         {"delta", delta},         {"beta", beta}};
    } else {
      bound = dplp::column_accuracy_bound(delta_1, d, m, epsilon, delta, beta);
      j["parameters"] = {{"delta_1", delta_1}, {"d", d},
                         {"m", m},             {"epsilon", epsilon},
                         {"delta", delta},     {"beta", beta}};
    }
    j["alpha"] = bound.alpha;
    j["vacuous"] = bound.vacuous;
  } else if (kind == "objective") {
    j["parameters"] = {{"delta_1", delta_1},
                       {"d", d},
                       {"epsilon", epsilon},
                       {"delta", delta},
                       {"beta", beta}};
    j["alpha"] = dplp::objective_accuracy_bound(delta_1, d, epsilon, delta);
    j["alpha_beta"] =
        dplp::objective_accuracy_bound_beta(delta_1, d, epsilon, delta, beta);
  } else if (kind == "reconstruction") {
    j["parameters"] = {{"epsilon", epsilon}, {"delta", delta}, {"beta", beta}};
    j["c"] = dplp::reconstruction_bound(epsilon, delta, beta);
  } else {
    throw std::invalid_argument("bound: unknown kind " + kind);
  }
  emit(j, output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private linear programming toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  std::string output;

  CLI::App* solve_scalar = app.add_subcommand(
      "solve-scalar", "Low-sensitivity solver for scalar-perturbed data");
  add_instance_options(solve_scalar, &config, &output);

  CLI::App* solve_row = app.add_subcommand(
      "solve-row", "Low-sensitivity solver for row-perturbed data");
  add_instance_options(solve_row, &config, &output);

  CLI::App* solve_column = app.add_subcommand(
      "solve-column", "Low-sensitivity solver for column-perturbed data");
  add_instance_options(solve_column, &config, &output);
  solve_column->add_flag("--per-coordinate-noise", config.per_coordinate_noise,
                         "Fresh Laplace draw per coordinate (diagnostic)");

  CLI::App* solve_objective = app.add_subcommand(
      "solve-objective", "Perturb the objective once, then solve exactly");
  add_instance_options(solve_objective, &config, &output);

  CLI::App* solve_constraint = app.add_subcommand(
      "solve-constraint", "Dense-MW solver for private covering constraints");
  add_instance_options(solve_constraint, &config, &output);
  solve_constraint
      ->add_option("--density", config.density,
                   "All but fewer than this many rows end up alpha-satisfied")
      ->check(CLI::PositiveNumber);

  CLI::App* attack = app.add_subcommand(
      "attack", "Reconstruction experiments against gadget LPs");
  attack->add_option("--gadget", config.gadget,
                     "scalar | objective | constraint");
  attack->add_option("--solver", config.attack_solver,
                     "exact | objective-private | scalar-private");
  attack->add_option("--n", config.n, "Database size")->check(CLI::PositiveNumber);
  add_common_options(attack, &config, &output);

  std::vector<std::string> suites;
  std::string seed_file = "config/seeds.txt";
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suites,
                     "mechanisms | projection | regret | solvers | attacks "
                     "(repeatable; default all)");
  verify->add_option("--seed-file", seed_file, "Seed list, one per line");
  verify->add_option("--output", output, "Write the JSON report here");

  std::string bound_kind;
  double delta_inf = 0, delta_1 = 0, rho = 1;
  int d = 2, m = 1;
  CLI::App* bound = app.add_subcommand("bound", "Evaluate accuracy bounds");
  bound->add_option("--kind", bound_kind,
                    "scalar | row | column | objective | reconstruction")
      ->required();
  bound->add_option("--delta-inf", delta_inf, "Per-entry sensitivity");
  bound->add_option("--delta-1", delta_1, "Per-column l1 sensitivity");
  bound->add_option("--rho", rho, "Width parameter (scalar kind)");
  bound->add_option("--d", d, "Variable count");
  bound->add_option("--m", m, "Row count");
  bound->add_option("--epsilon", config.epsilon, "Privacy budget epsilon");
  bound->add_option("--delta", config.delta, "Privacy budget delta");
  bound->add_option("--beta", config.beta, "Failure probability");
  bound->add_option("--output", output, "Write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(verify)) {
      return run_verify(suites, seed_file, output);
    }
    if (app.got_subcommand(bound)) {
      return run_bound(bound_kind, delta_inf, delta_1, rho, d, m,
                       config.epsilon, config.delta, config.beta, output);
    }
    for (CLI::App* cmd : {solve_scalar, solve_row, solve_column,
                          solve_objective, solve_constraint, attack}) {
      if (app.got_subcommand(cmd)) {
        config.command = cmd->get_name();
        emit(dplp::runner::run(config), output);
        return 0;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
