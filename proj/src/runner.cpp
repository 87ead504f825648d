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

#include "dplp/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "dplp/attack.hpp"
#include "dplp/constraint_solver.hpp"
#include "dplp/lp_io.hpp"
#include "dplp/mw.hpp"
#include "dplp/objective_solver.hpp"
#include "dplp/primal_solvers.hpp"

namespace dplp {
namespace runner {
namespace {

using nlohmann::ordered_json;

std::string region_name(const PublicRegion& region) {
  switch (region.kind) {
    case RegionKind::kNonnegativeOrthant: return "NonnegativeOrthant";
    case RegionKind::kSimplex: return "Simplex";
    case RegionKind::kObjectiveSlice: return "ObjectiveSlice";
  }
  return "?";
}

ordered_json budget_json(const PrivacyBudget& budget, bool include_charges) {
  ordered_json j = budget.audit();
  if (!include_charges) j.erase("charges");
  j["composition_identity_residual"] = budget.composition_identity_residual();
  return j;
}

ordered_json base_report(const RunConfig& config) {
  ordered_json report;
  report["command"] = config.command;
  if (!config.instance_path.empty()) report["instance"] = config.instance_path;
  report["seed"] = config.seed;
  ordered_json params;
  params["epsilon"] = config.epsilon;
  params["delta"] = config.delta;
  params["alpha"] = config.alpha;
  params["beta"] = config.beta;
  params["trials"] = config.trials;
  report["parameters"] = params;
  return report;
}

void check_kind(const LpInstance& inst, SensitivityKind expected,
                const std::string& command) {
  check_arg(inst.sensitivity.kind == expected,
            command + ": instance sensitivity kind is " +
                to_string(inst.sensitivity.kind) + ", expected " +
                to_string(expected));
}

ordered_json solution_json(const Solution& solution, double alpha) {
  ordered_json j;
  j["x"] = vector_to_json(solution.x);
  j["max_slack"] = solution.max_slack();
  j["violations_beyond_alpha"] =
      static_cast<int>(solution.violated_beyond(alpha).size());
  if (solution.objective_value.has_value()) {
    j["objective_value"] = *solution.objective_value;
  }
  return j;
}

std::unique_ptr<std::ofstream> open_trace(const RunConfig& config) {
  if (config.trace_path.empty()) return nullptr;
  check_arg(config.trials == 1, "tracing requires trials == 1");
  auto os = std::make_unique<std::ofstream>(config.trace_path);
  check_arg(os->good(), "cannot open trace file: " + config.trace_path);
  return os;
}

ordered_json run_low_sens(const RunConfig& config, const LpInstance& inst) {
  SensitivityKind kind;
  if (config.command == "solve-scalar") {
    kind = SensitivityKind::kLowSensScalar;
  } else if (config.command == "solve-row") {
    kind = SensitivityKind::kLowSensRow;
  } else {
    kind = SensitivityKind::kLowSensColumn;
  }
  check_kind(inst, kind, config.command);
  const FeasibilityLp lp = canonicalize(inst).lp;

  LowSensParams p;
  p.epsilon = config.epsilon;
  p.delta = config.delta;
  p.alpha = config.alpha;
  p.beta = config.beta;
  p.sensitivity = inst.sensitivity.uses_delta_1() ? inst.sensitivity.delta_1
                                                  : inst.sensitivity.delta_inf;

  ordered_json report = base_report(config);
  if (config.command == "solve-column") {
    report["parameters"]["column_noise"] =
        config.per_coordinate_noise ? "per-coordinate" : "shared-draw";
  }

  const double rho =
      kind == SensitivityKind::kLowSensScalar ? lp.A.cwiseAbs().maxCoeff() : 1.0;
  const AccuracyBound bound =
      accuracy_bound(kind, p.sensitivity, rho, lp.cols(), lp.rows(), p.epsilon,
                     p.delta, p.beta);

  auto trace_os = open_trace(config);
  ordered_json trials = ordered_json::array();
  int successes = 0;
  double slack_sum = 0;
  ordered_json derived;
  ordered_json budget_report;
  Rng base_rng(config.seed);
  for (int t = 0; t < config.trials; ++t) {
    Rng rng = base_rng.stream(9000 + t);
    PrivacyBudget budget(p.epsilon, p.delta);
    TraceWriter writer(trace_os ? *trace_os : std::cout);
    TraceWriter* trace = trace_os ? &writer : nullptr;
    PrimalSolveResult run;
    if (kind == SensitivityKind::kLowSensScalar) {
      run = solve_scalar_private(lp, p, budget, rng, trace);
    } else if (kind == SensitivityKind::kLowSensRow) {
      run = solve_row_private(lp, p, budget, rng, trace);
    } else {
      run = solve_column_private(lp, p, budget, rng, trace,
                                 config.per_coordinate_noise
                                     ? ColumnNoiseMode::kPerCoordinate
                                     : ColumnNoiseMode::kSharedDraw);
    }
    if (t == 0) {
      derived["rounds"] = run.schedule.rounds;
      derived["eta"] = run.schedule.eta;
      derived["eps_prime"] = run.schedule.eps_prime;
      derived["planned_ops"] = run.schedule.planned_ops;
      if (kind == SensitivityKind::kLowSensScalar) {
        derived["rho"] = run.schedule.rho;
      }
      derived["alpha_bound"] = bound.alpha;
      derived["alpha_bound_vacuous"] = bound.vacuous;
      budget_report = budget_json(budget, config.include_charges);
    }
    const double slack = run.solution.max_slack();
    slack_sum += slack;
    if (slack <= p.alpha) ++successes;
    ordered_json tj;
    tj["trial"] = t;
    tj["max_slack"] = slack;
    tj["violations_beyond_alpha"] =
        static_cast<int>(run.solution.violated_beyond(p.alpha).size());
    tj["losses_out_of_range"] = run.losses_out_of_range;
    if (config.trials == 1) {
      report["solution"] = solution_json(run.solution, p.alpha);
    }
    trials.push_back(tj);
  }
  report["instance_summary"] = {{"rows", lp.rows()},
                                {"cols", lp.cols()},
                                {"sensitivity", to_string(kind)},
                                {"region", region_name(lp.region)}};
  report["derived"] = derived;
  report["budget"] = budget_report;
  report["trials_detail"] = trials;
  report["summary"] = {{"successes_at_alpha", successes},
                       {"mean_max_slack", slack_sum / config.trials}};
  return report;
}

ordered_json run_objective(const RunConfig& config, const LpInstance& inst) {
  check_kind(inst, SensitivityKind::kLowSensObjective, config.command);
  check_arg(inst.c.has_value(), "solve-objective: instance has no objective");

  ordered_json report = base_report(config);
  std::optional<double> true_opt;
  try {
    true_opt = solve_exact_lp(inst).objective;
  } catch (const std::exception&) {
    // Exact baseline unavailable (too large or infeasible); gaps omitted.
  }

  ordered_json trials = ordered_json::array();
  int successes = 0;
  ordered_json derived;
  ordered_json budget_report;
  Rng base_rng(config.seed);
  for (int t = 0; t < config.trials; ++t) {
    Rng rng = base_rng.stream(9000 + t);
    PrivacyBudget budget(config.epsilon, config.delta);
    const ObjectiveSolveResult run = solve_objective_private(inst, budget, rng);
    if (t == 0) {
      derived["noise_scale"] = run.perturbed.noise_scale;
      derived["alpha_bound"] = run.alpha_bound;
      derived["alpha_bound_beta"] = objective_accuracy_bound_beta(
          inst.sensitivity.delta_1, inst.cols(), config.epsilon, config.delta,
          config.beta);
      budget_report = budget_json(budget, config.include_charges);
    }
    ordered_json tj;
    tj["trial"] = t;
    tj["max_slack"] = run.solution.max_slack();
    tj["true_objective"] = run.true_objective;
    tj["perturbed_objective"] = run.perturbed_objective;
    bool ok = run.solution.violated_beyond(1e-7).empty();
    if (true_opt.has_value()) {
      const double gap = *true_opt - run.true_objective;
      tj["gap_to_exact"] = gap;
      ok = ok && gap <= run.alpha_bound;
    }
    if (ok) ++successes;
    if (config.trials == 1) {
      report["solution"] = solution_json(run.solution, config.alpha);
    }
    trials.push_back(tj);
  }
  report["instance_summary"] = {
      {"rows", inst.rows()},
      {"cols", inst.cols()},
      {"sensitivity", to_string(inst.sensitivity.kind)},
      {"region", region_name(
                     inst.region.value_or(PublicRegion::nonnegative_orthant()))}};
  if (true_opt.has_value()) derived["exact_objective"] = *true_opt;
  report["derived"] = derived;
  report["budget"] = budget_report;
  report["trials_detail"] = trials;
  report["summary"] = {{"successes", successes}};
  return report;
}

SetCoverInstance setcover_from_instance(const LpInstance& inst) {
  check_arg(inst.c.has_value(), "solve-constraint: instance has no set costs");
  check_arg(inst.region.has_value() &&
                inst.region->kind == RegionKind::kObjectiveSlice,
            "solve-constraint: instance region must be an ObjectiveSlice");
  check_arg((inst.region->slice_objective - *inst.c).cwiseAbs().maxCoeff() <=
                1e-12,
            "solve-constraint: slice objective must equal the cost vector");
  for (Sense sense : inst.senses) {
    check_arg(sense == Sense::kGe,
              "solve-constraint: covering rows must all be GE");
  }
  check_arg((inst.b.array() == 1.0).all(),
            "solve-constraint: covering rows must have b == 1");
  SetCoverInstance sc;
  sc.coverage = inst.A;
  sc.costs = *inst.c;
  sc.opt = inst.region->slice_value;
  sc.validate();
  return sc;
}

ordered_json run_constraint(const RunConfig& config, const LpInstance& inst) {
  check_kind(inst, SensitivityKind::kHighSensConstraint, config.command);
  const SetCoverInstance sc = setcover_from_instance(inst);
  const FeasibilityLp lp = sc.to_feasibility();

  ConstraintPrivateParams p;
  p.epsilon = config.epsilon;
  p.delta = config.delta;
  p.alpha = config.alpha;
  p.density = config.density;
  p.rho = sc.width_rho();
  const ConstraintSchedule sched = derive_constraint_schedule(p, sc.elements());

  ordered_json report = base_report(config);
  report["parameters"]["density"] = p.density;

  auto trace_os = open_trace(config);
  ordered_json trials = ordered_json::array();
  int successes = 0;
  ordered_json budget_report;
  Rng base_rng(config.seed);
  for (int t = 0; t < config.trials; ++t) {
    Rng rng = base_rng.stream(9000 + t);
    PrivacyBudget budget(p.epsilon, p.delta);
    TraceWriter writer(trace_os ? *trace_os : std::cout);
    const ConstraintSolveResult run = solve_constraint_private(
        lp, make_setcover_oracle(sc, p.density, sched.eps_prime), p, budget,
        rng, trace_os ? &writer : nullptr);
    if (t == 0) budget_report = budget_json(budget, config.include_charges);
    if (run.violations_beyond_alpha <= p.density - 1) ++successes;
    ordered_json tj;
    tj["trial"] = t;
    tj["max_slack"] = run.solution.max_slack();
    tj["violations_beyond_alpha"] = run.violations_beyond_alpha;
    tj["cost"] = sc.costs.dot(run.solution.x);
    if (config.trials == 1) {
      report["solution"] = solution_json(run.solution, p.alpha);
    }
    trials.push_back(tj);
  }
  report["instance_summary"] = {{"elements", sc.elements()},
                                {"sets", sc.sets()},
                                {"opt", sc.opt},
                                {"sensitivity", to_string(inst.sensitivity.kind)},
                                {"region", region_name(lp.region)}};
  report["derived"] = {
      {"rounds", sched.rounds},
      {"eta", sched.eta},
      {"eps_prime", sched.eps_prime},
      {"rho", p.rho},
      {"quality_sensitivity", setcover_quality_sensitivity(sc, p.density)},
      {"oracle_error_bound",
       setcover_oracle_error(sc, p.density, sched.eps_prime,
                             config.beta / sched.rounds)}};
  report["budget"] = budget_report;
  report["trials_detail"] = trials;
  report["summary"] = {{"successes_at_density", successes}};
  return report;
}

ordered_json run_attack(const RunConfig& config) {
  AttackExperimentConfig exp_config;
  if (config.gadget == "scalar") {
    exp_config.gadget = GadgetKind::kScalar;
  } else if (config.gadget == "objective") {
    exp_config.gadget = GadgetKind::kObjective;
  } else if (config.gadget == "constraint") {
    exp_config.gadget = GadgetKind::kConstraint;
  } else {
    throw std::invalid_argument("attack: unknown gadget " + config.gadget);
  }
  if (config.attack_solver == "exact") {
    exp_config.solver = AttackSolver::kExact;
  } else if (config.attack_solver == "objective-private") {
    exp_config.solver = AttackSolver::kObjectivePrivate;
  } else if (config.attack_solver == "scalar-private") {
    exp_config.solver = AttackSolver::kScalarPrivate;
  } else {
    throw std::invalid_argument("attack: unknown solver " +
                                config.attack_solver);
  }
  exp_config.n = config.n;
  exp_config.trials = config.trials;
  exp_config.epsilon = config.epsilon;
  exp_config.delta = config.delta;
  exp_config.beta = config.beta;
  exp_config.alpha = config.alpha;

  Rng rng(config.seed);
  const AttackExperiment exp = run_attack_experiment(exp_config, rng);

  ordered_json report = base_report(config);
  report["parameters"]["gadget"] = config.gadget;
  report["parameters"]["solver"] = config.attack_solver;
  report["parameters"]["n"] = config.n;
  ordered_json trials = ordered_json::array();
  for (size_t t = 0; t < exp.trials.size(); ++t) {
    trials.push_back({{"trial", static_cast<int>(t)},
                      {"hamming", exp.trials[t].hamming_normalized},
                      {"l1", exp.trials[t].l1_normalized}});
  }
  report["results"] = {{"mean_hamming", exp.mean_hamming},
                       {"mean_l1", exp.mean_l1},
                       {"hamming_q10", exp.hamming_q10},
                       {"hamming_q50", exp.hamming_q50},
                       {"hamming_q90", exp.hamming_q90},
                       {"bound_c", exp.bound_c},
                       {"bound_epsilon", exp.bound_epsilon},
                       {"bound_delta", exp.bound_delta}};
  report["trials_detail"] = trials;
  return report;
}

}  // namespace

nlohmann::ordered_json run_on_instance(const RunConfig& config,
                                       const LpInstance& instance) {
  check_arg(config.trials >= 1, "runner: trials must be >= 1");
  if (config.command == "solve-scalar" || config.command == "solve-row" ||
      config.command == "solve-column") {
    return run_low_sens(config, instance);
  }
  if (config.command == "solve-objective") {
    return run_objective(config, instance);
  }
  if (config.command == "solve-constraint") {
    return run_constraint(config, instance);
  }
  throw std::invalid_argument("runner: unknown command " + config.command);
}

nlohmann::ordered_json run(const RunConfig& config) {
  if (config.command == "attack") {
    check_arg(config.trials >= 1, "runner: trials must be >= 1");
    return run_attack(config);
  }
  check_arg(!config.instance_path.empty(),
            "runner: " + config.command + " requires an instance file");
  return run_on_instance(config, load_instance(config.instance_path));
}

}  // namespace runner
}  // namespace dplp
