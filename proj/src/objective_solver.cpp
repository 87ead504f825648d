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

#include "dplp/objective_solver.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dplp/mechanisms.hpp"

namespace dplp {
namespace {

struct LinearRow {
  Vector a;
  double b;
};

// Lexicographic order with per-coordinate tolerance.
bool lex_less(const Vector& x, const Vector& y, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < y[i] - tol) return true;
    if (x[i] > y[i] + tol) return false;
  }
  return false;
}

double binomial_count(int n, int k) {
  double total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<double>(n - i) / (i + 1);
  return total;
}

}  // namespace

PerturbedObjective perturb_objective(const Vector& c, double delta_1,
                                     PrivacyBudget& budget, Rng& rng) {
  check_arg(c.size() > 0, "perturb_objective: empty objective");
  check_arg(c.allFinite(), "perturb_objective: non-finite objective");
  check_arg(delta_1 >= 0 && std::isfinite(delta_1),
            "perturb_objective: delta_1 must be finite and >= 0");
  const int d = static_cast<int>(c.size());
  const double eps_prime = budget.plan_composition(d);
  PerturbedObjective out;
  out.noise_scale = delta_1 / eps_prime;
  out.noise.resize(d);
  for (int j = 0; j < d; ++j) {
    budget.charge("c[" + std::to_string(j) + "]", eps_prime);
    out.noise[j] = laplace_sample(out.noise_scale, rng);
  }
  out.c_hat = c + out.noise;
  return out;
}

VertexSolveResult solve_exact_lp(const LpInstance& instance) {
  instance.validate();
  const int d = instance.cols();
  const Vector lower = instance.lower_bounds();

  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;  // a . x <= b
  for (int i = 0; i < instance.rows(); ++i) {
    const Vector a = instance.A.row(i).transpose();
    switch (instance.senses[i]) {
      case Sense::kLe:
        inequalities.push_back({a, instance.b[i]});
        break;
      case Sense::kGe:
        inequalities.push_back({-a, -instance.b[i]});
        break;
      case Sense::kEq:
        equalities.push_back({a, instance.b[i]});
        break;
    }
  }
  const PublicRegion region =
      instance.region.value_or(PublicRegion::nonnegative_orthant());
  if (region.kind == RegionKind::kSimplex) {
    equalities.push_back({Vector::Ones(d), 1.0});
  } else if (region.kind == RegionKind::kObjectiveSlice) {
    check_arg(region.slice_objective.size() == d,
              "solve_exact_lp: slice dimension mismatch");
    equalities.push_back({region.slice_objective, region.slice_value});
  }

  const int e = static_cast<int>(equalities.size());
  check_arg(e <= d, "solve_exact_lp: more equality rows than variables");
  const int need = d - e;

  // Candidate active constraints: inequality rows then lower bounds x_j = l_j.
  const int n_ineq = static_cast<int>(inequalities.size());
  const int n_candidates = n_ineq + d;
  check_arg(need <= n_candidates,
            "solve_exact_lp: not enough constraints to pin a vertex");
  check_arg(binomial_count(n_candidates, need) <= 2e6,
            "solve_exact_lp: instance too large for exact enumeration");

  const bool has_objective = instance.c.has_value();
  const bool maximize = instance.objective_sense == ObjectiveSense::kMaximize;
  const double tol = 1e-9;

  bool found = false;
  Vector best_x;
  double best_value = 0;

  Matrix system(d, d);
  Vector rhs(d);
  for (int i = 0; i < e; ++i) {
    system.row(i) = equalities[i].a.transpose();
    rhs[i] = equalities[i].b;
  }

  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  const auto candidate_row = [&](int idx) -> LinearRow {
    if (idx < n_ineq) return inequalities[idx];
    Vector a = Vector::Zero(d);
    a[idx - n_ineq] = 1.0;
    return {a, lower[idx - n_ineq]};
  };

  while (true) {
    for (int i = 0; i < need; ++i) {
      const LinearRow row = candidate_row(pick[i]);
      system.row(e + i) = row.a.transpose();
      rhs[e + i] = row.b;
    }
    Eigen::FullPivLU<Matrix> lu(system);
    if (lu.isInvertible()) {
      const Vector x = lu.solve(rhs);
      bool feasible = x.allFinite();
      for (int i = 0; feasible && i < e; ++i) {
        feasible = std::abs(equalities[i].a.dot(x) - equalities[i].b) <=
                   tol * (1.0 + std::abs(equalities[i].b));
      }
      for (int i = 0; feasible && i < n_ineq; ++i) {
        feasible = inequalities[i].a.dot(x) <=
                   inequalities[i].b + tol * (1.0 + std::abs(inequalities[i].b));
      }
      for (int j = 0; feasible && j < d; ++j) {
        feasible = x[j] >= lower[j] - tol * (1.0 + std::abs(lower[j]));
      }
      if (feasible) {
        const double value = has_objective ? instance.c->dot(x) : 0.0;
        if (!found) {
          found = true;
          best_x = x;
          best_value = value;
        } else if (has_objective) {
          const double margin = tol * (1.0 + std::abs(best_value));
          const double gain = maximize ? value - best_value : best_value - value;
          if (gain > margin ||
              (gain > -margin && lex_less(x, best_x, tol))) {
            best_x = x;
            best_value = value;
          }
        } else if (lex_less(x, best_x, tol)) {
          best_x = x;
        }
      }
    }
    if (need == 0) break;
    int pos = need - 1;
    while (pos >= 0 && pick[pos] == n_candidates - need + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (int i = pos + 1; i < need; ++i) pick[i] = pick[i - 1] + 1;
  }

  if (!found) throw InfeasibleError("solve_exact_lp: no feasible vertex");
  VertexSolveResult out;
  out.x = best_x;
  out.objective = best_value;
  return out;
}

double objective_accuracy_bound(double delta_1, int d, double epsilon,
                                double delta) {
  check_arg(delta_1 >= 0, "objective_accuracy_bound: delta_1 must be >= 0");
  check_arg(d >= 1, "objective_accuracy_bound: need d >= 1");
  check_arg(epsilon > 0, "objective_accuracy_bound: epsilon must be > 0");
  check_arg(delta > 0 && delta < 1,
            "objective_accuracy_bound: delta must be in (0,1)");
  return 4.0 * delta_1 * std::sqrt(8.0 * d * std::log(d / delta)) / epsilon;
}

double objective_accuracy_bound_beta(double delta_1, int d, double epsilon,
                                     double delta, double beta) {
  check_arg(beta > 0 && beta < 1,
            "objective_accuracy_bound_beta: beta must be in (0,1)");
  const double scale =
      delta_1 * std::sqrt(8.0 * d * std::log(1.0 / delta)) / epsilon;
  return 2.0 * scale * std::log(d / beta);
}

ObjectiveSolveResult solve_objective_private(const LpInstance& instance,
                                             PrivacyBudget& budget, Rng& rng) {
  instance.validate();
  check_arg(instance.c.has_value(), "objective solver: no objective");
  check_arg(instance.sensitivity.kind == SensitivityKind::kLowSensObjective,
            "objective solver: sensitivity model must be LowSensObjective");
  const double delta_1 = instance.sensitivity.delta_1;

  ObjectiveSolveResult result;
  result.perturbed = perturb_objective(*instance.c, delta_1, budget, rng);

  LpInstance perturbed_instance = instance;
  perturbed_instance.c = result.perturbed.c_hat;
  const VertexSolveResult vertex = solve_exact_lp(perturbed_instance);

  const CanonicalLp canonical = canonicalize(instance);
  result.solution = make_solution(canonical.lp, vertex.x);
  result.true_objective = instance.c->dot(vertex.x);
  result.perturbed_objective = vertex.objective;
  result.solution.objective_value = result.true_objective;
  result.alpha_bound = objective_accuracy_bound(
      delta_1, instance.cols(), budget.epsilon(), budget.delta());
  return result;
}

}  // namespace dplp
