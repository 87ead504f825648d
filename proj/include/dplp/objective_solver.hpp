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

#ifndef DPLP_OBJECTIVE_SOLVER_HPP_
#define DPLP_OBJECTIVE_SOLVER_HPP_

#include "dplp/lp.hpp"

namespace dplp {

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PerturbedObjective {
  Vector c_hat;
  Vector noise;
  double noise_scale = 0;  // delta_1 * sqrt(8 d ln(1/delta)) / epsilon
};

// Releases the whole objective once: c_hat = c + Laplace(scale)^d, one charge
// per coordinate under d-fold composition against the budget's (eps, delta).
PerturbedObjective perturb_objective(const Vector& c, double delta_1,
                                     PrivacyBudget& budget, Rng& rng);

struct VertexSolveResult {
  Vector x;
  double objective = 0;
};

// Exact LP solve by vertex enumeration: equality rows are always active, the
// remaining active set ranges over inequality rows and variable lower bounds.
// Simplex / objective-slice regions contribute their equality internally.
// Deterministic lexicographic tie-break among optimal vertices; without an
// objective, returns the lexicographically smallest feasible vertex.  The
// feasible set must be bounded (our instances carry a normalization row or
// box constraints).  Throws InfeasibleError when no vertex is feasible.
VertexSolveResult solve_exact_lp(const LpInstance& instance);

// Accuracy of the perturbed solve over the simplex, as a worst-case bound:
// 4 delta_1 sqrt(8 d ln(d / delta)) / epsilon.
double objective_accuracy_bound(double delta_1, int d, double epsilon,
                                double delta);

// Variant with an explicit failure probability: 2 * scale * ln(d / beta),
// from the union bound over the d Laplace tails.
double objective_accuracy_bound_beta(double delta_1, int d, double epsilon,
                                     double delta, double beta);

struct ObjectiveSolveResult {
  Solution solution;  // slack vs the true canonical rows; exact feasibility
  PerturbedObjective perturbed;
  double true_objective = 0;       // c . x_hat
  double perturbed_objective = 0;  // c_hat . x_hat
  double alpha_bound = 0;
};

// Perturb-then-optimize: noise the objective once, then solve the perturbed
// instance exactly.  Feasibility is exact because constraints are untouched.
// Simplex-region instances get the normalization row 1 . x == 1 appended for
// the exact solve.  Reads delta_1 from the instance sensitivity model, which
// must be LowSensObjective.
ObjectiveSolveResult solve_objective_private(const LpInstance& instance,
                                             PrivacyBudget& budget, Rng& rng);

}  // namespace dplp

#endif  // DPLP_OBJECTIVE_SOLVER_HPP_
