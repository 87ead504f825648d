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

#ifndef DPLP_PRIMAL_SOLVERS_HPP_
#define DPLP_PRIMAL_SOLVERS_HPP_

#include "dplp/lp.hpp"
#include "dplp/mw.hpp"

namespace dplp {

// Shared knobs of the three low-sensitivity primal solvers.  They iterate a
// distribution over the d coordinates (the instance region must be Simplex),
// call a private most-violated-row oracle each round, and average the
// iterates.
struct LowSensParams {
  double epsilon = 0;
  double delta = 0;
  double alpha = 0;  // target accuracy; determines the round count
  double beta = 0;   // failure probability (reporting only)
  // Sensitivity magnitude of the private data: delta_inf for the scalar and
  // row solvers, delta_1 for the column solver.  0 means noiseless data.
  double sensitivity = 0;
  // Testing hook: when > 0, mechanisms run at this budget instead of the
  // derived eps'.  Accounting still reports the derived schedule.
  double eps_prime_override = 0;

  void validate() const;
};

struct PrimalSchedule {
  int rounds = 0;        // T
  double eta = 0;        // sqrt(ln d / T)
  double eps_prime = 0;  // per-operation budget
  double rho = 1;        // loss normalizer (scalar solver only)
  int planned_ops = 0;   // composition length k
};

// Scalar model: T = ceil(9 rho^2 ln d / alpha^2), k = T.
PrimalSchedule derive_scalar_schedule(double rho, int d, const LowSensParams& p);
// Row model: T = ceil(144 ln d / alpha^2), k = 2 d T.
PrimalSchedule derive_row_schedule(int d, const LowSensParams& p);
// Column model: T = ceil(144 ln d / alpha^2), k = 2 T.
PrimalSchedule derive_column_schedule(int d, const LowSensParams& p);

// Exponential mechanism over rows with utility q_i = A_i . x - b_i.
int exp_mech_dual_oracle(const FeasibilityLp& lp, const Vector& x,
                         double eps_prime, double sensitivity, Rng& rng);

enum class ColumnNoiseMode {
  kSharedDraw,     // one Laplace draw per round, added to every coordinate
  kPerCoordinate,  // diagnostic: fresh draw per coordinate, row-style schedule
};

struct PrimalSolveResult {
  Solution solution;
  PrimalSchedule schedule;
  // Coordinates across all rounds where the noisy loss left [-1, 1]; reported,
  // never clamped.
  int losses_out_of_range = 0;
};

// Noisy losses are the selected row's coefficients scaled by 1/rho.
PrimalSolveResult solve_scalar_private(const FeasibilityLp& lp,
                                       const LowSensParams& p,
                                       PrivacyBudget& budget, Rng& rng,
                                       TraceWriter* trace = nullptr);

// Fresh Laplace noise on every coordinate of the selected row each round.
PrimalSolveResult solve_row_private(const FeasibilityLp& lp,
                                    const LowSensParams& p,
                                    PrivacyBudget& budget, Rng& rng,
                                    TraceWriter* trace = nullptr);

// One shared Laplace draw per round (default mode).
PrimalSolveResult solve_column_private(
    const FeasibilityLp& lp, const LowSensParams& p, PrivacyBudget& budget,
    Rng& rng, TraceWriter* trace = nullptr,
    ColumnNoiseMode mode = ColumnNoiseMode::kSharedDraw);

struct AccuracyBound {
  double alpha = 0;
  // Row/column proofs need alpha < 1; a fixed point at or above 1 certifies
  // nothing and is flagged.
  bool vacuous = false;
  int iterations = 0;
};

// Self-referential accuracy guarantees (alpha appears inside its own log
// term), resolved to the unique fixed point by monotone bisection.
AccuracyBound scalar_accuracy_bound(double delta_inf, double rho, int d, int m,
                                    double epsilon, double delta, double beta);
AccuracyBound row_accuracy_bound(double delta_inf, int d, int m, double epsilon,
                                 double delta, double beta);
AccuracyBound column_accuracy_bound(double delta_1, int d, int m,
                                    double epsilon, double delta, double beta);

// Dispatcher keyed by sensitivity kind (scalar kinds use rho, others ignore
// it; delta_sens is delta_inf or delta_1 as the kind requires).
AccuracyBound accuracy_bound(SensitivityKind kind, double delta_sens,
                             double rho, int d, int m, double epsilon,
                             double delta, double beta);

}  // namespace dplp

#endif  // DPLP_PRIMAL_SOLVERS_HPP_
