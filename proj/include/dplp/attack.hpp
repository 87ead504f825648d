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

#ifndef DPLP_ATTACK_HPP_
#define DPLP_ATTACK_HPP_

#include <vector>

#include "dplp/lp.hpp"

namespace dplp {

struct BitDatabase {
  std::vector<int> bits;  // each 0 or 1

  int n() const { return static_cast<int>(bits.size()); }
  int ones() const;
  bool balanced() const;  // exactly n/2 ones, n even
  void validate() const;

  static BitDatabase random(int n, Rng& rng);
  static BitDatabase random_balanced(int n, Rng& rng);
};

enum class GadgetKind { kScalar, kObjective, kConstraint };

// LP whose unique exact solution is the bit vector itself, so any solver that
// is accurate enough leaks the database.
struct GadgetInstance {
  GadgetKind kind = GadgetKind::kScalar;
  BitDatabase database;
  LpInstance lp;
  // Rows of lp.A / lp.b that hold private data; empty when the private part is
  // the objective.
  std::vector<int> private_rows;
  bool private_objective = false;
};

// x_i == D_i via one equality row per bit; neighboring databases flip one bit
// (one b entry moves by 1).
GadgetInstance gadget_scalar(const BitDatabase& db);

// max D . x over {0 <= x <= 1, sum x = n/2}; D balanced; neighboring databases
// swap a one and a zero (two objective entries move by 1).
GadgetInstance gadget_objective(const BitDatabase& db);

// {D . x = n/2 (private), sum x = n/2, 0 <= x <= 1}; D balanced; neighboring
// databases swap a one and a zero (two entries of the private row move by 1).
GadgetInstance gadget_constraint(const BitDatabase& db);

// Closed-form exact optimum of a gadget (equals the database bits).
Vector exact_gadget_solution(const GadgetInstance& gadget);

// max c . x over {0 <= x <= 1, sum x = mass}: fills caps greedily by
// decreasing coefficient (lowest index on ties).
Vector greedy_box_simplex_maximizer(const Vector& c, double mass);

// Coordinates changed between two instances of the same shape.
struct CoefficientDiff {
  int a_entries = 0;
  int b_entries = 0;
  int c_entries = 0;
};
CoefficientDiff count_coefficient_changes(const GadgetInstance& lhs,
                                          const GadgetInstance& rhs);

// Threshold at 1/2, ties round to 1.
BitDatabase reconstruct_by_rounding(const Vector& x);

// Fraction floor of any (epsilon, delta)-private mechanism's reconstruction
// error: 1/2 - (e^eps + delta) / (2 (1 + e^eps)(1 - beta)).  At (0,0,0) this
// is exactly 1/4.  May be negative (vacuous) for large epsilon.
double reconstruction_bound(double epsilon, double delta, double beta);

enum class AttackSolver { kExact, kObjectivePrivate, kScalarPrivate };

struct AttackExperimentConfig {
  GadgetKind gadget = GadgetKind::kScalar;
  AttackSolver solver = AttackSolver::kExact;
  int n = 50;
  int trials = 100;
  double epsilon = 1.0;   // private solvers only
  double delta = 1e-6;    // private solvers only
  double beta = 0.05;     // failure probability in the reported bound
  double alpha = 0.25;    // scalar-private target accuracy (rescaled units)
};

struct AttackTrial {
  double hamming_normalized = 0;  // fraction of bits recovered incorrectly
  double l1_normalized = 0;       // ||x - D||_1 / n before rounding
};

struct AttackExperiment {
  AttackExperimentConfig config;
  std::vector<AttackTrial> trials;
  double mean_hamming = 0;
  double mean_l1 = 0;
  double hamming_q10 = 0;
  double hamming_q50 = 0;
  double hamming_q90 = 0;
  // Reconstruction-error floor the run is compared against, and the privacy
  // parameters it was evaluated at (doubled for swap-neighbor gadgets).
  double bound_c = 0;
  double bound_epsilon = 0;
  double bound_delta = 0;
};

AttackExperiment run_attack_experiment(const AttackExperimentConfig& config,
                                       Rng& rng);

}  // namespace dplp

#endif  // DPLP_ATTACK_HPP_
