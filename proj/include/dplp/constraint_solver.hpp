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

#ifndef DPLP_CONSTRAINT_SOLVER_HPP_
#define DPLP_CONSTRAINT_SOLVER_HPP_

#include <functional>

#include "dplp/lp.hpp"
#include "dplp/mw.hpp"

namespace dplp {

// Approximate oracle plugged into the constraint-private solver: given a
// 1/s-dense distribution y over rows, returns a point of the public region
// whose y-weighted aggregate slack is approximately minimal.  The oracle is
// responsible for its own privacy; the solver charges one composition step per
// call.
using ConstraintOracle =
    std::function<Vector(const DenseDistribution& y, Rng& rng)>;

// Accuracy contract of an oracle: y-weighted slack within `alpha` of optimal
// with probability at least 1 - beta per call, answers rho-bounded.
struct ApproxOracleContract {
  double alpha = 0;
  double beta = 0;
  double rho = 0;
};

struct ConstraintPrivateParams {
  double epsilon = 0;
  double delta = 0;
  double alpha = 0;  // target accuracy for the satisfied rows
  int density = 1;   // s: all but fewer than s rows end up alpha-satisfied
  double rho = 0;    // width bound of the oracle's answers
};

struct ConstraintSchedule {
  int rounds = 0;      // T = ceil(36 rho^2 ln m / alpha^2)
  double eta = 0;      // sqrt(ln m / T)
  double eps_prime = 0;  // per-round budget under T-fold composition
};

// Derives and validates the schedule; throws when alpha is out of range,
// density exceeds m, or the derived eta exceeds 1/2.
ConstraintSchedule derive_constraint_schedule(const ConstraintPrivateParams& p,
                                              int m);

struct ConstraintSolveResult {
  Solution solution;
  ConstraintSchedule schedule;
  int violations_beyond_alpha = 0;
};

// Dense-MW solve: T rounds of project / oracle / update, averaging the oracle
// answers.  All but fewer than `density` rows are alpha-satisfied when the
// oracle meets an (alpha/3, beta/T) contract with width rho.
ConstraintSolveResult solve_constraint_private(const FeasibilityLp& lp,
                                               const ConstraintOracle& oracle,
                                               const ConstraintPrivateParams& p,
                                               PrivacyBudget& budget, Rng& rng,
                                               TraceWriter* trace = nullptr);

// Fractional set cover: cover every element i (sum_j coverage_ij x_j >= 1) at
// cost c . x equal to the publicly known optimum `opt`.
struct SetCoverInstance {
  Matrix coverage;  // m x d with 0/1 entries
  Vector costs;     // d positive set costs
  double opt;       // fractional optimum value

  int elements() const { return static_cast<int>(coverage.rows()); }
  int sets() const { return static_cast<int>(coverage.cols()); }
  void validate() const;
  double min_cost() const;
  // Width of the slice vertices: opt / min cost - 1.  Bounds the row slack on
  // both sides only when opt >= 2 * min cost.
  double width_rho() const;
  // Canonical rows -coverage x <= -1 over the slice {x >= 0 : c . x = opt}.
  FeasibilityLp to_feasibility() const;
  // Vertex (opt / c_j) e_j of the slice.
  Vector vertex(int j) const;
};

// Utility of vertex j under row distribution y:
// q_j(y) = (opt / c_j) * sum_i y_i coverage_ij - 1.
Vector setcover_quality(const SetCoverInstance& sc, const DenseDistribution& y);

// Sensitivity of q_j under one element arriving or leaving: 3 opt / (c_min s).
double setcover_quality_sensitivity(const SetCoverInstance& sc, int s);

// Exponential-mechanism oracle over the d slice vertices at budget eps_prime.
ConstraintOracle make_setcover_oracle(const SetCoverInstance& sc, int s,
                                      double eps_prime);

// Noiseless argmax oracle (lowest index on ties); used as the exact baseline.
ConstraintOracle make_exact_setcover_oracle(const SetCoverInstance& sc);

// Per-call accuracy of the private oracle at failure probability gamma:
// 6 opt ln(d) ln(1/gamma) / (c_min s eps_prime).
double setcover_oracle_error(const SetCoverInstance& sc, int s,
                             double eps_prime, double gamma);

}  // namespace dplp

#endif  // DPLP_CONSTRAINT_SOLVER_HPP_
