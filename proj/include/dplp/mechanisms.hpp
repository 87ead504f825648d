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

#ifndef DPLP_MECHANISMS_HPP_
#define DPLP_MECHANISMS_HPP_

#include <string>
#include <vector>

#include "dplp/common.hpp"
#include "dplp/rng.hpp"
#include "json.hpp"

namespace dplp {

// Draws centered Laplace noise with the given scale by inverse CDF from a
// single uniform.  scale == 0 returns exactly 0 (noiseless limit); the draw
// still consumes one uniform so noisy and noiseless runs stay stream-aligned.
double laplace_sample(double scale, Rng& rng);

// Threshold T with Pr[|Laplace(scale)| > T] = beta, i.e. T = scale * ln(1/beta).
double laplace_tail_threshold(double scale, double beta);

// Candidate utilities for the exponential mechanism.  `sensitivity` bounds the
// change of any single utility value between neighboring inputs.
struct QualityScore {
  Vector values;
  double sensitivity = 0;

  void validate() const;
};

// Selection probabilities Pr[r] proportional to exp(epsilon * Q_r / (2 * sens)),
// computed in log space.  sensitivity == 0 puts all mass on the argmax
// (lowest index on ties).
Vector exponential_mechanism_probs(const QualityScore& score, double epsilon);

// Samples an index from exponential_mechanism_probs using one uniform.
int exponential_mechanism(const QualityScore& score, double epsilon, Rng& rng);

// Utility gap (2 * sens / epsilon) * ln(range_size / beta): with probability at
// least 1 - beta the selected utility is within this gap of the maximum.
double exp_mech_error_bound(int range_size, double epsilon, double sensitivity,
                            double beta);

// Per-step budget under k-fold adaptive composition: each of k steps run at the
// returned epsilon' yields (epsilon, k * delta')-differential privacy overall,
// epsilon' = epsilon / sqrt(8 * k * ln(1 / delta)).
double compose_budget(double epsilon, double delta, int k);

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct ChargeEntry {
  std::string label;
  double eps = 0;
};

// Plan-then-charge accountant.  A caller first plans a composition (fixing the
// number of steps and the per-step budget), then records one charge per
// differentially private operation.  Charging beyond the plan throws.
class PrivacyBudget {
 public:
  PrivacyBudget(double epsilon, double delta);

  // Advanced composition over k steps; returns the per-step epsilon'.
  double plan_composition(int k);
  // Even split over k steps (basic composition); returns epsilon / k.
  double plan_even_split(int k);

  void charge(const std::string& label, double eps);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  int planned_steps() const { return planned_k_; }
  int charged_steps() const { return static_cast<int>(charges_.size()); }
  double planned_step_epsilon() const { return step_epsilon_; }
  const std::vector<ChargeEntry>& charges() const { return charges_; }

  // Relative residual of 8 * k * ln(1/delta) * eps'^2 == eps^2.  Only
  // meaningful for advanced-composition plans.
  double composition_identity_residual() const;

  nlohmann::ordered_json audit() const;

 private:
  double epsilon_;
  double delta_;
  int planned_k_ = 0;
  double step_epsilon_ = 0;
  std::string mode_ = "none";
  std::vector<ChargeEntry> charges_;
};

// Free-function form of PrivacyBudget::charge.
void charge(PrivacyBudget& budget, const std::string& label, double eps);

}  // namespace dplp

#endif  // DPLP_MECHANISMS_HPP_
