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

#include "dplp/mechanisms.hpp"

#include <cmath>

namespace dplp {

double laplace_sample(double scale, Rng& rng) {
  check_arg(scale >= 0 && std::isfinite(scale), "laplace_sample: scale must be finite and >= 0");
  const double u = rng.uniform_open();
  if (u < 0.5) return scale * std::log(2.0 * u);
  return -scale * std::log(2.0 * (1.0 - u));
}

double laplace_tail_threshold(double scale, double beta) {
  check_arg(scale >= 0, "laplace_tail_threshold: scale must be >= 0");
  check_arg(beta > 0 && beta < 1, "laplace_tail_threshold: beta must be in (0,1)");
  return scale * std::log(1.0 / beta);
}

void QualityScore::validate() const {
  check_arg(values.size() > 0, "QualityScore: empty range");
  check_arg(values.allFinite(), "QualityScore: non-finite utility");
  check_arg(sensitivity >= 0 && std::isfinite(sensitivity),
            "QualityScore: sensitivity must be finite and >= 0");
}

Vector exponential_mechanism_probs(const QualityScore& score, double epsilon) {
  score.validate();
  check_arg(epsilon > 0, "exponential_mechanism: epsilon must be > 0");
  const Eigen::Index k = score.values.size();
  Vector probs = Vector::Zero(k);
  if (score.sensitivity == 0) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < k; ++i) {
      if (score.values[i] > score.values[best]) best = i;
    }
    probs[best] = 1.0;
    return probs;
  }
  Vector logits = (epsilon / (2.0 * score.sensitivity)) * score.values;
  const double lse = log_sum_exp(logits);
  for (Eigen::Index i = 0; i < k; ++i) probs[i] = std::exp(logits[i] - lse);
  return probs;
}

int exponential_mechanism(const QualityScore& score, double epsilon, Rng& rng) {
  const Vector probs = exponential_mechanism_probs(score, epsilon);
  const double u = rng.uniform();
  double cum = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);
}

double exp_mech_error_bound(int range_size, double epsilon, double sensitivity,
                            double beta) {
  check_arg(range_size >= 1, "exp_mech_error_bound: range_size must be >= 1");
  check_arg(epsilon > 0, "exp_mech_error_bound: epsilon must be > 0");
  check_arg(sensitivity >= 0, "exp_mech_error_bound: sensitivity must be >= 0");
  check_arg(beta > 0 && beta < 1, "exp_mech_error_bound: beta must be in (0,1)");
  return (2.0 * sensitivity / epsilon) * std::log(range_size / beta);
}

double compose_budget(double epsilon, double delta, int k) {
  check_arg(epsilon > 0, "compose_budget: epsilon must be > 0");
  check_arg(delta > 0 && delta < 1, "compose_budget: delta must be in (0,1)");
  check_arg(k >= 1, "compose_budget: k must be >= 1");
  return epsilon / std::sqrt(8.0 * k * std::log(1.0 / delta));
}

PrivacyBudget::PrivacyBudget(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  check_arg(epsilon > 0, "PrivacyBudget: epsilon must be > 0");
  check_arg(delta >= 0 && delta < 1, "PrivacyBudget: delta must be in [0,1)");
}

double PrivacyBudget::plan_composition(int k) {
  check_state(charges_.empty(), "PrivacyBudget: cannot replan after charging");
  step_epsilon_ = compose_budget(epsilon_, delta_, k);
  planned_k_ = k;
  mode_ = "advanced";
  return step_epsilon_;
}

double PrivacyBudget::plan_even_split(int k) {
  check_state(charges_.empty(), "PrivacyBudget: cannot replan after charging");
  check_arg(k >= 1, "plan_even_split: k must be >= 1");
  step_epsilon_ = epsilon_ / k;
  planned_k_ = k;
  mode_ = "even";
  return step_epsilon_;
}

void PrivacyBudget::charge(const std::string& label, double eps) {
  if (planned_k_ == 0) {
    throw BudgetExhausted("PrivacyBudget: charge before any plan");
  }
  if (charged_steps() >= planned_k_) {
    throw BudgetExhausted("PrivacyBudget: planned steps exhausted (k=" +
                          std::to_string(planned_k_) + ")");
  }
  if (eps > step_epsilon_ * (1.0 + 1e-12)) {
    throw BudgetExhausted("PrivacyBudget: charge " + std::to_string(eps) +
                          " exceeds per-step budget " +
                          std::to_string(step_epsilon_));
  }
  charges_.push_back({label, eps});
}

double PrivacyBudget::composition_identity_residual() const {
  const double lhs =
      8.0 * planned_k_ * std::log(1.0 / delta_) * step_epsilon_ * step_epsilon_;
  return std::abs(lhs - epsilon_ * epsilon_) / (epsilon_ * epsilon_);
}

nlohmann::ordered_json PrivacyBudget::audit() const {
  nlohmann::ordered_json j;
  j["epsilon"] = epsilon_;
  j["delta"] = delta_;
  j["mode"] = mode_;
  j["planned_k"] = planned_k_;
  j["epsilon_prime"] = step_epsilon_;
  j["charged_k"] = charged_steps();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ChargeEntry& e : charges_) {
    arr.push_back({{"label", e.label}, {"eps", e.eps}});
  }
  j["charges"] = arr;
  return j;
}

void charge(PrivacyBudget& budget, const std::string& label, double eps) {
  budget.charge(label, eps);
}

}  // namespace dplp
