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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "dplp/mechanisms.hpp"
#include "dplp/rng.hpp"

namespace dplp {
namespace {

TEST_CASE("laplace sample matches analytic moments") {
  Rng rng(12345);
  const int n = 100000;

  SUBCASE("scale 1") {
    double sum = 0;
    double sum_sq = 0;
    for (int i = 0; i < n; ++i) {
      const double v = laplace_sample(1.0, rng);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 2.0) < 0.1);
  }

  SUBCASE("scale 2 has variance 8") {
    double sum = 0;
    double sum_sq = 0;
    for (int i = 0; i < n; ++i) {
      const double v = laplace_sample(2.0, rng);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(var - 8.0) < 0.4);
  }
}

TEST_CASE("laplace sample is deterministic per seed") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(laplace_sample(1.5, a) == laplace_sample(1.5, b));
  }
}

TEST_CASE("laplace scale zero returns zero but stays stream aligned") {
  Rng noisy(7);
  Rng silent(7);
  for (int i = 0; i < 10; ++i) {
    CHECK(laplace_sample(0.0, silent) == 0.0);
    laplace_sample(1.0, noisy);
  }
  // Both consumed the same number of uniforms.
  CHECK(noisy.next_u64() == silent.next_u64());
}

TEST_CASE("laplace tail threshold") {
  CHECK(laplace_tail_threshold(1.0, 1.0 / std::exp(1.0)) ==
        doctest::Approx(1.0));
  CHECK(laplace_tail_threshold(1.0, 0.05) == doctest::Approx(2.9957322736));
  CHECK(laplace_tail_threshold(3.0, 0.05) == doctest::Approx(8.9871968207));
}

TEST_CASE("exponential mechanism probabilities") {
  SUBCASE("two-point softmax (0, ln 2) at epsilon 2") {
    QualityScore score;
    score.values = Vector(2);
    score.values << 0.0, std::log(2.0);
    score.sensitivity = 1.0;
    const Vector p = exponential_mechanism_probs(score, 2.0);
    CHECK(p[0] == doctest::Approx(1.0 / 3.0));
    CHECK(p[1] == doctest::Approx(2.0 / 3.0));
  }

  SUBCASE("constant scores give the uniform distribution") {
    QualityScore score;
    score.values = Vector::Constant(4, 3.7);
    score.sensitivity = 1.0;
    const Vector p = exponential_mechanism_probs(score, 1.0);
    for (int i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(0.25));
  }

  SUBCASE("zero sensitivity collapses onto the lowest argmax") {
    QualityScore score;
    score.values = Vector(4);
    score.values << 0.3, 0.9, 0.9, 0.1;
    score.sensitivity = 0.0;
    const Vector p = exponential_mechanism_probs(score, 1.0);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 1.0);
    CHECK(p[2] == 0.0);
    CHECK(p[3] == 0.0);
  }
}

TEST_CASE("exponential mechanism sampling matches the analytic law") {
  QualityScore score;
  score.values = Vector(4);
  score.values << 0.0, std::log(2.0), std::log(4.0), std::log(8.0);
  score.sensitivity = 1.0;
  // Weights (1, 2, 4, 8) -> probabilities (1, 2, 4, 8) / 15.
  Rng rng(99);
  const int n = 100000;
  Vector counts = Vector::Zero(4);
  for (int i = 0; i < n; ++i) {
    counts[exponential_mechanism(score, 2.0, rng)] += 1.0;
  }
  const Vector expected =
      (Vector(4) << 1.0 / 15, 2.0 / 15, 4.0 / 15, 8.0 / 15).finished();
  const double tv = 0.5 * (counts / n - expected).cwiseAbs().sum();
  CHECK(tv < 0.02);
}

TEST_CASE("exponential mechanism error bound") {
  CHECK(exp_mech_error_bound(10, 1.0, 1.0, 0.1) ==
        doctest::Approx(2.0 * std::log(100.0)));
  CHECK(exp_mech_error_bound(10, 2.0, 0.0, 0.1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(exp_mech_error_bound(1, 2.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK(exp_mech_error_bound(10, 1.0, 2.0, 0.1) ==
        doctest::Approx(2.0 * exp_mech_error_bound(10, 1.0, 1.0, 0.1)));
}

TEST_CASE("compose budget formula") {
  CHECK(compose_budget(1.0, std::exp(-1.0), 1) ==
        doctest::Approx(1.0 / std::sqrt(8.0)));
  CHECK(compose_budget(1.0, std::exp(-1.0), 8) == doctest::Approx(0.125));
  CHECK(compose_budget(0.5, 1e-6, 100) ==
        doctest::Approx(4.756e-3).epsilon(1e-3));
}

TEST_CASE("privacy budget plans then charges") {
  PrivacyBudget budget(1.0, 1e-6);
  const double step = budget.plan_composition(2);
  CHECK(step == doctest::Approx(compose_budget(1.0, 1e-6, 2)));
  CHECK(budget.planned_steps() == 2);

  budget.charge("first", step);
  budget.charge("second", step);
  CHECK(budget.charged_steps() == 2);
  CHECK_THROWS_AS(budget.charge("third", step), BudgetExhausted);

  CHECK(budget.charges()[0].label == "first");
  CHECK(budget.charges()[1].label == "second");
  CHECK(budget.composition_identity_residual() <= 1e-12);

  const nlohmann::ordered_json audit = budget.audit();
  CHECK(audit["epsilon"].get<double>() == 1.0);
  CHECK(audit["charges"].size() == 2);
}

TEST_CASE("privacy budget rejects charges above the planned step") {
  PrivacyBudget budget(1.0, 1e-6);
  const double step = budget.plan_composition(4);
  CHECK_THROWS_AS(budget.charge("too big", 2.0 * step), BudgetExhausted);
}

TEST_CASE("even split plan") {
  PrivacyBudget budget(2.0, 1e-6);
  CHECK(budget.plan_even_split(4) == doctest::Approx(0.5));
  charge(budget, "a", 0.5);
  CHECK(budget.charged_steps() == 1);
}

TEST_CASE("composition identity holds on a parameter grid") {
  const std::vector<int> ks = {1, 2, 7, 64, 500, 2125, 5280};
  const std::vector<double> epsilons = {0.5, 1.0, 5.0};
  const std::vector<double> deltas = {1e-6, std::exp(-1.0)};
  for (int k : ks) {
    for (double eps : epsilons) {
      for (double delta : deltas) {
        const double step = compose_budget(eps, delta, k);
        const double lhs = 8.0 * k * std::log(1.0 / delta) * step * step;
        CHECK(std::abs(lhs - eps * eps) <= 1e-12 * eps * eps);
      }
    }
  }
}

}  // namespace
}  // namespace dplp
