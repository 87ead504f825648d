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
#include "dplp/objective_solver.hpp"
#include "dplp/rng.hpp"
#include "dplp/verify.hpp"

namespace dplp {
namespace {

LpInstance simplex_max_instance(const Vector& c) {
  LpInstance inst;
  const int d = static_cast<int>(c.size());
  // One loose row so the canonical form is non-empty.
  inst.A = Matrix::Constant(1, d, 1.0);
  inst.b = Vector::Constant(1, 2.0);
  inst.senses = {Sense::kLe};
  inst.c = c;
  inst.objective_sense = ObjectiveSense::kMaximize;
  inst.sensitivity.kind = SensitivityKind::kLowSensObjective;
  inst.sensitivity.delta_1 = 1e-3;
  inst.region = PublicRegion::simplex();
  return inst;
}

TEST_CASE("perturb objective") {
  SUBCASE("zero sensitivity leaves c untouched") {
    const Vector c = (Vector(3) << 0.5, 0.2, 0.9).finished();
    PrivacyBudget budget(1.0, 1e-6);
    Rng rng(1);
    const PerturbedObjective out = perturb_objective(c, 0.0, budget, rng);
    CHECK(out.c_hat == c);
    CHECK(out.noise_scale == 0.0);
    CHECK(budget.charged_steps() == 3);
  }

  SUBCASE("noise scale formula at d = 10") {
    PrivacyBudget budget(1.0, 1e-6);
    Rng rng(2);
    const PerturbedObjective out =
        perturb_objective(Vector::Zero(10), 1e-3, budget, rng);
    CHECK(out.noise_scale == doctest::Approx(0.0332452).epsilon(1e-4));
    CHECK(budget.planned_steps() == 10);
    CHECK(budget.composition_identity_residual() <= 1e-12);
  }

  SUBCASE("fixed seed reproduces the draws") {
    const Vector c = Vector::Zero(5);
    PrivacyBudget b1(1.0, 1e-6);
    PrivacyBudget b2(1.0, 1e-6);
    Rng r1(77);
    Rng r2(77);
    const PerturbedObjective one = perturb_objective(c, 1e-3, b1, r1);
    const PerturbedObjective two = perturb_objective(c, 1e-3, b2, r2);
    CHECK(one.c_hat == two.c_hat);
    CHECK(one.noise == two.noise);
  }
}

TEST_CASE("exact vertex solver") {
  SUBCASE("max x1 over the 2-simplex") {
    LpInstance inst = simplex_max_instance((Vector(2) << 1.0, 0.0).finished());
    const VertexSolveResult out = solve_exact_lp(inst);
    CHECK(out.x[0] == doctest::Approx(1.0));
    CHECK(out.x[1] == doctest::Approx(0.0));
    CHECK(out.objective == doctest::Approx(1.0));
  }

  SUBCASE("argmax coordinate wins for a linear objective on the simplex") {
    LpInstance inst =
        simplex_max_instance((Vector(3) << 3.0, 1.0, 2.0).finished());
    const VertexSolveResult out = solve_exact_lp(inst);
    CHECK(out.x[0] == doctest::Approx(1.0));
    CHECK(out.objective == doctest::Approx(3.0));
  }

  SUBCASE("ties resolve to the lexicographically smallest vertex") {
    LpInstance inst =
        simplex_max_instance((Vector(3) << 1.0, 2.0, 2.0).finished());
    const VertexSolveResult out = solve_exact_lp(inst);
    CHECK(out.objective == doctest::Approx(2.0));
    CHECK(out.x[2] == doctest::Approx(1.0));  // (0,0,1) precedes (0,1,0)
  }

  SUBCASE("infeasible instances throw") {
    LpInstance inst = simplex_max_instance((Vector(2) << 1.0, 0.0).finished());
    inst.A = Matrix::Constant(1, 2, 1.0);
    inst.b = Vector::Constant(1, 0.5);  // sum x <= 0.5 contradicts sum x = 1
    CHECK_THROWS_AS(solve_exact_lp(inst), InfeasibleError);
  }

  SUBCASE("beats rejection-sampled feasible points") {
    Rng rng(11);
    const int d = 5;
    LpInstance inst;
    inst.A = Matrix(3, d);
    inst.b = Vector(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < d; ++j) inst.A(i, j) = 2.0 * rng.uniform() - 1.0;
    }
    Vector c(d);
    for (int j = 0; j < d; ++j) c[j] = rng.uniform();
    // Loose enough that a good fraction of the simplex stays feasible.
    for (int i = 0; i < 3; ++i) {
      inst.b[i] = inst.A.row(i).maxCoeff() * 0.5 + 0.3;
    }
    inst.senses = {Sense::kLe, Sense::kLe, Sense::kLe};
    inst.c = c;
    inst.objective_sense = ObjectiveSense::kMaximize;
    inst.sensitivity.kind = SensitivityKind::kLowSensObjective;
    inst.sensitivity.delta_1 = 1e-3;
    inst.region = PublicRegion::simplex();

    const VertexSolveResult out = solve_exact_lp(inst);
    // Returned point is feasible.
    CHECK((inst.A * out.x - inst.b).maxCoeff() <= 1e-9);
    CHECK(out.x.minCoeff() >= -1e-9);
    CHECK(out.x.sum() == doctest::Approx(1.0));
    // And at least as good as anything rejection sampling finds.
    int kept = 0;
    for (int trial = 0; trial < 20000; ++trial) {
      const Vector x = verify::random_simplex_point(d, rng);
      if ((inst.A * x - inst.b).maxCoeff() <= 0) {
        ++kept;
        CHECK(c.dot(x) <= out.objective + 1e-9);
      }
    }
    CHECK(kept > 100);  // the check above actually exercised samples
  }
}

TEST_CASE("objective accuracy bounds") {
  SUBCASE("worst-case bound at d = 10") {
    CHECK(objective_accuracy_bound(1e-3, 10, 1.0, 1e-6) ==
          doctest::Approx(0.143634).epsilon(1e-4));
  }

  SUBCASE("explicit-beta variant") {
    const double scale = 1e-3 * std::sqrt(80.0 * std::log(1e6));
    CHECK(objective_accuracy_bound_beta(1e-3, 10, 1.0, 1e-6, 0.05) ==
          doctest::Approx(2.0 * scale * std::log(10.0 / 0.05)));
  }

  SUBCASE("zero sensitivity gives zero gap") {
    CHECK(objective_accuracy_bound(0.0, 10, 1.0, 1e-6) == 0.0);
  }
}

TEST_CASE("objective-private solve") {
  SUBCASE("vanishing noise recovers the exact optimum") {
    LpInstance inst =
        simplex_max_instance((Vector(4) << 0.9, 0.1, 0.5, 0.3).finished());
    inst.sensitivity.delta_1 = 1e-12;
    PrivacyBudget budget(1.0, 1e-6);
    Rng rng(21);
    const ObjectiveSolveResult run = solve_objective_private(inst, budget, rng);
    const VertexSolveResult exact = solve_exact_lp(inst);
    CHECK(run.true_objective == doctest::Approx(exact.objective));
    CHECK(run.solution.violated_beyond(1e-7).empty());
  }

  SUBCASE("feasibility is exact under any noise level") {
    for (int trial = 0; trial < 20; ++trial) {
      LpInstance inst =
          simplex_max_instance((Vector(5) << 0.2, 0.8, 0.5, 0.1, 0.6)
                                   .finished());
      inst.sensitivity.delta_1 = 0.05;  // large noise
      PrivacyBudget budget(1.0, 1e-6);
      Rng rng(500 + trial);
      const ObjectiveSolveResult run =
          solve_objective_private(inst, budget, rng);
      CHECK(run.solution.violated_beyond(1e-7).empty());
      CHECK(run.perturbed_objective ==
            doctest::Approx(run.perturbed.c_hat.dot(run.solution.x)));
    }
  }

  SUBCASE("reports the printed alpha bound and plans d charges") {
    LpInstance inst =
        simplex_max_instance((Vector(3) << 0.4, 0.2, 0.6).finished());
    PrivacyBudget budget(2.0, 1e-6);
    Rng rng(31);
    const ObjectiveSolveResult run = solve_objective_private(inst, budget, rng);
    CHECK(run.alpha_bound ==
          doctest::Approx(objective_accuracy_bound(1e-3, 3, 2.0, 1e-6)));
    CHECK(budget.planned_steps() == 3);
    CHECK(budget.charged_steps() == 3);
    CHECK(budget.composition_identity_residual() <= 1e-12);
  }

  SUBCASE("rejects instances with the wrong sensitivity kind") {
    LpInstance inst =
        simplex_max_instance((Vector(3) << 0.4, 0.2, 0.6).finished());
    inst.sensitivity.kind = SensitivityKind::kLowSensScalar;
    inst.sensitivity.delta_inf = 1e-3;
    inst.sensitivity.delta_1 = 0;
    PrivacyBudget budget(1.0, 1e-6);
    Rng rng(41);
    CHECK_THROWS_AS(solve_objective_private(inst, budget, rng),
                    std::invalid_argument);
  }

  SUBCASE("objective gap stays within the bound for most seeds") {
    // Not a tail-probability assertion; just sanity at a moderate scale.
    LpInstance inst =
        simplex_max_instance((Vector(5) << 0.9, 0.2, 0.5, 0.7, 0.1)
                                 .finished());
    const VertexSolveResult exact = solve_exact_lp(inst);
    int within = 0;
    for (int trial = 0; trial < 50; ++trial) {
      PrivacyBudget budget(2.0, 1e-6);
      Rng rng(900 + trial);
      const ObjectiveSolveResult run =
          solve_objective_private(inst, budget, rng);
      CHECK(run.true_objective <= exact.objective + 1e-9);
      if (exact.objective - run.true_objective <= run.alpha_bound) ++within;
    }
    CHECK(within >= 45);
  }
}

}  // namespace
}  // namespace dplp
