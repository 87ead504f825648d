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

#include "dplp/constraint_solver.hpp"

#include <cmath>
#include <string>

#include "dplp/mechanisms.hpp"

namespace dplp {

ConstraintSchedule derive_constraint_schedule(const ConstraintPrivateParams& p,
                                              int m) {
  check_arg(m >= 2, "constraint solver: need at least 2 rows");
  check_arg(p.rho > 0 && std::isfinite(p.rho),
            "constraint solver: rho must be finite and > 0");
  check_arg(p.alpha > 0 && p.alpha <= 9.0 * p.rho,
            "constraint solver: alpha must satisfy 0 < alpha <= 9 rho");
  check_arg(p.density >= 1 && p.density <= m,
            "constraint solver: density must be in [1, m]");
  ConstraintSchedule sched;
  const double log_m = std::log(static_cast<double>(m));
  sched.rounds = static_cast<int>(
      std::ceil(36.0 * p.rho * p.rho * log_m / (p.alpha * p.alpha)));
  sched.eta = std::sqrt(log_m / sched.rounds);
  check_arg(sched.eta <= 0.5 + 1e-12,
            "constraint solver: derived eta exceeds 1/2; pick a smaller alpha");
  sched.eps_prime = compose_budget(p.epsilon, p.delta, sched.rounds);
  return sched;
}

ConstraintSolveResult solve_constraint_private(const FeasibilityLp& lp,
                                               const ConstraintOracle& oracle,
                                               const ConstraintPrivateParams& p,
                                               PrivacyBudget& budget, Rng& rng,
                                               TraceWriter* trace) {
  lp.validate();
  check_arg(static_cast<bool>(oracle), "constraint solver: no oracle");
  const int m = lp.rows();
  ConstraintSchedule sched = derive_constraint_schedule(p, m);
  const double planned = budget.plan_composition(sched.rounds);
  check_state(std::abs(planned - sched.eps_prime) <=
                  1e-12 * std::max(1.0, sched.eps_prime),
              "constraint solver: budget plan mismatch");

  if (trace != nullptr) trace->dmw_header(m, sched.eta, p.density);

  Measure measure = Measure::uniform(m);
  Vector x_sum = Vector::Zero(lp.cols());
  for (int t = 1; t <= sched.rounds; ++t) {
    DenseDistribution y = bregman_project(measure, p.density);
    budget.charge("oracle[" + std::to_string(t) + "]", sched.eps_prime);
    const Vector x = oracle(y, rng);
    check_state(x.size() == lp.A.cols(),
                "constraint solver: oracle answer has wrong dimension");
    check_state(lp.region.contains(x, 1e-7),
                "constraint solver: oracle answer left the public region");

    // Loss from the slack of each row, mapped into [0, 1] by the width bound.
    Vector loss = (lp.b - lp.A * x) / (2.0 * p.rho) +
                  Vector::Constant(m, 0.5);
    check_state(loss.minCoeff() >= -1e-9 && loss.maxCoeff() <= 1.0 + 1e-9,
                "constraint solver: oracle answer exceeded the declared width");
    if (trace != nullptr) trace->dmw_record(t, loss, y);

    x_sum += x;
    measure.log_weights -= sched.eta * loss;
  }

  ConstraintSolveResult result;
  result.schedule = sched;
  result.solution = make_solution(lp, x_sum / sched.rounds, 1e-7);
  result.violations_beyond_alpha =
      static_cast<int>(result.solution.violated_beyond(p.alpha).size());
  return result;
}

void SetCoverInstance::validate() const {
  check_arg(coverage.rows() >= 1 && coverage.cols() >= 1,
            "set cover: empty coverage matrix");
  check_arg(((coverage.array() == 0) || (coverage.array() == 1)).all(),
            "set cover: coverage entries must be 0 or 1");
  check_arg((coverage.rowwise().sum().array() > 0).all(),
            "set cover: some element is covered by no set");
  check_arg(costs.size() == coverage.cols(), "set cover: cost length mismatch");
  check_arg((costs.array() > 0).all(), "set cover: costs must be positive");
  check_arg(opt > 0 && std::isfinite(opt), "set cover: opt must be finite and > 0");
}

double SetCoverInstance::min_cost() const { return costs.minCoeff(); }

double SetCoverInstance::width_rho() const { return opt / min_cost() - 1.0; }

FeasibilityLp SetCoverInstance::to_feasibility() const {
  validate();
  FeasibilityLp lp;
  lp.A = -coverage;
  lp.b = Vector::Constant(elements(), -1.0);
  lp.region = PublicRegion::objective_slice(costs, opt);
  return lp;
}

Vector SetCoverInstance::vertex(int j) const {
  Vector x = Vector::Zero(sets());
  x[j] = opt / costs[j];
  return x;
}

Vector setcover_quality(const SetCoverInstance& sc, const DenseDistribution& y) {
  check_arg(y.probs.size() == sc.coverage.rows(),
            "setcover_quality: distribution dimension mismatch");
  const Vector weighted = sc.coverage.transpose() * y.probs;  // per set
  Vector q(sc.sets());
  for (int j = 0; j < sc.sets(); ++j) {
    q[j] = (sc.opt / sc.costs[j]) * weighted[j] - 1.0;
  }
  return q;
}

double setcover_quality_sensitivity(const SetCoverInstance& sc, int s) {
  check_arg(s >= 1, "setcover_quality_sensitivity: s must be >= 1");
  return 3.0 * sc.opt / (sc.min_cost() * s);
}

ConstraintOracle make_setcover_oracle(const SetCoverInstance& sc, int s,
                                      double eps_prime) {
  sc.validate();
  check_arg(eps_prime > 0, "setcover oracle: eps_prime must be > 0");
  const double sensitivity = setcover_quality_sensitivity(sc, s);
  return [sc, sensitivity, eps_prime](const DenseDistribution& y, Rng& rng) {
    QualityScore score{setcover_quality(sc, y), sensitivity};
    const int j = exponential_mechanism(score, eps_prime, rng);
    return sc.vertex(j);
  };
}

ConstraintOracle make_exact_setcover_oracle(const SetCoverInstance& sc) {
  sc.validate();
  return [sc](const DenseDistribution& y, Rng&) {
    const Vector q = setcover_quality(sc, y);
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < q.size(); ++j) {
      if (q[j] > q[best]) best = j;
    }
    return sc.vertex(static_cast<int>(best));
  };
}

double setcover_oracle_error(const SetCoverInstance& sc, int s,
                             double eps_prime, double gamma) {
  check_arg(gamma > 0 && gamma < 1, "setcover_oracle_error: gamma in (0,1)");
  check_arg(eps_prime > 0, "setcover_oracle_error: eps_prime must be > 0");
  return 6.0 * sc.opt * std::log(static_cast<double>(sc.sets())) *
         std::log(1.0 / gamma) / (sc.min_cost() * s * eps_prime);
}

}  // namespace dplp
