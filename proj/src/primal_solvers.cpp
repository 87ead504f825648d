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

#include "dplp/primal_solvers.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace dplp {
namespace {

// Keeps eta = sqrt(ln d / T) at or below 1/2 even when the accuracy target
// alone would allow a smaller round count.
int floor_rounds(double raw, int d) {
  const double min_rounds = 4.0 * std::log(static_cast<double>(d));
  return static_cast<int>(std::ceil(std::max(raw, min_rounds)));
}

void require_simplex(const FeasibilityLp& lp, const char* who) {
  check_arg(lp.region.kind == RegionKind::kSimplex,
            std::string(who) +
                ": instance region must be Simplex (rescale first)");
}

void require_unit_entries(const FeasibilityLp& lp, const char* who) {
  check_arg(lp.A.cwiseAbs().maxCoeff() <= 1.0 + 1e-12,
            std::string(who) + ": entries of A must lie in [-1, 1]");
}

// Shared MW loop: each round picks a row with the private dual oracle, builds
// a loss vector from that row, steps the iterate, and averages the iterates.
PrimalSolveResult run_primal_loop(
    const FeasibilityLp& lp, const LowSensParams& p,
    const PrimalSchedule& sched, PrivacyBudget& budget, Rng& rng,
    TraceWriter* trace,
    const std::function<Vector(int t, int row, PrimalSolveResult&)>& make_loss) {
  const int d = lp.cols();
  const double planned = budget.plan_composition(sched.planned_ops);
  check_state(std::abs(planned - sched.eps_prime) <=
                  1e-12 * std::max(1.0, sched.eps_prime),
              "primal solver: budget plan mismatch");
  const double eps_noise =
      p.eps_prime_override > 0 ? p.eps_prime_override : sched.eps_prime;

  if (trace != nullptr) trace->mw_header(d, sched.eta);

  PrimalSolveResult result;
  result.schedule = sched;
  Vector x = Vector::Constant(d, 1.0 / d);
  Vector x_sum = Vector::Zero(d);
  for (int t = 1; t <= sched.rounds; ++t) {
    x_sum += x;
    budget.charge("oracle[" + std::to_string(t) + "]", sched.eps_prime);
    const int row =
        exp_mech_dual_oracle(lp, x, eps_noise, p.sensitivity, rng);
    const Vector loss = make_loss(t, row, result);
    if (trace != nullptr) trace->mw_record(t, loss, x);
    x = mw_step(x, loss, sched.eta);
  }
  result.solution = make_solution(lp, x_sum / sched.rounds);
  return result;
}

// Bisection for the unique fixed point of a finite, strictly decreasing map f
// on (0, hi); f is extended by 0 where its log term would go negative.
AccuracyBound solve_fixed_point(const std::function<double(double)>& f,
                                double hi) {
  AccuracyBound out;
  double lo = 0;
  int iters = 0;
  for (; iters < 200 && (hi - lo) > 1e-9 * std::max(1e-12, hi); ++iters) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > mid) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.alpha = 0.5 * (lo + hi);
  out.iterations = iters;
  return out;
}

void check_bound_args(double delta_sens, int d, int m, double epsilon,
                      double delta, double beta) {
  check_arg(delta_sens >= 0 && std::isfinite(delta_sens),
            "accuracy_bound: sensitivity must be finite and >= 0");
  check_arg(d >= 2, "accuracy_bound: need d >= 2");
  check_arg(m >= 1, "accuracy_bound: need m >= 1");
  check_arg(epsilon > 0, "accuracy_bound: epsilon must be > 0");
  check_arg(delta > 0 && delta < 1, "accuracy_bound: delta must be in (0,1)");
  check_arg(beta > 0 && beta < 1, "accuracy_bound: beta must be in (0,1)");
}

}  // namespace

void LowSensParams::validate() const {
  check_arg(epsilon > 0, "LowSensParams: epsilon must be > 0");
  check_arg(delta > 0 && delta < 1, "LowSensParams: delta must be in (0,1)");
  check_arg(alpha > 0, "LowSensParams: alpha must be > 0");
  check_arg(beta > 0 && beta < 1, "LowSensParams: beta must be in (0,1)");
  check_arg(sensitivity >= 0 && std::isfinite(sensitivity),
            "LowSensParams: sensitivity must be finite and >= 0");
  check_arg(eps_prime_override >= 0,
            "LowSensParams: eps_prime_override must be >= 0");
}

PrimalSchedule derive_scalar_schedule(double rho, int d,
                                      const LowSensParams& p) {
  p.validate();
  check_arg(rho > 0 && std::isfinite(rho),
            "scalar schedule: rho must be finite and > 0");
  check_arg(d >= 2, "scalar schedule: need d >= 2");
  PrimalSchedule sched;
  const double log_d = std::log(static_cast<double>(d));
  sched.rho = rho;
  sched.rounds = floor_rounds(9.0 * rho * rho * log_d / (p.alpha * p.alpha), d);
  sched.eta = std::sqrt(log_d / sched.rounds);
  sched.planned_ops = sched.rounds;
  sched.eps_prime = compose_budget(p.epsilon, p.delta, sched.planned_ops);
  return sched;
}

PrimalSchedule derive_row_schedule(int d, const LowSensParams& p) {
  p.validate();
  check_arg(d >= 2, "row schedule: need d >= 2");
  PrimalSchedule sched;
  const double log_d = std::log(static_cast<double>(d));
  sched.rounds = floor_rounds(144.0 * log_d / (p.alpha * p.alpha), d);
  sched.eta = std::sqrt(log_d / sched.rounds);
  sched.planned_ops = 2 * d * sched.rounds;
  sched.eps_prime = compose_budget(p.epsilon, p.delta, sched.planned_ops);
  return sched;
}

PrimalSchedule derive_column_schedule(int d, const LowSensParams& p) {
  p.validate();
  check_arg(d >= 2, "column schedule: need d >= 2");
  PrimalSchedule sched;
  const double log_d = std::log(static_cast<double>(d));
  sched.rounds = floor_rounds(144.0 * log_d / (p.alpha * p.alpha), d);
  sched.eta = std::sqrt(log_d / sched.rounds);
  sched.planned_ops = 2 * sched.rounds;
  sched.eps_prime = compose_budget(p.epsilon, p.delta, sched.planned_ops);
  return sched;
}

int exp_mech_dual_oracle(const FeasibilityLp& lp, const Vector& x,
                         double eps_prime, double sensitivity, Rng& rng) {
  lp.validate();
  check_arg(x.size() == lp.A.cols(), "dual oracle: dimension mismatch");
  QualityScore score{lp.A * x - lp.b, sensitivity};
  return exponential_mechanism(score, eps_prime, rng);
}

PrimalSolveResult solve_scalar_private(const FeasibilityLp& lp,
                                       const LowSensParams& p,
                                       PrivacyBudget& budget, Rng& rng,
                                       TraceWriter* trace) {
  lp.validate();
  require_simplex(lp, "scalar solver");
  const double rho = lp.A.cwiseAbs().maxCoeff();
  check_arg(rho > 0, "scalar solver: A is identically zero");
  const PrimalSchedule sched = derive_scalar_schedule(rho, lp.cols(), p);
  return run_primal_loop(
      lp, p, sched, budget, rng, trace,
      [&lp, rho](int, int row, PrimalSolveResult&) -> Vector {
        return lp.A.row(row).transpose() / rho;
      });
}

PrimalSolveResult solve_row_private(const FeasibilityLp& lp,
                                    const LowSensParams& p,
                                    PrivacyBudget& budget, Rng& rng,
                                    TraceWriter* trace) {
  lp.validate();
  require_simplex(lp, "row solver");
  require_unit_entries(lp, "row solver");
  const PrimalSchedule sched = derive_row_schedule(lp.cols(), p);
  const double eps_noise =
      p.eps_prime_override > 0 ? p.eps_prime_override : sched.eps_prime;
  const double scale = p.sensitivity / eps_noise;
  return run_primal_loop(
      lp, p, sched, budget, rng, trace,
      [&lp, &budget, &rng, &sched, scale](int t, int row,
                                          PrimalSolveResult& res) -> Vector {
        Vector loss(lp.A.cols());
        for (Eigen::Index j = 0; j < lp.A.cols(); ++j) {
          budget.charge(
              "lap[" + std::to_string(t) + "][" + std::to_string(j) + "]",
              sched.eps_prime);
          const double nu = laplace_sample(scale, rng);
          loss[j] = 0.5 * (lp.A(row, j) + nu);
          if (std::abs(loss[j]) > 1.0) ++res.losses_out_of_range;
        }
        return loss;
      });
}

PrimalSolveResult solve_column_private(const FeasibilityLp& lp,
                                       const LowSensParams& p,
                                       PrivacyBudget& budget, Rng& rng,
                                       TraceWriter* trace,
                                       ColumnNoiseMode mode) {
  lp.validate();
  require_simplex(lp, "column solver");
  require_unit_entries(lp, "column solver");
  PrimalSchedule sched = derive_column_schedule(lp.cols(), p);
  if (mode == ColumnNoiseMode::kPerCoordinate) {
    // Diagnostic variant: d fresh draws per round, accounted row-style.
    sched.planned_ops = 2 * lp.cols() * sched.rounds;
    sched.eps_prime = compose_budget(p.epsilon, p.delta, sched.planned_ops);
  }
  const double eps_noise =
      p.eps_prime_override > 0 ? p.eps_prime_override : sched.eps_prime;
  const double scale = p.sensitivity / eps_noise;
  return run_primal_loop(
      lp, p, sched, budget, rng, trace,
      [&lp, &budget, &rng, &sched, scale, mode](
          int t, int row, PrimalSolveResult& res) -> Vector {
        Vector loss(lp.A.cols());
        double nu = 0;
        if (mode == ColumnNoiseMode::kSharedDraw) {
          budget.charge("lap[" + std::to_string(t) + "]", sched.eps_prime);
          nu = laplace_sample(scale, rng);
        }
        for (Eigen::Index j = 0; j < lp.A.cols(); ++j) {
          if (mode == ColumnNoiseMode::kPerCoordinate) {
            budget.charge(
                "lap[" + std::to_string(t) + "][" + std::to_string(j) + "]",
                sched.eps_prime);
            nu = laplace_sample(scale, rng);
          }
          loss[j] = 0.5 * (lp.A(row, j) + nu);
          if (std::abs(loss[j]) > 1.0) ++res.losses_out_of_range;
        }
        return loss;
      });
}

AccuracyBound scalar_accuracy_bound(double delta_inf, double rho, int d, int m,
                                    double epsilon, double delta, double beta) {
  check_bound_args(delta_inf, d, m, epsilon, delta, beta);
  check_arg(rho > 0 && std::isfinite(rho),
            "accuracy_bound: rho must be finite and > 0");
  if (delta_inf == 0) return AccuracyBound{0, false, 0};
  const double log_d = std::log(static_cast<double>(d));
  const double coeff = 18.0 * rho * delta_inf *
                       std::sqrt(8.0 * log_d * std::log(1.0 / delta)) / epsilon;
  const double arg = 9.0 * rho * rho * log_d * m / beta;
  AccuracyBound out = solve_fixed_point(
      [coeff, arg](double a) {
        const double t = std::log(arg / (a * a));
        return t > 0 ? std::sqrt(coeff * t) : 0.0;
      },
      std::sqrt(arg));
  out.vacuous = false;
  return out;
}

AccuracyBound row_accuracy_bound(double delta_inf, int d, int m, double epsilon,
                                 double delta, double beta) {
  check_bound_args(delta_inf, d, m, epsilon, delta, beta);
  if (delta_inf == 0) return AccuracyBound{0, false, 0};
  const double log_d = std::log(static_cast<double>(d));
  const double prefactor = 12.0 * std::sqrt(delta_inf) *
                           std::pow(static_cast<double>(d), 0.25) *
                           std::pow(log_d, 0.25) *
                           std::pow(std::log(1.0 / delta), 0.25) /
                           std::sqrt(epsilon);
  const double arg = 288.0 * d * log_d * m / beta;
  AccuracyBound out = solve_fixed_point(
      [prefactor, arg](double a) {
        const double t = std::log(arg / (a * a));
        return t > 0 ? prefactor * std::sqrt(t) : 0.0;
      },
      std::sqrt(arg));
  out.vacuous = out.alpha >= 1.0;
  return out;
}

AccuracyBound column_accuracy_bound(double delta_1, int d, int m,
                                    double epsilon, double delta, double beta) {
  check_bound_args(delta_1, d, m, epsilon, delta, beta);
  if (delta_1 == 0) return AccuracyBound{0, false, 0};
  const double log_d = std::log(static_cast<double>(d));
  const double prefactor = 12.0 * std::sqrt(delta_1) * std::pow(log_d, 0.25) *
                           std::pow(std::log(1.0 / delta), 0.25) /
                           std::sqrt(epsilon);
  const double arg = 288.0 * m * log_d / beta;
  AccuracyBound out = solve_fixed_point(
      [prefactor, arg](double a) {
        const double t = std::log(arg / (a * a));
        return t > 0 ? prefactor * std::sqrt(t) : 0.0;
      },
      std::sqrt(arg));
  out.vacuous = out.alpha >= 1.0;
  return out;
}

AccuracyBound accuracy_bound(SensitivityKind kind, double delta_sens,
                             double rho, int d, int m, double epsilon,
                             double delta, double beta) {
  switch (kind) {
    case SensitivityKind::kLowSensScalar:
      return scalar_accuracy_bound(delta_sens, rho, d, m, epsilon, delta, beta);
    case SensitivityKind::kLowSensRow:
      return row_accuracy_bound(delta_sens, d, m, epsilon, delta, beta);
    case SensitivityKind::kLowSensColumn:
      return column_accuracy_bound(delta_sens, d, m, epsilon, delta, beta);
    default:
      throw std::invalid_argument(
          "accuracy_bound: no closed-form bound for sensitivity kind " +
          to_string(kind));
  }
}

}  // namespace dplp
