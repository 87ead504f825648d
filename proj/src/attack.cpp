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

#include "dplp/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dplp/objective_solver.hpp"
#include "dplp/primal_solvers.hpp"

namespace dplp {
namespace {

Vector bits_to_vector(const BitDatabase& db) {
  Vector v(db.n());
  for (int i = 0; i < db.n(); ++i) v[i] = db.bits[i];
  return v;
}

void require_balanced(const BitDatabase& db, const char* who) {
  check_arg(db.n() >= 2 && db.n() % 2 == 0,
            std::string(who) + ": need an even number of bits");
  check_arg(db.balanced(),
            std::string(who) + ": database must have exactly n/2 ones");
}

double quantile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return 0;
  const size_t idx = std::min(
      sorted.size() - 1, static_cast<size_t>(p * static_cast<double>(sorted.size())));
  return sorted[idx];
}

}  // namespace

int BitDatabase::ones() const {
  return std::accumulate(bits.begin(), bits.end(), 0);
}

bool BitDatabase::balanced() const {
  return n() % 2 == 0 && ones() == n() / 2;
}

void BitDatabase::validate() const {
  check_arg(n() >= 1, "BitDatabase: empty");
  for (int b : bits) check_arg(b == 0 || b == 1, "BitDatabase: bits must be 0/1");
}

BitDatabase BitDatabase::random(int n, Rng& rng) {
  check_arg(n >= 1, "BitDatabase::random: n must be >= 1");
  BitDatabase db;
  db.bits.resize(n);
  for (int i = 0; i < n; ++i) db.bits[i] = rng.uniform() < 0.5 ? 0 : 1;
  return db;
}

BitDatabase BitDatabase::random_balanced(int n, Rng& rng) {
  check_arg(n >= 2 && n % 2 == 0,
            "BitDatabase::random_balanced: n must be even and >= 2");
  BitDatabase db;
  db.bits.assign(n, 0);
  std::fill(db.bits.begin(), db.bits.begin() + n / 2, 1);
  // Fisher-Yates shuffle of the fixed-weight word.
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform_int(i + 1));
    std::swap(db.bits[i], db.bits[j]);
  }
  return db;
}

GadgetInstance gadget_scalar(const BitDatabase& db) {
  db.validate();
  const int n = db.n();
  GadgetInstance g;
  g.kind = GadgetKind::kScalar;
  g.database = db;
  g.lp.A = Matrix::Identity(n, n);
  g.lp.b = bits_to_vector(db);
  g.lp.senses.assign(n, Sense::kEq);
  g.lp.sensitivity.kind = SensitivityKind::kHighSensScalar;
  g.lp.region = PublicRegion::nonnegative_orthant();
  g.private_rows.resize(n);
  for (int i = 0; i < n; ++i) g.private_rows[i] = i;
  return g;
}

GadgetInstance gadget_objective(const BitDatabase& db) {
  require_balanced(db, "gadget_objective");
  const int n = db.n();
  GadgetInstance g;
  g.kind = GadgetKind::kObjective;
  g.database = db;
  g.lp.A.resize(n + 1, n);
  g.lp.A.row(0) = Vector::Ones(n).transpose();
  g.lp.A.bottomRows(n) = Matrix::Identity(n, n);
  g.lp.b.resize(n + 1);
  g.lp.b[0] = n / 2.0;
  g.lp.b.tail(n) = Vector::Ones(n);
  g.lp.senses.assign(n + 1, Sense::kLe);
  g.lp.senses[0] = Sense::kEq;
  g.lp.c = bits_to_vector(db);
  g.lp.objective_sense = ObjectiveSense::kMaximize;
  g.lp.sensitivity.kind = SensitivityKind::kHighSensObjective;
  g.lp.region = PublicRegion::nonnegative_orthant();
  g.private_objective = true;
  return g;
}

GadgetInstance gadget_constraint(const BitDatabase& db) {
  require_balanced(db, "gadget_constraint");
  const int n = db.n();
  GadgetInstance g;
  g.kind = GadgetKind::kConstraint;
  g.database = db;
  g.lp.A.resize(n + 2, n);
  g.lp.A.row(0) = bits_to_vector(db).transpose();
  g.lp.A.row(1) = Vector::Ones(n).transpose();
  g.lp.A.bottomRows(n) = Matrix::Identity(n, n);
  g.lp.b.resize(n + 2);
  g.lp.b[0] = n / 2.0;
  g.lp.b[1] = n / 2.0;
  g.lp.b.tail(n) = Vector::Ones(n);
  g.lp.senses.assign(n + 2, Sense::kLe);
  g.lp.senses[0] = Sense::kEq;
  g.lp.senses[1] = Sense::kEq;
  g.lp.sensitivity.kind = SensitivityKind::kHighSensConstraint;
  g.lp.region = PublicRegion::nonnegative_orthant();
  g.private_rows = {0};
  return g;
}

Vector exact_gadget_solution(const GadgetInstance& gadget) {
  switch (gadget.kind) {
    case GadgetKind::kScalar:
      // Each equality row pins x_i = b_i.
      return gadget.lp.b;
    case GadgetKind::kObjective:
      return greedy_box_simplex_maximizer(*gadget.lp.c, gadget.lp.b[0]);
    case GadgetKind::kConstraint:
      // The private row sums n/2 coefficients of 1 over caps of 1, forcing
      // x_i = 1 exactly on its support; the public sum row then forces the
      // rest to 0.
      return gadget.lp.A.row(0).transpose();
  }
  throw std::invalid_argument("exact_gadget_solution: unknown gadget");
}

Vector greedy_box_simplex_maximizer(const Vector& c, double mass) {
  const int n = static_cast<int>(c.size());
  check_arg(n >= 1, "greedy maximizer: empty objective");
  check_arg(mass >= 0 && mass <= n, "greedy maximizer: mass out of range");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&c](int a, int b) { return c[a] > c[b]; });
  Vector x = Vector::Zero(n);
  double remaining = mass;
  for (int idx : order) {
    if (remaining <= 0) break;
    const double take = std::min(1.0, remaining);
    x[idx] = take;
    remaining -= take;
  }
  return x;
}

CoefficientDiff count_coefficient_changes(const GadgetInstance& lhs,
                                          const GadgetInstance& rhs) {
  check_arg(lhs.lp.A.rows() == rhs.lp.A.rows() &&
                lhs.lp.A.cols() == rhs.lp.A.cols(),
            "count_coefficient_changes: shape mismatch");
  CoefficientDiff diff;
  for (Eigen::Index i = 0; i < lhs.lp.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.lp.A.cols(); ++j) {
      if (lhs.lp.A(i, j) != rhs.lp.A(i, j)) ++diff.a_entries;
    }
  }
  for (Eigen::Index i = 0; i < lhs.lp.b.size(); ++i) {
    if (lhs.lp.b[i] != rhs.lp.b[i]) ++diff.b_entries;
  }
  if (lhs.lp.c.has_value() && rhs.lp.c.has_value()) {
    for (Eigen::Index j = 0; j < lhs.lp.c->size(); ++j) {
      if ((*lhs.lp.c)[j] != (*rhs.lp.c)[j]) ++diff.c_entries;
    }
  }
  return diff;
}

BitDatabase reconstruct_by_rounding(const Vector& x) {
  BitDatabase db;
  db.bits.resize(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    db.bits[i] = x[i] >= 0.5 ? 1 : 0;
  }
  return db;
}

double reconstruction_bound(double epsilon, double delta, double beta) {
  check_arg(epsilon >= 0, "reconstruction_bound: epsilon must be >= 0");
  check_arg(delta >= 0, "reconstruction_bound: delta must be >= 0");
  check_arg(beta >= 0 && beta < 1, "reconstruction_bound: beta must be in [0,1)");
  const double e = std::exp(epsilon);
  return 0.5 - (e + delta) / (2.0 * (1.0 + e) * (1.0 - beta));
}

AttackExperiment run_attack_experiment(const AttackExperimentConfig& config,
                                       Rng& rng) {
  check_arg(config.n >= 1, "attack experiment: n must be >= 1");
  check_arg(config.trials >= 0, "attack experiment: trials must be >= 0");
  if (config.solver == AttackSolver::kObjectivePrivate) {
    check_arg(config.gadget == GadgetKind::kObjective,
              "attack experiment: objective-private runs on the objective gadget");
  }
  if (config.solver == AttackSolver::kScalarPrivate) {
    check_arg(config.gadget == GadgetKind::kScalar,
              "attack experiment: scalar-private runs on the scalar gadget");
  }

  AttackExperiment exp;
  exp.config = config;
  switch (config.solver) {
    case AttackSolver::kExact:
      exp.bound_epsilon = 0;
      exp.bound_delta = 0;
      exp.bound_c = reconstruction_bound(0, 0, 0);
      break;
    case AttackSolver::kObjectivePrivate:
      // Swap neighbors decompose into two single-coefficient changes.
      exp.bound_epsilon = 2.0 * config.epsilon;
      exp.bound_delta = config.delta * (1.0 + std::exp(config.epsilon));
      exp.bound_c =
          reconstruction_bound(exp.bound_epsilon, exp.bound_delta, config.beta);
      break;
    case AttackSolver::kScalarPrivate:
      exp.bound_epsilon = config.epsilon;
      exp.bound_delta = config.delta;
      exp.bound_c =
          reconstruction_bound(config.epsilon, config.delta, config.beta);
      break;
  }

  for (int trial = 0; trial < config.trials; ++trial) {
    Rng trial_rng = rng.stream(trial);
    const BitDatabase db = config.gadget == GadgetKind::kScalar
                               ? BitDatabase::random(config.n, trial_rng)
                               : BitDatabase::random_balanced(config.n, trial_rng);
    GadgetInstance gadget;
    switch (config.gadget) {
      case GadgetKind::kScalar: gadget = gadget_scalar(db); break;
      case GadgetKind::kObjective: gadget = gadget_objective(db); break;
      case GadgetKind::kConstraint: gadget = gadget_constraint(db); break;
    }

    Vector x_hat;
    switch (config.solver) {
      case AttackSolver::kExact:
        x_hat = exact_gadget_solution(gadget);
        break;
      case AttackSolver::kObjectivePrivate: {
        PrivacyBudget budget(config.epsilon, config.delta);
        const PerturbedObjective perturbed =
            perturb_objective(*gadget.lp.c, 1.0, budget, trial_rng);
        x_hat = greedy_box_simplex_maximizer(perturbed.c_hat, gadget.lp.b[0]);
        break;
      }
      case AttackSolver::kScalarPrivate: {
        // Rescale so the database vector sits on the simplex, run the private
        // solver, then scale back up before rounding.
        const double scale = std::max(1, db.ones());
        const CanonicalLp canonical = canonicalize(gadget.lp);
        const FeasibilityLp scaled = rescale_to_simplex(canonical.lp, scale);
        LowSensParams params;
        params.epsilon = config.epsilon;
        params.delta = config.delta;
        params.alpha = config.alpha;
        params.beta = config.beta;
        params.sensitivity = 1.0 / scale;
        PrivacyBudget budget(config.epsilon, config.delta);
        const PrimalSolveResult run =
            solve_scalar_private(scaled, params, budget, trial_rng);
        x_hat = scale * run.solution.x;
        break;
      }
    }

    const BitDatabase rec = reconstruct_by_rounding(x_hat);
    AttackTrial t;
    for (int i = 0; i < config.n; ++i) {
      if (rec.bits[i] != db.bits[i]) t.hamming_normalized += 1.0;
      t.l1_normalized += std::abs(x_hat[i] - db.bits[i]);
    }
    t.hamming_normalized /= config.n;
    t.l1_normalized /= config.n;
    exp.trials.push_back(t);
  }

  if (!exp.trials.empty()) {
    std::vector<double> hams;
    for (const AttackTrial& t : exp.trials) {
      exp.mean_hamming += t.hamming_normalized;
      exp.mean_l1 += t.l1_normalized;
      hams.push_back(t.hamming_normalized);
    }
    exp.mean_hamming /= exp.trials.size();
    exp.mean_l1 /= exp.trials.size();
    std::sort(hams.begin(), hams.end());
    exp.hamming_q10 = quantile(hams, 0.10);
    exp.hamming_q50 = quantile(hams, 0.50);
    exp.hamming_q90 = quantile(hams, 0.90);
  }
  return exp;
}

}  // namespace dplp
