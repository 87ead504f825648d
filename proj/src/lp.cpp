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

#include "dplp/lp.hpp"

#include <algorithm>
#include <cmath>

namespace dplp {

PublicRegion PublicRegion::nonnegative_orthant() {
  PublicRegion r;
  r.kind = RegionKind::kNonnegativeOrthant;
  return r;
}

PublicRegion PublicRegion::simplex() {
  PublicRegion r;
  r.kind = RegionKind::kSimplex;
  return r;
}

PublicRegion PublicRegion::objective_slice(Vector objective, double value) {
  PublicRegion r;
  r.kind = RegionKind::kObjectiveSlice;
  r.slice_objective = std::move(objective);
  r.slice_value = value;
  return r;
}

bool PublicRegion::contains(const Vector& x, double tol) const {
  if ((x.array() < -tol).any()) return false;
  switch (kind) {
    case RegionKind::kNonnegativeOrthant:
      return true;
    case RegionKind::kSimplex:
      return std::abs(x.sum() - 1.0) <= tol;
    case RegionKind::kObjectiveSlice: {
      if (slice_objective.size() != x.size()) return false;
      const double v = slice_objective.dot(x);
      return std::abs(v - slice_value) <= tol * std::max(1.0, std::abs(slice_value));
    }
  }
  return false;
}

void PublicRegion::validate() const {
  if (kind == RegionKind::kObjectiveSlice) {
    check_arg(slice_objective.size() > 0,
              "PublicRegion: objective slice needs an objective vector");
    check_arg(slice_objective.allFinite(),
              "PublicRegion: non-finite slice objective");
    check_arg(std::isfinite(slice_value), "PublicRegion: non-finite slice value");
  }
}

std::string to_string(SensitivityKind kind) {
  switch (kind) {
    case SensitivityKind::kHighSensConstraint: return "HighSensConstraint";
    case SensitivityKind::kHighSensScalar: return "HighSensScalar";
    case SensitivityKind::kHighSensColumn: return "HighSensColumn";
    case SensitivityKind::kHighSensObjective: return "HighSensObjective";
    case SensitivityKind::kLowSensScalar: return "LowSensScalar";
    case SensitivityKind::kLowSensRow: return "LowSensRow";
    case SensitivityKind::kLowSensColumn: return "LowSensColumn";
    case SensitivityKind::kLowSensObjective: return "LowSensObjective";
  }
  throw std::invalid_argument("unknown SensitivityKind");
}

SensitivityKind sensitivity_kind_from_string(const std::string& name) {
  if (name == "HighSensConstraint") return SensitivityKind::kHighSensConstraint;
  if (name == "HighSensScalar") return SensitivityKind::kHighSensScalar;
  if (name == "HighSensColumn") return SensitivityKind::kHighSensColumn;
  if (name == "HighSensObjective") return SensitivityKind::kHighSensObjective;
  if (name == "LowSensScalar") return SensitivityKind::kLowSensScalar;
  if (name == "LowSensRow") return SensitivityKind::kLowSensRow;
  if (name == "LowSensColumn") return SensitivityKind::kLowSensColumn;
  if (name == "LowSensObjective") return SensitivityKind::kLowSensObjective;
  throw std::invalid_argument("unknown sensitivity kind: " + name);
}

bool SensitivityModel::uses_delta_inf() const {
  return kind == SensitivityKind::kLowSensScalar ||
         kind == SensitivityKind::kLowSensRow;
}

bool SensitivityModel::uses_delta_1() const {
  return kind == SensitivityKind::kLowSensColumn ||
         kind == SensitivityKind::kLowSensObjective;
}

void SensitivityModel::validate() const {
  if (uses_delta_inf()) {
    check_arg(delta_inf >= 0 && std::isfinite(delta_inf),
              "SensitivityModel: delta_inf must be finite and >= 0");
  }
  if (uses_delta_1()) {
    check_arg(delta_1 >= 0 && std::isfinite(delta_1),
              "SensitivityModel: delta_1 must be finite and >= 0");
  }
}

Vector LpInstance::lower_bounds() const {
  if (var_lower.size() == 0) return Vector::Zero(cols());
  return var_lower;
}

void LpInstance::validate() const {
  check_arg(A.rows() > 0 && A.cols() > 0, "LpInstance: empty constraint matrix");
  check_arg(A.allFinite(), "LpInstance: non-finite A");
  check_arg(b.size() == A.rows(), "LpInstance: b length mismatch");
  check_arg(b.allFinite(), "LpInstance: non-finite b");
  check_arg(static_cast<Eigen::Index>(senses.size()) == A.rows(),
            "LpInstance: senses length mismatch");
  if (c.has_value()) {
    check_arg(c->size() == A.cols(), "LpInstance: c length mismatch");
    check_arg(c->allFinite(), "LpInstance: non-finite c");
  }
  if (var_lower.size() != 0) {
    check_arg(var_lower.size() == A.cols(),
              "LpInstance: var_lower length mismatch");
    check_arg(var_lower.allFinite(), "LpInstance: non-finite var_lower");
  }
  sensitivity.validate();
  if (region.has_value()) region->validate();
}

void FeasibilityLp::validate() const {
  check_arg(A.rows() > 0 && A.cols() > 0,
            "FeasibilityLp: empty constraint matrix");
  check_arg(A.allFinite(), "FeasibilityLp: non-finite A");
  check_arg(b.size() == A.rows(), "FeasibilityLp: b length mismatch");
  check_arg(b.allFinite(), "FeasibilityLp: non-finite b");
  region.validate();
}

CanonicalLp canonicalize(const LpInstance& instance) {
  instance.validate();
  check_arg(instance.lower_bounds().isZero(0),
            "canonicalize: nonzero variable lower bounds are not supported");
  int out_rows = 0;
  for (Sense s : instance.senses) out_rows += (s == Sense::kEq) ? 2 : 1;

  CanonicalLp result;
  result.lp.A.resize(out_rows, instance.cols());
  result.lp.b.resize(out_rows);
  result.row_origin.reserve(out_rows);
  int j = 0;
  for (int i = 0; i < instance.rows(); ++i) {
    switch (instance.senses[i]) {
      case Sense::kLe:
        result.lp.A.row(j) = instance.A.row(i);
        result.lp.b[j] = instance.b[i];
        result.row_origin.push_back(i);
        ++j;
        break;
      case Sense::kGe:
        result.lp.A.row(j) = -instance.A.row(i);
        result.lp.b[j] = -instance.b[i];
        result.row_origin.push_back(i);
        ++j;
        break;
      case Sense::kEq:
        result.lp.A.row(j) = instance.A.row(i);
        result.lp.b[j] = instance.b[i];
        result.row_origin.push_back(i);
        ++j;
        result.lp.A.row(j) = -instance.A.row(i);
        result.lp.b[j] = -instance.b[i];
        result.row_origin.push_back(i);
        ++j;
        break;
    }
  }
  result.lp.region =
      instance.region.value_or(PublicRegion::nonnegative_orthant());
  return result;
}

FeasibilityLp rescale_to_simplex(const FeasibilityLp& lp, double scale_l) {
  lp.validate();
  check_arg(scale_l > 0 && std::isfinite(scale_l),
            "rescale_to_simplex: scale must be finite and > 0");
  FeasibilityLp out;
  out.A = lp.A;
  out.b = lp.b / scale_l;
  out.region = PublicRegion::simplex();
  return out;
}

double width(const FeasibilityLp& lp, const std::vector<Vector>& points) {
  lp.validate();
  check_arg(!points.empty(), "width: no points given");
  double w = 0;
  for (const Vector& x : points) {
    check_arg(x.size() == lp.A.cols(), "width: point dimension mismatch");
    w = std::max(w, (lp.A * x - lp.b).cwiseAbs().maxCoeff());
  }
  return w;
}

FeasibilityLp objective_to_feasibility(const LpInstance& instance,
                                       double opt_guess) {
  check_arg(instance.c.has_value(), "objective_to_feasibility: no objective");
  CanonicalLp canonical = canonicalize(instance);
  FeasibilityLp out;
  const int m = canonical.lp.rows();
  out.A.resize(m + 1, canonical.lp.cols());
  out.b.resize(m + 1);
  out.A.topRows(m) = canonical.lp.A;
  out.b.head(m) = canonical.lp.b;
  if (instance.objective_sense == ObjectiveSense::kMinimize) {
    out.A.row(m) = instance.c->transpose();
    out.b[m] = opt_guess;
  } else {
    out.A.row(m) = -instance.c->transpose();
    out.b[m] = -opt_guess;
  }
  out.region = canonical.lp.region;
  return out;
}

std::pair<int, double> max_violation(const FeasibilityLp& lp, const Vector& x) {
  lp.validate();
  check_arg(x.size() == lp.A.cols(), "max_violation: dimension mismatch");
  int best = 0;
  double best_slack = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < lp.rows(); ++i) {
    const double s = lp.A.row(i).dot(x) - lp.b[i];
    if (s > best_slack) {
      best = i;
      best_slack = s;
    }
  }
  return {best, best_slack};
}

double Solution::max_slack() const {
  check_arg(slack.size() > 0, "Solution: empty slack");
  return slack.maxCoeff();
}

std::vector<int> Solution::violated_beyond(double alpha) const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < slack.size(); ++i) {
    if (slack[i] > alpha) out.push_back(static_cast<int>(i));
  }
  return out;
}

Solution make_solution(const FeasibilityLp& lp, const Vector& x,
                       double region_tol) {
  lp.validate();
  check_arg(x.size() == lp.A.cols(), "make_solution: dimension mismatch");
  check_arg(x.allFinite(), "make_solution: non-finite point");
  check_arg(lp.region.contains(x, region_tol),
            "make_solution: point outside the public region");
  Solution s;
  s.x = x;
  s.slack = lp.A * x - lp.b;
  return s;
}

OptSearchResult binary_search_opt(const LpInstance& instance,
                                  const FeasibilityCallback& solver, double lo,
                                  double hi, double tol, PrivacyBudget& budget,
                                  Rng& rng) {
  instance.validate();
  check_arg(instance.c.has_value(), "binary_search_opt: no objective");
  check_arg(lo <= hi, "binary_search_opt: need lo <= hi");
  check_arg(tol > 0, "binary_search_opt: tol must be > 0");

  const int calls =
      hi - lo <= tol
          ? 1
          : static_cast<int>(std::ceil(std::log2((hi - lo) / tol)));
  const double eps_share = budget.plan_even_split(calls);
  const double delta_share = budget.delta() / calls;
  const bool maximize = instance.objective_sense == ObjectiveSense::kMaximize;

  std::optional<double> best_guess;
  std::optional<Solution> best_solution;
  double a = lo;
  double c = hi;
  for (int i = 0; i < calls; ++i) {
    const double guess = 0.5 * (a + c);
    const FeasibilityLp probe = objective_to_feasibility(instance, guess);
    Rng call_rng = rng.stream(1000 + i);
    budget.charge("opt-search[" + std::to_string(i) + "]", eps_share);
    std::optional<Solution> sol = solver(probe, eps_share, delta_share, call_rng);
    if (sol.has_value()) {
      best_guess = guess;
      best_solution = std::move(sol);
      if (maximize) {
        a = guess;  // try a larger objective value
      } else {
        c = guess;
      }
    } else {
      if (maximize) {
        c = guess;
      } else {
        a = guess;
      }
    }
  }
  check_state(best_guess.has_value(),
              "binary_search_opt: no probed guess was feasible");
  OptSearchResult out;
  out.opt_estimate = *best_guess;
  out.solution = std::move(*best_solution);
  out.calls = calls;
  return out;
}

}  // namespace dplp
