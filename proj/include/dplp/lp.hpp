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

#ifndef DPLP_LP_HPP_
#define DPLP_LP_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dplp/common.hpp"
#include "dplp/mechanisms.hpp"
#include "dplp/rng.hpp"

namespace dplp {

enum class Sense { kLe, kGe, kEq };
enum class ObjectiveSense { kMinimize, kMaximize };

enum class RegionKind { kNonnegativeOrthant, kSimplex, kObjectiveSlice };

// Publicly known feasible region; solvers iterate inside it and never spend
// privacy budget on it.
struct PublicRegion {
  RegionKind kind = RegionKind::kNonnegativeOrthant;
  // ObjectiveSlice only: {x >= 0 : slice_objective . x == slice_value}.
  Vector slice_objective;
  double slice_value = 0;

  static PublicRegion nonnegative_orthant();
  static PublicRegion simplex();
  static PublicRegion objective_slice(Vector objective, double value);

  bool contains(const Vector& x, double tol = 1e-9) const;
  void validate() const;
};

// Which part of the LP is private data and how much one neighboring change can
// move it.  Low-sensitivity kinds carry the per-entry bound (delta_inf) or the
// per-column l1 bound (delta_1); high-sensitivity kinds carry no magnitude.
enum class SensitivityKind {
  kHighSensConstraint,
  kHighSensScalar,
  kHighSensColumn,
  kHighSensObjective,
  kLowSensScalar,
  kLowSensRow,
  kLowSensColumn,
  kLowSensObjective,
};

std::string to_string(SensitivityKind kind);
SensitivityKind sensitivity_kind_from_string(const std::string& name);

struct SensitivityModel {
  SensitivityKind kind = SensitivityKind::kLowSensScalar;
  double delta_inf = 0;
  double delta_1 = 0;

  void validate() const;
  bool uses_delta_inf() const;
  bool uses_delta_1() const;
};

// General-form instance as ingested: rows A_i . x {<=,>=,==} b_i over
// x >= var_lower, optionally with a linear objective.
struct LpInstance {
  Matrix A;
  Vector b;
  std::optional<Vector> c;
  ObjectiveSense objective_sense = ObjectiveSense::kMinimize;
  std::vector<Sense> senses;
  Vector var_lower;  // empty means all zeros
  SensitivityModel sensitivity;
  std::optional<PublicRegion> region;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
  Vector lower_bounds() const;
  void validate() const;
};

// Canonical feasibility form: every row A_i . x <= b_i, x in region.
struct FeasibilityLp {
  Matrix A;
  Vector b;
  PublicRegion region;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
  void validate() const;
};

struct CanonicalLp {
  FeasibilityLp lp;
  // row_origin[j] = index of the source row that produced canonical row j.
  std::vector<int> row_origin;
};

// Rewrites senses into <= rows: >= rows are negated, == rows split into a
// <= / >= pair (in that order).  Requires var_lower == 0.
CanonicalLp canonicalize(const LpInstance& instance);

// Substitutes x = L * y: returns (A, b / L) with region Simplex, so y ranges
// over the probability simplex and solutions scale back as x = L * y.  A
// violation of alpha in the rescaled instance is L * alpha in the original.
FeasibilityLp rescale_to_simplex(const FeasibilityLp& lp, double scale_l);

// Width max over the given points of ||A x - b||_inf; an upper bound on how
// far any oracle answer drawn from `points` can violate or satisfy a row.
double width(const FeasibilityLp& lp, const std::vector<Vector>& points);

// Appends the objective-value constraint for the given guess (c . x <= guess
// when minimizing, c . x >= guess when maximizing) to the canonical rows.
FeasibilityLp objective_to_feasibility(const LpInstance& instance,
                                       double opt_guess);

// Most violated row: (lowest index attaining max slack, its slack value).
std::pair<int, double> max_violation(const FeasibilityLp& lp, const Vector& x);

struct Solution {
  Vector x;
  Vector slack;  // A x - b per canonical row
  std::optional<double> objective_value;

  double max_slack() const;
  std::vector<int> violated_beyond(double alpha) const;
};

// Evaluates x against the canonical rows; validates region membership.
Solution make_solution(const FeasibilityLp& lp, const Vector& x,
                       double region_tol = 1e-9);

// Feasibility callback for binary_search_opt: returns a solution when the
// guessed objective level is (approximately) attainable, nullopt otherwise.
using FeasibilityCallback = std::function<std::optional<Solution>(
    const FeasibilityLp&, double epsilon, double delta, Rng&)>;

struct OptSearchResult {
  double opt_estimate = 0;
  Solution solution;
  int calls = 0;
};

// Bisects the objective level over [lo, hi] to resolution tol, spending the
// budget evenly across the ceil(log2((hi-lo)/tol)) feasibility calls.  Returns
// the best guess whose feasibility call succeeded (largest when maximizing,
// smallest when minimizing).  Throws if no probed guess was feasible.
OptSearchResult binary_search_opt(const LpInstance& instance,
                                  const FeasibilityCallback& solver, double lo,
                                  double hi, double tol, PrivacyBudget& budget,
                                  Rng& rng);

}  // namespace dplp

#endif  // DPLP_LP_HPP_
