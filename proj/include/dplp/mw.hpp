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

#ifndef DPLP_MW_HPP_
#define DPLP_MW_HPP_

#include <iosfwd>
#include <vector>

#include "dplp/common.hpp"

namespace dplp {

// Un-normalized measure over a finite action set, stored as log weights so
// long runs of multiplicative updates neither overflow nor underflow.
struct Measure {
  Vector log_weights;

  // Uniform measure of density 1: every action has weight 1/k.
  static Measure uniform(int k);

  int size() const { return static_cast<int>(log_weights.size()); }
  Vector weights() const;
  double density() const;
  int support_size() const;
};

// Distribution whose entries are capped at 1 / density_param.
struct DenseDistribution {
  Vector probs;
  int density_param = 1;
};

// One multiplicative-weights step on a normalized distribution:
// p'_a proportional to p_a * exp(-eta * loss_a).
Vector mw_step(const Vector& dist, const Vector& loss, double eta);

// Projection onto 1/s-dense distributions: picks c >= 0 with
// sum_a min(1, c * w_a) = s and returns probs_a = min(1, c * w_a) / s.
// Solved by monotone bisection on c to |sum - s| <= 1e-10.
DenseDistribution bregman_project(const Measure& measure, int s);

struct DmwStepResult {
  Measure measure;              // updated, still un-normalized
  DenseDistribution projection;  // projection of the measure BEFORE the update
};

// One dense-MW step: project the current measure, then scale every weight by
// exp(-eta * loss_a).  No normalization of the measure.
DmwStepResult dmw_step(const Measure& measure, const Vector& loss, double eta,
                       int s);

struct RegretReport {
  double algo_loss = 0;        // realized loss of the algorithm
  double comparator_loss = 0;  // best fixed comparator in hindsight
  double regret_term = 0;      // additive regret allowance
  double slack = 0;            // comparator_loss + regret_term - algo_loss
  bool holds = false;
};

// Checks sum_t <loss_t, dist_t> <= min_a sum_t loss_t[a] + eta * T + ln(k)/eta.
// dist_t must be the distribution the loss was charged against (before the
// update at step t).  Audited losses must satisfy ||loss||_inf <= 1.
RegretReport regret_audit_mw(const std::vector<Vector>& losses,
                             const std::vector<Vector>& dists, double eta);

// Checks the dense-MW average-loss bound against every 1/s-dense uniform
// comparator (all size-s subsets):
// avg_t <loss_t, proj_t> <= avg_t <loss_t, B*> + eta + ln(k) / (eta * T).
RegretReport regret_audit_dmw(const std::vector<Vector>& losses,
                              const std::vector<DenseDistribution>& projections,
                              double eta, int s);

// Streams engine runs as JSON lines: one header record then one record per
// step, replayable by verify::regret_replay.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& os) : os_(os) {}

  void mw_header(int k, double eta);
  void dmw_header(int k, double eta, int s);
  void mw_record(int t, const Vector& loss, const Vector& dist);
  void dmw_record(int t, const Vector& loss, const DenseDistribution& proj);

 private:
  std::ostream& os_;
};

}  // namespace dplp

#endif  // DPLP_MW_HPP_
