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

#ifndef DPLP_VERIFY_HPP_
#define DPLP_VERIFY_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dplp/constraint_solver.hpp"
#include "dplp/lp.hpp"
#include "dplp/mw.hpp"
#include "json.hpp"

namespace dplp {
namespace verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // numbers backing the verdict
  // Wall time spent inside the check. Not serialized, so JSON reports stay
  // byte-identical across reruns.
  double elapsed_seconds = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;
};

// One decimal seed per line; blank lines and '#' comments ignored.
std::vector<uint64_t> load_seed_file(const std::string& path);

// Statistical helpers.
double ks_statistic_laplace(std::vector<double> samples, double scale);
double tv_distance(const Vector& p, const Vector& q);

// Shared instance generators.
//
// Feasible-by-construction simplex instance: entries of A uniform in [-1, 1],
// b = A x0 + margin for a random interior simplex point x0 and per-row margin
// uniform in [margin_lo, margin_hi].
FeasibilityLp random_margin_feasible(int d, int m, double margin_lo,
                                     double margin_hi, Rng& rng);

// Random point of the probability simplex (normalized exponentials).
Vector random_simplex_point(int d, Rng& rng);

// Bi-regular fractional set cover with a certified optimum: d unit-cost sets,
// m = d * blocks elements, every element covered by exactly cover_k sets and
// every set covering exactly cover_k * blocks elements (cyclic design under a
// random relabeling).  The uniform primal x = (1/cover_k) 1 and uniform dual
// y = 1 / (cover_k * blocks) are both tight, so opt = d / cover_k exactly.
SetCoverInstance random_biregular_cover(int d, int cover_k, int blocks,
                                        Rng& rng);

// Verification suites.  Each returns one CheckResult per property; a suite
// passes when every check does.
SuiteReport run_mechanism_suite(const std::vector<uint64_t>& seeds);
SuiteReport run_projection_suite(const std::vector<uint64_t>& seeds);
SuiteReport run_regret_suite(const std::vector<uint64_t>& seeds);
SuiteReport run_solver_suite(const std::vector<uint64_t>& seeds);
SuiteReport run_attack_suite(const std::vector<uint64_t>& seeds);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name,
                      const std::vector<uint64_t>& seeds);

// Replays a JSONL engine trace: re-derives the distribution sequence from the
// recorded losses, flags any mismatch with the recorded distributions, and
// audits the regret inequality on the re-derived sequence.
struct ReplayReport {
  bool parsed = false;
  bool consistent = false;      // recorded states match the re-derivation
  bool losses_in_range = false;  // every ||loss||_inf <= 1
  RegretReport regret;
  int steps = 0;
  std::string detail;
};

ReplayReport regret_replay(std::istream& trace);

}  // namespace verify
}  // namespace dplp

#endif  // DPLP_VERIFY_HPP_
