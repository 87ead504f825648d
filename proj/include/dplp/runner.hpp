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

#ifndef DPLP_RUNNER_HPP_
#define DPLP_RUNNER_HPP_

#include <cstdint>
#include <string>

#include "dplp/lp.hpp"
#include "json.hpp"

namespace dplp {
namespace runner {

// One CLI invocation, normalized.  Reports contain no timing or machine
// state, so a config and seed fully determine the output bytes.
struct RunConfig {
  // solve-scalar | solve-row | solve-column | solve-objective |
  // solve-constraint | attack
  std::string command;
  std::string instance_path;  // solve-* commands
  double epsilon = 1.0;
  double delta = 1e-6;
  double alpha = 0.25;
  double beta = 0.05;
  int density = 1;  // constraint solver: all but fewer than this many rows
                    // end up alpha-satisfied
  uint64_t seed = 0;
  int trials = 1;
  bool per_coordinate_noise = false;  // column solver diagnostic mode
  bool include_charges = false;       // embed the full charge log per trial
  std::string trace_path;             // engine trace (JSONL); requires trials == 1
  // attack command
  std::string gadget = "scalar";        // scalar | objective | constraint
  std::string attack_solver = "exact";  // exact | objective-private | scalar-private
  int n = 50;
};

// Runs the configured command on the loaded instance and returns the report.
// Refuses instances whose sensitivity kind does not match the command.
nlohmann::ordered_json run(const RunConfig& config);

// run() on an already-loaded instance (attack command ignores it).
nlohmann::ordered_json run_on_instance(const RunConfig& config,
                                       const LpInstance& instance);

}  // namespace runner
}  // namespace dplp

#endif  // DPLP_RUNNER_HPP_
