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

#ifndef DPLP_LP_IO_HPP_
#define DPLP_LP_IO_HPP_

#include <string>

#include "dplp/lp.hpp"
#include "json.hpp"

namespace dplp {

// Instance files are JSON objects with fields
//   m, d      : row / column counts
//   A         : m arrays of d coefficients
//   b         : m values
//   senses    : m strings "LE" | "GE" | "EQ"
//   sensitivity : {"kind": <SensitivityKind>, "delta_inf"?, "delta_1"?}
//   c         : optional d objective coefficients
//   objective_sense : optional "min" (default) | "max"
//   region    : optional "NonnegativeOrthant" | "Simplex" |
//               {"kind": "ObjectiveSlice", "c": [...], "opt": v}

Vector vector_from_json(const nlohmann::json& j);
nlohmann::ordered_json vector_to_json(const Vector& v);

LpInstance instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json instance_to_json(const LpInstance& instance);

LpInstance load_instance(const std::string& path);
void save_instance(const LpInstance& instance, const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::ordered_json& j, const std::string& path);

}  // namespace dplp

#endif  // DPLP_LP_IO_HPP_
