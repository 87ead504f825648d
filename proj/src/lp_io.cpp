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

#include "dplp/lp_io.hpp"

#include <fstream>

namespace dplp {
namespace {

Sense sense_from_string(const std::string& s) {
  if (s == "LE") return Sense::kLe;
  if (s == "GE") return Sense::kGe;
  if (s == "EQ") return Sense::kEq;
  throw std::invalid_argument("unknown sense: " + s + " (expected LE/GE/EQ)");
}

std::string sense_to_string(Sense s) {
  switch (s) {
    case Sense::kLe: return "LE";
    case Sense::kGe: return "GE";
    case Sense::kEq: return "EQ";
  }
  throw std::invalid_argument("unknown Sense");
}

PublicRegion region_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "NonnegativeOrthant") return PublicRegion::nonnegative_orthant();
    if (name == "Simplex") return PublicRegion::simplex();
    throw std::invalid_argument("unknown region: " + name);
  }
  check_arg(j.is_object(), "region must be a string or an object");
  check_arg(j.value("kind", "") == "ObjectiveSlice",
            "region object must have kind ObjectiveSlice");
  check_arg(j.contains("c") && j.contains("opt"),
            "ObjectiveSlice region needs fields c and opt");
  return PublicRegion::objective_slice(vector_from_json(j.at("c")),
                                       j.at("opt").get<double>());
}

nlohmann::ordered_json region_to_json(const PublicRegion& r) {
  switch (r.kind) {
    case RegionKind::kNonnegativeOrthant:
      return "NonnegativeOrthant";
    case RegionKind::kSimplex:
      return "Simplex";
    case RegionKind::kObjectiveSlice: {
      nlohmann::ordered_json j;
      j["kind"] = "ObjectiveSlice";
      j["c"] = vector_to_json(r.slice_objective);
      j["opt"] = r.slice_value;
      return j;
    }
  }
  throw std::invalid_argument("unknown RegionKind");
}

}  // namespace

Vector vector_from_json(const nlohmann::json& j) {
  check_arg(j.is_array(), "expected a JSON array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    check_arg(j[i].is_number(), "expected a JSON array of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

nlohmann::ordered_json vector_to_json(const Vector& v) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

LpInstance instance_from_json(const nlohmann::json& j) {
  check_arg(j.is_object(), "instance must be a JSON object");
  for (const char* field : {"m", "d", "A", "b", "senses", "sensitivity"}) {
    check_arg(j.contains(field),
              std::string("instance missing required field: ") + field);
  }
  const int m = j.at("m").get<int>();
  const int d = j.at("d").get<int>();
  check_arg(m >= 1 && d >= 1, "instance needs m >= 1 and d >= 1");

  LpInstance out;
  const auto& rows = j.at("A");
  check_arg(rows.is_array() && static_cast<int>(rows.size()) == m,
            "A must be an array of m rows");
  out.A.resize(m, d);
  for (int i = 0; i < m; ++i) {
    const Vector row = vector_from_json(rows[i]);
    check_arg(row.size() == d, "A row " + std::to_string(i) +
                                   " must have d entries");
    out.A.row(i) = row.transpose();
  }
  out.b = vector_from_json(j.at("b"));
  check_arg(out.b.size() == m, "b must have m entries");

  const auto& senses = j.at("senses");
  check_arg(senses.is_array() && static_cast<int>(senses.size()) == m,
            "senses must have m entries");
  for (const auto& s : senses) {
    out.senses.push_back(sense_from_string(s.get<std::string>()));
  }

  const auto& sens = j.at("sensitivity");
  check_arg(sens.is_object() && sens.contains("kind"),
            "sensitivity must be an object with a kind");
  out.sensitivity.kind =
      sensitivity_kind_from_string(sens.at("kind").get<std::string>());
  out.sensitivity.delta_inf = sens.value("delta_inf", 0.0);
  out.sensitivity.delta_1 = sens.value("delta_1", 0.0);
  if (out.sensitivity.uses_delta_inf()) {
    check_arg(sens.contains("delta_inf"),
              to_string(out.sensitivity.kind) + " requires delta_inf");
  }
  if (out.sensitivity.uses_delta_1()) {
    check_arg(sens.contains("delta_1"),
              to_string(out.sensitivity.kind) + " requires delta_1");
  }

  if (j.contains("c")) {
    Vector c = vector_from_json(j.at("c"));
    check_arg(c.size() == d, "c must have d entries");
    out.c = std::move(c);
  }
  if (j.contains("objective_sense")) {
    const std::string s = j.at("objective_sense").get<std::string>();
    if (s == "min") {
      out.objective_sense = ObjectiveSense::kMinimize;
    } else if (s == "max") {
      out.objective_sense = ObjectiveSense::kMaximize;
    } else {
      throw std::invalid_argument("objective_sense must be min or max");
    }
  }
  if (j.contains("region")) out.region = region_from_json(j.at("region"));
  out.validate();
  return out;
}

nlohmann::ordered_json instance_to_json(const LpInstance& instance) {
  instance.validate();
  nlohmann::ordered_json j;
  j["m"] = instance.rows();
  j["d"] = instance.cols();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < instance.rows(); ++i) {
    rows.push_back(vector_to_json(instance.A.row(i).transpose()));
  }
  j["A"] = rows;
  j["b"] = vector_to_json(instance.b);
  nlohmann::ordered_json senses = nlohmann::ordered_json::array();
  for (Sense s : instance.senses) senses.push_back(sense_to_string(s));
  j["senses"] = senses;
  nlohmann::ordered_json sens;
  sens["kind"] = to_string(instance.sensitivity.kind);
  if (instance.sensitivity.uses_delta_inf()) {
    sens["delta_inf"] = instance.sensitivity.delta_inf;
  }
  if (instance.sensitivity.uses_delta_1()) {
    sens["delta_1"] = instance.sensitivity.delta_1;
  }
  j["sensitivity"] = sens;
  if (instance.c.has_value()) {
    j["c"] = vector_to_json(*instance.c);
    j["objective_sense"] =
        instance.objective_sense == ObjectiveSense::kMaximize ? "max" : "min";
  }
  if (instance.region.has_value()) {
    j["region"] = region_to_json(*instance.region);
  }
  return j;
}

LpInstance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

void save_instance(const LpInstance& instance, const std::string& path) {
  write_json_file(instance_to_json(instance), path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  check_state(in.good(), "cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void write_json_file(const nlohmann::ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  check_state(out.good(), "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace dplp
