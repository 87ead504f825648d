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

#ifndef DPLP_COMMON_HPP_
#define DPLP_COMMON_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dplp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline void check_arg(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void check_state(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

// log(sum_i exp(v_i)) with the usual max shift.
inline double log_sum_exp(const Vector& v) {
  if (v.size() == 0) return -std::numeric_limits<double>::infinity();
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

}  // namespace dplp

#endif  // DPLP_COMMON_HPP_
