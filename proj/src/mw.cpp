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

#include "dplp/mw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace dplp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_loss(const Vector& loss, Eigen::Index k) {
  check_arg(loss.size() == k, "loss dimension mismatch");
  check_arg(loss.allFinite(), "loss must be finite");
}

nlohmann::ordered_json json_array(const Vector& v) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

Measure Measure::uniform(int k) {
  check_arg(k >= 1, "Measure: k must be >= 1");
  Measure m;
  m.log_weights = Vector::Constant(k, -std::log(static_cast<double>(k)));
  return m;
}

Vector Measure::weights() const {
  return log_weights.array().exp().matrix();
}

double Measure::density() const {
  check_arg(size() > 0, "Measure: empty");
  const double lse = log_sum_exp(log_weights);
  return std::exp(lse);
}

int Measure::support_size() const {
  int n = 0;
  for (Eigen::Index i = 0; i < log_weights.size(); ++i) {
    if (log_weights[i] > -kInf) ++n;
  }
  return n;
}

Vector mw_step(const Vector& dist, const Vector& loss, double eta) {
  check_arg(dist.size() > 0, "mw_step: empty distribution");
  check_arg(eta > 0 && std::isfinite(eta), "mw_step: eta must be finite and > 0");
  check_loss(loss, dist.size());
  check_arg((dist.array() >= 0).all(), "mw_step: negative probability");
  check_arg(std::abs(dist.sum() - 1.0) <= 1e-9,
            "mw_step: input distribution must sum to 1");
  Vector logs(dist.size());
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    logs[i] = (dist[i] > 0 ? std::log(dist[i]) : -kInf) - eta * loss[i];
  }
  const double lse = log_sum_exp(logs);
  check_state(std::isfinite(lse), "mw_step: distribution collapsed");
  return (logs.array() - lse).exp().matrix();
}

DenseDistribution bregman_project(const Measure& measure, int s) {
  check_arg(measure.size() > 0, "bregman_project: empty measure");
  check_arg(s >= 1, "bregman_project: s must be >= 1");
  const int support = measure.support_size();
  check_arg(support >= s, "bregman_project: support smaller than s");

  const Eigen::Index k = measure.log_weights.size();
  // Work with weights shifted so the largest is 1; the projection is invariant
  // to the overall scale of the measure.
  const double shift = measure.log_weights.maxCoeff();
  check_arg(std::isfinite(shift), "bregman_project: measure has no support");
  Vector w(k);
  double min_pos = kInf;
  for (Eigen::Index i = 0; i < k; ++i) {
    w[i] = std::exp(measure.log_weights[i] - shift);
    if (w[i] > 0) min_pos = std::min(min_pos, w[i]);
  }

  DenseDistribution out;
  out.density_param = s;
  out.probs = Vector::Zero(k);

  const auto capped_sum = [&](double c) {
    double total = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      total += std::min(1.0, c * w[i]);
    }
    return total;
  };

  if (support == s) {
    // Every supported coordinate capped.
    for (Eigen::Index i = 0; i < k; ++i) {
      if (w[i] > 0) out.probs[i] = 1.0 / s;
    }
    return out;
  }

  double lo = 0;
  double hi = s / min_pos;
  // Guard against rounding at the bracket end.
  while (capped_sum(hi) < s && hi < 1e300) hi *= 2;
  double c = hi;
  double sum = capped_sum(c);
  for (int iter = 0; iter < 600 && std::abs(sum - s) > 1e-10; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double h = capped_sum(mid);
    if (h < s) {
      lo = mid;
    } else {
      hi = mid;
    }
    c = mid;
    sum = h;
  }
  check_state(std::abs(sum - s) <= 1e-10,
              "bregman_project: bisection failed to converge");
  for (Eigen::Index i = 0; i < k; ++i) {
    out.probs[i] = std::min(1.0, c * w[i]) / s;
  }
  return out;
}

DmwStepResult dmw_step(const Measure& measure, const Vector& loss, double eta,
                       int s) {
  check_arg(eta > 0 && std::isfinite(eta), "dmw_step: eta must be finite and > 0");
  check_loss(loss, measure.log_weights.size());
  DmwStepResult result;
  result.projection = bregman_project(measure, s);
  result.measure.log_weights = measure.log_weights - eta * loss;
  return result;
}

RegretReport regret_audit_mw(const std::vector<Vector>& losses,
                             const std::vector<Vector>& dists, double eta) {
  check_arg(!losses.empty(), "regret_audit_mw: empty loss sequence");
  check_arg(losses.size() == dists.size(),
            "regret_audit_mw: losses and distributions differ in length");
  check_arg(eta > 0 && std::isfinite(eta), "regret_audit_mw: bad eta");
  const Eigen::Index k = losses.front().size();
  const size_t T = losses.size();

  double algo = 0;
  Vector cumulative = Vector::Zero(k);
  for (size_t t = 0; t < T; ++t) {
    check_loss(losses[t], k);
    check_arg(losses[t].cwiseAbs().maxCoeff() <= 1.0 + 1e-12,
              "regret_audit_mw: audited losses must satisfy ||loss||_inf <= 1");
    check_arg(dists[t].size() == k, "regret_audit_mw: distribution size");
    check_arg(std::abs(dists[t].sum() - 1.0) <= 1e-9,
              "regret_audit_mw: distributions must sum to 1");
    algo += losses[t].dot(dists[t]);
    cumulative += losses[t];
  }

  RegretReport report;
  report.algo_loss = algo;
  report.comparator_loss = cumulative.minCoeff();
  report.regret_term = eta * static_cast<double>(T) + std::log(static_cast<double>(k)) / eta;
  report.slack = report.comparator_loss + report.regret_term - report.algo_loss;
  report.holds = report.slack >= -1e-9;
  return report;
}

RegretReport regret_audit_dmw(const std::vector<Vector>& losses,
                              const std::vector<DenseDistribution>& projections,
                              double eta, int s) {
  check_arg(!losses.empty(), "regret_audit_dmw: empty loss sequence");
  check_arg(losses.size() == projections.size(),
            "regret_audit_dmw: losses and projections differ in length");
  check_arg(eta > 0 && std::isfinite(eta), "regret_audit_dmw: bad eta");
  check_arg(s >= 1, "regret_audit_dmw: s must be >= 1");
  const Eigen::Index k = losses.front().size();
  check_arg(k >= s, "regret_audit_dmw: s exceeds action count");
  const double T = static_cast<double>(losses.size());

  double algo = 0;
  Vector cumulative = Vector::Zero(k);
  for (size_t t = 0; t < losses.size(); ++t) {
    check_loss(losses[t], k);
    check_arg(losses[t].cwiseAbs().maxCoeff() <= 1.0 + 1e-12,
              "regret_audit_dmw: audited losses must satisfy ||loss||_inf <= 1");
    check_arg(projections[t].probs.size() == k,
              "regret_audit_dmw: projection size");
    check_arg(projections[t].density_param == s,
              "regret_audit_dmw: projection density mismatch");
    algo += losses[t].dot(projections[t].probs);
  }
  algo /= T;
  for (const Vector& loss : losses) cumulative += loss;

  // Best uniform comparator over a size-s subset: enumerate subsets when the
  // count is small, otherwise take the s smallest cumulative losses (the
  // minimizing subset is always that one).
  double best = kInf;
  const int n = static_cast<int>(k);
  double subsets = 1;
  for (int i = 0; i < s; ++i) subsets *= static_cast<double>(n - i) / (i + 1);
  if (subsets <= 20000) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      double total = 0;
      for (int i : idx) total += cumulative[i];
      best = std::min(best, total);
      int pos = s - 1;
      while (pos >= 0 && idx[pos] == n - s + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
  } else {
    std::vector<double> sorted(cumulative.data(), cumulative.data() + k);
    std::nth_element(sorted.begin(), sorted.begin() + s, sorted.end());
    best = 0;
    std::sort(sorted.begin(), sorted.begin() + s);
    for (int i = 0; i < s; ++i) best += sorted[i];
  }

  RegretReport report;
  report.algo_loss = algo;
  report.comparator_loss = best / (s * T);
  report.regret_term = eta + std::log(static_cast<double>(k)) / (eta * T);
  report.slack = report.comparator_loss + report.regret_term - report.algo_loss;
  report.holds = report.slack >= -1e-9;
  return report;
}

void TraceWriter::mw_header(int k, double eta) {
  nlohmann::ordered_json j;
  j["engine"] = "mw";
  j["k"] = k;
  j["eta"] = eta;
  os_ << j.dump() << "\n";
}

void TraceWriter::dmw_header(int k, double eta, int s) {
  nlohmann::ordered_json j;
  j["engine"] = "dmw";
  j["k"] = k;
  j["eta"] = eta;
  j["s"] = s;
  os_ << j.dump() << "\n";
}

void TraceWriter::mw_record(int t, const Vector& loss, const Vector& dist) {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["loss"] = json_array(loss);
  j["distribution"] = json_array(dist);
  os_ << j.dump() << "\n";
}

void TraceWriter::dmw_record(int t, const Vector& loss,
                             const DenseDistribution& proj) {
  nlohmann::ordered_json j;
  j["t"] = t;
  j["loss"] = json_array(loss);
  j["projection"] = json_array(proj.probs);
  j["density_param"] = proj.density_param;
  os_ << j.dump() << "\n";
}

}  // namespace dplp
