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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "dplp/mw.hpp"
#include "dplp/rng.hpp"
#include "dplp/verify.hpp"

namespace dplp {
namespace {

Measure measure_from_weights(const Vector& w) {
  Measure m;
  m.log_weights = w.array().log().matrix();
  return m;
}

TEST_CASE("mw step") {
  const Vector uniform = Vector::Constant(2, 0.5);

  SUBCASE("zero loss keeps the distribution") {
    const Vector out = mw_step(uniform, Vector::Zero(2), 0.3);
    CHECK(out[0] == doctest::Approx(0.5));
    CHECK(out[1] == doctest::Approx(0.5));
  }

  SUBCASE("loss (1, 0) at eta = ln 2 gives (1/3, 2/3)") {
    Vector loss(2);
    loss << 1.0, 0.0;
    const Vector out = mw_step(uniform, loss, std::log(2.0));
    CHECK(out[0] == doctest::Approx(1.0 / 3.0));
    CHECK(out[1] == doctest::Approx(2.0 / 3.0));
  }

  SUBCASE("permuting actions commutes with the update") {
    Vector dist(3);
    dist << 0.2, 0.3, 0.5;
    Vector loss(3);
    loss << 0.9, -0.4, 0.1;
    const Vector direct = mw_step(dist, loss, 0.2);
    Vector dist_p(3), loss_p(3);
    dist_p << dist[2], dist[0], dist[1];
    loss_p << loss[2], loss[0], loss[1];
    const Vector permuted = mw_step(dist_p, loss_p, 0.2);
    CHECK(permuted[0] == doctest::Approx(direct[2]));
    CHECK(permuted[1] == doctest::Approx(direct[0]));
    CHECK(permuted[2] == doctest::Approx(direct[1]));
  }
}

TEST_CASE("bregman projection onto dense distributions") {
  SUBCASE("uniform measure is already dense") {
    const DenseDistribution out = bregman_project(Measure::uniform(5), 2);
    for (int i = 0; i < 5; ++i) CHECK(out.probs[i] == doctest::Approx(0.2));
    CHECK(out.density_param == 2);
  }

  SUBCASE("weights (4, 1, 1) at s = 2") {
    const DenseDistribution out =
        bregman_project(measure_from_weights((Vector(3) << 4, 1, 1).finished()),
                        2);
    CHECK(out.probs[0] == doctest::Approx(0.5));
    CHECK(out.probs[1] == doctest::Approx(0.25));
    CHECK(out.probs[2] == doctest::Approx(0.25));
  }

  SUBCASE("dominant weight is capped at 1/s") {
    const DenseDistribution out = bregman_project(
        measure_from_weights((Vector(4) << 100, 1, 1, 1).finished()), 2);
    CHECK(out.probs[0] == doctest::Approx(0.5));
    CHECK(out.probs[1] == doctest::Approx(1.0 / 6.0));
    CHECK(out.probs[2] == doctest::Approx(1.0 / 6.0));
    CHECK(out.probs[3] == doctest::Approx(1.0 / 6.0));
  }

  SUBCASE("projection sums to one and respects the cap") {
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
      const int s = 1 + static_cast<int>(rng.uniform_int(4));
      const int k = s + 1 + static_cast<int>(rng.uniform_int(20));
      Measure m;
      m.log_weights = Vector(k);
      for (int i = 0; i < k; ++i) m.log_weights[i] = 40.0 * rng.uniform() - 20.0;
      const DenseDistribution out = bregman_project(m, s);
      CHECK(out.probs.sum() == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(out.probs.minCoeff() >= 0.0);
      CHECK(out.probs.maxCoeff() <= 1.0 / s + 1e-9);
    }
  }

  SUBCASE("projection is invariant to weight rescaling") {
    const Vector w = (Vector(4) << 5, 3, 2, 1).finished();
    const DenseDistribution a = bregman_project(measure_from_weights(w), 2);
    Measure shifted = measure_from_weights(w);
    shifted.log_weights.array() += 123.0;  // multiply every weight by e^123
    const DenseDistribution b = bregman_project(shifted, 2);
    CHECK((a.probs - b.probs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("appended-coordinate projection gap") {
  SUBCASE("hand case: measure (1, 1), append 1, s = 2") {
    const DenseDistribution before =
        bregman_project(measure_from_weights(Vector::Constant(2, 1.0)), 2);
    const DenseDistribution after =
        bregman_project(measure_from_weights(Vector::Constant(3, 1.0)), 2);
    // (1/2, 1/2) vs (1/3, 1/3, 1/3): gap 2 * 1/6 + 1/3 = 2/3 <= 2/s = 1.
    double gap = std::abs(before.probs[0] - after.probs[0]) +
                 std::abs(before.probs[1] - after.probs[1]) +
                 std::abs(after.probs[2]);
    CHECK(gap == doctest::Approx(2.0 / 3.0));
    CHECK(gap <= 1.0 + 1e-9);
  }

  SUBCASE("appending a zero-weight coordinate changes nothing") {
    const Vector w = (Vector(3) << 2, 1, 1).finished();
    const DenseDistribution before = bregman_project(measure_from_weights(w), 2);
    Measure extended;
    extended.log_weights = Vector(4);
    extended.log_weights << std::log(2.0), 0.0, 0.0, -745.0;  // weight ~ 0
    const DenseDistribution after = bregman_project(extended, 2);
    double gap = std::abs(after.probs[3]);
    for (int i = 0; i < 3; ++i) {
      gap += std::abs(before.probs[i] - after.probs[i]);
    }
    CHECK(gap < 1e-9);
  }
}

TEST_CASE("dmw step") {
  SUBCASE("zero loss leaves the measure in place") {
    const Measure m = measure_from_weights((Vector(4) << 3, 1, 1, 1).finished());
    const DmwStepResult step = dmw_step(m, Vector::Zero(4), 0.3, 2);
    CHECK((step.measure.log_weights - m.log_weights).cwiseAbs().maxCoeff() ==
          0.0);
    const DenseDistribution prior = bregman_project(m, 2);
    CHECK((step.projection.probs - prior.probs).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("uniform measure projects uniformly before the update") {
    Vector loss(4);
    loss << 1.0, -1.0, 0.5, 0.0;
    const DmwStepResult step = dmw_step(Measure::uniform(4), loss, 0.5, 2);
    for (int i = 0; i < 4; ++i) {
      CHECK(step.projection.probs[i] == doctest::Approx(0.25));
    }
  }

  SUBCASE("two steps compose multiplicatively without normalization") {
    Vector l1(3), l2(3);
    l1 << 0.2, -0.7, 1.0;
    l2 << -0.1, 0.4, -1.0;
    const double eta = 0.3;
    Measure m = Measure::uniform(3);
    const Vector initial = m.log_weights;
    m = dmw_step(m, l1, eta, 2).measure;
    m = dmw_step(m, l2, eta, 2).measure;
    const Vector expected = initial - eta * (l1 + l2);
    CHECK((m.log_weights - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("mw regret audit") {
  SUBCASE("single step holds with nonnegative slack") {
    Vector loss(3);
    loss << 0.8, -0.2, 0.5;
    const Vector dist = Vector::Constant(3, 1.0 / 3.0);
    const RegretReport rep = regret_audit_mw({loss}, {dist}, 0.4);
    CHECK(rep.holds);
    CHECK(rep.slack >= 0.0);
  }

  SUBCASE("random signed losses over 8 actions") {
    Rng rng(777);
    const int T = 100;
    const int k = 8;
    const double eta = std::sqrt(std::log(8.0) / T);
    std::vector<Vector> losses;
    std::vector<Vector> dists;
    Vector dist = Vector::Constant(k, 1.0 / k);
    for (int t = 0; t < T; ++t) {
      Vector loss(k);
      for (int a = 0; a < k; ++a) {
        loss[a] = rng.uniform() < 0.5 ? -1.0 : 1.0;
      }
      losses.push_back(loss);
      dists.push_back(dist);
      dist = mw_step(dist, loss, eta);
    }
    const RegretReport rep = regret_audit_mw(losses, dists, eta);
    CHECK(rep.holds);
    CHECK(rep.algo_loss <=
          rep.comparator_loss + rep.regret_term + 1e-9);
  }

  SUBCASE("adversarial alternating losses") {
    const int T = 60;
    const double eta = 0.3;
    std::vector<Vector> losses;
    std::vector<Vector> dists;
    Vector dist = Vector::Constant(2, 0.5);
    for (int t = 0; t < T; ++t) {
      Vector loss(2);
      if (t % 2 == 0) {
        loss << 1.0, 0.0;
      } else {
        loss << 0.0, 1.0;
      }
      losses.push_back(loss);
      dists.push_back(dist);
      dist = mw_step(dist, loss, eta);
    }
    CHECK(regret_audit_mw(losses, dists, eta).holds);
  }

  SUBCASE("rejects losses above 1 in magnitude") {
    Vector loss(2);
    loss << 1.5, 0.0;
    const Vector dist = Vector::Constant(2, 0.5);
    CHECK_THROWS_AS(regret_audit_mw({loss}, {dist}, 0.2),
                    std::invalid_argument);
  }
}

TEST_CASE("dmw regret audit") {
  SUBCASE("s = k forces the uniform comparator") {
    Rng rng(888);
    const int k = 4;
    const int T = 50;
    const double eta = 0.25;
    std::vector<Vector> losses;
    std::vector<DenseDistribution> projections;
    Measure m = Measure::uniform(k);
    for (int t = 0; t < T; ++t) {
      Vector loss(k);
      for (int a = 0; a < k; ++a) loss[a] = 2.0 * rng.uniform() - 1.0;
      const DmwStepResult step = dmw_step(m, loss, eta, k);
      losses.push_back(loss);
      projections.push_back(step.projection);
      m = step.measure;
    }
    const RegretReport rep = regret_audit_dmw(losses, projections, eta, k);
    CHECK(rep.holds);
    // The only 1/k-dense uniform comparator is the uniform distribution.
    double uniform_avg = 0;
    for (const Vector& loss : losses) uniform_avg += loss.mean();
    uniform_avg /= T;
    CHECK(rep.comparator_loss == doctest::Approx(uniform_avg));
  }

  SUBCASE("all size-s comparators on random losses") {
    Rng rng(999);
    const int k = 6;
    const int s = 2;
    const int T = 200;
    const double eta = std::sqrt(std::log(6.0) / T);
    std::vector<Vector> losses;
    std::vector<DenseDistribution> projections;
    Measure m = Measure::uniform(k);
    for (int t = 0; t < T; ++t) {
      Vector loss(k);
      for (int a = 0; a < k; ++a) loss[a] = 2.0 * rng.uniform() - 1.0;
      const DmwStepResult step = dmw_step(m, loss, eta, s);
      losses.push_back(loss);
      projections.push_back(step.projection);
      m = step.measure;
    }
    const RegretReport rep = regret_audit_dmw(losses, projections, eta, s);
    CHECK(rep.holds);
    // Spot-check the comparator against one explicit size-2 subset average.
    Vector cum = Vector::Zero(k);
    for (const Vector& loss : losses) cum += loss;
    double best_pair = 1e300;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        best_pair = std::min(best_pair, 0.5 * (cum[a] + cum[b]) / T);
      }
    }
    CHECK(rep.comparator_loss == doctest::Approx(best_pair));
  }

  SUBCASE("equal per-step losses make both sides match") {
    const int k = 5;
    const int s = 2;
    const double eta = 0.2;
    std::vector<Vector> losses;
    std::vector<DenseDistribution> projections;
    Measure m = Measure::uniform(k);
    for (int t = 0; t < 10; ++t) {
      const Vector loss = Vector::Constant(k, t % 2 == 0 ? 0.7 : -0.3);
      const DmwStepResult step = dmw_step(m, loss, eta, s);
      losses.push_back(loss);
      projections.push_back(step.projection);
      m = step.measure;
    }
    const RegretReport rep = regret_audit_dmw(losses, projections, eta, s);
    CHECK(rep.holds);
    CHECK(rep.algo_loss == doctest::Approx(rep.comparator_loss));
    CHECK(rep.regret_term >= 0.0);
  }
}

TEST_CASE("trace writing and replay") {
  std::ostringstream os;
  TraceWriter writer(os);
  Rng rng(2024);
  const int k = 5;
  const int T = 30;
  const double eta = 0.2;
  writer.mw_header(k, eta);
  Vector dist = Vector::Constant(k, 1.0 / k);
  for (int t = 1; t <= T; ++t) {
    Vector loss(k);
    for (int a = 0; a < k; ++a) loss[a] = rng.uniform();
    writer.mw_record(t, loss, dist);
    dist = mw_step(dist, loss, eta);
  }
  const std::string trace = os.str();

  SUBCASE("fresh trace replays cleanly") {
    std::istringstream in(trace);
    const verify::ReplayReport rep = verify::regret_replay(in);
    CHECK(rep.parsed);
    CHECK(rep.consistent);
    CHECK(rep.losses_in_range);
    CHECK(rep.regret.holds);
    CHECK(rep.steps == T);
  }

  SUBCASE("tampering with one loss is detected") {
    std::istringstream lines(trace);
    std::ostringstream tampered;
    std::string line;
    int idx = 0;
    while (std::getline(lines, line)) {
      if (idx == 7) {
        nlohmann::json j = nlohmann::json::parse(line);
        j["loss"][0] = j["loss"][0].get<double>() + 0.05;
        tampered << j.dump() << "\n";
      } else {
        tampered << line << "\n";
      }
      ++idx;
    }
    std::istringstream in(tampered.str());
    const verify::ReplayReport rep = verify::regret_replay(in);
    CHECK(rep.parsed);
    CHECK_FALSE(rep.consistent);
  }

  SUBCASE("header-only trace passes vacuously") {
    std::ostringstream hdr;
    TraceWriter w(hdr);
    w.dmw_header(4, 0.1, 2);
    std::istringstream in(hdr.str());
    const verify::ReplayReport rep = verify::regret_replay(in);
    CHECK(rep.parsed);
    CHECK(rep.consistent);
    CHECK(rep.regret.holds);
    CHECK(rep.steps == 0);
  }
}

TEST_CASE("measure bookkeeping") {
  const Measure uniform = Measure::uniform(4);
  CHECK(uniform.size() == 4);
  CHECK(uniform.density() == doctest::Approx(1.0));
  CHECK(uniform.support_size() == 4);
  const Vector w = uniform.weights();
  for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(0.25));
}

}  // namespace
}  // namespace dplp
