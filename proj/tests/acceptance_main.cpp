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

// Release checklist for the toolkit. Runs every verification suite once,
// maps the individual checks onto the ten ship criteria, and prints one
// PASS/FAIL line per criterion. Exits nonzero if anything is red.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dplp/verify.hpp"

namespace {

using dplp::verify::CheckResult;
using dplp::verify::SuiteReport;

struct CheckRef {
  std::string suite;
  std::string name;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<CheckRef> checks;
  double time_limit_seconds = 0.0;  // 0 means no budget is enforced
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

const CheckResult* find_check(const std::map<std::string, SuiteReport>& suites,
                              const CheckRef& ref) {
  const auto it = suites.find(ref.suite);
  if (it == suites.end()) return nullptr;
  for (const CheckResult& c : it->second.checks) {
    if (c.name == ref.name) return &c;
  }
  return nullptr;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(DPLP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Runs one CLI invocation twice with the same seed and compares the two
// report files byte for byte.
bool byte_identical_rerun(const std::string& base_args,
                          const std::filesystem::path& tmp,
                          const std::string& tag, std::string* detail) {
  const std::filesystem::path a = tmp / (tag + "_a.json");
  const std::filesystem::path b = tmp / (tag + "_b.json");
  for (const auto& out : {a, b}) {
    const int rc = run_cli(base_args + " --output " + out.string());
    if (rc != 0) {
      *detail = tag + ": exit code " + std::to_string(rc);
      return false;
    }
  }
  const std::string bytes_a = slurp(a);
  const std::string bytes_b = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  if (bytes_a.empty() || bytes_a != bytes_b) {
    *detail = tag + ": reruns differ";
    return false;
  }
  *detail += (detail->empty() ? "" : ", ") + tag + " identical";
  return true;
}

bool check_cli_determinism(std::string* detail) {
  const std::string data = DPLP_DATA_DIR;
  const std::filesystem::path tmp =
      std::filesystem::temp_directory_path() /
      ("dplp_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(tmp);
  bool ok = true;
  ok &= byte_identical_rerun("solve-scalar --instance " + data +
                                 "/allocation_scalar.json --epsilon 1 "
                                 "--alpha 0.45 --seed 7",
                             tmp, "solve-scalar", detail);
  ok &= byte_identical_rerun("solve-objective --instance " + data +
                                 "/preference_objective.json --epsilon 2 "
                                 "--seed 11",
                             tmp, "solve-objective", detail);
  ok &= byte_identical_rerun("attack --gadget scalar --n 20 --trials 5 "
                             "--seed 1",
                             tmp, "attack", detail);
  std::filesystem::remove_all(tmp);
  return ok;
}

}  // namespace

int main() {
  std::vector<uint64_t> seeds;
  try {
    seeds = dplp::verify::load_seed_file(DPLP_SEED_FILE);
  } catch (const std::exception& e) {
    std::printf("acceptance: cannot load seed file: %s\n", e.what());
    return 1;
  }

  std::map<std::string, SuiteReport> suites;
  for (const std::string& name : dplp::verify::suite_names()) {
    suites[name] = dplp::verify::run_suite(name, seeds);
  }

  const std::vector<Criterion> criteria = {
      {1,
       "noise and selection primitives match their target distributions",
       {{"mechanisms", "laplace-ks"}, {"mechanisms", "expmech-tv"}},
       10.0},
      {2,
       "capped-density projection moves an appended coordinate by at most 2/s",
       {{"projection", "bregman-appended-coordinate-gap"}},
       5.0},
      {3,
       "multiplicative-weights and dense-subset regret bounds hold as printed",
       {{"regret", "mw-inequality"}, {"regret", "dmw-inequality"}},
       30.0},
      {4,
       "noiseless-limit solvers meet the additive-slack feasibility "
       "certificate",
       {{"solvers", "noiseless-limit-pst"}},
       120.0},
      {5,
       "constraint-private covering runs respect the violation budget",
       {{"solvers", "cover-exact-oracle"}, {"solvers", "cover-private-desk"}},
       300.0},
      {6,
       "objective-private solves stay exactly feasible with bounded gap",
       {{"solvers", "objective-private-theorem"}},
       60.0},
      {7,
       "accuracy formulas solve their fixed points and cover Monte-Carlo runs",
       {{"solvers", "accuracy-fixed-points"},
        {"solvers", "accuracy-monte-carlo"}},
       300.0},
      {8,
       "reconstruction lab recovers every database from exact answers",
       {{"attacks", "exact-reconstruction"},
        {"attacks", "bound-at-zero"},
        {"attacks", "neighbor-coefficient-diffs"}},
       60.0},
      {9,
       "per-run budgets satisfy the advanced-composition identity",
       {{"solvers", "budget-identity"}, {"mechanisms", "composition-identity"}},
       0.0},
  };

  bool all_ok = true;
  std::set<std::pair<std::string, std::string>> mapped;
  for (const Criterion& c : criteria) {
    bool ok = true;
    double elapsed = 0.0;
    std::string why;
    for (const CheckRef& ref : c.checks) {
      mapped.insert({ref.suite, ref.name});
      const CheckResult* r = find_check(suites, ref);
      if (r == nullptr) {
        ok = false;
        why += (why.empty() ? "" : "; ") + ref.name + ": check not found";
        continue;
      }
      elapsed += r->elapsed_seconds;
      if (!r->passed) {
        ok = false;
        why += (why.empty() ? "" : "; ") + ref.name + ": " + r->detail;
      }
    }
    std::string timing = fmt(elapsed) + " s";
    if (c.time_limit_seconds > 0.0) {
      timing += " of " + fmt(c.time_limit_seconds) + " s";
      if (elapsed > c.time_limit_seconds) {
        ok = false;
        why += (why.empty() ? "" : "; ") + std::string("over time budget");
      }
    }
    all_ok &= ok;
    std::printf("[criterion %02d] %s  %s (%s%s%s)\n", c.id,
                ok ? "PASS" : "FAIL", c.title.c_str(), timing.c_str(),
                why.empty() ? "" : "; ", why.c_str());
  }

  {
    std::string detail;
    const bool ok = check_cli_determinism(&detail);
    all_ok &= ok;
    std::printf(
        "[criterion 10] %s  seeded CLI reruns produce byte-identical "
        "reports (%s)\n",
        ok ? "PASS" : "FAIL", detail.c_str());
  }

  // Remaining suite checks back the criteria above; a red one still blocks.
  {
    bool ok = true;
    std::string why;
    for (const auto& [suite, report] : suites) {
      for (const CheckResult& c : report.checks) {
        if (mapped.count({suite, c.name}) > 0) continue;
        if (!c.passed) {
          ok = false;
          why += (why.empty() ? "" : "; ") + suite + "/" + c.name + ": " +
                 c.detail;
        }
      }
    }
    all_ok &= ok;
    std::printf("[supporting]   %s  remaining verification checks (%s)\n",
                ok ? "PASS" : "FAIL", ok ? "all green" : why.c_str());
  }

  std::printf("acceptance: %s\n", all_ok ? "all criteria satisfied"
                                         : "FAILED criteria present");
  return all_ok ? 0 : 1;
}
