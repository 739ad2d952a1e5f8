// Copyright 2026 The Covering Experts Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment runner and checks: dual certificates, the competitive ratio
// envelope, online trace invariants and the benchmark ordering.

#ifndef COVERING_HARNESS_H_
#define COVERING_HARNESS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covering/algorithm.h"
#include "covering/experts.h"
#include "covering/instance.h"
#include "json.hpp"

namespace covering {

struct Tolerances {
  double feasibility = 1e-7;
  double cost = 1e-9;
  double beta = 1e-7;
  double lp = 1e-6;
  double program = 1e-8;
  double fw_gap = 1e-6;
  double ratio_constant = 4.0;
};

// Name of the environment variable holding a JSON object that overrides
// any subset of the Tolerances fields, e.g. {"feasibility": 1e-6}.
inline constexpr char kToleranceEnv[] = "COVERING_TOLERANCES";

Tolerances TolerancesFromEnvironment();
nlohmann::json ToJson(const Tolerances& tolerances);

struct CheckResult {
  std::string name;
  bool passed = true;
  bool applicable = true;
  // Worst measured quantity and the limit it was held to.
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

nlohmann::json ToJson(const CheckResult& check);
CheckResult CheckFromJson(const nlohmann::json& j);

// Dual values beta_i^t = c_i ln((1 + 1/K) M_i / D_i^{t-1}) / ln(K rho),
// M_i the largest per-step prediction sum. Checked where resource i is in
// the program at step t.
struct BetaCertificate {
  double log_scale = 0.0;  // ln(K rho)
  // beta[t][i]; NaN where not checked.
  std::vector<Vector> beta;
};

BetaCertificate ComputeBeta(const CoveringInstance& instance,
                            const AlgorithmRun& run);

// 0 <= beta <= c + tolerance and the increment identity
// beta^{t+1} - beta^t = -c ln(D^t / D^{t-1}) / ln(K rho). Not applicable
// when ln(K rho) <= 0.
CheckResult CheckBeta(const CoveringInstance& instance, const AlgorithmRun& run,
                      double tolerance);

// cost <= constant (ln(K rho) + 1) benchmark.
CheckResult CheckRatio(double cost, double benchmark, std::size_t num_experts,
                       double rho, double constant);

// x^t for every step t of an online algorithm.
using OnlineTrace = std::vector<Vector>;

// Per-coordinate monotonicity, prefix feasibility after every step, and the
// reported cost against sum_i c_i x_i^T.
CheckResult CheckOnlineTrace(const std::string& name,
                             const CoveringInstance& instance,
                             const OnlineTrace& trace, double reported_cost,
                             const Tolerances& tolerances);

// Every step: gap at most the tolerance and the step program's constraints
// satisfied.
CheckResult CheckStepPrograms(const CoveringInstance& instance,
                              const AlgorithmRun& run,
                              const Tolerances& tolerances);

struct MwaRun {
  Vector x;
  double cost = 0.0;
  OnlineTrace trace;
};
MwaRun RunMwa(const CoveringInstance& instance);

struct AnandRun {
  Vector x;  // doubled
  double cost = 0.0;
  OnlineTrace trace;  // doubled per step
};
// `experts` lists the prediction columns to average.
AnandRun RunAnand(const CoveringInstance& instance,
                  const PredictionMatrix& predictions,
                  const std::vector<std::size_t>& experts);

enum class Algo { kOurs, kMwa, kAnand, kAverage };
const char* ToString(Algo algo);
Algo AlgoFromString(const std::string& name);
std::vector<Algo> ParseAlgos(const std::string& list);

struct ExperimentConfig {
  std::string id;
  std::vector<Algo> algos{Algo::kOurs, Algo::kMwa, Algo::kAverage};
  AlgorithmOptions options;
  bool benchmarks = true;
  Tolerances tolerances;
};

struct RunReport {
  std::string id;
  std::size_t n = 0;
  std::size_t num_rows = 0;
  std::size_t num_experts = 0;            // roster without the dummy
  std::size_t num_effective_experts = 0;  // active at the end, with dummy
  std::map<std::string, double> costs;
  std::map<std::string, double> benchmarks;
  double rho = 1.0;
  // Roster indices dropped for violating the expert properties.
  std::vector<std::size_t> dropped;
  std::vector<CheckResult> checks;
  std::vector<std::string> errors;
  nlohmann::json config;

  bool passed() const;
};

nlohmann::json ReportToJson(const RunReport& report);
RunReport ReportFromJson(const nlohmann::json& j);

struct ExperimentResult {
  RunReport report;
  std::optional<AlgorithmRun> ours;
  std::optional<MwaRun> mwa;
  std::optional<AnandRun> anand;
};

ExperimentResult RunExperiment(const CoveringInstance& instance,
                               const RosterSpec& roster,
                               const ExperimentConfig& config);

// One JSON line per step and algorithm.
void WriteTrace(const ExperimentResult& result, const std::string& path);

// Summary table: one column per report, rows OPT Offline, MWA Online,
// Our Algo, Avg of experts, then Anand when any report has it. Empty when
// no report ran an algorithm.
std::string EmitMarkdown(const std::vector<RunReport>& reports);
std::string EmitCsv(const std::vector<RunReport>& reports);

// An instance with the roster that goes with it.
struct Scenario {
  std::string id;
  CoveringInstance instance;
  RosterSpec roster;
};

// Builds a scenario from a suite entry. Either "instance" (file) plus
// "experts" (roster file or inline list), or "family" with
//   random:    "params" (preset name, file or object), "seed"
//   mwa-worst: "n", "experts"
//   anand:     "K", "L"
// Relative paths resolve against `base_dir`.
Scenario ScenarioFromJson(const nlohmann::json& entry,
                          const std::string& base_dir);

struct SuiteResult {
  std::vector<ExperimentResult> runs;
  bool passed() const;
};

// {"runs": [scenario...], "algos": "alg,mwa,avg"}; per-run "algos"
// overrides the suite default.
SuiteResult RunSuite(const nlohmann::json& suite, const std::string& base_dir,
                     const ExperimentConfig& defaults);

}  // namespace covering

#endif  // COVERING_HARNESS_H_
