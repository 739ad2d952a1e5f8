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

#include <cmath>
#include <cstdlib>

#include "covering/harness.h"
#include "doctest.h"
#include "test_support.h"

namespace covering {
namespace {

using testing::MakeInstance;

// A run with one resource, constant predictions and the given denominators.
AlgorithmRun ConstantRun(std::size_t K, std::vector<double> previous,
                         std::vector<double> denominators) {
  AlgorithmRun run;
  run.num_experts = K;
  run.rho = 1.0;
  for (std::size_t t = 0; t < previous.size(); ++t) {
    StepRecord r;
    r.t = t;
    r.prediction_sums = {static_cast<double>(K)};
    r.previous_denominator = {previous[t]};
    r.denominator = {denominators[t]};
    run.trace.push_back(r);
  }
  return run;
}

TEST_CASE("Beta on the constant two-expert case") {
  const CoveringInstance instance = MakeInstance({1.0}, {{1.0}, {1.0}});
  // Sums stay 2; D = delta = 1 gives ln(3) / ln(2) at every step.
  const AlgorithmRun run = ConstantRun(2, {1.0, 1.0}, {1.0, 1.0});
  const BetaCertificate cert = ComputeBeta(instance, run);
  CHECK(cert.log_scale == doctest::Approx(std::log(2.0)));
  CHECK(cert.beta[0][0] == doctest::Approx(std::log(3.0) / std::log(2.0)));
  // That exceeds c = 1, so the strict bound is reported as failing.
  const CheckResult check = CheckBeta(instance, run, 1e-7);
  CHECK_FALSE(check.passed);
  CHECK(check.value == doctest::Approx(std::log(3.0) / std::log(2.0) - 1.0));
}

TEST_CASE("Beta increments follow the denominators") {
  const CoveringInstance instance = MakeInstance({1.0}, {{1.0}, {1.0}, {1.0}});
  const AlgorithmRun run = ConstantRun(4, {3.0, 4.0, 4.5}, {4.0, 4.5, 5.0});
  const BetaCertificate cert = ComputeBeta(instance, run);
  for (std::size_t t = 0; t + 1 < 3; ++t) {
    CHECK(cert.beta[t + 1][0] - cert.beta[t][0] ==
          doctest::Approx(-std::log(run.trace[t].denominator[0] /
                                    run.trace[t].previous_denominator[0]) /
                          cert.log_scale));
  }
  const CheckResult check = CheckBeta(instance, run, 1e-7);
  CHECK(check.passed);
}

TEST_CASE("Beta is not applicable for a lone expert") {
  const CoveringInstance instance = MakeInstance({1.0}, {{1.0}});
  const CheckResult check =
      CheckBeta(instance, ConstantRun(1, {1.0}, {1.0}), 1e-7);
  CHECK_FALSE(check.applicable);
  CHECK(check.passed);
}

TEST_CASE("Ratio envelope") {
  CHECK(CheckRatio(4.0, 1.0, 1, 1.0, 4.0).passed);
  CHECK_FALSE(CheckRatio(4.1, 1.0, 1, 1.0, 4.0).passed);
  const CheckResult check = CheckRatio(10.0, 1.0, 2, 3.0, 4.0);
  CHECK(check.limit == doctest::Approx(4.0 * (std::log(6.0) + 1.0)));
  CHECK(check.passed);
}

TEST_CASE("Online trace invariants") {
  const CoveringInstance instance =
      MakeInstance({1.0, 2.0}, {{1.0, 1.0}, {0.0, 1.0}});
  const Tolerances tol;
  CHECK(CheckOnlineTrace("ok", instance, {{1.0, 0.0}, {1.0, 1.0}}, 3.0, tol)
            .passed);
  CHECK_FALSE(
      CheckOnlineTrace("drop", instance, {{1.0, 1.0}, {0.5, 1.0}}, 2.5, tol)
          .passed);
  CHECK_FALSE(
      CheckOnlineTrace("short", instance, {{1.0, 0.0}, {1.0, 0.5}}, 2.0, tol)
          .passed);
  CHECK_FALSE(
      CheckOnlineTrace("cost", instance, {{1.0, 0.0}, {1.0, 1.0}}, 3.1, tol)
          .passed);
  CHECK_FALSE(CheckOnlineTrace("partial", instance, {{1.0, 0.0}}, 1.0, tol)
                  .passed);
}

TEST_CASE("Tolerance overrides from the environment") {
  setenv(kToleranceEnv, R"({"feasibility": 1e-6, "ratio_constant": 5})", 1);
  const Tolerances t = TolerancesFromEnvironment();
  CHECK(t.feasibility == 1e-6);
  CHECK(t.ratio_constant == 5.0);
  CHECK(t.cost == Tolerances{}.cost);
  setenv(kToleranceEnv, R"({"speed": 1})", 1);
  CHECK_THROWS_AS(TolerancesFromEnvironment(), std::invalid_argument);
  unsetenv(kToleranceEnv);
}

TEST_CASE("Worst case experiment and its report") {
  const Scenario scenario =
      ScenarioFromJson({{"family", "mwa-worst"}, {"n", 6}}, ".");
  ExperimentConfig config;
  config.id = scenario.id;
  const ExperimentResult result =
      RunExperiment(scenario.instance, scenario.roster, config);
  const RunReport& report = result.report;
  CHECK(report.id == "mwa-worst-6");
  CHECK(report.errors.empty());
  CHECK(report.benchmarks.at("opt") == doctest::Approx(1.0));
  CHECK(report.costs.at("alg") < report.costs.at("mwa"));
  CHECK(report.costs.at("mwa") < report.costs.at("avg"));
  for (const CheckResult& c : report.checks) {
    CAPTURE(c.detail);
    if (c.name != "beta_certificate") CHECK(c.passed);
  }

  const RunReport back = ReportFromJson(ReportToJson(report));
  CHECK(back.costs == report.costs);
  CHECK(back.benchmarks == report.benchmarks);
  CHECK(back.checks.size() == report.checks.size());
  CHECK(back.passed() == report.passed());

  const std::string table = EmitMarkdown({report});
  CHECK(table.find("| OPT Offline | 1.0000 |") != std::string::npos);
  CHECK(table.find("Anand") == std::string::npos);
  CHECK(EmitCsv({report}).rfind("row,mwa-worst-6\n", 0) == 0);
}

TEST_CASE("Reports are deterministic") {
  const nlohmann::json entry = {
      {"family", "random"}, {"params", "instance2"}, {"seed", 4}};
  ExperimentConfig config;
  config.benchmarks = false;
  const Scenario a = ScenarioFromJson(entry, ".");
  const Scenario b = ScenarioFromJson(entry, ".");
  CHECK(ReportToJson(RunExperiment(a.instance, a.roster, config).report) ==
        ReportToJson(RunExperiment(b.instance, b.roster, config).report));
}

TEST_CASE("No algorithms give an empty table") {
  const Scenario scenario =
      ScenarioFromJson({{"family", "mwa-worst"}, {"n", 3}}, ".");
  ExperimentConfig config;
  config.algos = {};
  const RunReport report =
      RunExperiment(scenario.instance, scenario.roster, config).report;
  CHECK(report.passed());
  CHECK(EmitMarkdown({report}).empty());
  CHECK(EmitMarkdown({}).empty());
  CHECK(ParseAlgos("").empty());
  CHECK(ParseAlgos("alg,anand") == std::vector<Algo>{Algo::kOurs, Algo::kAnand});
  CHECK_THROWS(ParseAlgos("alg,best"));
}

TEST_CASE("Invalid instances are reported, not run") {
  const CoveringInstance bad = MakeInstance({1.0, 1.0}, {{0.0, 0.0}});
  const RunReport report =
      RunExperiment(bad, {ExpertSpec{}}, ExperimentConfig{}).report;
  CHECK_FALSE(report.passed());
  CHECK(report.errors.size() == 1);
}

TEST_CASE("Counterexample scenario") {
  const Scenario scenario =
      ScenarioFromJson({{"family", "anand"}, {"K", 3}, {"L", 2}}, ".");
  ExperimentConfig config;
  config.algos = {Algo::kOurs, Algo::kAnand};
  const RunReport report =
      RunExperiment(scenario.instance, scenario.roster, config).report;
  CHECK(report.errors.empty());
  CHECK(report.benchmarks.at("lincomb") == doctest::Approx(2.0));
  CHECK(report.benchmarks.at("dynamic") == doctest::Approx(1.0));
  CHECK(EmitMarkdown({report}).find("Anand et al.") != std::string::npos);
}

}  // namespace
}  // namespace covering
