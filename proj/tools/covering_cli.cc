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

// Command line front end: instance generation, single runs, suites and
// report verification. Exits 0 iff every check passed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "covering/harness.h"

namespace {

using covering::ExperimentConfig;
using covering::RunReport;

struct CommonFlags {
  bool no_dummy = false;
  std::string first_denominator = "shift";
  double weight_cap = 0.0;
};

void AddCommonFlags(CLI::App* app, CommonFlags& flags) {
  app->add_flag("--no-dummy", flags.no_dummy,
                "Do not append the dummy expert");
  app->add_option("--first-denominator", flags.first_denominator,
                  "Logarithm denominator on the first row")
      ->check(CLI::IsMember({"shift", "one"}));
  app->add_option("--cap", flags.weight_cap,
                  "Weight cap in the step program (0: number of experts)");
}

ExperimentConfig MakeConfig(const CommonFlags& flags) {
  ExperimentConfig config;
  config.options.add_dummy = !flags.no_dummy;
  config.options.first_denominator =
      flags.first_denominator == "one" ? covering::FirstDenominator::kOne
                                       : covering::FirstDenominator::kShift;
  config.options.weight_cap = flags.weight_cap;
  config.tolerances = covering::TolerancesFromEnvironment();
  return config;
}

void PrintReport(const RunReport& report) {
  std::printf("== %s (n=%zu, rows=%zu, K=%zu, K_eff=%zu, rho=%.6g)\n",
              report.id.c_str(), report.n, report.num_rows, report.num_experts,
              report.num_effective_experts, report.rho);
  for (const auto& [name, cost] : report.costs) {
    std::printf("  cost %-10s %.10g\n", name.c_str(), cost);
  }
  for (const auto& [name, value] : report.benchmarks) {
    std::printf("  bench %-10s %.10g\n", name.c_str(), value);
  }
  for (const auto& check : report.checks) {
    std::printf("  %s %s: %s\n",
                !check.applicable ? "N/A " : (check.passed ? "PASS" : "FAIL"),
                check.name.c_str(), check.detail.c_str());
  }
  for (const auto& error : report.errors) {
    std::printf("  ERROR %s\n", error.c_str());
  }
}

void WriteText(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw covering::CoveringError("cannot write " + path);
  out << text;
}

std::string Directory(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online covering with multiple experts"};
  app.require_subcommand(1);

  // generate
  CLI::App* generate = app.add_subcommand("generate", "Generate an instance");
  std::string family = "random";
  std::string params_arg = "instance1";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t n = 10;
  std::size_t num_experts = 5;
  std::size_t num_batches = 2;
  std::string output;
  std::string predictions_path;
  std::string roster_path;
  generate->add_option("--family", family, "random | mwa-worst | anand")
      ->check(CLI::IsMember({"random", "mwa-worst", "anand"}));
  generate->add_option("--params", params_arg,
                       "Preset name (instance1..instance4) or params JSON file");
  generate->add_option("--seed", seed, "PRNG seed")
      ->each([&](const std::string&) { seed_given = true; });
  generate->add_option("--n", n, "Variables for mwa-worst");
  generate->add_option("--K", num_experts, "Experts for anand");
  generate->add_option("--L", num_batches, "Batches for anand");
  generate->add_option("-o,--output", output, "Instance file")->required();
  generate->add_option("--predictions", predictions_path,
                       "Scripted predictions file (anand)");
  generate->add_option("--roster", roster_path,
                       "Write a matching expert roster here");

  // run
  CLI::App* run = app.add_subcommand("run", "Run algorithms on an instance");
  std::string instance_path;
  std::string experts_path;
  std::string algos = "alg,mwa,avg";
  std::string report_path;
  std::string trace_path;
  bool no_benchmarks = false;
  CommonFlags run_flags;
  run->add_option("--instance", instance_path, "Instance file")->required();
  run->add_option("--experts", experts_path,
                  "Roster file (default: from the instance's generator params)");
  run->add_option("--algos", algos, "Comma list of alg, mwa, anand, avg");
  run->add_option("--out", report_path, "Report JSON");
  run->add_option("--trace", trace_path, "Per-step trace (JSON lines)");
  run->add_flag("--no-benchmarks", no_benchmarks, "Skip the benchmark LPs");
  AddCommonFlags(run, run_flags);

  // benchmark
  CLI::App* benchmark = app.add_subcommand("benchmark", "Run a suite");
  std::string suite_path;
  std::string table_path;
  std::string csv_path;
  std::string suite_report_path;
  CommonFlags suite_flags;
  benchmark->add_option("--suite", suite_path, "Suite JSON")->required();
  benchmark->add_option("--table", table_path, "Markdown table output");
  benchmark->add_option("--csv", csv_path, "CSV table output");
  benchmark->add_option("--out", suite_report_path, "Reports JSON");
  AddCommonFlags(benchmark, suite_flags);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Check a saved report");
  std::string verify_path;
  verify->add_option("--report", verify_path, "Report JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      if (family == "random") {
        covering::GeneratorParams params =
            params_arg.ends_with(".json")
                ? covering::ReadJsonFile(params_arg)
                      .get<covering::GeneratorParams>()
                : covering::GeneratorParams::Preset(params_arg);
        if (seed_given) params.seed = seed;
        covering::WriteInstance(covering::GenerateRandom(params), output);
        if (!roster_path.empty()) {
          covering::WriteJsonFile(
              covering::RosterToJson(covering::RosterFromParams(params)),
              roster_path);
        }
      } else if (family == "mwa-worst") {
        covering::WriteInstance(covering::GenerateMwaWorstCase(n), output);
        if (!roster_path.empty()) {
          covering::RosterSpec roster{{covering::ExpertKind::kPerfect}};
          for (std::size_t k = 1; k < n; ++k) {
            roster.push_back({covering::ExpertKind::kAdversarial});
          }
          covering::WriteJsonFile(covering::RosterToJson(roster), roster_path);
        }
      } else {
        const covering::ScriptedInstance generated =
            covering::GenerateAnandCounterexample(num_experts, num_batches);
        covering::WriteInstance(generated.instance, output);
        if (predictions_path.empty()) {
          predictions_path = output + ".predictions.json";
        }
        covering::WriteJsonFile(
            covering::PredictionsToJson(generated.predictions),
            predictions_path);
        if (!roster_path.empty()) {
          // Scripted entry without a column expands to every expert.
          const std::string relative =
              std::filesystem::relative(predictions_path,
                                        std::filesystem::absolute(roster_path)
                                            .parent_path())
                  .string();
          covering::WriteJsonFile(
              nlohmann::json{{"experts",
                              {{{"type", "scripted"}, {"file", relative}}}}},
              roster_path);
        }
      }
      return 0;
    }

    if (run->parsed()) {
      const covering::CoveringInstance instance =
          covering::ReadInstance(instance_path);
      covering::RosterSpec roster;
      if (!experts_path.empty()) {
        roster = covering::ReadRoster(experts_path);
      } else if (instance.meta.contains("params")) {
        roster = covering::RosterFromParams(
            instance.meta.at("params").get<covering::GeneratorParams>());
      } else {
        std::fprintf(stderr, "run: --experts is required for this instance\n");
        return 2;
      }
      ExperimentConfig config = MakeConfig(run_flags);
      config.id = std::filesystem::path(instance_path).stem().string();
      config.algos = covering::ParseAlgos(algos);
      config.benchmarks = !no_benchmarks;
      const covering::ExperimentResult result =
          covering::RunExperiment(instance, roster, config);
      PrintReport(result.report);
      if (!report_path.empty()) {
        covering::WriteJsonFile(covering::ReportToJson(result.report),
                                report_path);
      }
      if (!trace_path.empty()) covering::WriteTrace(result, trace_path);
      return result.report.passed() ? 0 : 1;
    }

    if (benchmark->parsed()) {
      const nlohmann::json suite = covering::ReadJsonFile(suite_path);
      const covering::SuiteResult result = covering::RunSuite(
          suite, Directory(suite_path), MakeConfig(suite_flags));
      std::vector<RunReport> reports;
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : result.runs) {
        PrintReport(r.report);
        reports.push_back(r.report);
        all.push_back(covering::ReportToJson(r.report));
      }
      const std::string table = covering::EmitMarkdown(reports);
      std::printf("\n%s", table.c_str());
      if (!table_path.empty()) WriteText(table, table_path);
      if (!csv_path.empty()) WriteText(covering::EmitCsv(reports), csv_path);
      if (!suite_report_path.empty()) {
        covering::WriteJsonFile(nlohmann::json{{"reports", all}},
                                suite_report_path);
      }
      return result.passed() ? 0 : 1;
    }

    if (verify->parsed()) {
      const nlohmann::json j = covering::ReadJsonFile(verify_path);
      std::vector<RunReport> reports;
      if (j.contains("reports")) {
        for (const auto& r : j.at("reports")) {
          reports.push_back(covering::ReportFromJson(r));
        }
      } else {
        reports.push_back(covering::ReportFromJson(j));
      }
      bool ok = true;
      for (const RunReport& r : reports) {
        PrintReport(r);
        ok = ok && r.passed();
      }
      std::printf("%s\n", ok ? "all checks passed" : "some checks failed");
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
