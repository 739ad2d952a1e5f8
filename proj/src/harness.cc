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

#include "covering/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "covering/baselines.h"
#include "covering/lp.h"

namespace covering {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), fmt, a, b, c);
  return buffer;
}

double Relative(double value, double scale) {
  return value / std::max(1.0, std::abs(scale));
}

std::string ResolvePath(const std::string& path, const std::string& base_dir) {
  std::filesystem::path p(path);
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  return p.string();
}

}  // namespace

Tolerances TolerancesFromEnvironment() {
  Tolerances t;
  const char* raw = std::getenv(kToleranceEnv);
  if (raw == nullptr || *raw == '\0') return t;
  const nlohmann::json j = nlohmann::json::parse(raw);
  for (const auto& [key, value] : j.items()) {
    const double v = value.get<double>();
    if (key == "feasibility") {
      t.feasibility = v;
    } else if (key == "cost") {
      t.cost = v;
    } else if (key == "beta") {
      t.beta = v;
    } else if (key == "lp") {
      t.lp = v;
    } else if (key == "program") {
      t.program = v;
    } else if (key == "fw_gap") {
      t.fw_gap = v;
    } else if (key == "ratio_constant") {
      t.ratio_constant = v;
    } else {
      throw std::invalid_argument(std::string(kToleranceEnv) +
                                  ": unknown key " + key);
    }
  }
  return t;
}

nlohmann::json ToJson(const Tolerances& t) {
  return {{"feasibility", t.feasibility}, {"cost", t.cost},
          {"beta", t.beta},               {"lp", t.lp},
          {"program", t.program},         {"fw_gap", t.fw_gap},
          {"ratio_constant", t.ratio_constant}};
}

nlohmann::json ToJson(const CheckResult& c) {
  return {{"name", c.name},   {"passed", c.passed}, {"applicable", c.applicable},
          {"value", c.value}, {"limit", c.limit},   {"detail", c.detail}};
}

CheckResult CheckFromJson(const nlohmann::json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  c.passed = j.at("passed").get<bool>();
  c.applicable = j.value("applicable", true);
  c.value = j.value("value", 0.0);
  c.limit = j.value("limit", 0.0);
  c.detail = j.value("detail", std::string());
  return c;
}

BetaCertificate ComputeBeta(const CoveringInstance& instance,
                            const AlgorithmRun& run) {
  BetaCertificate cert;
  const double K = static_cast<double>(run.num_experts);
  cert.log_scale = K > 0.0 ? std::log(K * run.rho) : 0.0;
  const std::size_t n = instance.n;
  Vector largest(n, 0.0);
  for (const StepRecord& r : run.trace) {
    for (std::size_t i = 0; i < n; ++i) {
      largest[i] = std::max(largest[i], r.prediction_sums[i]);
    }
  }
  for (const StepRecord& r : run.trace) {
    Vector beta(n, kNaN);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = r.previous_denominator[i];
      if (r.prediction_sums[i] <= 0.0 || d <= 0.0) continue;
      beta[i] = instance.costs[i] *
                std::log((1.0 + 1.0 / K) * largest[i] / d) / cert.log_scale;
    }
    cert.beta.push_back(std::move(beta));
  }
  return cert;
}

CheckResult CheckBeta(const CoveringInstance& instance, const AlgorithmRun& run,
                      double tolerance) {
  CheckResult check;
  check.name = "beta_certificate";
  check.limit = tolerance;
  const double K = static_cast<double>(run.num_experts);
  if (!(K * run.rho > 1.0)) {
    check.applicable = false;
    check.detail = "not applicable: ln(K rho) <= 0";
    return check;
  }
  const BetaCertificate cert = ComputeBeta(instance, run);
  double below = 0.0;
  double above = 0.0;
  double increment = 0.0;
  double ratio = 0.0;
  std::size_t negative = 0;
  std::size_t worst_t = 0;
  std::size_t worst_i = 0;
  std::size_t checked = 0;
  for (std::size_t t = 0; t < cert.beta.size(); ++t) {
    for (std::size_t i = 0; i < instance.n; ++i) {
      const double b = cert.beta[t][i];
      if (std::isnan(b)) continue;
      ++checked;
      below = std::max(below, -b);
      if (b < 0.0) ++negative;
      if (instance.costs[i] > 0.0) {
        ratio = std::max(ratio, b / instance.costs[i]);
      }
      if (b - instance.costs[i] > above) {
        above = b - instance.costs[i];
        worst_t = t;
        worst_i = i;
      }
      if (t + 1 < cert.beta.size() && !std::isnan(cert.beta[t + 1][i])) {
        const StepRecord& r = run.trace[t];
        const double expected = -instance.costs[i] *
                                std::log(r.denominator[i] /
                                         r.previous_denominator[i]) /
                                cert.log_scale;
        increment = std::max(
            increment, std::abs(cert.beta[t + 1][i] - cert.beta[t][i] - expected));
      }
    }
  }
  check.value = std::max({below, above, increment});
  check.passed = check.value <= tolerance;
  std::ostringstream detail;
  detail << "ln(K rho)=" << cert.log_scale << " K=" << run.num_experts
         << " rho=" << run.rho << " checked=" << checked
         << " max(-beta)=" << below << " max(beta-c)=" << above;
  if (above > 0.0) detail << " at t=" << worst_t << " i=" << worst_i;
  // A denominator of at least the shift bounds beta / c by this ceiling.
  detail << " max(beta/c)=" << ratio << " ceiling="
         << std::log((K + 1.0) * run.rho) / cert.log_scale
         << " negative=" << negative << " increment_error=" << increment;
  check.detail = detail.str();
  return check;
}

CheckResult CheckRatio(double cost, double benchmark, std::size_t num_experts,
                       double rho, double constant) {
  CheckResult check;
  check.name = "competitive_ratio";
  const double log_scale = std::log(static_cast<double>(num_experts) * rho);
  check.limit = constant * (log_scale + 1.0);
  check.value = benchmark > 0.0 ? cost / benchmark : kInfinity;
  check.passed = cost <= check.limit * benchmark * (1.0 + 1e-12);
  check.detail = Format("cost=%.10g benchmark=%.10g", cost, benchmark) +
                 Format(" C=%g ln(K rho)=%.6g", constant, log_scale);
  return check;
}

CheckResult CheckOnlineTrace(const std::string& name,
                             const CoveringInstance& instance,
                             const OnlineTrace& trace, double reported_cost,
                             const Tolerances& tolerances) {
  CheckResult check;
  check.name = "online_invariants_" + name;
  check.limit = tolerances.feasibility;
  double monotone = 0.0;
  double infeasible = 0.0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const Vector& x = trace[t];
    if (t > 0) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        monotone = std::max(monotone,
                            Relative(trace[t - 1][i] - x[i], trace[t - 1][i]));
      }
    }
    for (std::size_t r = 0; r <= t && r < instance.num_rows(); ++r) {
      infeasible = std::max(infeasible, 1.0 - Dot(instance.rows[r], x));
    }
  }
  double cost_error = 0.0;
  if (!trace.empty()) {
    cost_error =
        Relative(std::abs(instance.Cost(trace.back()) - reported_cost),
                 reported_cost);
  }
  const bool complete = trace.size() == instance.num_rows();
  check.value = std::max(monotone, infeasible);
  check.passed = complete && monotone <= tolerances.feasibility &&
                 infeasible <= tolerances.feasibility &&
                 cost_error <= tolerances.cost;
  check.detail = Format("monotone=%.3g infeasible=%.3g cost_error=%.3g",
                        monotone, infeasible, cost_error);
  if (!complete) check.detail += " incomplete trace";
  return check;
}

CheckResult CheckStepPrograms(const CoveringInstance& instance,
                              const AlgorithmRun& run,
                              const Tolerances& tolerances) {
  CheckResult check;
  check.name = "step_programs";
  check.limit = tolerances.program;
  double gap = 0.0;
  double violation = 0.0;
  std::size_t iterations = 0;
  std::size_t capped = 0;
  for (const StepRecord& r : run.trace) {
    gap = std::max(gap, r.fw_gap);
    iterations = std::max(iterations, r.fw_iterations);
    if (r.cap_active) ++capped;
    const Vector& row = instance.rows[r.t];
    double cover = 0.0;
    for (std::size_t i = 0; i < instance.n; ++i) {
      const bool included = r.prediction_sums[i] > 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < r.weights[i].size(); ++k) {
        const double w = r.weights[i][k];
        violation = std::max({violation, -w, w - r.weight_cap});
        if (!included) violation = std::max(violation, std::abs(w));
        total += w;
        cover += row[i] * r.auxiliary[k][i] * w;
      }
      if (included) violation = std::max(violation, 1.0 - total);
    }
    violation = std::max(violation, 1.0 - cover);
  }
  check.value = violation;
  check.passed = violation <= tolerances.program && gap <= tolerances.fw_gap;
  std::ostringstream detail;
  detail << "max_gap=" << gap << " (limit " << tolerances.fw_gap
         << ") max_violation=" << violation << " max_iterations=" << iterations
         << " cap_active_steps=" << capped;
  check.detail = detail.str();
  return check;
}

MwaRun RunMwa(const CoveringInstance& instance) {
  MwaRun run;
  MwaState state(instance.n);
  for (const Vector& row : instance.rows) {
    MwaStep(state, row, instance.costs);
    run.trace.push_back(state.x);
  }
  run.x = state.x;
  run.cost = instance.Cost(run.x);
  return run;
}

AnandRun RunAnand(const CoveringInstance& instance,
                  const PredictionMatrix& predictions,
                  const std::vector<std::size_t>& experts) {
  AnandRun run;
  AnandState state(instance.n, experts.size());
  for (std::size_t t = 0; t < instance.num_rows(); ++t) {
    std::vector<Vector> matrix;
    for (std::size_t k : experts) matrix.push_back(predictions.step(t)[k]);
    AnandStep(state, instance.rows[t], instance.costs, matrix);
    run.trace.push_back(AnandFinalize(state));
  }
  run.x = AnandFinalize(state);
  run.cost = instance.Cost(run.x);
  return run;
}

const char* ToString(Algo algo) {
  switch (algo) {
    case Algo::kOurs:
      return "alg";
    case Algo::kMwa:
      return "mwa";
    case Algo::kAnand:
      return "anand";
    case Algo::kAverage:
      return "avg";
  }
  return "unknown";
}

Algo AlgoFromString(const std::string& name) {
  for (Algo a : {Algo::kOurs, Algo::kMwa, Algo::kAnand, Algo::kAverage}) {
    if (name == ToString(a)) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<Algo> ParseAlgos(const std::string& list) {
  std::vector<Algo> algos;
  std::stringstream stream(list);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) algos.push_back(AlgoFromString(item));
  }
  return algos;
}

bool RunReport::passed() const {
  if (!errors.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ReportToJson(const RunReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks) checks.push_back(ToJson(c));
  return {{"id", r.id},
          {"n", r.n},
          {"rows", r.num_rows},
          {"K", r.num_experts},
          {"K_effective", r.num_effective_experts},
          {"costs", r.costs},
          {"benchmarks", r.benchmarks},
          {"rho", r.rho},
          {"dropped", r.dropped},
          {"checks", checks},
          {"errors", r.errors},
          {"config", r.config},
          {"passed", r.passed()}};
}

RunReport ReportFromJson(const nlohmann::json& j) {
  RunReport r;
  r.id = j.value("id", std::string());
  r.n = j.value("n", std::size_t{0});
  r.num_rows = j.value("rows", std::size_t{0});
  r.num_experts = j.value("K", std::size_t{0});
  r.num_effective_experts = j.value("K_effective", std::size_t{0});
  r.costs = j.value("costs", std::map<std::string, double>{});
  r.benchmarks = j.value("benchmarks", std::map<std::string, double>{});
  r.rho = j.value("rho", 1.0);
  r.dropped = j.value("dropped", std::vector<std::size_t>{});
  for (const auto& c : j.value("checks", nlohmann::json::array())) {
    r.checks.push_back(CheckFromJson(c));
  }
  r.errors = j.value("errors", std::vector<std::string>{});
  r.config = j.value("config", nlohmann::json::object());
  return r;
}

ExperimentResult RunExperiment(const CoveringInstance& instance,
                               const RosterSpec& roster,
                               const ExperimentConfig& config) {
  ExperimentResult result;
  RunReport& report = result.report;
  const Tolerances& tol = config.tolerances;
  report.id = config.id;
  report.n = instance.n;
  report.num_rows = instance.num_rows();
  report.num_experts = roster.size();
  nlohmann::json algos = nlohmann::json::array();
  for (Algo a : config.algos) algos.push_back(ToString(a));
  report.config = {
      {"algos", algos},
      {"dummy", config.options.add_dummy},
      {"first_denominator",
       config.options.first_denominator == FirstDenominator::kOne ? "one"
                                                                  : "shift"},
      {"weight_cap", config.options.weight_cap},
      {"tolerances", ToJson(tol)},
      {"roster", RosterToJson(roster)},
  };

  const InstanceReport validity = Validate(instance);
  if (!validity.ok()) {
    report.errors.push_back("invalid instance: " + validity.message);
    return result;
  }
  if (instance.num_rows() == 0) {
    report.errors.push_back("instance has no rows");
    return result;
  }

  auto experts =
      MakeRoster(config.options.add_dummy ? WithDummy(roster) : roster);
  PredictionMatrix predictions;
  try {
    predictions = CollectPredictions(instance, experts, tol.feasibility);
  } catch (const std::exception& e) {
    report.errors.push_back(std::string("experts: ") + e.what());
    return result;
  }
  std::vector<std::size_t> real(roster.size());
  for (std::size_t k = 0; k < real.size(); ++k) real[k] = k;
  for (std::size_t k = 0; k < predictions.num_experts(); ++k) {
    if (predictions.dropped_at(k)) report.dropped.push_back(k);
  }
  const PredictionMatrix real_predictions = predictions.Select(real);
  const std::vector<std::size_t> trusted = real_predictions.ActiveExperts();

  auto wants = [&](Algo a) {
    return std::find(config.algos.begin(), config.algos.end(), a) !=
           config.algos.end();
  };

  if (wants(Algo::kOurs)) {
    try {
      AlgorithmRun run = RunAlgorithm(instance, predictions, config.options);
      report.costs["alg"] = run.cost;
      report.rho = run.rho;
      report.num_effective_experts = run.num_experts;
      OnlineTrace trace;
      for (const StepRecord& r : run.trace) trace.push_back(r.x);
      report.checks.push_back(
          CheckOnlineTrace("alg", instance, trace, run.cost, tol));
      report.checks.push_back(CheckStepPrograms(instance, run, tol));
      report.checks.push_back(CheckBeta(instance, run, tol.beta));
      result.ours = std::move(run);
    } catch (const std::exception& e) {
      report.errors.push_back(std::string("alg: ") + e.what());
    }
  }
  if (wants(Algo::kMwa)) {
    MwaRun run = RunMwa(instance);
    report.costs["mwa"] = run.cost;
    report.checks.push_back(
        CheckOnlineTrace("mwa", instance, run.trace, run.cost, tol));
    result.mwa = std::move(run);
  }
  if (wants(Algo::kAnand)) {
    try {
      AnandRun run = RunAnand(instance, real_predictions, trusted);
      report.costs["anand"] = run.cost;
      report.checks.push_back(
          CheckOnlineTrace("anand", instance, run.trace, run.cost, tol));
      result.anand = std::move(run);
    } catch (const std::exception& e) {
      report.errors.push_back(std::string("anand: ") + e.what());
    }
  }
  const std::size_t last = instance.num_rows() - 1;
  if (wants(Algo::kAverage) && !trusted.empty()) {
    std::vector<Vector> finals;
    for (std::size_t k : trusted) finals.push_back(real_predictions.step(last)[k]);
    report.costs["avg"] = AverageOfExperts(finals, instance.costs);
  }

  if (!config.benchmarks) return result;
  try {
    const LpSolution opt = SolveOfflineOpt(instance);
    if (!opt.optimal()) throw LpError("offline optimum not found");
    report.benchmarks["opt"] = opt.objective;
    if (trusted.empty()) {
      report.errors.push_back("benchmarks: no trusted expert in the roster");
      return result;
    }
    auto solve = [](const LinearProgram& p, const char* what) {
      const LpSolution s = SolveLp(p);
      if (!s.optimal()) {
        throw LpError(std::string(what) + ": " + ToString(s.status));
      }
      return s.objective;
    };
    const double lincomb =
        solve(BuildLinCombLp(instance, real_predictions), "lin-comb");
    const double relaxation =
        solve(BuildRelaxationLp(instance, real_predictions), "relaxation");
    const double dual = solve(BuildDualLp(instance, real_predictions), "dual");
    const double dynamic = SolveDynamic(instance, real_predictions);
    double best_expert = kInfinity;
    for (std::size_t k : trusted) {
      best_expert = std::min(
          best_expert, instance.Cost(real_predictions.step(last)[k]));
    }
    report.benchmarks["lincomb"] = lincomb;
    report.benchmarks["relaxation"] = relaxation;
    report.benchmarks["dual"] = dual;
    report.benchmarks["dynamic"] = dynamic;
    report.benchmarks["best_expert"] = best_expert;

    CheckResult duality;
    duality.name = "lp_duality";
    duality.limit = tol.lp;
    duality.value = Relative(std::abs(dual - relaxation), relaxation);
    duality.passed = duality.value <= tol.lp;
    duality.detail = Format("dual=%.10g relaxation=%.10g", dual, relaxation);
    report.checks.push_back(duality);

    CheckResult sandwich;
    sandwich.name = "lp_sandwich";
    sandwich.limit = tol.lp;
    const double scale = std::max(1.0, std::abs(lincomb));
    sandwich.value = std::max({relaxation - lincomb, lincomb - best_expert,
                               dynamic - lincomb, opt.objective - dynamic}) /
                     scale;
    sandwich.passed = sandwich.value <= tol.lp;
    sandwich.detail =
        Format("opt=%.10g dynamic=%.10g relaxation=%.10g", opt.objective,
               dynamic, relaxation) +
        Format(" lincomb=%.10g best_expert=%.10g", lincomb, best_expert);
    report.checks.push_back(sandwich);

    if (report.costs.count("alg")) {
      report.checks.push_back(CheckRatio(report.costs["alg"], lincomb,
                                         report.num_effective_experts,
                                         report.rho, tol.ratio_constant));
    }
  } catch (const std::exception& e) {
    report.errors.push_back(std::string("benchmarks: ") + e.what());
  }
  return result;
}

void WriteTrace(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CoveringError("cannot write " + path);
  if (result.ours) {
    for (const StepRecord& r : result.ours->trace) {
      nlohmann::json line = StepRecordToJson(r);
      line["algo"] = "alg";
      out << line.dump() << '\n';
    }
  }
  auto simple = [&](const char* name, const OnlineTrace& trace) {
    for (std::size_t t = 0; t < trace.size(); ++t) {
      out << nlohmann::json{{"algo", name}, {"t", t}, {"x", trace[t]}}.dump()
          << '\n';
    }
  };
  if (result.mwa) simple("mwa", result.mwa->trace);
  if (result.anand) simple("anand", result.anand->trace);
}

namespace {

struct TableRow {
  const char* label;
  const char* key;
  bool benchmark;
};

std::vector<TableRow> TableRows(const std::vector<RunReport>& reports) {
  std::vector<TableRow> rows{{"OPT Offline", "opt", true},
                             {"MWA Online", "mwa", false},
                             {"Our Algo", "alg", false},
                             {"Avg of experts", "avg", false}};
  for (const RunReport& r : reports) {
    if (r.costs.count("anand")) {
      rows.push_back({"Anand et al.", "anand", false});
      break;
    }
  }
  return rows;
}

std::optional<double> Cell(const RunReport& r, const TableRow& row) {
  const auto& source = row.benchmark ? r.benchmarks : r.costs;
  const auto it = source.find(row.key);
  if (it == source.end()) return std::nullopt;
  return it->second;
}

bool AnyCosts(const std::vector<RunReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const RunReport& r) { return !r.costs.empty(); });
}

}  // namespace

std::string EmitMarkdown(const std::vector<RunReport>& reports) {
  if (!AnyCosts(reports)) return "";
  std::ostringstream out;
  out << "|";
  for (const RunReport& r : reports) out << " | " << r.id;
  out << " |\n|---";
  for (std::size_t c = 0; c < reports.size(); ++c) out << "|---:";
  out << "|\n";
  for (const TableRow& row : TableRows(reports)) {
    out << "| " << row.label;
    for (const RunReport& r : reports) {
      const auto value = Cell(r, row);
      out << " | " << (value ? Format("%.4f", *value) : std::string("-"));
    }
    out << " |\n";
  }
  return out.str();
}

std::string EmitCsv(const std::vector<RunReport>& reports) {
  if (!AnyCosts(reports)) return "";
  std::ostringstream out;
  out << "row";
  for (const RunReport& r : reports) out << ',' << r.id;
  out << '\n';
  for (const TableRow& row : TableRows(reports)) {
    out << row.label;
    for (const RunReport& r : reports) {
      const auto value = Cell(r, row);
      out << ',' << (value ? Format("%.10g", *value) : std::string());
    }
    out << '\n';
  }
  return out.str();
}

Scenario ScenarioFromJson(const nlohmann::json& entry,
                          const std::string& base_dir) {
  Scenario scenario;
  auto roster_from = [&](const nlohmann::json& experts) {
    if (experts.is_string()) {
      return ReadRoster(ResolvePath(experts.get<std::string>(), base_dir));
    }
    return RosterFromJson(experts, base_dir);
  };
  if (entry.contains("instance")) {
    const std::string path =
        ResolvePath(entry.at("instance").get<std::string>(), base_dir);
    scenario.instance = ReadInstance(path);
    scenario.id = entry.value("id", std::filesystem::path(path).stem().string());
    if (entry.contains("experts")) {
      scenario.roster = roster_from(entry.at("experts"));
    } else if (scenario.instance.meta.contains("params")) {
      scenario.roster = RosterFromParams(
          scenario.instance.meta.at("params").get<GeneratorParams>());
    } else {
      throw std::invalid_argument("scenario " + scenario.id +
                                  ": no expert roster");
    }
    return scenario;
  }
  const std::string family = entry.at("family").get<std::string>();
  if (family == "random") {
    GeneratorParams params;
    const nlohmann::json& p = entry.at("params");
    if (p.is_object()) {
      params = p.get<GeneratorParams>();
    } else if (p.get<std::string>().ends_with(".json")) {
      params = ReadJsonFile(ResolvePath(p.get<std::string>(), base_dir))
                   .get<GeneratorParams>();
    } else {
      params = GeneratorParams::Preset(p.get<std::string>());
    }
    if (entry.contains("seed")) params.seed = entry.at("seed").get<std::uint64_t>();
    scenario.instance = GenerateRandom(params);
    scenario.roster = entry.contains("experts")
                          ? roster_from(entry.at("experts"))
                          : RosterFromParams(params);
    scenario.id = entry.value(
        "id", (p.is_string() ? p.get<std::string>() : std::string("random")) +
                  "-s" + std::to_string(params.seed));
  } else if (family == "mwa-worst") {
    const std::size_t n = entry.at("n").get<std::size_t>();
    scenario.instance = GenerateMwaWorstCase(n);
    if (entry.contains("experts")) {
      scenario.roster = roster_from(entry.at("experts"));
    } else {
      ExpertSpec spec;
      spec.kind = ExpertKind::kPerfect;
      scenario.roster.push_back(spec);
      spec.kind = ExpertKind::kAdversarial;
      scenario.roster.resize(n, spec);
    }
    scenario.id = entry.value("id", "mwa-worst-" + std::to_string(n));
  } else if (family == "anand") {
    const std::size_t K = entry.at("K").get<std::size_t>();
    const std::size_t L = entry.at("L").get<std::size_t>();
    ScriptedInstance generated = GenerateAnandCounterexample(K, L);
    scenario.instance = std::move(generated.instance);
    scenario.roster = ScriptedRoster(std::make_shared<const ScriptedPredictions>(
        std::move(generated.predictions)));
    scenario.id = entry.value(
        "id", "anand-K" + std::to_string(K) + "-L" + std::to_string(L));
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }
  return scenario;
}

bool SuiteResult::passed() const {
  return std::all_of(runs.begin(), runs.end(), [](const ExperimentResult& r) {
    return r.report.passed();
  });
}

SuiteResult RunSuite(const nlohmann::json& suite, const std::string& base_dir,
                     const ExperimentConfig& defaults) {
  auto parse = [](const nlohmann::json& j) {
    if (j.is_string()) return ParseAlgos(j.get<std::string>());
    std::vector<Algo> algos;
    for (const auto& a : j) algos.push_back(AlgoFromString(a.get<std::string>()));
    return algos;
  };
  std::vector<Algo> suite_algos = defaults.algos;
  if (suite.contains("algos")) suite_algos = parse(suite.at("algos"));
  SuiteResult result;
  for (const nlohmann::json& entry : suite.at("runs")) {
    const Scenario scenario = ScenarioFromJson(entry, base_dir);
    ExperimentConfig config = defaults;
    config.id = scenario.id;
    config.algos = entry.contains("algos") ? parse(entry.at("algos")) : suite_algos;
    config.benchmarks = entry.value("benchmarks", defaults.benchmarks);
    result.runs.push_back(
        RunExperiment(scenario.instance, scenario.roster, config));
  }
  return result;
}

}  // namespace covering
