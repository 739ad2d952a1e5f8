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

#include "covering/experts.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "covering/lp.h"

namespace covering {

void PerfectExpert::Start(const CoveringInstance& instance) {
  const LpSolution opt = SolveOfflineOpt(instance);
  if (!opt.optimal()) {
    throw CoveringError(std::string("perfect expert: offline problem is ") +
                        ToString(opt.status));
  }
  solution_ = opt.primal;
  for (double& v : solution_) v = std::max(v, 0.0);
}

void DummyExpert::Start(const CoveringInstance& instance) {
  costs_ = instance.costs;
  x_.assign(instance.n, 1.0 / static_cast<double>(instance.n));
}

Vector DummyExpert::Step(std::size_t, std::span<const double> row) {
  const double value = Dot(row, x_);
  if (value < 1.0) {
    std::size_t best = x_.size();
    double best_ratio = kInfinity;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (row[i] <= 0.0) continue;
      const double ratio = costs_[i] / row[i];
      if (ratio < best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    if (best < x_.size()) x_[best] += (1.0 - value) / row[best];
  }
  return x_;
}

void OnlineExpert::Start(const CoveringInstance& instance) {
  costs_ = instance.costs;
  state_ = MwaState(instance.n);
}

Vector OnlineExpert::Step(std::size_t, std::span<const double> row) {
  MwaStep(state_, row, costs_);
  return state_.x;
}

void RandomExpert::Start(const CoveringInstance& instance) {
  rng_.seed(seed_);
  x_.assign(instance.n, 0.0);
}

Vector RandomExpert::Step(std::size_t, std::span<const double> row) {
  const double value = Dot(row, x_);
  if (value < 1.0) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] > 0.0) candidates.push_back(i);
    }
    if (!candidates.empty()) {
      const std::size_t i = candidates[UniformInt(rng_, 0, candidates.size() - 1)];
      x_[i] += (1.0 - value) / row[i];
    }
  }
  return x_;
}

void ScriptedExpert::Start(const CoveringInstance& instance) {
  if (!script_ || script_->size() < instance.num_rows()) {
    throw CoveringError("scripted expert: script shorter than the instance");
  }
  for (const auto& step : *script_) {
    if (column_ >= step.size() || step[column_].size() != instance.n) {
      throw CoveringError("scripted expert: script does not match instance");
    }
  }
}

Vector ScriptedExpert::Step(std::size_t t, std::span<const double>) {
  return (*script_)[t][column_];
}

const char* ToString(ExpertKind kind) {
  switch (kind) {
    case ExpertKind::kPerfect:
      return "perfect";
    case ExpertKind::kOnline:
      return "online";
    case ExpertKind::kRandom:
      return "random";
    case ExpertKind::kAdversarial:
      return "adversarial";
    case ExpertKind::kDummy:
      return "dummy";
    case ExpertKind::kScripted:
      return "scripted";
  }
  return "unknown";
}

ExpertKind ExpertKindFromString(const std::string& name) {
  for (ExpertKind kind :
       {ExpertKind::kPerfect, ExpertKind::kOnline, ExpertKind::kRandom,
        ExpertKind::kAdversarial, ExpertKind::kDummy, ExpertKind::kScripted}) {
    if (name == ToString(kind)) return kind;
  }
  throw std::invalid_argument("unknown expert type: " + name);
}

RosterSpec RosterFromJson(const nlohmann::json& j,
                          const std::string& base_dir) {
  const nlohmann::json& list = j.is_object() ? j.at("experts") : j;
  if (!list.is_array()) {
    throw std::invalid_argument("roster must be an array of experts");
  }
  RosterSpec roster;
  for (const nlohmann::json& entry : list) {
    ExpertSpec spec;
    spec.kind = ExpertKindFromString(entry.at("type").get<std::string>());
    spec.seed = entry.value("seed", std::uint64_t{0});
    if (spec.kind != ExpertKind::kScripted) {
      roster.push_back(spec);
      continue;
    }
    spec.file = entry.at("file").get<std::string>();
    std::filesystem::path path(spec.file);
    if (path.is_relative() && !base_dir.empty()) {
      path = std::filesystem::path(base_dir) / path;
    }
    spec.script = std::make_shared<const ScriptedPredictions>(
        PredictionsFromJson(ReadJsonFile(path.string())));
    if (entry.contains("column")) {
      spec.column = entry.at("column").get<std::size_t>();
      roster.push_back(spec);
    } else {
      const std::size_t K =
          spec.script->empty() ? 0 : spec.script->front().size();
      for (std::size_t k = 0; k < K; ++k) {
        spec.column = k;
        roster.push_back(spec);
      }
    }
  }
  return roster;
}

nlohmann::json RosterToJson(const RosterSpec& roster) {
  nlohmann::json list = nlohmann::json::array();
  for (const ExpertSpec& spec : roster) {
    nlohmann::json entry{{"type", ToString(spec.kind)}};
    if (spec.kind == ExpertKind::kRandom) entry["seed"] = spec.seed;
    if (spec.kind == ExpertKind::kScripted) {
      entry["file"] = spec.file;
      entry["column"] = spec.column;
    }
    list.push_back(std::move(entry));
  }
  return nlohmann::json{{"experts", list}};
}

RosterSpec ReadRoster(const std::string& path) {
  return RosterFromJson(ReadJsonFile(path),
                        std::filesystem::path(path).parent_path().string());
}

RosterSpec RosterFromParams(const GeneratorParams& params) {
  RosterSpec roster;
  auto add = [&](ExpertKind kind, std::size_t count) {
    for (std::size_t c = 0; c < count; ++c) {
      ExpertSpec spec;
      spec.kind = kind;
      // Distinct, reproducible streams per random expert.
      if (kind == ExpertKind::kRandom) {
        spec.seed = params.seed * 1000003ULL + c + 1;
      }
      roster.push_back(spec);
    }
  };
  add(ExpertKind::kPerfect, params.perfect_experts);
  add(ExpertKind::kOnline, params.online_experts);
  add(ExpertKind::kRandom, params.random_experts);
  add(ExpertKind::kAdversarial, params.adversarial_experts);
  return roster;
}

RosterSpec ScriptedRoster(std::shared_ptr<const ScriptedPredictions> script) {
  RosterSpec roster;
  const std::size_t K = script->empty() ? 0 : script->front().size();
  for (std::size_t k = 0; k < K; ++k) {
    ExpertSpec spec;
    spec.kind = ExpertKind::kScripted;
    spec.column = k;
    spec.script = script;
    roster.push_back(spec);
  }
  return roster;
}

std::unique_ptr<Expert> MakeExpert(const ExpertSpec& spec) {
  switch (spec.kind) {
    case ExpertKind::kPerfect:
      return std::make_unique<PerfectExpert>();
    case ExpertKind::kOnline:
      return std::make_unique<OnlineExpert>();
    case ExpertKind::kRandom:
      return std::make_unique<RandomExpert>(spec.seed);
    case ExpertKind::kAdversarial:
      return std::make_unique<AdversarialExpert>();
    case ExpertKind::kDummy:
      return std::make_unique<DummyExpert>();
    case ExpertKind::kScripted:
      return std::make_unique<ScriptedExpert>(spec.script, spec.column);
  }
  throw std::invalid_argument("unknown expert kind");
}

std::vector<std::unique_ptr<Expert>> MakeRoster(const RosterSpec& roster) {
  std::vector<std::unique_ptr<Expert>> experts;
  for (const ExpertSpec& spec : roster) experts.push_back(MakeExpert(spec));
  return experts;
}

void PredictionMatrix::AppendStep(std::vector<Vector> solutions) {
  if (solutions.size() != num_experts_) {
    throw std::invalid_argument("PredictionMatrix: wrong expert count");
  }
  for (const Vector& s : solutions) {
    if (s.size() != n_) {
      throw std::invalid_argument("PredictionMatrix: wrong solution length");
    }
  }
  steps_.push_back(std::move(solutions));
}

void PredictionMatrix::Drop(std::size_t k, std::size_t t) {
  if (!dropped_at_[k] || *dropped_at_[k] > t) dropped_at_[k] = t;
}

std::vector<std::size_t> PredictionMatrix::ActiveExperts() const {
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < num_experts_; ++k) {
    if (!dropped_at_[k]) active.push_back(k);
  }
  return active;
}

PredictionMatrix PredictionMatrix::Select(
    const std::vector<std::size_t>& experts) const {
  PredictionMatrix out(n_, experts.size());
  for (const auto& step : steps_) {
    std::vector<Vector> chosen;
    for (std::size_t k : experts) chosen.push_back(step[k]);
    out.steps_.push_back(std::move(chosen));
  }
  for (std::size_t j = 0; j < experts.size(); ++j) {
    out.dropped_at_[j] = dropped_at_[experts[j]];
  }
  return out;
}

StreamValidator::StreamValidator(const CoveringInstance& instance,
                                 std::size_t num_experts, double tolerance)
    : instance_(instance),
      tolerance_(tolerance),
      active_(num_experts, true),
      previous_(num_experts) {}

bool StreamValidator::Feasible(const CoveringInstance& instance, std::size_t t,
                               std::span<const double> s, double tolerance) {
  if (s.size() != instance.n) return false;
  for (double v : s) {
    if (!std::isfinite(v) || v < -tolerance) return false;
  }
  for (std::size_t r = 0; r <= t && r < instance.num_rows(); ++r) {
    if (Dot(instance.rows[r], s) < 1.0 - tolerance) return false;
  }
  return true;
}

bool StreamValidator::Monotone(std::span<const double> previous,
                               std::span<const double> s, double tolerance) {
  if (previous.size() != s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < previous[i] - tolerance * std::max(1.0, std::abs(previous[i]))) {
      return false;
    }
  }
  return true;
}

const std::vector<bool>& StreamValidator::Check(
    std::size_t t, const std::vector<Vector>& solutions) {
  for (std::size_t k = 0; k < active_.size(); ++k) {
    if (!active_[k]) continue;
    const Vector& s = solutions[k];
    bool ok = Feasible(instance_, t, s, tolerance_);
    if (ok && t > 0) ok = Monotone(previous_[k], s, tolerance_);
    if (ok) {
      previous_[k] = s;
    } else {
      active_[k] = false;
    }
  }
  if (std::none_of(active_.begin(), active_.end(), [](bool a) { return a; })) {
    throw NoValidExpertsError();
  }
  return active_;
}

std::vector<bool> ValidateStream(const PredictionMatrix& predictions,
                                 const CoveringInstance& instance,
                                 std::size_t t, double tolerance) {
  StreamValidator validator(instance, predictions.num_experts(), tolerance);
  for (std::size_t step = 0; step <= t && step < predictions.num_steps();
       ++step) {
    validator.Check(step, predictions.step(step));
  }
  return validator.mask();
}

PredictionMatrix CollectPredictions(const CoveringInstance& instance,
                                    std::vector<std::unique_ptr<Expert>>& roster,
                                    double tolerance) {
  PredictionMatrix predictions(instance.n, roster.size());
  StreamValidator validator(instance, roster.size(), tolerance);
  for (auto& expert : roster) expert->Start(instance);
  for (std::size_t t = 0; t < instance.num_rows(); ++t) {
    std::vector<Vector> solutions;
    for (std::size_t k = 0; k < roster.size(); ++k) {
      if (validator.mask()[k]) {
        solutions.push_back(roster[k]->Step(t, instance.rows[t]));
      } else {
        solutions.push_back(predictions.step(t - 1)[k]);
      }
    }
    const std::vector<bool>& mask = validator.Check(t, solutions);
    for (std::size_t k = 0; k < roster.size(); ++k) {
      if (!mask[k]) predictions.Drop(k, t);
    }
    predictions.AppendStep(std::move(solutions));
  }
  return predictions;
}

}  // namespace covering
