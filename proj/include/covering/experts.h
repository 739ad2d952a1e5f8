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

// Experts emit, after every arriving row, a full solution that must stay
// feasible for all rows seen so far and never decrease. Experts breaking
// either property are dropped for the rest of the run.

#ifndef COVERING_EXPERTS_H_
#define COVERING_EXPERTS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "covering/baselines.h"
#include "covering/instance.h"
#include "covering/types.h"
#include "json.hpp"

namespace covering {

class Expert {
 public:
  virtual ~Expert() = default;

  virtual std::string name() const = 0;
  // Called once before the first row. Only the perfect expert looks past
  // the current row.
  virtual void Start(const CoveringInstance& instance) = 0;
  // Solution after row `t` (0-based) has arrived.
  virtual Vector Step(std::size_t t, std::span<const double> row) = 0;
};

// Outputs the offline optimum at every step.
class PerfectExpert : public Expert {
 public:
  std::string name() const override { return "perfect"; }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t, std::span<const double>) override {
    return solution_;
  }

 private:
  Vector solution_;
};

// Sets every variable to one.
class AdversarialExpert : public Expert {
 public:
  std::string name() const override { return "adversarial"; }
  void Start(const CoveringInstance& instance) override { n_ = instance.n; }
  Vector Step(std::size_t, std::span<const double>) override {
    return Vector(n_, 1.0);
  }

 private:
  std::size_t n_ = 0;
};

// Starts every variable at 1/n; on an unsatisfied row raises the variable
// with the smallest c_i / a_i (lowest index on ties) until the row is tight.
class DummyExpert : public Expert {
 public:
  std::string name() const override { return "dummy"; }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t t, std::span<const double> row) override;

 private:
  Vector costs_;
  Vector x_;
};

// An independent multiplicative-weights run.
class OnlineExpert : public Expert {
 public:
  std::string name() const override { return "online"; }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t t, std::span<const double> row) override;

 private:
  Vector costs_;
  MwaState state_;
};

// On an unsatisfied row raises one uniformly drawn variable of the row
// until the row is tight.
class RandomExpert : public Expert {
 public:
  explicit RandomExpert(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t t, std::span<const double> row) override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  Vector x_;
};

// Replays column `column` of a prediction script.
class ScriptedExpert : public Expert {
 public:
  ScriptedExpert(std::shared_ptr<const ScriptedPredictions> script,
                 std::size_t column)
      : script_(std::move(script)), column_(column) {}
  std::string name() const override {
    return "scripted" + std::to_string(column_);
  }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t t, std::span<const double> row) override;

 private:
  std::shared_ptr<const ScriptedPredictions> script_;
  std::size_t column_;
};

enum class ExpertKind {
  kPerfect,
  kOnline,
  kRandom,
  kAdversarial,
  kDummy,
  kScripted,
};

const char* ToString(ExpertKind kind);
ExpertKind ExpertKindFromString(const std::string& name);

struct ExpertSpec {
  ExpertKind kind = ExpertKind::kDummy;
  std::uint64_t seed = 0;
  // Scripted experts only.
  std::string file;
  std::size_t column = 0;
  std::shared_ptr<const ScriptedPredictions> script;
};

using RosterSpec = std::vector<ExpertSpec>;

// Accepts either a JSON array of {type, seed?, file?, column?} or an object
// with an "experts" array. Scripted entries without "column" expand to every
// expert in the script file; relative files resolve against `base_dir`.
RosterSpec RosterFromJson(const nlohmann::json& j,
                          const std::string& base_dir = {});
nlohmann::json RosterToJson(const RosterSpec& roster);
RosterSpec ReadRoster(const std::string& path);

// Perfect, online, random and adversarial experts in the counts given by
// the generator parameters.
RosterSpec RosterFromParams(const GeneratorParams& params);
RosterSpec ScriptedRoster(std::shared_ptr<const ScriptedPredictions> script);

std::unique_ptr<Expert> MakeExpert(const ExpertSpec& spec);
std::vector<std::unique_ptr<Expert>> MakeRoster(const RosterSpec& roster);

// Per-step expert solutions s_ik^t plus the step at which each expert was
// dropped, if any.
class PredictionMatrix {
 public:
  PredictionMatrix() = default;
  PredictionMatrix(std::size_t n, std::size_t num_experts)
      : n_(n), num_experts_(num_experts), dropped_at_(num_experts) {}

  std::size_t n() const { return n_; }
  std::size_t num_experts() const { return num_experts_; }
  std::size_t num_steps() const { return steps_.size(); }

  // One solution per expert; dropped experts may carry any vector.
  void AppendStep(std::vector<Vector> solutions);
  const std::vector<Vector>& step(std::size_t t) const { return steps_[t]; }
  double s(std::size_t t, std::size_t i, std::size_t k) const {
    return steps_[t][k][i];
  }

  void Drop(std::size_t k, std::size_t t);
  std::optional<std::size_t> dropped_at(std::size_t k) const {
    return dropped_at_[k];
  }
  bool active_at(std::size_t k, std::size_t t) const {
    return !dropped_at_[k] || *dropped_at_[k] > t;
  }
  // Experts never dropped during the recorded steps.
  std::vector<std::size_t> ActiveExperts() const;

  // Keeps only the given experts, in order.
  PredictionMatrix Select(const std::vector<std::size_t>& experts) const;

 private:
  std::size_t n_ = 0;
  std::size_t num_experts_ = 0;
  std::vector<std::vector<Vector>> steps_;
  std::vector<std::optional<std::size_t>> dropped_at_;
};

class NoValidExpertsError : public CoveringError {
 public:
  NoValidExpertsError() : CoveringError("no valid experts") {}
};

inline constexpr double kViolationTolerance = 1e-7;

// Online checker for the two expert properties. Violations beyond the
// relative tolerance deactivate an expert from that step on.
class StreamValidator {
 public:
  StreamValidator(const CoveringInstance& instance, std::size_t num_experts,
                  double tolerance = kViolationTolerance);

  // Checks the step-t solutions and returns the updated mask. Throws
  // NoValidExpertsError once every expert is inactive.
  const std::vector<bool>& Check(std::size_t t,
                                 const std::vector<Vector>& solutions);
  const std::vector<bool>& mask() const { return active_; }

  static bool Feasible(const CoveringInstance& instance, std::size_t t,
                       std::span<const double> s, double tolerance);
  static bool Monotone(std::span<const double> previous,
                       std::span<const double> s, double tolerance);

 private:
  const CoveringInstance& instance_;
  double tolerance_;
  std::vector<bool> active_;
  std::vector<Vector> previous_;
};

// Mask after checking steps 0..t of a recorded stream.
std::vector<bool> ValidateStream(const PredictionMatrix& predictions,
                                 const CoveringInstance& instance,
                                 std::size_t t,
                                 double tolerance = kViolationTolerance);

// Runs the experts over the whole instance, recording predictions and
// dropping invalid experts.
PredictionMatrix CollectPredictions(const CoveringInstance& instance,
                                    std::vector<std::unique_ptr<Expert>>& roster,
                                    double tolerance = kViolationTolerance);

}  // namespace covering

#endif  // COVERING_EXPERTS_H_
