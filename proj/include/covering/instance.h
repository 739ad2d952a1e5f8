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

// Online covering instances: minimize sum_i c_i x_i subject to rows
// sum_i a_i^t x_i >= 1 that arrive one at a time, x >= 0.

#ifndef COVERING_INSTANCE_H_
#define COVERING_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "covering/types.h"
#include "json.hpp"

namespace covering {

struct CoveringInstance {
  std::size_t n = 0;
  Vector costs;
  // Constraint rows in arrival order; each has n coefficients.
  std::vector<Vector> rows;
  // Generator provenance: {"generator", "params", "seed", "prng"}.
  nlohmann::json meta = nlohmann::json::object();

  std::size_t num_rows() const { return rows.size(); }
  double Cost(std::span<const double> x) const { return Dot(costs, x); }
  // Smallest row activity sum_i a_i^t x_i - 1 over the first `prefix` rows.
  double MinSlack(std::span<const double> x, std::size_t prefix) const;
};

enum class InstanceViolation {
  kNone,
  kDimensionMismatch,
  kNonpositiveCost,
  kNonFiniteCoefficient,
  kNegativeCoefficient,
  kAllZeroRow,
};

struct InstanceReport {
  InstanceViolation violation = InstanceViolation::kNone;
  // Offending cost index or row index, depending on the violation.
  std::optional<std::size_t> index;
  std::string message;

  bool ok() const { return violation == InstanceViolation::kNone; }
};

InstanceReport Validate(const CoveringInstance& instance);

// The twelve knobs of the random instance family plus the PRNG seed.
struct GeneratorParams {
  std::size_t num_variables = 10;
  std::size_t num_constraints = 10;
  int min_cost = 1;
  int max_cost = 10;
  int min_coefficient = 1;
  int max_coefficient = 10;
  std::size_t min_zeros = 0;
  std::size_t max_zeros = 5;
  std::size_t perfect_experts = 1;
  std::size_t online_experts = 2;
  std::size_t random_experts = 1;
  std::size_t adversarial_experts = 1;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument describing the first bad field.
  void Validate() const;

  // Presets "instance1" .. "instance4" reproduce the published parameter
  // table. Throws std::invalid_argument on unknown names.
  static GeneratorParams Preset(const std::string& name);
};

void to_json(nlohmann::json& j, const GeneratorParams& p);
void from_json(const nlohmann::json& j, GeneratorParams& p);

// Name of the pseudo-random engine recorded in generated instances.
inline constexpr const char* kPrngName = "mt19937_64";

// Uniform integer in [lo, hi] drawn by rejection from raw engine output, so
// streams do not depend on the standard library's distribution code.
std::uint64_t UniformInt(std::mt19937_64& rng, std::uint64_t lo,
                         std::uint64_t hi);

CoveringInstance GenerateRandom(const GeneratorParams& params);

// n rows; row t covers variables t..n with unit coefficients and costs.
CoveringInstance GenerateMwaWorstCase(std::size_t n);

// Scripted predictions: steps[t][k] is expert k's solution after row t.
using ScriptedPredictions = std::vector<std::vector<Vector>>;

struct ScriptedInstance {
  CoveringInstance instance;
  ScriptedPredictions predictions;
};

// L batches of K-1 shrinking rows over L*K + 1 variables; the last variable
// appears in every row but no expert ever uses it.
ScriptedInstance GenerateAnandCounterexample(std::size_t num_experts,
                                             std::size_t num_batches);

nlohmann::json InstanceToJson(const CoveringInstance& instance);
CoveringInstance InstanceFromJson(const nlohmann::json& j);
CoveringInstance ReadInstance(const std::string& path);
void WriteInstance(const CoveringInstance& instance, const std::string& path);

nlohmann::json PredictionsToJson(const ScriptedPredictions& predictions);
ScriptedPredictions PredictionsFromJson(const nlohmann::json& j);

nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const nlohmann::json& j, const std::string& path);

}  // namespace covering

#endif  // COVERING_INSTANCE_H_
