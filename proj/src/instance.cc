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

#include "covering/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace covering {

double CoveringInstance::MinSlack(std::span<const double> x,
                                  std::size_t prefix) const {
  double worst = kInfinity;
  for (std::size_t t = 0; t < std::min(prefix, rows.size()); ++t) {
    worst = std::min(worst, Dot(rows[t], x) - 1.0);
  }
  return worst;
}

InstanceReport Validate(const CoveringInstance& instance) {
  auto fail = [](InstanceViolation v, std::size_t index, std::string msg) {
    return InstanceReport{v, index, std::move(msg)};
  };
  if (instance.costs.size() != instance.n) {
    return fail(InstanceViolation::kDimensionMismatch, 0,
                "costs has " + std::to_string(instance.costs.size()) +
                    " entries, expected " + std::to_string(instance.n));
  }
  for (std::size_t i = 0; i < instance.n; ++i) {
    const double c = instance.costs[i];
    if (!std::isfinite(c)) {
      return fail(InstanceViolation::kNonFiniteCoefficient, i,
                  "non-finite cost");
    }
    if (c <= 0.0) {
      return fail(InstanceViolation::kNonpositiveCost, i, "nonpositive cost");
    }
  }
  for (std::size_t t = 0; t < instance.rows.size(); ++t) {
    const Vector& row = instance.rows[t];
    if (row.size() != instance.n) {
      return fail(InstanceViolation::kDimensionMismatch, t,
                  "row has wrong length");
    }
    bool any_positive = false;
    for (double a : row) {
      if (!std::isfinite(a)) {
        return fail(InstanceViolation::kNonFiniteCoefficient, t,
                    "non-finite coefficient");
      }
      if (a < 0.0) {
        return fail(InstanceViolation::kNegativeCoefficient, t,
                    "negative coefficient");
      }
      any_positive |= a > 0.0;
    }
    if (!any_positive) {
      return fail(InstanceViolation::kAllZeroRow, t, "all-zero row");
    }
  }
  return {};
}

void GeneratorParams::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("GeneratorParams: ") + what);
  };
  require(num_variables >= 1, "variable count must be positive");
  require(num_constraints >= 1, "constraint count must be positive");
  require(min_cost >= 1, "objective coefficients must be positive");
  require(min_cost <= max_cost, "min objective coefficient exceeds max");
  require(min_coefficient >= 0, "constraint coefficients must be nonnegative");
  require(max_coefficient >= 1, "max constraint coefficient must be positive");
  require(min_coefficient <= max_coefficient,
          "min constraint coefficient exceeds max");
  require(min_zeros <= max_zeros, "min zero count exceeds max");
  require(max_zeros < num_variables,
          "max zero count must be below the variable count");
}

GeneratorParams GeneratorParams::Preset(const std::string& name) {
  GeneratorParams p;
  if (name == "instance1") {
    p = {10, 10, 1, 10, 1, 10, 0, 5, 1, 2, 1, 1, 0};
  } else if (name == "instance2") {
    p = {10, 25, 10, 25, 10, 25, 1, 5, 0, 1, 1, 1, 0};
  } else if (name == "instance3") {
    p = {44, 2, 1, 100, 1, 1, 11, 22, 0, 1, 11, 0, 0};
  } else if (name == "instance4") {
    p = {30, 15, 1, 100, 1, 1, 5, 20, 2, 2, 0, 0, 0};
  } else {
    throw std::invalid_argument("unknown generator preset: " + name);
  }
  return p;
}

void to_json(nlohmann::json& j, const GeneratorParams& p) {
  j = nlohmann::json{{"num_variables", p.num_variables},
                     {"num_constraints", p.num_constraints},
                     {"min_cost", p.min_cost},
                     {"max_cost", p.max_cost},
                     {"min_coefficient", p.min_coefficient},
                     {"max_coefficient", p.max_coefficient},
                     {"min_zeros", p.min_zeros},
                     {"max_zeros", p.max_zeros},
                     {"perfect_experts", p.perfect_experts},
                     {"online_experts", p.online_experts},
                     {"random_experts", p.random_experts},
                     {"adversarial_experts", p.adversarial_experts},
                     {"seed", p.seed}};
}

void from_json(const nlohmann::json& j, GeneratorParams& p) {
  GeneratorParams d;
  p.num_variables = j.value("num_variables", d.num_variables);
  p.num_constraints = j.value("num_constraints", d.num_constraints);
  p.min_cost = j.value("min_cost", d.min_cost);
  p.max_cost = j.value("max_cost", d.max_cost);
  p.min_coefficient = j.value("min_coefficient", d.min_coefficient);
  p.max_coefficient = j.value("max_coefficient", d.max_coefficient);
  p.min_zeros = j.value("min_zeros", d.min_zeros);
  p.max_zeros = j.value("max_zeros", d.max_zeros);
  p.perfect_experts = j.value("perfect_experts", d.perfect_experts);
  p.online_experts = j.value("online_experts", d.online_experts);
  p.random_experts = j.value("random_experts", d.random_experts);
  p.adversarial_experts = j.value("adversarial_experts", d.adversarial_experts);
  p.seed = j.value("seed", d.seed);
}

std::uint64_t UniformInt(std::mt19937_64& rng, std::uint64_t lo,
                         std::uint64_t hi) {
  if (lo >= hi) return lo;
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = span + 1;
  // Largest multiple of `range` that fits; draws above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + draw % range;
}

CoveringInstance GenerateRandom(const GeneratorParams& params) {
  params.Validate();
  std::mt19937_64 rng(params.seed);
  const std::size_t n = params.num_variables;

  CoveringInstance instance;
  instance.n = n;
  instance.costs.resize(n);
  for (double& c : instance.costs) {
    c = static_cast<double>(UniformInt(rng, params.min_cost, params.max_cost));
  }
  std::vector<std::size_t> positions(n);
  while (instance.rows.size() < params.num_constraints) {
    Vector row(n);
    for (double& a : row) {
      a = static_cast<double>(
          UniformInt(rng, params.min_coefficient, params.max_coefficient));
    }
    const std::size_t zeros =
        UniformInt(rng, params.min_zeros, params.max_zeros);
    // Partial Fisher-Yates: the first `zeros` slots become a uniform subset.
    std::iota(positions.begin(), positions.end(), 0);
    for (std::size_t z = 0; z < zeros; ++z) {
      const std::size_t pick = UniformInt(rng, z, n - 1);
      std::swap(positions[z], positions[pick]);
      row[positions[z]] = 0.0;
    }
    if (std::all_of(row.begin(), row.end(), [](double a) { return a == 0.0; })) {
      continue;
    }
    instance.rows.push_back(std::move(row));
  }
  instance.meta = {{"generator", "random"},
                   {"params", params},
                   {"seed", params.seed},
                   {"prng", kPrngName}};
  return instance;
}

CoveringInstance GenerateMwaWorstCase(std::size_t n) {
  if (n == 0) throw std::invalid_argument("mwa worst case needs n >= 1");
  CoveringInstance instance;
  instance.n = n;
  instance.costs.assign(n, 1.0);
  for (std::size_t t = 0; t < n; ++t) {
    Vector row(n, 0.0);
    std::fill(row.begin() + static_cast<std::ptrdiff_t>(t), row.end(), 1.0);
    instance.rows.push_back(std::move(row));
  }
  instance.meta = {{"generator", "mwa-worst"}, {"params", {{"n", n}}}};
  return instance;
}

ScriptedInstance GenerateAnandCounterexample(std::size_t num_experts,
                                             std::size_t num_batches) {
  const std::size_t K = num_experts;
  const std::size_t L = num_batches;
  if (K < 2) throw std::invalid_argument("counterexample needs K >= 2");
  if (L < 1) throw std::invalid_argument("counterexample needs L >= 1");
  const std::size_t n = L * K + 1;
  const std::size_t shared = n - 1;

  ScriptedInstance out;
  CoveringInstance& instance = out.instance;
  instance.n = n;
  instance.costs.assign(n, 1.0);

  std::vector<Vector> current(K, Vector(n, 0.0));
  for (std::size_t b = 0; b < L; ++b) {
    const std::size_t base = b * K;
    for (std::size_t j = 0; j + 1 < K; ++j) {
      Vector row(n, 0.0);
      for (std::size_t v = base + j; v < base + K; ++v) row[v] = 1.0;
      row[shared] = 1.0;
      instance.rows.push_back(std::move(row));
      // Experts whose variable left the row move to its smallest index; the
      // last expert always holds the batch's final variable.
      for (std::size_t k = 0; k + 1 < K; ++k) {
        current[k][base + std::max(k, j)] = 1.0;
      }
      current[K - 1][base + K - 1] = 1.0;
      out.predictions.push_back(current);
    }
  }
  instance.meta = {{"generator", "anand"},
                   {"params", {{"K", K}, {"L", L}}}};
  return out;
}

nlohmann::json InstanceToJson(const CoveringInstance& instance) {
  return nlohmann::json{{"n", instance.n},
                        {"costs", instance.costs},
                        {"rows", instance.rows},
                        {"meta", instance.meta}};
}

CoveringInstance InstanceFromJson(const nlohmann::json& j) {
  CoveringInstance instance;
  instance.costs = j.at("costs").get<Vector>();
  instance.n = j.value("n", instance.costs.size());
  instance.rows = j.at("rows").get<std::vector<Vector>>();
  if (j.contains("meta")) instance.meta = j.at("meta");
  return instance;
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CoveringError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CoveringError("malformed JSON in " + path + ": " + e.what());
  }
}

void WriteJsonFile(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CoveringError("cannot write " + path);
  out << j.dump(2) << '\n';
}

CoveringInstance ReadInstance(const std::string& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

void WriteInstance(const CoveringInstance& instance, const std::string& path) {
  WriteJsonFile(InstanceToJson(instance), path);
}

nlohmann::json PredictionsToJson(const ScriptedPredictions& predictions) {
  const std::size_t K = predictions.empty() ? 0 : predictions.front().size();
  const std::size_t n =
      K == 0 ? 0 : predictions.front().front().size();
  return nlohmann::json{{"n", n}, {"K", K}, {"steps", predictions}};
}

ScriptedPredictions PredictionsFromJson(const nlohmann::json& j) {
  return j.at("steps").get<ScriptedPredictions>();
}

}  // namespace covering
