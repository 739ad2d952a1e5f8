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

#include <filesystem>

#include "covering/instance.h"
#include "covering/lp.h"
#include "doctest.h"
#include "test_support.h"

namespace covering {
namespace {

using testing::MakeInstance;

TEST_CASE("Validate accepts the minimal instance") {
  CHECK(Validate(MakeInstance({1.0}, {{1.0}})).ok());
}

TEST_CASE("Validate reports each violation") {
  const InstanceReport zero = Validate(MakeInstance({1.0, 1.0}, {{0.0, 0.0}}));
  CHECK(zero.violation == InstanceViolation::kAllZeroRow);
  CHECK(zero.index == 0u);
  CHECK(Validate(MakeInstance({0.0, 1.0}, {{1.0, 1.0}})).violation ==
        InstanceViolation::kNonpositiveCost);
  CHECK(Validate(MakeInstance({1.0}, {{-1.0}})).violation ==
        InstanceViolation::kNegativeCoefficient);
  CHECK(Validate(MakeInstance({1.0}, {{1.0, 2.0}})).violation ==
        InstanceViolation::kDimensionMismatch);
  CHECK(Validate(MakeInstance({1.0}, {{std::nan("")}})).violation ==
        InstanceViolation::kNonFiniteCoefficient);
}

TEST_CASE("Instance 1 preset respects its ranges") {
  const GeneratorParams params = GeneratorParams::Preset("instance1");
  const CoveringInstance instance = GenerateRandom(params);
  CHECK(instance.n == 10);
  REQUIRE(instance.num_rows() == 10);
  CHECK(Validate(instance).ok());
  for (double c : instance.costs) {
    CHECK(c >= params.min_cost);
    CHECK(c <= params.max_cost);
  }
  for (const Vector& row : instance.rows) {
    std::size_t zeros = 0;
    for (double a : row) {
      if (a == 0.0) {
        ++zeros;
      } else {
        CHECK(a >= 1.0);
        CHECK(a <= 10.0);
      }
    }
    CHECK(zeros <= 5);
  }
}

TEST_CASE("Degenerate ranges give the unit instance") {
  GeneratorParams params;
  params.num_variables = 1;
  params.num_constraints = 1;
  params.min_cost = params.max_cost = 1;
  params.min_coefficient = params.max_coefficient = 1;
  params.min_zeros = params.max_zeros = 0;
  const CoveringInstance instance = GenerateRandom(params);
  CHECK(instance.costs == Vector{1.0});
  CHECK(instance.rows == std::vector<Vector>{{1.0}});
}

TEST_CASE("Generation is deterministic in the seed") {
  GeneratorParams params = GeneratorParams::Preset("instance2");
  params.seed = 17;
  const CoveringInstance a = GenerateRandom(params);
  const CoveringInstance b = GenerateRandom(params);
  CHECK(a.costs == b.costs);
  CHECK(a.rows == b.rows);
  params.seed = 18;
  CHECK(GenerateRandom(params).rows != a.rows);
}

TEST_CASE("Bad parameters are rejected") {
  GeneratorParams params;
  params.min_cost = 0;
  CHECK_THROWS_AS(params.Validate(), std::invalid_argument);
  params = GeneratorParams{};
  params.max_zeros = params.num_variables;
  CHECK_THROWS_AS(params.Validate(), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorParams::Preset("instance9"), std::invalid_argument);
}

TEST_CASE("MWA worst case family") {
  const CoveringInstance three = GenerateMwaWorstCase(3);
  CHECK(three.costs == Vector{1.0, 1.0, 1.0});
  CHECK(three.rows ==
        std::vector<Vector>{{1.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 0.0, 1.0}});
  const LpSolution opt = SolveOfflineOpt(three);
  REQUIRE(opt.optimal());
  CHECK(opt.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(GenerateMwaWorstCase(1).rows == std::vector<Vector>{{1.0}});
  CHECK(SolveOfflineOpt(GenerateMwaWorstCase(10)).objective ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Counterexample family shape") {
  const ScriptedInstance k3l1 = GenerateAnandCounterexample(3, 1);
  CHECK(k3l1.instance.n == 4);
  CHECK(k3l1.instance.rows ==
        std::vector<Vector>{{1.0, 1.0, 1.0, 1.0}, {0.0, 1.0, 1.0, 1.0}});
  const std::vector<Vector>& first = k3l1.predictions[0];
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(first[k][i] == (i == k ? 1.0 : 0.0));
    }
  }

  const ScriptedInstance k3l2 = GenerateAnandCounterexample(3, 2);
  CHECK(k3l2.instance.n == 7);
  REQUIRE(k3l2.instance.num_rows() == 4);
  CHECK(k3l2.instance.rows[2] ==
        Vector{0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0});

  for (std::size_t K : {2u, 4u, 5u}) {
    for (std::size_t L : {1u, 3u}) {
      const ScriptedInstance g = GenerateAnandCounterexample(K, L);
      const std::size_t shared = L * K;
      for (std::size_t t = 0; t < g.predictions.size(); ++t) {
        const std::size_t batch = t / (K - 1);
        for (const Vector& s : g.predictions[t]) CHECK(s[shared] == 0.0);
        CHECK(g.predictions[t][K - 1][batch * K + K - 1] == 1.0);
      }
    }
  }
}

TEST_CASE("Instances round-trip through JSON files") {
  GeneratorParams params = GeneratorParams::Preset("instance3");
  params.seed = 3;
  const CoveringInstance instance = GenerateRandom(params);
  const std::string path =
      (std::filesystem::temp_directory_path() / "covering_instance_test.json")
          .string();
  WriteInstance(instance, path);
  const CoveringInstance back = ReadInstance(path);
  CHECK(back.costs == instance.costs);
  CHECK(back.rows == instance.rows);
  CHECK(back.meta == instance.meta);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace covering
