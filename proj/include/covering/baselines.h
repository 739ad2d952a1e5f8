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

// Comparison algorithms: multiplicative weights update for online covering,
// the expert-averaging continuous algorithm with halved targets, and the
// averaged expert solution.

#ifndef COVERING_BASELINES_H_
#define COVERING_BASELINES_H_

#include <span>
#include <vector>

#include "covering/types.h"

namespace covering {

// Tolerance on the row value at which the continuous growth stops.
inline constexpr double kGrowthTolerance = 1e-9;

struct MwaState {
  std::size_t n = 0;
  Vector x;

  explicit MwaState(std::size_t num_variables = 0)
      : n(num_variables), x(num_variables, 0.0) {}
};

// On an unsatisfied row, grows x_i along dx_i/dtau = (a_i / c_i)(x_i + 1/n)
// in closed form, x_i(tau) = (x_i + 1/n) exp(a_i tau / c_i) - 1/n, and stops
// at the first tau with a.x(tau) = 1.
void MwaStep(MwaState& state, std::span<const double> row,
             std::span<const double> costs);

struct AnandState {
  std::size_t num_experts = 0;
  // Pre-doubling solution; every variable stays at most kCap.
  Vector x;
  // Per-variable growth shift of the most recent row.
  Vector shift;

  static constexpr double kCap = 0.5;
  static constexpr double kTarget = 0.5;

  AnandState(std::size_t n = 0, std::size_t experts = 0)
      : num_experts(experts), x(n, 0.0), shift(n, 0.0) {}
};

// While a.x < 0.5, grows the row's variables along
// dx_i/dtau = (a_i / c_i)(x_i + shift_i), shift_i the average expert value,
// freezing variables that reach 0.5. `experts[k]` is expert k's solution
// for this row. Throws CoveringError if the row cannot reach 0.5.
void AnandStep(AnandState& state, std::span<const double> row,
               std::span<const double> costs,
               const std::vector<Vector>& experts);

// The final solution 2x.
Vector AnandFinalize(const AnandState& state);

// Cost of (1/K) sum_k s_k.
double AverageOfExperts(const std::vector<Vector>& solutions,
                        std::span<const double> costs);
Vector AverageSolution(const std::vector<Vector>& solutions);

}  // namespace covering

#endif  // COVERING_BASELINES_H_
