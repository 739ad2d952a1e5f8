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

// Per-step preparation of expert predictions: each solution is scaled down
// toward the previous step's scaled solution, then an auxiliary solution
// that is exactly tight on the current row is derived from it.

#ifndef COVERING_PREPROCESS_H_
#define COVERING_PREPROCESS_H_

#include <span>
#include <vector>

#include "covering/types.h"

namespace covering {

// Smallest theta in [0, 1] with sum_i a_i max(theta s_i, floor_i) >= 1,
// found exactly from the sorted breakpoints. Returns the scaled vector
// max(theta s, floor). Inputs with a.s in [1 - tolerance, 1] are returned
// as max(s, floor). Throws CoveringError("expert not feasible") below that.
Vector Downscale(std::span<const double> s, std::span<const double> floor,
                 std::span<const double> row, double tolerance = 1e-7);

// Auxiliary solution tight on `row`. Coordinates with
// s_i > prev_aux_i prev_row_i / row_i and row_i > 0 may be lowered, in
// increasing index order, down to that lower endpoint until the row value
// reaches one; all others keep s_i. Pass empty previous vectors at the
// first step. `lowerable`, if given, receives the candidate index set.
Vector Tighten(std::span<const double> s, std::span<const double> prev_aux,
               std::span<const double> prev_row, std::span<const double> row,
               std::vector<std::size_t>* lowerable = nullptr);

// Scaled and auxiliary solutions of every expert for one step.
struct TightenedPredictions {
  std::vector<Vector> scaled;
  std::vector<Vector> auxiliary;
  std::vector<std::vector<std::size_t>> lowerable;
};

// Runs both stages for every expert. `prev_scaled` and `prev_aux` are empty
// at the first step.
TightenedPredictions Preprocess(const std::vector<Vector>& solutions,
                                const std::vector<Vector>& prev_scaled,
                                const std::vector<Vector>& prev_aux,
                                std::span<const double> prev_row,
                                std::span<const double> row);

}  // namespace covering

#endif  // COVERING_PREPROCESS_H_
