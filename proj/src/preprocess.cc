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

#include "covering/preprocess.h"

#include <algorithm>
#include <stdexcept>

namespace covering {

Vector Downscale(std::span<const double> s, std::span<const double> floor,
                 std::span<const double> row, double tolerance) {
  const std::size_t n = s.size();
  if (row.size() != n || (!floor.empty() && floor.size() != n)) {
    throw std::invalid_argument("Downscale: dimension mismatch");
  }
  auto lo = [&](std::size_t i) { return floor.empty() ? 0.0 : floor[i]; };
  const double total = Dot(row, s);
  if (total < 1.0 - tolerance) throw CoveringError("expert not feasible");
  if (total <= 1.0) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(s[i], lo(i));
    return out;
  }

  // f(theta) = sum_i a_i max(theta s_i, lo_i) is piecewise linear and
  // nondecreasing with a breakpoint at lo_i / s_i for each coordinate.
  std::vector<std::pair<double, std::size_t>> breaks;
  double value = 0.0;  // f(0)
  double slope = 0.0;  // slope of f just right of the current theta
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] <= 0.0) continue;
    value += row[i] * lo(i);
    if (s[i] <= 0.0) continue;
    const double b = lo(i) / s[i];
    if (b <= 0.0) {
      slope += row[i] * s[i];
    } else if (b < 1.0) {
      breaks.emplace_back(b, i);
    }
  }
  Vector out(n);
  auto fill = [&](double theta) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(theta * s[i], lo(i));
    return out;
  };
  if (value >= 1.0) return fill(0.0);
  std::sort(breaks.begin(), breaks.end());
  double theta = 0.0;
  for (const auto& [b, i] : breaks) {
    const double next = value + slope * (b - theta);
    if (next >= 1.0) break;
    value = next;
    theta = b;
    slope += row[i] * s[i];
  }
  // slope > 0 here: otherwise f would stay below one up to theta = 1.
  theta = std::min(1.0, theta + (1.0 - value) / slope);
  return fill(theta);
}

Vector Tighten(std::span<const double> s, std::span<const double> prev_aux,
               std::span<const double> prev_row, std::span<const double> row,
               std::vector<std::size_t>* lowerable) {
  const std::size_t n = s.size();
  const bool first = prev_aux.empty();
  Vector aux(s.begin(), s.end());
  if (lowerable) lowerable->clear();
  double excess = Dot(row, s) - 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] <= 0.0) continue;
    const double bound = first ? 0.0 : prev_aux[i] * prev_row[i] / row[i];
    if (s[i] <= bound) continue;
    if (lowerable) lowerable->push_back(i);
    if (excess <= 0.0) continue;
    const double cut = std::min(s[i] - bound, excess / row[i]);
    aux[i] = s[i] - cut;
    excess -= cut * row[i];
  }
  return aux;
}

TightenedPredictions Preprocess(const std::vector<Vector>& solutions,
                                const std::vector<Vector>& prev_scaled,
                                const std::vector<Vector>& prev_aux,
                                std::span<const double> prev_row,
                                std::span<const double> row) {
  TightenedPredictions out;
  const std::size_t K = solutions.size();
  out.scaled.resize(K);
  out.auxiliary.resize(K);
  out.lowerable.resize(K);
  const bool first = prev_scaled.empty();
  for (std::size_t k = 0; k < K; ++k) {
    out.scaled[k] = Downscale(solutions[k],
                              first ? std::span<const double>()
                                    : std::span<const double>(prev_scaled[k]),
                              row);
    out.auxiliary[k] =
        Tighten(out.scaled[k],
                first ? std::span<const double>()
                      : std::span<const double>(prev_aux[k]),
                prev_row, row, &out.lowerable[k]);
  }
  return out;
}

}  // namespace covering
