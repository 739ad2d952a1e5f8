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

#include "covering/baselines.h"

#include <algorithm>
#include <cmath>

namespace covering {
namespace {

// Smallest tau in [lo, hi] with value(tau) >= target, to within
// kGrowthTolerance on the value. `value` must be nondecreasing and
// value(hi) >= target.
template <typename F>
double SolveStoppingTime(const F& value, double lo, double hi, double target) {
  for (int iter = 0; iter < 300; ++iter) {
    if (value(hi) - target <= kGrowthTolerance) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (value(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

void MwaStep(MwaState& state, std::span<const double> row,
             std::span<const double> costs) {
  if (Dot(row, state.x) >= 1.0) return;
  const double shift = 1.0 / static_cast<double>(state.n);
  auto grown = [&](std::size_t i, double tau) {
    if (row[i] <= 0.0) return state.x[i];
    return (state.x[i] + shift) * std::exp(row[i] * tau / costs[i]) - shift;
  };
  auto value = [&](double tau) {
    double sum = 0.0;
    for (std::size_t i = 0; i < state.n; ++i) {
      if (row[i] > 0.0) sum += row[i] * grown(i, tau);
    }
    return sum;
  };
  double hi = 1.0;
  while (value(hi) < 1.0) hi *= 2.0;
  const double tau = SolveStoppingTime(value, 0.0, hi, 1.0);
  for (std::size_t i = 0; i < state.n; ++i) state.x[i] = grown(i, tau);
}

void AnandStep(AnandState& state, std::span<const double> row,
               std::span<const double> costs,
               const std::vector<Vector>& experts) {
  const std::size_t n = state.x.size();
  const double inv_k = 1.0 / static_cast<double>(experts.size());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (const Vector& s : experts) sum += s[i];
    state.shift[i] = inv_k * sum;
  }
  constexpr double kCap = AnandState::kCap;
  constexpr double kTarget = AnandState::kTarget;

  std::vector<std::size_t> growing;
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] > 0.0 && state.x[i] < kCap && state.x[i] + state.shift[i] > 0.0) {
      growing.push_back(i);
    }
  }
  // Event-driven integration: between two freezing events every growing
  // variable follows its exponential closed form.
  while (Dot(row, state.x) < kTarget) {
    if (growing.empty()) {
      throw CoveringError("anand: row cannot reach the 0.5 target");
    }
    double next_event = kInfinity;
    std::size_t next_frozen = 0;
    for (std::size_t g = 0; g < growing.size(); ++g) {
      const std::size_t i = growing[g];
      const double hit = costs[i] / row[i] *
                         std::log((kCap + state.shift[i]) /
                                  (state.x[i] + state.shift[i]));
      if (hit < next_event) {
        next_event = hit;
        next_frozen = g;
      }
    }
    auto grown = [&](std::size_t i, double tau) {
      return std::min(kCap, (state.x[i] + state.shift[i]) *
                                    std::exp(row[i] * tau / costs[i]) -
                                state.shift[i]);
    };
    double fixed = Dot(row, state.x);
    for (std::size_t i : growing) fixed -= row[i] * state.x[i];
    auto value = [&](double tau) {
      double sum = fixed;
      for (std::size_t i : growing) sum += row[i] * grown(i, tau);
      return sum;
    };
    if (value(next_event) >= kTarget) {
      const double tau = SolveStoppingTime(value, 0.0, next_event, kTarget);
      for (std::size_t i : growing) state.x[i] = grown(i, tau);
      return;
    }
    for (std::size_t i : growing) state.x[i] = grown(i, next_event);
    state.x[growing[next_frozen]] = kCap;
    growing.erase(growing.begin() + static_cast<std::ptrdiff_t>(next_frozen));
  }
}

Vector AnandFinalize(const AnandState& state) {
  Vector doubled = state.x;
  for (double& v : doubled) v *= 2.0;
  return doubled;
}

Vector AverageSolution(const std::vector<Vector>& solutions) {
  if (solutions.empty()) return {};
  Vector avg(solutions.front().size(), 0.0);
  for (const Vector& s : solutions) {
    for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += s[i];
  }
  for (double& v : avg) v /= static_cast<double>(solutions.size());
  return avg;
}

double AverageOfExperts(const std::vector<Vector>& solutions,
                        std::span<const double> costs) {
  return Dot(AverageSolution(solutions), costs);
}

}  // namespace covering
