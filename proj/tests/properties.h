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

// Property suites shared by the unit tests and the acceptance binary. Each
// returns the worst measured quantity so callers can hold it to a limit.

#ifndef COVERING_TESTS_PROPERTIES_H_
#define COVERING_TESTS_PROPERTIES_H_

#include <algorithm>
#include <cmath>
#include <string>

#include "covering/algorithm.h"
#include "covering/experts.h"
#include "covering/instance.h"
#include "covering/preprocess.h"

namespace covering::testing {

struct PreprocessStats {
  std::size_t steps = 0;     // expert-steps checked
  double tightness = 0.0;    // |a . aux - 1|
  double domination = 0.0;   // aux - s and scaled - s
  double interval = 0.0;     // distance of lowerable aux outside its range
  double untouched = 0.0;    // |aux - scaled| off the lowerable set
  double floor = 0.0;        // previous scaled - scaled
};

// Runs both preprocessing stages over generated expert streams until
// `steps` expert-steps were checked.
inline PreprocessStats PreprocessProperty(std::size_t steps,
                                          std::uint64_t seed) {
  PreprocessStats stats;
  for (std::uint64_t round = 0; stats.steps < steps; ++round) {
    GeneratorParams params =
        GeneratorParams::Preset("instance" + std::to_string(1 + round % 4));
    params.seed = seed + round;
    const CoveringInstance instance = GenerateRandom(params);
    auto roster = MakeRoster(WithDummy(RosterFromParams(params)));
    const PredictionMatrix m = CollectPredictions(instance, roster);
    std::vector<Vector> prev_scaled, prev_aux;
    for (std::size_t t = 0; t < m.num_steps() && stats.steps < steps; ++t) {
      const Vector& row = instance.rows[t];
      const std::span<const double> prev_row =
          t > 0 ? std::span<const double>(instance.rows[t - 1])
                : std::span<const double>();
      const TightenedPredictions p =
          Preprocess(m.step(t), prev_scaled, prev_aux, prev_row, row);
      for (std::size_t k = 0; k < m.num_experts(); ++k) {
        const Vector& s = m.step(t)[k];
        const Vector& scaled = p.scaled[k];
        const Vector& aux = p.auxiliary[k];
        stats.tightness = std::max(stats.tightness, std::abs(Dot(row, aux) - 1.0));
        std::vector<bool> lowerable(instance.n, false);
        for (std::size_t i : p.lowerable[k]) lowerable[i] = true;
        for (std::size_t i = 0; i < instance.n; ++i) {
          stats.domination = std::max(
              {stats.domination, aux[i] - s[i], scaled[i] - s[i]});
          if (t > 0) {
            stats.floor = std::max(stats.floor, prev_scaled[k][i] - scaled[i]);
          }
          if (lowerable[i]) {
            const double lower =
                t > 0 ? prev_aux[k][i] * instance.rows[t - 1][i] / row[i]
                      : 0.0;
            stats.interval = std::max(
                {stats.interval, lower - aux[i], aux[i] - scaled[i]});
          } else {
            stats.untouched =
                std::max(stats.untouched, std::abs(aux[i] - scaled[i]));
          }
        }
        ++stats.steps;
      }
      prev_scaled = p.scaled;
      prev_aux = p.auxiliary;
    }
  }
  return stats;
}

struct SolverStats {
  std::size_t programs = 0;
  double gap = 0.0;            // reported Frank-Wolfe gap
  double violation = 0.0;      // program constraints at the solution
  double gradient = 0.0;       // relative error against central differences
  double duplication = 0.0;    // objective change when every expert is twinned
  std::size_t iterations = 0;
};

// Recorded weights of the active experts, flattened like the program.
inline Vector RecordedWeights(const ConvexProgram& program,
                              const StepRecord& record) {
  Vector w(program.n * program.num_experts);
  for (std::size_t i = 0; i < program.n; ++i) {
    for (std::size_t j = 0; j < program.num_experts; ++j) {
      w[program.index(i, j)] = record.weights[i][record.active[j]];
    }
  }
  return w;
}

// Every expert appears twice with half the weight cap; the optimum is the
// same as the original program's.
inline ConvexProgram Twinned(const ConvexProgram& p) {
  ConvexProgram q = p;
  q.num_experts = 2 * p.num_experts;
  q.cap = p.cap / 2.0;
  q.predictions.assign(p.n * q.num_experts, 0.0);
  q.auxiliary.assign(p.n * q.num_experts, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t k = 0; k < p.num_experts; ++k) {
      for (std::size_t copy : {2 * k, 2 * k + 1}) {
        q.predictions[q.index(i, copy)] = p.predictions[p.index(i, k)];
        q.auxiliary[q.index(i, copy)] = p.auxiliary[p.index(i, k)];
      }
    }
  }
  return q;
}

inline double FiniteDifferenceError(const ConvexProgram& program,
                                    const Vector& w) {
  const Vector gradient = ObjectiveAndGradient(program, w).gradient;
  double worst = 0.0;
  for (std::size_t i = 0; i < program.n; ++i) {
    if (!program.included[i]) continue;
    for (std::size_t k = 0; k < program.num_experts; ++k) {
      const std::size_t j = program.index(i, k);
      const double h = 1e-6 * std::max(1.0, std::abs(w[j]));
      Vector plus = w, minus = w;
      plus[j] += h;
      minus[j] -= h;
      const double fd = (ObjectiveAndGradient(program, plus).value -
                         ObjectiveAndGradient(program, minus).value) /
                        (2.0 * h);
      worst = std::max(worst, std::abs(fd - gradient[j]) /
                                  std::max(1.0, std::abs(gradient[j])));
    }
  }
  return worst;
}

inline void AccumulateSolverStats(const CoveringInstance& instance,
                                  const AlgorithmRun& run, SolverStats& stats) {
  for (const StepRecord& record : run.trace) {
    const ConvexProgram program = ProgramFromRecord(instance, record);
    const Vector w = RecordedWeights(program, record);
    ++stats.programs;
    stats.gap = std::max(stats.gap, record.fw_gap);
    stats.iterations = std::max(stats.iterations, record.fw_iterations);
    stats.violation = std::max(stats.violation, program.MaxViolation(w));
    stats.gradient = std::max(stats.gradient, FiniteDifferenceError(program, w));
    const StepProgramSolution twin = SolveStepProgram(Twinned(program));
    stats.duplication =
        std::max(stats.duplication, std::abs(twin.objective - record.objective));
  }
}

}  // namespace covering::testing

#endif  // COVERING_TESTS_PROPERTIES_H_
