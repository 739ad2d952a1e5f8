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

// The online algorithm that follows several experts at once. On every row
// it picks per-resource expert weights by minimizing a shifted entropy
// objective subject to covering the row with the auxiliary solutions, then
// raises x to the weighted prediction wherever that exceeds x.

#ifndef COVERING_ALGORITHM_H_
#define COVERING_ALGORITHM_H_

#include <memory>
#include <span>
#include <vector>

#include "covering/experts.h"
#include "covering/instance.h"
#include "covering/preprocess.h"
#include "covering/types.h"
#include "json.hpp"

namespace covering {

// One step's program over weights w_ik, stored row-major as w[i * K + k]:
//
//   min  sum_i c_i [(u_i + shift_i) ln((u_i + shift_i) / denom_i) - u_i]
//   s.t. sum_i row_i sum_k aux_ik w_ik >= 1
//        sum_k w_ik >= 1        for every included i
//        0 <= w_ik <= cap       (w_ik = 0 for excluded i)
//
// where u_i = sum_k s_ik w_ik. A resource is included when some s_ik > 0.
struct ConvexProgram {
  std::size_t n = 0;
  std::size_t num_experts = 0;
  Vector costs;
  Vector row;
  Vector predictions;  // s_ik, n * K
  Vector auxiliary;    // aux_ik, n * K
  Vector shift;
  Vector denominator;
  std::vector<bool> included;
  double cap = 1.0;

  std::size_t index(std::size_t i, std::size_t k) const {
    return i * num_experts + k;
  }
  // u_i for every resource.
  Vector Mass(std::span<const double> w) const;
  // Maximum violation of the linear constraints and bounds at w.
  double MaxViolation(std::span<const double> w) const;
  // Uniform weights 1/K on included resources.
  Vector UniformPoint() const;
};

struct ValueAndGradient {
  double value = 0.0;
  Vector gradient;
};

// Throws CoveringError on a nonpositive logarithm argument.
ValueAndGradient ObjectiveAndGradient(const ConvexProgram& program,
                                      std::span<const double> w);

struct FrankWolfeOptions {
  double gap_tolerance = 1e-6;
  std::size_t max_iterations = 10000;
};

struct StepProgramSolution {
  Vector w;
  double objective = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  bool cap_active = false;
};

class FrankWolfeError : public CoveringError {
 public:
  FrankWolfeError(const std::string& message, double gap)
      : CoveringError(message), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

// Blended pairwise Frank-Wolfe with exact line search, started at the
// uniform point. Each linear oracle call is followed by pairwise steps among
// the vertices already in the active set. The linear subproblem is solved with SolveLp. Throws
// FrankWolfeError when the iteration cap is hit above the gap tolerance.
StepProgramSolution SolveStepProgram(const ConvexProgram& program,
                                     const FrankWolfeOptions& options = {});

// Denominator of the logarithm on the first row.
enum class FirstDenominator {
  kOne,    // constant one
  kShift,  // the current shift, as if the previous mass were zero
};

struct AlgorithmOptions {
  bool add_dummy = true;
  FirstDenominator first_denominator = FirstDenominator::kShift;
  // Zero means the number of active experts.
  double weight_cap = 0.0;
  FrankWolfeOptions frank_wolfe;
};

// Everything the algorithm decided at one step. Per-expert arrays use the
// global expert index; inactive experts carry zeros.
struct StepRecord {
  std::size_t t = 0;
  std::vector<std::size_t> active;
  std::vector<Vector> weights;  // [i][k]
  std::vector<Vector> scaled;   // [k][i]
  std::vector<Vector> auxiliary;
  std::vector<std::vector<std::size_t>> lowerable;
  Vector x;
  Vector shift;
  Vector previous_denominator;
  Vector denominator;
  Vector prediction_sums;  // sum_k scaled s_ik
  double weight_cap = 0.0;
  double objective = 0.0;
  double fw_gap = 0.0;
  std::size_t fw_iterations = 0;
  bool cap_active = false;
};

nlohmann::json StepRecordToJson(const StepRecord& record);

// The program solved at a recorded step, over the active experts in order.
ConvexProgram ProgramFromRecord(const CoveringInstance& instance,
                                const StepRecord& record);

// Streaming form of the algorithm.
class ExpertsAlgorithm {
 public:
  ExpertsAlgorithm(const CoveringInstance& instance, std::size_t num_experts,
                   AlgorithmOptions options = {});

  // Consumes row t with every expert's current solution. `active` marks
  // the experts still trusted; inactive entries are ignored.
  const Vector& Step(std::size_t t, const std::vector<Vector>& solutions,
                     const std::vector<bool>& active);

  const Vector& x() const { return x_; }
  const std::vector<StepRecord>& trace() const { return trace_; }

 private:
  const CoveringInstance& instance_;
  std::size_t num_experts_;
  AlgorithmOptions options_;
  Vector x_;
  Vector denominator_;
  std::vector<Vector> scaled_;
  std::vector<Vector> auxiliary_;
  std::vector<StepRecord> trace_;
};

struct AlgorithmRun {
  Vector x;
  double cost = 0.0;
  double rho = 1.0;
  std::size_t num_experts = 0;  // active at the last step
  std::vector<StepRecord> trace;
};

// Runs the algorithm over recorded predictions, honoring their drop marks.
AlgorithmRun RunAlgorithm(const CoveringInstance& instance,
                          const PredictionMatrix& predictions,
                          const AlgorithmOptions& options = {});

// Largest ratio, over resources, between the largest and smallest positive
// per-step prediction sums. One when no resource ever has two positive sums.
double ComputeRho(const std::vector<Vector>& prediction_sums);
double ComputeRho(const std::vector<StepRecord>& trace);

// Appends a dummy expert to a roster.
RosterSpec WithDummy(RosterSpec roster);

// The algorithm over an inner roster, exposed as an expert.
class AlgorithmExpert : public Expert {
 public:
  AlgorithmExpert(RosterSpec roster, AlgorithmOptions options = {})
      : roster_(std::move(roster)), options_(options) {}
  std::string name() const override { return "algorithm"; }
  void Start(const CoveringInstance& instance) override;
  Vector Step(std::size_t t, std::span<const double> row) override;

 private:
  RosterSpec roster_;
  AlgorithmOptions options_;
  std::vector<std::unique_ptr<Expert>> experts_;
  std::unique_ptr<StreamValidator> validator_;
  std::unique_ptr<ExpertsAlgorithm> algorithm_;
};

// Runs the algorithm with the two given online algorithms as its experts
// (plus the dummy when enabled).
AlgorithmRun Combine(const CoveringInstance& instance,
                     std::unique_ptr<Expert> first,
                     std::unique_ptr<Expert> second,
                     const AlgorithmOptions& options = {});

}  // namespace covering

#endif  // COVERING_ALGORITHM_H_
