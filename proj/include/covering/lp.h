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

// A small dense linear programming solver and the benchmark programs built
// on top of it: the offline optimum, the best-linear-combination benchmark,
// its relaxation and dual, and the expert-supported benchmark.

#ifndef COVERING_LP_H_
#define COVERING_LP_H_

#include <string>
#include <vector>

#include "covering/instance.h"
#include "covering/types.h"

namespace covering {

class PredictionMatrix;

enum class Sense { kMinimize, kMaximize };
enum class Relation { kGreaterEqual, kLessEqual, kEqual };

struct LpTerm {
  std::size_t column;
  double value;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  std::string name;
};

struct LinearProgram {
  Sense sense = Sense::kMinimize;
  Vector objective;
  Vector lower;
  Vector upper;
  std::vector<std::string> column_names;
  std::vector<LpRow> rows;

  std::size_t num_columns() const { return objective.size(); }

  std::size_t AddColumn(double cost, double lo = 0.0, double hi = kInfinity,
                        std::string name = {});
  void AddRow(std::vector<LpTerm> terms, Relation relation, double rhs,
              std::string name = {});

  // Throws std::invalid_argument when dimensions or bounds are inconsistent.
  void Validate() const;

  // Largest relative violation of any row or bound at `x`.
  double MaxViolation(std::span<const double> x) const;
  double ObjectiveValue(std::span<const double> x) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vector primal;
  double objective = 0.0;
  std::size_t pivots = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

class LpError : public CoveringError {
 public:
  using CoveringError::CoveringError;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-8;
  // Zero means an automatic cap proportional to the tableau size.
  std::size_t max_pivots = 0;
};

// Two-phase primal simplex on a dense tableau with implicit variable bounds.
// Pricing is largest reduced cost with a Harris ratio test; a long run of
// degenerate pivots switches to Bland's smallest-index rule until the
// objective moves, so the method terminates on degenerate programs. Throws
// LpError when the pivot cap is reached.
LpSolution SolveLp(const LinearProgram& program,
                   const SimplexOptions& options = {});

// CPLEX LP text format, for cross-checking against external solvers.
std::string ToLpFormat(const LinearProgram& program);

// min c.x subject to every row of the instance, x >= 0.
LpSolution SolveOfflineOpt(const CoveringInstance& instance);

// Column layout shared by the benchmark builders. Steps are 0-based.
struct LinCombLayout {
  std::size_t num_steps = 0;
  std::size_t num_experts = 0;
  std::size_t n = 0;

  std::size_t weight(std::size_t t, std::size_t k) const {
    return t * num_experts + k;
  }
  // x_i^t in the benchmark program, y_i^t in the relaxation.
  std::size_t resource(std::size_t t, std::size_t i) const {
    return num_steps * num_experts + t * n + i;
  }
};

// Best linear combination benchmark: columns w_k^t and x_i^t, rows
// sum_k w_k^t = 1, x_i^t >= sum_k w_k^t s_ik^t, x_i^t >= x_i^{t-1};
// objective sum_i c_i x_i^T. Only active experts are included.
LinearProgram BuildLinCombLp(const CoveringInstance& instance,
                             const PredictionMatrix& predictions);

// Relaxation: sum_k w_k^t >= 1 and
// y_i^t >= sum_k (w_k^t s_ik^t - w_k^{t-1} s_ik^{t-1}); objective
// sum_{t,i} c_i y_i^t.
LinearProgram BuildRelaxationLp(const CoveringInstance& instance,
                                const PredictionMatrix& predictions);

// Dual of the relaxation: max sum_t alpha^t subject to
// alpha^t + sum_i s_ik^t (beta_i^{t+1} - beta_i^t) <= 0 and beta_i^t <= c_i,
// with beta_i^{T+1} = 0. Columns are alpha^1..alpha^T then beta_i^t.
LinearProgram BuildDualLp(const CoveringInstance& instance,
                          const PredictionMatrix& predictions);

// Cheapest covering solution that dominates, for every resource and step,
// at least one active expert's suggestion.
double SolveDynamic(const CoveringInstance& instance,
                    const PredictionMatrix& predictions);

}  // namespace covering

#endif  // COVERING_LP_H_
