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

#include "covering/algorithm.h"

#include <algorithm>
#include <cmath>

#include "covering/lp.h"

namespace covering {

Vector ConvexProgram::Mass(std::span<const double> w) const {
  Vector u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < num_experts; ++k) {
      u[i] += predictions[index(i, k)] * w[index(i, k)];
    }
  }
  return u;
}

double ConvexProgram::MaxViolation(std::span<const double> w) const {
  double worst = 0.0;
  double cover = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t k = 0; k < num_experts; ++k) {
      const double v = w[index(i, k)];
      worst = std::max({worst, -v, v - cap});
      if (!included[i]) worst = std::max(worst, std::abs(v));
      total += v;
      cover += row[i] * auxiliary[index(i, k)] * v;
    }
    if (included[i]) worst = std::max(worst, 1.0 - total);
  }
  return std::max(worst, 1.0 - cover);
}

Vector ConvexProgram::UniformPoint() const {
  Vector w(n * num_experts, 0.0);
  const double share = 1.0 / static_cast<double>(num_experts);
  for (std::size_t i = 0; i < n; ++i) {
    if (!included[i]) continue;
    for (std::size_t k = 0; k < num_experts; ++k) w[index(i, k)] = share;
  }
  return w;
}

ValueAndGradient ObjectiveAndGradient(const ConvexProgram& program,
                                      std::span<const double> w) {
  ValueAndGradient out;
  out.gradient.assign(program.n * program.num_experts, 0.0);
  const Vector u = program.Mass(w);
  for (std::size_t i = 0; i < program.n; ++i) {
    if (!program.included[i]) continue;
    const double mass = u[i] + program.shift[i];
    if (!(mass > 0.0) || !(program.denominator[i] > 0.0)) {
      throw CoveringError("objective: logarithm argument out of domain");
    }
    const double log_ratio = std::log(mass / program.denominator[i]);
    out.value += program.costs[i] * (mass * log_ratio - u[i]);
    for (std::size_t k = 0; k < program.num_experts; ++k) {
      out.gradient[program.index(i, k)] =
          program.costs[i] * program.predictions[program.index(i, k)] *
          log_ratio;
    }
  }
  return out;
}

namespace {

// Linear minimization over the step polytope, solved as an LP.
class LinearOracle {
 public:
  explicit LinearOracle(const ConvexProgram& program) : program_(program) {
    const std::size_t K = program.num_experts;
    std::vector<LpTerm> cover;
    for (std::size_t i = 0; i < program.n; ++i) {
      if (!program.included[i]) continue;
      std::vector<LpTerm> total;
      for (std::size_t k = 0; k < K; ++k) {
        const std::size_t col = lp_.AddColumn(0.0, 0.0, program.cap);
        columns_.push_back(program.index(i, k));
        total.push_back({col, 1.0});
        const double a = program.row[i] * program.auxiliary[program.index(i, k)];
        if (a != 0.0) cover.push_back({col, a});
      }
      lp_.AddRow(std::move(total), Relation::kGreaterEqual, 1.0);
    }
    lp_.AddRow(std::move(cover), Relation::kGreaterEqual, 1.0);
  }

  Vector Minimize(std::span<const double> direction) {
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      lp_.objective[c] = direction[columns_[c]];
    }
    const LpSolution solution = SolveLp(lp_);
    if (!solution.optimal()) {
      throw CoveringError(std::string("step program oracle: ") +
                          ToString(solution.status));
    }
    Vector v(program_.n * program_.num_experts, 0.0);
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      v[columns_[c]] = std::clamp(solution.primal[c], 0.0, program_.cap);
    }
    return v;
  }

 private:
  const ConvexProgram& program_;
  LinearProgram lp_;
  std::vector<std::size_t> columns_;
};

// Derivative of gamma -> f(w + gamma d) given u = Mass(w) and e = Mass(d).
double DirectionalDerivative(const ConvexProgram& program, const Vector& u,
                             const Vector& e, double gamma) {
  double sum = 0.0;
  for (std::size_t i = 0; i < program.n; ++i) {
    if (!program.included[i] || e[i] == 0.0) continue;
    const double mass = u[i] + gamma * e[i] + program.shift[i];
    sum += program.costs[i] * e[i] * std::log(mass / program.denominator[i]);
  }
  return sum;
}

// Exact minimizer of the convex restriction on [0, gamma_max].
double LineSearch(const ConvexProgram& program, std::span<const double> w,
                  std::span<const double> d, double gamma_max) {
  const Vector u = program.Mass(w);
  const Vector e = program.Mass(d);
  if (DirectionalDerivative(program, u, e, 0.0) >= 0.0) return 0.0;
  if (DirectionalDerivative(program, u, e, gamma_max) <= 0.0) return gamma_max;
  double lo = 0.0;
  double hi = gamma_max;
  for (int iter = 0; iter < 200 && hi - lo > 1e-16 * gamma_max; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (DirectionalDerivative(program, u, e, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool SameAtom(const Vector& a, const Vector& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j] - b[j]) > 1e-12) return false;
  }
  return true;
}

}  // namespace

StepProgramSolution SolveStepProgram(const ConvexProgram& program,
                                     const FrankWolfeOptions& options) {
  LinearOracle oracle(program);
  StepProgramSolution out;
  out.w = program.UniformPoint();
  std::vector<Vector> atoms{out.w};
  std::vector<double> alphas{1.0};
  const std::size_t dim = out.w.size();
  Vector direction(dim);

  for (;;) {
    const ValueAndGradient vg = ObjectiveAndGradient(program, out.w);
    out.objective = vg.value;
    const Vector toward = oracle.Minimize(vg.gradient);
    double fw_slope = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      fw_slope += vg.gradient[j] * (toward[j] - out.w[j]);
    }
    out.gap = -fw_slope;
    if (out.gap <= options.gap_tolerance) break;
    if (out.iterations >= options.max_iterations) {
      throw FrankWolfeError("Frank-Wolfe iteration cap reached with gap " +
                                std::to_string(out.gap),
                            out.gap);
    }
    ++out.iterations;

    // Pairwise step from the atom with the largest gradient product to the
    // oracle vertex, followed by local pairwise steps inside the current
    // atom set until its local gap drops below half the Frank-Wolfe gap.
    const double fw_gap = out.gap;
    bool use_oracle = true;
    for (std::size_t inner = 0; inner < 1000; ++inner) {
      const Vector g =
          inner == 0 ? vg.gradient : ObjectiveAndGradient(program, out.w).gradient;
      std::size_t away = 0;
      std::size_t best = 0;
      double away_score = -kInfinity;
      double best_score = kInfinity;
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        const double score = Dot(g, atoms[a]);
        if (score > away_score) {
          away_score = score;
          away = a;
        }
        if (score < best_score) {
          best_score = score;
          best = a;
        }
      }
      std::size_t target = best;
      const Vector* toward_atom = &atoms[best];
      if (use_oracle) {
        target = atoms.size();
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          if (SameAtom(atoms[a], toward)) target = a;
        }
        toward_atom = &toward;
        use_oracle = false;
      } else if (away_score - best_score < 0.5 * fw_gap) {
        break;
      }
      if (target == away) break;
      for (std::size_t j = 0; j < dim; ++j) {
        direction[j] = (*toward_atom)[j] - atoms[away][j];
      }
      const double gamma = LineSearch(program, out.w, direction, alphas[away]);
      if (gamma <= 0.0) break;
      for (std::size_t j = 0; j < dim; ++j) out.w[j] += gamma * direction[j];
      if (target < atoms.size()) {
        alphas[target] += gamma;
      } else {
        atoms.push_back(*toward_atom);
        alphas.push_back(gamma);
      }
      alphas[away] -= gamma;
      if (alphas[away] <= 1e-15) {
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(away));
        alphas.erase(alphas.begin() + static_cast<std::ptrdiff_t>(away));
      }
    }
  }
  for (double v : out.w) {
    if (v >= program.cap - 1e-9) out.cap_active = true;
  }
  return out;
}

nlohmann::json StepRecordToJson(const StepRecord& r) {
  nlohmann::json lowerable = nlohmann::json::array();
  for (const auto& set : r.lowerable) lowerable.push_back(set);
  return nlohmann::json{
      {"t", r.t},
      {"active", r.active},
      {"w", r.weights},
      {"x", r.x},
      {"delta", r.shift},
      {"D_prev", r.previous_denominator},
      {"D", r.denominator},
      {"prediction_sums", r.prediction_sums},
      {"s", r.scaled},
      {"s_hat", r.auxiliary},
      {"I", lowerable},
      {"weight_cap", r.weight_cap},
      {"objective", r.objective},
      {"fw_gap", r.fw_gap},
      {"fw_iters", r.fw_iterations},
      {"cap_active", r.cap_active},
  };
}

ConvexProgram ProgramFromRecord(const CoveringInstance& instance,
                                const StepRecord& record) {
  const std::size_t n = instance.n;
  const std::size_t K = record.active.size();
  ConvexProgram program;
  program.n = n;
  program.num_experts = K;
  program.costs = instance.costs;
  program.row = instance.rows[record.t];
  program.predictions.assign(n * K, 0.0);
  program.auxiliary.assign(n * K, 0.0);
  program.shift = record.shift;
  program.denominator = record.previous_denominator;
  program.included.assign(n, false);
  program.cap = record.weight_cap;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      const std::size_t k = record.active[j];
      program.predictions[program.index(i, j)] = record.scaled[k][i];
      program.auxiliary[program.index(i, j)] = record.auxiliary[k][i];
      if (record.scaled[k][i] > 0.0) program.included[i] = true;
    }
  }
  return program;
}

ExpertsAlgorithm::ExpertsAlgorithm(const CoveringInstance& instance,
                                   std::size_t num_experts,
                                   AlgorithmOptions options)
    : instance_(instance),
      num_experts_(num_experts),
      options_(options),
      x_(instance.n, 0.0),
      denominator_(instance.n, 1.0),
      scaled_(num_experts),
      auxiliary_(num_experts) {}

const Vector& ExpertsAlgorithm::Step(std::size_t t,
                                     const std::vector<Vector>& solutions,
                                     const std::vector<bool>& active) {
  const std::size_t n = instance_.n;
  const std::span<const double> row = instance_.rows[t];
  const std::span<const double> prev_row =
      t > 0 ? std::span<const double>(instance_.rows[t - 1])
            : std::span<const double>();

  StepRecord record;
  record.t = t;
  for (std::size_t k = 0; k < num_experts_; ++k) {
    if (active[k]) record.active.push_back(k);
  }
  if (record.active.empty()) throw NoValidExpertsError();
  const std::size_t K = record.active.size();

  record.scaled.assign(num_experts_, Vector(n, 0.0));
  record.auxiliary.assign(num_experts_, Vector(n, 0.0));
  record.lowerable.assign(num_experts_, {});
  for (std::size_t k : record.active) {
    const bool fresh = scaled_[k].empty();
    record.scaled[k] = Downscale(
        solutions[k],
        fresh ? std::span<const double>() : std::span<const double>(scaled_[k]),
        row);
    record.auxiliary[k] =
        Tighten(record.scaled[k],
                fresh ? std::span<const double>()
                      : std::span<const double>(auxiliary_[k]),
                fresh ? std::span<const double>() : prev_row, row,
                &record.lowerable[k]);
  }

  ConvexProgram program;
  program.n = n;
  program.num_experts = K;
  program.costs = instance_.costs;
  program.row.assign(row.begin(), row.end());
  program.predictions.assign(n * K, 0.0);
  program.auxiliary.assign(n * K, 0.0);
  program.shift.assign(n, 0.0);
  program.denominator.assign(n, 1.0);
  program.included.assign(n, false);
  program.cap = options_.weight_cap > 0.0 ? options_.weight_cap
                                          : static_cast<double>(K);
  record.prediction_sums.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      const std::size_t k = record.active[j];
      program.predictions[program.index(i, j)] = record.scaled[k][i];
      program.auxiliary[program.index(i, j)] = record.auxiliary[k][i];
      record.prediction_sums[i] += record.scaled[k][i];
      if (record.scaled[k][i] > 0.0) program.included[i] = true;
    }
    program.shift[i] = record.prediction_sums[i] / static_cast<double>(K);
    // A resource with no earlier mass has no meaningful denominator.
    if (t > 0 && denominator_[i] > 0.0) {
      program.denominator[i] = denominator_[i];
    } else if (t == 0 && program.shift[i] > 0.0 &&
               options_.first_denominator == FirstDenominator::kShift) {
      program.denominator[i] = program.shift[i];
    }
  }

  const StepProgramSolution solution =
      SolveStepProgram(program, options_.frank_wolfe);
  const Vector u = program.Mass(solution.w);

  record.weights.assign(n, Vector(num_experts_, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < K; ++j) {
      record.weights[i][record.active[j]] = solution.w[program.index(i, j)];
    }
    x_[i] = std::max(x_[i], u[i]);
  }
  record.previous_denominator = program.denominator;
  for (std::size_t i = 0; i < n; ++i) denominator_[i] = u[i] + program.shift[i];
  record.denominator = denominator_;
  record.x = x_;
  record.shift = program.shift;
  record.weight_cap = program.cap;
  record.objective = solution.objective;
  record.fw_gap = solution.gap;
  record.fw_iterations = solution.iterations;
  record.cap_active = solution.cap_active;

  for (std::size_t k : record.active) {
    scaled_[k] = record.scaled[k];
    auxiliary_[k] = record.auxiliary[k];
  }
  trace_.push_back(std::move(record));
  return x_;
}

AlgorithmRun RunAlgorithm(const CoveringInstance& instance,
                          const PredictionMatrix& predictions,
                          const AlgorithmOptions& options) {
  ExpertsAlgorithm algorithm(instance, predictions.num_experts(), options);
  std::vector<bool> active(predictions.num_experts());
  for (std::size_t t = 0; t < predictions.num_steps(); ++t) {
    for (std::size_t k = 0; k < active.size(); ++k) {
      active[k] = predictions.active_at(k, t);
    }
    algorithm.Step(t, predictions.step(t), active);
  }
  AlgorithmRun run;
  run.x = algorithm.x();
  run.cost = instance.Cost(run.x);
  run.trace = algorithm.trace();
  run.rho = ComputeRho(run.trace);
  run.num_experts = run.trace.empty() ? 0 : run.trace.back().active.size();
  return run;
}

double ComputeRho(const std::vector<Vector>& prediction_sums) {
  double rho = 1.0;
  if (prediction_sums.empty()) return rho;
  for (std::size_t i = 0; i < prediction_sums.front().size(); ++i) {
    double lo = kInfinity;
    double hi = 0.0;
    for (const Vector& sums : prediction_sums) {
      if (sums[i] <= 0.0) continue;
      lo = std::min(lo, sums[i]);
      hi = std::max(hi, sums[i]);
    }
    if (hi > 0.0) rho = std::max(rho, hi / lo);
  }
  return rho;
}

double ComputeRho(const std::vector<StepRecord>& trace) {
  std::vector<Vector> sums;
  for (const StepRecord& r : trace) sums.push_back(r.prediction_sums);
  return ComputeRho(sums);
}

RosterSpec WithDummy(RosterSpec roster) {
  ExpertSpec dummy;
  dummy.kind = ExpertKind::kDummy;
  roster.push_back(dummy);
  return roster;
}

void AlgorithmExpert::Start(const CoveringInstance& instance) {
  experts_ = MakeRoster(options_.add_dummy ? WithDummy(roster_) : roster_);
  for (auto& expert : experts_) expert->Start(instance);
  validator_ = std::make_unique<StreamValidator>(instance, experts_.size());
  algorithm_ =
      std::make_unique<ExpertsAlgorithm>(instance, experts_.size(), options_);
}

Vector AlgorithmExpert::Step(std::size_t t, std::span<const double> row) {
  std::vector<Vector> solutions(experts_.size());
  for (std::size_t k = 0; k < experts_.size(); ++k) {
    if (validator_->mask()[k]) solutions[k] = experts_[k]->Step(t, row);
  }
  const std::vector<bool> active = validator_->Check(t, solutions);
  return algorithm_->Step(t, solutions, active);
}

AlgorithmRun Combine(const CoveringInstance& instance,
                     std::unique_ptr<Expert> first,
                     std::unique_ptr<Expert> second,
                     const AlgorithmOptions& options) {
  std::vector<std::unique_ptr<Expert>> experts;
  experts.push_back(std::move(first));
  experts.push_back(std::move(second));
  if (options.add_dummy) experts.push_back(std::make_unique<DummyExpert>());
  const PredictionMatrix predictions = CollectPredictions(instance, experts);
  return RunAlgorithm(instance, predictions, options);
}

}  // namespace covering
