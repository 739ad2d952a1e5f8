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

#include "covering/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "covering/experts.h"

namespace covering {

std::size_t LinearProgram::AddColumn(double cost, double lo, double hi,
                                     std::string name) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  column_names.push_back(std::move(name));
  return objective.size() - 1;
}

void LinearProgram::AddRow(std::vector<LpTerm> terms, Relation relation,
                           double rhs, std::string name) {
  rows.push_back(LpRow{std::move(terms), relation, rhs, std::move(name)});
}

void LinearProgram::Validate() const {
  const std::size_t n = objective.size();
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("LinearProgram: bound vectors mismatch");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lower[j] <= upper[j]) || lower[j] == kInfinity ||
        upper[j] == -kInfinity) {
      throw std::invalid_argument("LinearProgram: bad bounds on column " +
                                  std::to_string(j));
    }
    if (!std::isfinite(objective[j])) {
      throw std::invalid_argument("LinearProgram: non-finite objective");
    }
  }
  for (const LpRow& row : rows) {
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument("LinearProgram: non-finite right-hand side");
    }
    for (const LpTerm& term : row.terms) {
      if (term.column >= n || !std::isfinite(term.value)) {
        throw std::invalid_argument("LinearProgram: bad row term");
      }
    }
  }
}

double LinearProgram::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j) {
    const double scale = std::max(1.0, std::abs(x[j]));
    worst = std::max(worst, (lower[j] - x[j]) / scale);
    worst = std::max(worst, (x[j] - upper[j]) / scale);
  }
  for (const LpRow& row : rows) {
    double activity = 0.0;
    for (const LpTerm& term : row.terms) activity += term.value * x[term.column];
    const double scale = std::max(1.0, std::abs(row.rhs));
    double violation = 0.0;
    switch (row.relation) {
      case Relation::kGreaterEqual:
        violation = row.rhs - activity;
        break;
      case Relation::kLessEqual:
        violation = activity - row.rhs;
        break;
      case Relation::kEqual:
        violation = std::abs(activity - row.rhs);
        break;
    }
    worst = std::max(worst, violation / scale);
  }
  return worst;
}

double LinearProgram::ObjectiveValue(std::span<const double> x) const {
  return Dot(objective, x);
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class ColumnStatus : unsigned char { kBasic, kAtLower, kAtUpper };

// Maps a tableau column back to the program: x_source = offset + sign * v.
struct ColumnMap {
  std::size_t source = kNone;  // kNone for slacks and artificials
  double sign = 1.0;
  double offset = 0.0;
};

class Tableau {
 public:
  Tableau(const LinearProgram& program, const SimplexOptions& options)
      : program_(program), options_(options) {
    Build();
  }

  LpSolution Solve() {
    LpSolution solution;
    if (num_artificials_ > 0) {
      Vector phase_one(cols_, 0.0);
      for (std::size_t c = first_artificial_; c < cols_; ++c) phase_one[c] = 1.0;
      phase_one_ = true;
      if (Iterate(phase_one) != LpStatus::kOptimal) {
        throw LpError("simplex: phase one did not converge");
      }
      phase_one_ = false;
      double infeasibility = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (basis_[r] >= first_artificial_) infeasibility += beta_[r];
      }
      if (infeasibility > options_.feasibility_tolerance * rhs_scale_) {
        solution.status = LpStatus::kInfeasible;
        solution.pivots = pivots_;
        return solution;
      }
      // Artificials are pinned at zero from here on.
      for (std::size_t c = first_artificial_; c < cols_; ++c) upper_[c] = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (basis_[r] >= first_artificial_) beta_[r] = 0.0;
      }
    }
    Vector phase_two(cols_, 0.0);
    const double sense = program_.sense == Sense::kMaximize ? -1.0 : 1.0;
    for (std::size_t c = 0; c < first_slack_; ++c) {
      phase_two[c] = sense * map_[c].sign * program_.objective[map_[c].source];
    }
    solution.status = Iterate(phase_two);
    solution.pivots = pivots_;
    if (solution.status != LpStatus::kOptimal) return solution;

    solution.primal.assign(program_.num_columns(), 0.0);
    for (std::size_t j = 0; j < program_.num_columns(); ++j) {
      if (std::isfinite(program_.lower[j])) {
        solution.primal[j] = program_.lower[j];
      } else if (std::isfinite(program_.upper[j])) {
        solution.primal[j] = program_.upper[j];
      }
    }
    for (std::size_t c = 0; c < first_slack_; ++c) {
      solution.primal[map_[c].source] += map_[c].sign * Value(c);
    }
    solution.objective = program_.ObjectiveValue(solution.primal);
    return solution;
  }

 private:
  double& At(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  double Value(std::size_t c) const {
    switch (status_[c]) {
      case ColumnStatus::kBasic:
        return beta_[row_of_[c]];
      case ColumnStatus::kAtLower:
        return 0.0;
      case ColumnStatus::kAtUpper:
        return upper_[c];
    }
    return 0.0;
  }

  void Build() {
    program_.Validate();
    const std::size_t n = program_.num_columns();
    std::vector<std::vector<std::size_t>> columns_of(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = program_.lower[j];
      const double hi = program_.upper[j];
      if (std::isfinite(lo)) {
        columns_of[j].push_back(AddMap({j, 1.0, lo}, hi - lo));
      } else if (std::isfinite(hi)) {
        columns_of[j].push_back(AddMap({j, -1.0, hi}, kInfinity));
      } else {
        columns_of[j].push_back(AddMap({j, 1.0, 0.0}, kInfinity));
        columns_of[j].push_back(AddMap({j, -1.0, 0.0}, kInfinity));
      }
    }
    first_slack_ = map_.size();
    rows_ = program_.rows.size();

    // Shift right-hand sides by the bound offsets and orient rows so that
    // every right-hand side is nonnegative.
    Vector rhs(rows_);
    std::vector<double> flip(rows_, 1.0);
    std::vector<std::size_t> slack_of(rows_, kNone);
    for (std::size_t r = 0; r < rows_; ++r) {
      const LpRow& row = program_.rows[r];
      double b = row.rhs;
      for (const LpTerm& term : row.terms) {
        const double lo = program_.lower[term.column];
        const double hi = program_.upper[term.column];
        if (std::isfinite(lo)) {
          b -= term.value * lo;
        } else if (std::isfinite(hi)) {
          b -= term.value * hi;
        }
      }
      if (b < 0.0) flip[r] = -1.0;
      rhs[r] = flip[r] * b;
      if (row.relation != Relation::kEqual) {
        slack_of[r] = AddMap({}, kInfinity);
      }
    }
    first_artificial_ = map_.size();
    std::vector<std::size_t> artificial_of(rows_, kNone);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Relation rel = program_.rows[r].relation;
      const double slack_sign =
          rel == Relation::kLessEqual ? flip[r] : -flip[r];
      if (rel == Relation::kEqual || slack_sign < 0.0) {
        artificial_of[r] = AddMap({}, kInfinity);
      }
    }
    cols_ = map_.size();
    num_artificials_ = cols_ - first_artificial_;

    data_.assign(rows_ * cols_, 0.0);
    basis_.assign(rows_, kNone);
    beta_ = rhs;
    rhs_ = rhs;
    status_.assign(cols_, ColumnStatus::kAtLower);
    row_of_.assign(cols_, kNone);
    rhs_scale_ = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      rhs_scale_ = std::max(rhs_scale_, rhs[r]);
      for (const LpTerm& term : program_.rows[r].terms) {
        for (std::size_t c : columns_of[term.column]) {
          At(r, c) += flip[r] * map_[c].sign * term.value;
        }
      }
      std::size_t basic = artificial_of[r];
      if (slack_of[r] != kNone) {
        const Relation rel = program_.rows[r].relation;
        const double sign = rel == Relation::kLessEqual ? flip[r] : -flip[r];
        At(r, slack_of[r]) = sign;
        if (sign > 0.0) basic = slack_of[r];
      }
      if (artificial_of[r] != kNone) At(r, artificial_of[r]) = 1.0;
      basis_[r] = basic;
      initial_basis_.push_back(basic);
      status_[basic] = ColumnStatus::kBasic;
      row_of_[basic] = r;
    }
    max_pivots_ = options_.max_pivots != 0
                      ? options_.max_pivots
                      : std::max<std::size_t>(100000, 50 * (rows_ + cols_));
  }

  std::size_t AddMap(ColumnMap map, double upper) {
    map_.push_back(map);
    upper_.push_back(upper);
    return map_.size() - 1;
  }

  // Reduced costs d_c = costs_c - sum_r costs_{basis(r)} T(r, c), from the
  // current tableau.
  void RecomputeReduced() {
    reduced_ = costs_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = costs_[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &data_[r * cols_];
      for (std::size_t c = 0; c < cols_; ++c) reduced_[c] -= cb * row[c];
    }
    for (std::size_t r = 0; r < rows_; ++r) reduced_[basis_[r]] = 0.0;
  }

  // Basic values from scratch. The columns that formed the starting
  // identity basis hold the basis inverse.
  void RecomputeValues() {
    std::vector<std::size_t> at_upper;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (status_[c] == ColumnStatus::kAtUpper && upper_[c] != 0.0) {
        at_upper.push_back(c);
      }
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      const double* row = &data_[r * cols_];
      double value = 0.0;
      for (std::size_t j = 0; j < rows_; ++j) {
        value += row[initial_basis_[j]] * rhs_[j];
      }
      for (std::size_t c : at_upper) value -= row[c] * upper_[c];
      beta_[r] = value;
    }
  }

  // Improvement rate of moving nonbasic column c off its bound, or zero.
  double Attractiveness(std::size_t c) const {
    const double tol = options_.optimality_tolerance;
    if (status_[c] == ColumnStatus::kAtLower && upper_[c] > 0.0 &&
        reduced_[c] < -tol) {
      return -reduced_[c];
    }
    if (status_[c] == ColumnStatus::kAtUpper && reduced_[c] > tol) {
      return reduced_[c];
    }
    return 0.0;
  }

  // Dantzig pricing with a Harris ratio test. After a run of degenerate
  // pivots, switches to Bland's smallest-index rule until the objective
  // moves again, which rules out cycling.
  LpStatus Iterate(const Vector& costs) {
    costs_ = costs;
    RecomputeReduced();
    const double piv_tol = options_.pivot_tolerance;
    const double feas_tol = options_.feasibility_tolerance;
    constexpr double kTie = 1e-12;
    constexpr std::size_t kDegenerateRun = 50;
    constexpr std::size_t kRefresh = 64;
    constexpr double kBlandPivotShare = 0.01;
    std::size_t degenerate = 0;
    std::size_t since_refresh = 0;
    std::vector<bool> ignored(cols_, false);
    bool fresh = true;
    for (;;) {
      if (since_refresh >= kRefresh) {
        RecomputeValues();
        RecomputeReduced();
        since_refresh = 0;
        fresh = true;
      }
      const bool bland = degenerate >= kDegenerateRun;
      std::size_t entering = kNone;
      double best = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (status_[c] == ColumnStatus::kBasic || ignored[c]) continue;
        const double score = Attractiveness(c);
        if (score <= 0.0) continue;
        if (bland) {
          entering = c;
          break;
        }
        if (score > best) {
          best = score;
          entering = c;
        }
      }
      if (entering == kNone) {
        if (fresh) {
          RecomputeValues();
          return LpStatus::kOptimal;
        }
        RecomputeReduced();
        since_refresh = 0;
        fresh = true;
        continue;
      }
      const double dir =
          status_[entering] == ColumnStatus::kAtLower ? 1.0 : -1.0;

      // Row limits; the entering column's own bound flip competes too.
      auto limit_of = [&](std::size_t r, double slack, bool* to_upper) {
        const double alpha = dir * At(r, entering);
        const std::size_t b = basis_[r];
        if (alpha > piv_tol) {
          *to_upper = false;
          return (beta_[r] + slack) / alpha;
        }
        if (alpha < -piv_tol && std::isfinite(upper_[b])) {
          *to_upper = true;
          return (upper_[b] - beta_[r] + slack) / -alpha;
        }
        return kInfinity;
      };
      double theta = upper_[entering];
      std::size_t leave_row = kNone;
      std::size_t leave_col = entering;
      bool leave_to_upper = false;
      // Pass one: largest step keeping every basic variable within the
      // feasibility tolerance. Pass two picks among the rows blocking before
      // that step: the largest pivot, or under Bland's rule the smallest
      // basis index among pivots not much smaller than the largest.
      double relaxed = upper_[entering];
      for (std::size_t r = 0; r < rows_; ++r) {
        bool to_upper = false;
        relaxed = std::min(relaxed, limit_of(r, feas_tol, &to_upper));
      }
      double largest = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        bool to_upper = false;
        if (limit_of(r, 0.0, &to_upper) <= relaxed) {
          largest = std::max(largest, std::abs(At(r, entering)));
        }
      }
      if (bland) {
        for (std::size_t r = 0; r < rows_; ++r) {
          bool to_upper = false;
          const double limit = limit_of(r, 0.0, &to_upper);
          if (!(limit <= relaxed) ||
              std::abs(At(r, entering)) < kBlandPivotShare * largest) {
            continue;
          }
          const std::size_t b = basis_[r];
          if (leave_row == kNone || b < leave_col) {
            theta = std::max(0.0, limit);
            leave_row = r;
            leave_col = b;
            leave_to_upper = to_upper;
          }
        }
      } else {
        double best = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
          bool to_upper = false;
          const double limit = limit_of(r, 0.0, &to_upper);
          if (!(limit <= relaxed)) continue;
          const double magnitude = std::abs(At(r, entering));
          if (magnitude > best) {
            best = magnitude;
            theta = std::max(0.0, limit);
            leave_row = r;
            leave_col = basis_[r];
            leave_to_upper = to_upper;
          }
        }
      }
      if (upper_[entering] <= relaxed &&
          (leave_row == kNone || upper_[entering] <= theta)) {
        theta = upper_[entering];
        leave_row = kNone;
        leave_col = entering;
      }
      if (!std::isfinite(theta)) {
        if (!fresh) {
          RecomputeReduced();
          since_refresh = 0;
          fresh = true;
          continue;
        }
        // An improving column whose entries are all below the pivot
        // tolerance is noise when the objective is bounded below.
        if (phase_one_) {
          ignored[entering] = true;
          continue;
        }
        return LpStatus::kUnbounded;
      }
      if (++pivots_ > max_pivots_) {
        throw LpError("simplex: pivot limit reached (" +
                      std::to_string(max_pivots_) + ")");
      }
      degenerate = theta <= kTie ? degenerate + 1 : 0;
      if (degenerate == 0) std::fill(ignored.begin(), ignored.end(), false);
      fresh = false;
      ++since_refresh;

      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = At(r, entering);
        if (a != 0.0) beta_[r] -= theta * dir * a;
      }
      if (leave_row == kNone) {
        status_[entering] = dir > 0.0 ? ColumnStatus::kAtUpper
                                      : ColumnStatus::kAtLower;
        continue;
      }
      const double entering_value =
          dir > 0.0 ? theta : upper_[entering] - theta;
      status_[leave_col] =
          leave_to_upper ? ColumnStatus::kAtUpper : ColumnStatus::kAtLower;
      row_of_[leave_col] = kNone;
      Pivot(leave_row, entering);
      basis_[leave_row] = entering;
      status_[entering] = ColumnStatus::kBasic;
      row_of_[entering] = leave_row;
      beta_[leave_row] = entering_value;
      for (double& v : beta_) {
        if (v < 0.0 && v > -feas_tol) v = 0.0;
      }
    }
  }

  void Pivot(std::size_t pivot_row, std::size_t pivot_col) {
    double* prow = &data_[pivot_row * cols_];
    const double inv = 1.0 / prow[pivot_col];
    nonzeros_.clear();
    for (std::size_t c = 0; c < cols_; ++c) {
      if (prow[c] == 0.0) continue;
      prow[c] *= inv;
      if (std::abs(prow[c]) < 1e-14) {
        prow[c] = 0.0;
        continue;
      }
      nonzeros_.push_back(c);
    }
    prow[pivot_col] = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pivot_row) continue;
      double* row = &data_[r * cols_];
      const double factor = row[pivot_col];
      if (factor == 0.0) continue;
      for (std::size_t c : nonzeros_) {
        double& v = row[c];
        v -= factor * prow[c];
        if (std::abs(v) < 1e-14) v = 0.0;
      }
      row[pivot_col] = 0.0;
    }
    const double factor = reduced_[pivot_col];
    if (factor != 0.0) {
      for (std::size_t c : nonzeros_) reduced_[c] -= factor * prow[c];
      reduced_[pivot_col] = 0.0;
    }
  }

  const LinearProgram& program_;
  SimplexOptions options_;
  std::vector<ColumnMap> map_;
  Vector upper_;
  std::size_t first_slack_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t num_artificials_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> row_of_;
  std::vector<ColumnStatus> status_;
  Vector beta_;
  Vector rhs_;
  std::vector<std::size_t> initial_basis_;
  Vector costs_;
  Vector reduced_;
  bool phase_one_ = false;
  std::vector<std::size_t> nonzeros_;
  double rhs_scale_ = 1.0;
  std::size_t pivots_ = 0;
  std::size_t max_pivots_ = 0;
};

std::string ColumnName(const LinearProgram& program, std::size_t j) {
  if (j < program.column_names.size() && !program.column_names[j].empty()) {
    return program.column_names[j];
  }
  return "x" + std::to_string(j);
}

void WriteTerms(std::ostringstream& out, const LinearProgram& program,
                const std::vector<LpTerm>& terms) {
  if (terms.empty()) {
    out << " 0 " << ColumnName(program, 0);
    return;
  }
  for (const LpTerm& term : terms) {
    out << (term.value < 0 ? " - " : " + ") << std::abs(term.value) << ' '
        << ColumnName(program, term.column);
  }
}

}  // namespace

LpSolution SolveLp(const LinearProgram& program,
                   const SimplexOptions& options) {
  Tableau tableau(program, options);
  return tableau.Solve();
}

std::string ToLpFormat(const LinearProgram& program) {
  std::ostringstream out;
  out.precision(17);
  out << (program.sense == Sense::kMinimize ? "Minimize" : "Maximize")
      << "\n obj:";
  std::vector<LpTerm> objective;
  for (std::size_t j = 0; j < program.num_columns(); ++j) {
    if (program.objective[j] != 0.0) objective.push_back({j, program.objective[j]});
  }
  WriteTerms(out, program, objective);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < program.rows.size(); ++r) {
    const LpRow& row = program.rows[r];
    out << ' ' << (row.name.empty() ? "r" + std::to_string(r) : row.name)
        << ':';
    WriteTerms(out, program, row.terms);
    switch (row.relation) {
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < program.num_columns(); ++j) {
    const double lo = program.lower[j];
    const double hi = program.upper[j];
    const std::string name = ColumnName(program, j);
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << ' ' << name << " free\n";
    } else if (!std::isfinite(lo)) {
      out << " -inf <= " << name << " <= " << hi << '\n';
    } else if (!std::isfinite(hi)) {
      if (lo != 0.0) out << ' ' << name << " >= " << lo << '\n';
    } else {
      out << ' ' << lo << " <= " << name << " <= " << hi << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

LpSolution SolveOfflineOpt(const CoveringInstance& instance) {
  LinearProgram program;
  for (std::size_t i = 0; i < instance.n; ++i) {
    program.AddColumn(instance.costs[i], 0.0, kInfinity,
                      "x" + std::to_string(i));
  }
  for (const Vector& row : instance.rows) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < instance.n; ++i) {
      if (row[i] != 0.0) terms.push_back({i, row[i]});
    }
    program.AddRow(std::move(terms), Relation::kGreaterEqual, 1.0);
  }
  return SolveLp(program);
}

namespace {

LinCombLayout MakeLayout(const CoveringInstance& instance,
                         const PredictionMatrix& predictions,
                         const std::vector<std::size_t>& experts) {
  if (predictions.num_steps() != instance.num_rows()) {
    throw std::invalid_argument(
        "benchmark: predictions must cover every row of the instance");
  }
  return LinCombLayout{predictions.num_steps(), experts.size(), instance.n};
}

std::string Name(const char* prefix, std::size_t a, std::size_t b) {
  return std::string(prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

LinearProgram BuildLinCombLp(const CoveringInstance& instance,
                             const PredictionMatrix& predictions) {
  const std::vector<std::size_t> experts = predictions.ActiveExperts();
  const LinCombLayout layout = MakeLayout(instance, predictions, experts);
  const std::size_t T = layout.num_steps;
  const std::size_t K = layout.num_experts;
  const std::size_t n = layout.n;

  LinearProgram program;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k = 0; k < K; ++k) program.AddColumn(0.0, 0.0, kInfinity, Name("w", t, k));
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double cost = t + 1 == T ? instance.costs[i] : 0.0;
      program.AddColumn(cost, 0.0, kInfinity, Name("x", t, i));
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<LpTerm> terms;
    for (std::size_t k = 0; k < K; ++k) terms.push_back({layout.weight(t, k), 1.0});
    program.AddRow(std::move(terms), Relation::kEqual, 1.0);
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<LpTerm> terms{{layout.resource(t, i), 1.0}};
      for (std::size_t k = 0; k < K; ++k) {
        const double s = predictions.s(t, i, experts[k]);
        if (s != 0.0) terms.push_back({layout.weight(t, k), -s});
      }
      // A row without prediction terms only restates x >= 0.
      if (terms.size() > 1) {
        program.AddRow(std::move(terms), Relation::kGreaterEqual, 0.0);
      }
      if (t > 0) {
        program.AddRow({{layout.resource(t, i), 1.0},
                        {layout.resource(t - 1, i), -1.0}},
                       Relation::kGreaterEqual, 0.0);
      }
    }
  }
  return program;
}

LinearProgram BuildRelaxationLp(const CoveringInstance& instance,
                                const PredictionMatrix& predictions) {
  const std::vector<std::size_t> experts = predictions.ActiveExperts();
  const LinCombLayout layout = MakeLayout(instance, predictions, experts);
  const std::size_t T = layout.num_steps;
  const std::size_t K = layout.num_experts;
  const std::size_t n = layout.n;

  LinearProgram program;
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k = 0; k < K; ++k) program.AddColumn(0.0, 0.0, kInfinity, Name("w", t, k));
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      program.AddColumn(instance.costs[i], 0.0, kInfinity, Name("y", t, i));
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<LpTerm> terms;
    for (std::size_t k = 0; k < K; ++k) terms.push_back({layout.weight(t, k), 1.0});
    program.AddRow(std::move(terms), Relation::kGreaterEqual, 1.0);
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<LpTerm> terms{{layout.resource(t, i), 1.0}};
      for (std::size_t k = 0; k < K; ++k) {
        const double s = predictions.s(t, i, experts[k]);
        if (s != 0.0) terms.push_back({layout.weight(t, k), -s});
        if (t > 0) {
          const double prev = predictions.s(t - 1, i, experts[k]);
          if (prev != 0.0) terms.push_back({layout.weight(t - 1, k), prev});
        }
      }
      if (terms.size() > 1) {
        program.AddRow(std::move(terms), Relation::kGreaterEqual, 0.0);
      }
    }
  }
  return program;
}

LinearProgram BuildDualLp(const CoveringInstance& instance,
                          const PredictionMatrix& predictions) {
  const std::vector<std::size_t> experts = predictions.ActiveExperts();
  const LinCombLayout layout = MakeLayout(instance, predictions, experts);
  const std::size_t T = layout.num_steps;
  const std::size_t n = layout.n;
  auto beta = [&](std::size_t t, std::size_t i) { return T + t * n + i; };

  LinearProgram program;
  program.sense = Sense::kMaximize;
  for (std::size_t t = 0; t < T; ++t) {
    program.AddColumn(1.0, 0.0, kInfinity, "alpha_" + std::to_string(t));
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      program.AddColumn(0.0, 0.0, instance.costs[i], Name("beta", t, i));
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k : experts) {
      std::vector<LpTerm> terms{{t, 1.0}};
      for (std::size_t i = 0; i < n; ++i) {
        const double s = predictions.s(t, i, k);
        if (s == 0.0) continue;
        if (t + 1 < T) terms.push_back({beta(t + 1, i), s});
        terms.push_back({beta(t, i), -s});
      }
      program.AddRow(std::move(terms), Relation::kLessEqual, 0.0);
    }
  }
  return program;
}

double SolveDynamic(const CoveringInstance& instance,
                    const PredictionMatrix& predictions) {
  const std::vector<std::size_t> experts = predictions.ActiveExperts();
  MakeLayout(instance, predictions, experts);
  LinearProgram program;
  for (std::size_t i = 0; i < instance.n; ++i) {
    double floor = 0.0;
    for (std::size_t t = 0; t < predictions.num_steps(); ++t) {
      double least = kInfinity;
      for (std::size_t k : experts) least = std::min(least, predictions.s(t, i, k));
      if (std::isfinite(least)) floor = std::max(floor, least);
    }
    program.AddColumn(instance.costs[i], floor, kInfinity);
  }
  for (const Vector& row : instance.rows) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < instance.n; ++i) {
      if (row[i] != 0.0) terms.push_back({i, row[i]});
    }
    program.AddRow(std::move(terms), Relation::kGreaterEqual, 1.0);
  }
  const LpSolution solution = SolveLp(program);
  if (!solution.optimal()) {
    throw LpError(std::string("dynamic benchmark: ") + ToString(solution.status));
  }
  return solution.objective;
}

}  // namespace covering
