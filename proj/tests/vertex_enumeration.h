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

// Brute-force LP oracle: enumerates every basic solution of a small bounded
// program.

#ifndef COVERING_TESTS_VERTEX_ENUMERATION_H_
#define COVERING_TESTS_VERTEX_ENUMERATION_H_

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "covering/lp.h"

namespace covering::testing {

struct Hyperplane {
  Vector a;
  double b;
};

// Solves the square system by Gaussian elimination with partial pivoting.
inline std::optional<Vector> SolveSquare(std::vector<Hyperplane> planes) {
  const std::size_t n = planes.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(planes[r].a[col]) > std::abs(planes[pivot].a[col])) pivot = r;
    }
    if (std::abs(planes[pivot].a[col]) < 1e-10) return std::nullopt;
    std::swap(planes[col], planes[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = planes[r].a[col] / planes[col].a[col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) {
        planes[r].a[c] -= f * planes[col].a[c];
      }
      planes[r].b -= f * planes[col].b;
    }
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = planes[i].b / planes[i].a[i];
  return x;
}

inline bool Feasible(const LinearProgram& p, const Vector& x,
                     double tolerance) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < p.lower[j] - tolerance || x[j] > p.upper[j] + tolerance) {
      return false;
    }
  }
  for (const LpRow& row : p.rows) {
    double activity = 0.0;
    for (const LpTerm& t : row.terms) activity += t.value * x[t.column];
    const bool ok = row.relation == Relation::kGreaterEqual
                        ? activity >= row.rhs - tolerance
                    : row.relation == Relation::kLessEqual
                        ? activity <= row.rhs + tolerance
                        : std::abs(activity - row.rhs) <= tolerance;
    if (!ok) return false;
  }
  return true;
}

// Optimal value of a program whose columns all have finite upper bounds,
// or nullopt when it is infeasible.
inline std::optional<double> EnumerateVertices(const LinearProgram& p,
                                               double tolerance = 1e-9) {
  const std::size_t n = p.num_columns();
  std::vector<Hyperplane> planes;
  for (const LpRow& row : p.rows) {
    Vector a(n, 0.0);
    for (const LpTerm& t : row.terms) a[t.column] += t.value;
    planes.push_back({a, row.rhs});
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    planes.push_back({e, p.lower[j]});
    planes.push_back({e, p.upper[j]});
  }
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  // Every n-subset of the hyperplanes, in lexicographic order.
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  if (planes.size() < n) return std::nullopt;
  for (;;) {
    std::vector<Hyperplane> system;
    for (std::size_t i : pick) system.push_back(planes[i]);
    if (const auto x = SolveSquare(system)) {
      if (Feasible(p, *x, tolerance)) {
        double value = 0.0;
        for (std::size_t j = 0; j < n; ++j) value += p.objective[j] * (*x)[j];
        const bool better = !best || (p.sense == Sense::kMinimize
                                          ? value < *best
                                          : value > *best);
        if (better) best = value;
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == planes.size() - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

// A random program with at most six columns and rows, every column bounded.
inline LinearProgram RandomBoundedLp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_int_distribution<int> coef(-3, 5);
  std::uniform_int_distribution<int> rhs(-2, 8);
  std::uniform_int_distribution<int> cost(-5, 5);
  std::uniform_int_distribution<int> bound(1, 6);
  std::uniform_int_distribution<int> relation(0, 5);
  std::bernoulli_distribution zero(0.3);
  LinearProgram p;
  p.sense = zero(rng) ? Sense::kMaximize : Sense::kMinimize;
  const int n = size(rng);
  const int m = size(rng);
  for (int j = 0; j < n; ++j) p.AddColumn(cost(rng), 0.0, bound(rng));
  for (int r = 0; r < m; ++r) {
    std::vector<LpTerm> terms;
    for (int j = 0; j < n; ++j) {
      if (!zero(rng)) terms.push_back({static_cast<std::size_t>(j),
                                       static_cast<double>(coef(rng))});
    }
    const int rel = relation(rng);
    p.AddRow(std::move(terms),
             rel < 3   ? Relation::kGreaterEqual
             : rel < 5 ? Relation::kLessEqual
                       : Relation::kEqual,
             rhs(rng));
  }
  return p;
}

}  // namespace covering::testing

#endif  // COVERING_TESTS_VERTEX_ENUMERATION_H_
