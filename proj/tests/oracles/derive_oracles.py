#!/usr/bin/env python3
# Copyright 2026 The Covering Experts Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the C++ tests.

Closed forms are evaluated with mpmath, small LPs with HiGHS through scipy
and step programs with cvxpy. Writes derived.json next to this file; the
C++ tests only read the frozen file.

  python3 tests/oracles/derive_oracles.py
"""

import json
import pathlib

import cvxpy as cp
import mpmath
import numpy as np
from scipy.optimize import linprog

mpmath.mp.dps = 30


def mwa_hand_case():
  # Row (1,1) from zero with shift 1/2: (1/2) e^tau - 1/2 each, tight at
  # e^tau = 2. Row (0,1) grows x2 from 1/2: e^tau' = 3/2.
  tau = mpmath.log(2)
  x = [mpmath.mpf(1) / 2 * mpmath.e**tau - mpmath.mpf(1) / 2] * 2
  tau2 = mpmath.findroot(lambda s: (x[1] + 0.5) * mpmath.e**s - 0.5 - 1, 0.3)
  x[1] = (x[1] + 0.5) * mpmath.e**tau2 - 0.5
  return {"x": [float(v) for v in x], "cost": float(sum(x))}


def objective_hand_case():
  # n=1, K=1, c=1, s=1, shift=1, D=1, w=1.
  u, shift, d = mpmath.mpf(1), mpmath.mpf(1), mpmath.mpf(1)
  value = (u + shift) * mpmath.log((u + shift) / d) - u
  gradient = mpmath.log((u + shift) / d)
  return {"value": float(value), "gradient": float(gradient)}


def anand_batch_bound(k):
  # 1/K + sum_{j=2}^{K-1} 1/j + 1/K.
  total = mpmath.mpf(2) / k + sum(mpmath.mpf(1) / j for j in range(2, k))
  return float(total)


def beta_ceiling(k, rho):
  return float(mpmath.log((k + 1) * rho) / mpmath.log(k * rho))


def random_lps(count, seed):
  rng = np.random.default_rng(seed)
  cases = []
  while len(cases) < count:
    n = int(rng.integers(1, 7))
    m = int(rng.integers(1, 7))
    sense = "max" if rng.random() < 0.3 else "min"
    c = rng.integers(-5, 6, size=n).astype(float)
    upper = [float(rng.integers(1, 6)) if rng.random() < 0.3 else None
             for _ in range(n)]
    rows = []
    for _ in range(m):
      a = rng.integers(-3, 6, size=n).astype(float)
      a[rng.random(n) < 0.3] = 0.0
      rel = str(rng.choice([">=", "<=", "="], p=[0.5, 0.35, 0.15]))
      rhs = float(rng.integers(-2, 8))
      rows.append({"a": a.tolist(), "rel": rel, "rhs": rhs})
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for r in rows:
      if r["rel"] == "<=":
        a_ub.append(r["a"]); b_ub.append(r["rhs"])
      elif r["rel"] == ">=":
        a_ub.append([-v for v in r["a"]]); b_ub.append(-r["rhs"])
      else:
        a_eq.append(r["a"]); b_eq.append(r["rhs"])
    sign = -1.0 if sense == "max" else 1.0
    res = linprog(sign * c, A_ub=a_ub or None, b_ub=b_ub or None,
                  A_eq=a_eq or None, b_eq=b_eq or None,
                  bounds=[(0, u) for u in upper], method="highs")
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}.get(res.status)
    if status is None:
      continue
    case = {"sense": sense, "c": c.tolist(),
            "upper": [u if u is not None else -1.0 for u in upper],
            "rows": rows, "status": status}
    if status == "optimal":
      case["value"] = float(sign * res.fun)
    cases.append(case)
  return cases


def random_step_programs(count, seed):
  rng = np.random.default_rng(seed)
  programs = []
  while len(programs) < count:
    n = int(rng.integers(1, 6))
    k = int(rng.integers(1, 5))
    costs = rng.integers(1, 10, size=n).astype(float)
    row = rng.integers(0, 5, size=n).astype(float)
    if row.sum() == 0:
      continue
    s = rng.random((n, k)) * 2.0
    s[rng.random((n, k)) < 0.25] = 0.0
    # Feasible predictions and auxiliary solutions tight on the row.
    values = row @ s
    if (values <= 1e-3).any():
      continue
    s = s / values * (1.0 + rng.random(k))
    aux = s / (row @ s)
    shift = s.sum(axis=1) / k
    included = s.sum(axis=1) > 0
    if not included.any():
      continue
    denominator = np.where(included, shift + rng.random(n) * 1.5, 1.0)
    cap = float(k)
    w = cp.Variable((n, k))
    u = cp.sum(cp.multiply(s, w), axis=1)
    terms = []
    cons = [w >= 0, w <= cap,
            cp.sum(cp.multiply(row[:, None] * aux, w)) >= 1]
    for i in range(n):
      if included[i]:
        terms.append(costs[i] * (cp.rel_entr(u[i] + shift[i], denominator[i])
                                 - u[i]))
        cons.append(cp.sum(w[i, :]) >= 1)
      else:
        cons.append(w[i, :] == 0)
    problem = cp.Problem(cp.Minimize(cp.sum(cp.hstack(terms))), cons)
    problem.solve(solver="CLARABEL", tol_gap_abs=1e-11, tol_gap_rel=1e-11,
                  tol_feas=1e-11)
    if problem.status != "optimal":
      continue
    programs.append({
        "n": n, "K": k, "costs": costs.tolist(), "row": row.tolist(),
        "predictions": s.reshape(-1).tolist(),
        "auxiliary": aux.reshape(-1).tolist(),
        "shift": shift.tolist(), "denominator": denominator.tolist(),
        "included": included.tolist(), "cap": cap,
        "objective": float(problem.value)})
  return programs


def main():
  out = {
      "mwa_hand_case": mwa_hand_case(),
      "objective_hand_case": objective_hand_case(),
      "anand_batch_bound": {str(k): anand_batch_bound(k) for k in (2, 3, 5)},
      "beta_ceiling_k11_rho9_9": beta_ceiling(11, 9.9),
      "random_lps": random_lps(60, 7),
      "step_programs": random_step_programs(12, 11),
  }
  path = pathlib.Path(__file__).with_name("derived.json")
  path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
  main()
