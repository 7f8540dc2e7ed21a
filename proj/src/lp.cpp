// Copyright 2026 The Effortnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "effortnet/lp.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace effortnet {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kPivotEps = 1e-11;
constexpr int kMaxPivots = 1000000;

double constraint_violation(const LpConstraint& c, const std::vector<double>& x) {
  double lhs = 0.0;
  for (size_t k = 0; k < c.coeffs.size(); ++k) lhs += c.coeffs[k] * x[k];
  if (c.rel == LpConstraint::Rel::Ge) return std::max(0.0, c.rhs - lhs);
  return std::max(0.0, lhs - c.rhs);
}

}  // namespace

LpOutcome solve_feasibility(const LpFeasibilityProblem& problem) {
  const int nv = problem.variable_count;
  const int m = static_cast<int>(problem.constraints.size());
  for (const auto& c : problem.constraints) {
    if (static_cast<int>(c.coeffs.size()) != nv)
      fail(ErrorCode::ValidationError, "constraint arity does not match variable_count");
    for (double a : c.coeffs)
      if (!std::isfinite(a)) fail(ErrorCode::ValidationError, "non-finite constraint coefficient");
    if (!std::isfinite(c.rhs)) fail(ErrorCode::ValidationError, "non-finite constraint rhs");
  }

  if (m == 0) {
    LpOutcome out;
    out.status = LpOutcome::Status::Feasible;
    out.point.assign(nv, 0.0);
    return out;
  }

  // Normalize every row to rhs >= 0, give each row one slack (+1 for <=,
  // -1 for >=) and the >= rows an artificial basic variable. Phase 1
  // minimizes the sum of artificials.
  const int slack0 = nv;
  int n_art = 0;
  std::vector<int> art_col(m, -1);
  std::vector<std::vector<double>> row(m);
  std::vector<double> rhs(m);
  for (int r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    double sign = 1.0;
    bool ge = c.rel == LpConstraint::Rel::Ge;
    if (c.rhs < 0.0) {
      sign = -1.0;
      ge = !ge;
    }
    row[r].assign(nv, 0.0);
    for (int k = 0; k < nv; ++k) row[r][k] = sign * c.coeffs[k];
    rhs[r] = sign * c.rhs;
    if (ge) art_col[r] = n_art++;
  }

  const int art0 = slack0 + m;
  const int ncols = art0 + n_art;
  std::vector<std::vector<double>> T(m, std::vector<double>(ncols + 1, 0.0));
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    const auto& c = problem.constraints[r];
    bool ge = c.rel == LpConstraint::Rel::Ge;
    if (c.rhs < 0.0) ge = !ge;
    for (int k = 0; k < nv; ++k) T[r][k] = row[r][k];
    T[r][slack0 + r] = ge ? -1.0 : 1.0;
    T[r][ncols] = rhs[r];
    if (art_col[r] >= 0) {
      T[r][art0 + art_col[r]] = 1.0;
      basis[r] = art0 + art_col[r];
    } else {
      basis[r] = slack0 + r;
    }
  }

  auto objective = [&](std::vector<double>& obj, double& val) {
    obj.assign(ncols, 0.0);
    val = 0.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] < art0) continue;
      for (int cidx = 0; cidx < ncols; ++cidx) obj[cidx] += T[r][cidx];
      val += T[r][ncols];
    }
  };

  int pivots = 0;
  std::vector<double> obj;
  double objval = 0.0;
  while (true) {
    objective(obj, objval);
    if (objval <= kFeasTol) break;

    // Bland: lowest-index improving non-artificial column.
    int enter = -1;
    for (int cidx = 0; cidx < art0; ++cidx) {
      if (obj[cidx] > kFeasTol) {
        enter = cidx;
        break;
      }
    }
    if (enter < 0) break;  // optimal with positive objective: infeasible

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (T[r][enter] <= kPivotEps) continue;
      const double ratio = T[r][ncols] / T[r][enter];
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (std::fabs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      fail(ErrorCode::LpNumericalFailure, "phase-1 objective unbounded below; tableau corrupt");

    const double pivot = T[leave][enter];
    for (int cidx = 0; cidx <= ncols; ++cidx) T[leave][cidx] /= pivot;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double factor = T[r][enter];
      if (factor == 0.0) continue;
      for (int cidx = 0; cidx <= ncols; ++cidx) T[r][cidx] -= factor * T[leave][cidx];
    }
    basis[leave] = enter;
    if (++pivots > kMaxPivots)
      fail(ErrorCode::IterationLimit, "simplex exceeded " + std::to_string(kMaxPivots) + " pivots");
  }

  LpOutcome out;
  out.pivots = pivots;
  out.phase1_objective = objval;
  if (objval > kFeasTol) {
    out.status = LpOutcome::Status::Infeasible;
    return out;
  }
  out.status = LpOutcome::Status::Feasible;
  out.point.assign(nv, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < nv) out.point[basis[r]] = T[r][ncols];

  for (const auto& c : problem.constraints) {
    if (constraint_violation(c, out.point) > kFeasTol)
      fail(ErrorCode::LpNumericalFailure, "phase-1 claimed feasibility but the point violates a constraint");
  }
  for (double& v : out.point)
    if (v < 0.0 && v > -kFeasTol) v = 0.0;
  return out;
}

}  // namespace effortnet
