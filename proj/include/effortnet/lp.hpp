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

#pragma once

#include <vector>

#include "effortnet/error.hpp"

namespace effortnet {

/// Pure feasibility problem over nonnegative variables:
/// find x >= 0 with coeffs . x (>= | <=) rhs for every constraint.
struct LpConstraint {
  enum class Rel { Ge, Le };
  std::vector<double> coeffs;
  Rel rel = Rel::Le;
  double rhs = 0.0;
};

struct LpFeasibilityProblem {
  int variable_count = 0;
  std::vector<LpConstraint> constraints;
};

struct LpOutcome {
  enum class Status { Feasible, Infeasible };
  Status status = Status::Infeasible;
  std::vector<double> point;  // meaningful iff Feasible
  double phase1_objective = 0.0;
  int pivots = 0;
};

/// Phase-1 dense simplex with Bland's rule. Feasible iff the phase-1
/// objective drops to <= 1e-9; the returned point violates no constraint by
/// more than 1e-9. Deterministic: identical inputs give identical pivots.
LpOutcome solve_feasibility(const LpFeasibilityProblem& problem);

}  // namespace effortnet
