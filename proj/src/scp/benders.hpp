#pragma once

#include <string>
#include <vector>

#include "scp/builder.hpp"
#include "scp/milp.hpp"
#include "scp/plan.hpp"

namespace scp {

struct BendersCutRecord {
  int iteration{};
  int scenario{};
  bool feasibility{};
  std::vector<std::pair<int, double>> master_coef;  // first-stage column, coefficient
  double rhs{};
};

struct BendersState {
  std::vector<BendersCutRecord> cuts;
  std::vector<double> upper_bounds;  // per iteration, non-increasing
  std::vector<double> lower_bounds;  // best feasible value so far, non-decreasing
  int iterations{};
  bool converged{};
};

struct BendersOptions {
  double gap_tol{1e-4};
  int max_iters{200};
  int threads{1};  // subproblem LPs per iteration may solve concurrently
  MilpOptions master;
  SimplexOptions subproblem;
};

struct BendersResult {
  double objective{};  // best feasible expected profit (lower bound)
  double bound{};      // final master bound (upper bound)
  std::vector<double> master_x;
  std::vector<std::vector<double>> scenario_x;
  BendersState state;
};

/// Multi-cut L-shaped loop: MILP master with one recourse variable per
/// scenario, LP subproblems at the fixed first stage, one optimality or
/// feasibility cut per scenario per iteration. Throws MasterInfeasible when
/// the restricted master has no feasible first stage, IterationLimit when
/// max_iters pass without closing the gap.
BendersResult benders_solve(const TwoStageModel& model, const BendersOptions& options = {});

}  // namespace scp
