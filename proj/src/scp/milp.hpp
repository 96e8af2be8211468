#pragma once

#include <optional>
#include <vector>

#include "scp/linear_model.hpp"
#include "scp/simplex.hpp"

namespace scp {

enum class MilpStatus { Optimal, Infeasible, Unbounded, NodeLimit };

struct MilpSolution {
  MilpStatus status{MilpStatus::Optimal};
  double objective{};   // incumbent objective, model sense, includes offset
  double best_bound{};  // proven bound, model sense
  std::vector<double> x;
  long nodes{};
  long lp_iterations{};
  Basis root_basis;     // final root LP basis, reusable across re-solves
};

struct MilpOptions {
  double gap_tol{1e-6};
  double int_tol{1e-6};
  long node_limit{200000};
  bool rounding_heuristic{true};
  SimplexOptions lp;
};

/// Best-bound branch and bound over the embedded simplex. Branching picks the
/// most fractional integer column (lowest index on ties); children warm-start
/// from the parent basis. A fix-and-solve rounding probe supplies incumbents
/// early. Fully deterministic for a fixed model.
MilpSolution solve_milp(const LinearModel& model, const MilpOptions& options = {},
                        const Basis* warm_start = nullptr);

}  // namespace scp
