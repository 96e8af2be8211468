#pragma once

#include <cstdint>
#include <vector>

#include "scp/linear_model.hpp"

namespace scp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, Free };

/// Warm-start basis: one status per structural column, one per row slack.
/// A basis from a smaller model is repaired automatically (new columns enter
/// nonbasic at a bound, new row slacks enter basic).
struct Basis {
  std::vector<VarStatus> col_status;
  std::vector<VarStatus> slack_status;
  bool empty() const { return col_status.empty() && slack_status.empty(); }
};

struct LpSolution {
  LpStatus status{LpStatus::Optimal};
  double objective{};               // model sense, includes obj_offset
  std::vector<double> x;            // per column
  std::vector<double> dual;         // per row: d(objective)/d(rhs), model sense
  std::vector<double> reduced_cost; // per column, model sense
  /// Infeasible: row multipliers sigma with sigma'rhs > 0 and sigma'A <= 0 on
  /// every free-upper column at lower bound (Farkas certificate; signs match
  /// row senses). Unbounded: improving primal ray over columns.
  std::vector<double> ray;
  Basis basis;
  long iterations{};
};

struct SimplexOptions {
  double feas_tol{1e-7};
  double opt_tol{1e-9};
  double pivot_tol{1e-9};
  int refactor_interval{50};
  long iteration_limit{2000000};
  int max_refactor_attempts{5};
};

/// Bounded-variable revised simplex with a composite (artificial-free) phase 1,
/// sparse LU refactorization and product-form eta updates in between, Dantzig
/// pricing with a Bland fallback once cycling is suspected.
LpSolution solve_lp(const LinearModel& model, const SimplexOptions& options = {},
                    const Basis* warm_start = nullptr);

}  // namespace scp
