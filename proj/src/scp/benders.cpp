#include "scp/benders.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "scp/simplex.hpp"

namespace scp {

namespace {

struct SubResult {
  LpStatus status{LpStatus::Optimal};
  double value{};                   // block objective at the fixed first stage
  std::vector<double> x;
  std::vector<std::pair<int, double>> cut_coef;  // aggregated onto master columns
  double cut_rhs{};
  Basis basis;
};

/// Solves one scenario block with the first stage fixed and derives the cut.
SubResult solve_subproblem(const ScenarioBlock& block, const std::vector<double>& first_x,
                           const SimplexOptions& opt, const Basis* warm) {
  LinearModel lp = block.lp;
  for (const auto& link : block.links)
    lp.rows[link.block_row].rhs -= link.coef * first_x[link.first_col];

  SubResult out;
  LpSolution sol = solve_lp(lp, opt, warm);
  out.status = sol.status;
  out.basis = sol.basis;
  if (sol.status == LpStatus::Optimal) {
    out.value = sol.objective;
    out.x = sol.x;
    // Optimality cut: theta_s + sum(mu_row * coef) x <= value + same at x_hat.
    std::map<int, double> coef;
    for (const auto& link : block.links)
      coef[link.first_col] += sol.dual[link.block_row] * link.coef;
    double rhs = sol.objective;
    for (const auto& [col, a] : coef) rhs += a * first_x[col];
    for (const auto& [col, a] : coef)
      if (std::abs(a) > 1e-12) out.cut_coef.emplace_back(col, a);
    out.cut_rhs = rhs;
  } else if (sol.status == LpStatus::Infeasible) {
    // Feasibility cut from the Farkas row multipliers sigma:
    // sum(sigma_row * coef) x >= sigma' base_rhs.
    std::map<int, double> coef;
    for (const auto& link : block.links)
      coef[link.first_col] += sol.ray[link.block_row] * link.coef;
    double rhs = 0.0;
    for (size_t i = 0; i < block.lp.rows.size(); ++i) rhs += sol.ray[i] * block.lp.rows[i].rhs;
    for (const auto& [col, a] : coef)
      if (std::abs(a) > 1e-12) out.cut_coef.emplace_back(col, a);
    out.cut_rhs = rhs;
  } else {
    throw NumericalBreakdown("scenario subproblem reported unbounded");
  }
  return out;
}

}  // namespace

BendersResult benders_solve(const TwoStageModel& model, const BendersOptions& opt) {
  const int S = static_cast<int>(model.blocks.size());
  if (S == 0) {
    // Single-period model: the master is the whole problem.
    MilpSolution sol = solve_milp(model.first, opt.master);
    if (sol.status == MilpStatus::Infeasible) throw MasterInfeasible();
    if (sol.status != MilpStatus::Optimal)
      throw IterationLimit("single-period master did not solve to optimality");
    BendersResult out;
    out.objective = sol.objective;
    out.bound = sol.best_bound;
    out.master_x = sol.x;
    out.state.converged = true;
    return out;
  }

  LinearModel master = model.first;
  const int ncols_first = static_cast<int>(master.cols.size());
  std::vector<int> theta(S);
  for (int s = 0; s < S; ++s) {
    Column th;
    th.id = {VarKind::Recourse, -1, -1, -1, -1, -1, s};
    th.name = var_name(th.id);
    th.lb = -kInf;
    th.ub = model.blocks[s].lp.obj_offset;  // revenue cap delta_s (Omega_s >= 0)
    th.obj = model.blocks[s].prob;
    theta[s] = master.add_col(th);
  }

  BendersResult out;
  out.scenario_x.assign(S, {});
  std::vector<Basis> sub_basis(S);
  std::vector<bool> sub_warm(S, false);
  Basis master_warm;
  bool have_master_warm = false;
  double best_lb = -kInf;
  double ub = kInf;

  for (int iter = 1; iter <= opt.max_iters; ++iter) {
    MilpSolution ms = solve_milp(master, opt.master, have_master_warm ? &master_warm : nullptr);
    if (ms.status == MilpStatus::Infeasible) throw MasterInfeasible();
    if (ms.status == MilpStatus::Unbounded)
      throw NumericalBreakdown("Benders master unbounded; recourse bound missing");
    master_warm = ms.root_basis;
    have_master_warm = true;
    ub = std::min(ub, ms.status == MilpStatus::Optimal ? ms.objective : ms.best_bound);
    out.state.upper_bounds.push_back(ub);

    std::vector<double> first_x(ms.x.begin(), ms.x.begin() + ncols_first);
    std::vector<SubResult> subs(S);
    auto solve_range = [&](int begin, int end) {
      for (int s = begin; s < end; ++s)
        subs[s] = solve_subproblem(model.blocks[s], first_x, opt.subproblem,
                                   sub_warm[s] ? &sub_basis[s] : nullptr);
    };
    const int threads = std::max(1, std::min(opt.threads, S));
    if (threads == 1) {
      solve_range(0, S);
    } else {
      std::vector<std::thread> pool;
      const int chunk = (S + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        int begin = t * chunk;
        int end = std::min(S, begin + chunk);
        if (begin < end) pool.emplace_back(solve_range, begin, end);
      }
      for (auto& th : pool) th.join();
    }

    bool all_feasible = true;
    int cuts_added = 0;
    double expected_recourse = 0.0;
    for (int s = 0; s < S; ++s) {
      sub_basis[s] = subs[s].basis;
      sub_warm[s] = true;
      if (subs[s].status == LpStatus::Infeasible) {
        all_feasible = false;
        Row cut;
        cut.label = "cut_feas";
        cut.name = "cutF_" + std::to_string(iter) + "_" + std::to_string(s);
        cut.sense = RowSense::GE;
        cut.rhs = subs[s].cut_rhs;
        for (const auto& [col, a] : subs[s].cut_coef) cut.entries.push_back({col, a});
        master.add_row(cut);
        out.state.cuts.push_back({iter, s, true, subs[s].cut_coef, subs[s].cut_rhs});
        ++cuts_added;
        continue;
      }
      expected_recourse += model.blocks[s].prob * subs[s].value;
      const double theta_hat = ms.x[theta[s]];
      if (theta_hat > subs[s].value + 1e-7 * std::max(1.0, std::abs(subs[s].value))) {
        Row cut;
        cut.label = "cut_opt";
        cut.name = "cutO_" + std::to_string(iter) + "_" + std::to_string(s);
        cut.sense = RowSense::LE;
        cut.rhs = subs[s].cut_rhs;
        cut.entries.push_back({theta[s], 1.0});
        for (const auto& [col, a] : subs[s].cut_coef) cut.entries.push_back({col, a});
        master.add_row(cut);
        out.state.cuts.push_back({iter, s, false, subs[s].cut_coef, subs[s].cut_rhs});
        ++cuts_added;
      }
    }

    if (all_feasible) {
      const double lb = model.first.objective_value(first_x) + expected_recourse;
      if (lb > best_lb) {
        best_lb = lb;
        out.master_x = first_x;
        for (int s = 0; s < S; ++s) out.scenario_x[s] = subs[s].x;
      }
    }
    out.state.lower_bounds.push_back(best_lb);
    out.state.iterations = iter;

    const double gap = ub - best_lb;
    if (gap <= opt.gap_tol * std::max(1.0, std::abs(ub)) || cuts_added == 0) {
      out.state.converged = true;
      break;
    }
  }

  if (!out.state.converged && best_lb == -kInf)
    throw IterationLimit("Benders hit the iteration limit with no feasible incumbent");
  out.objective = best_lb;
  out.bound = ub;
  return out;
}

}  // namespace scp
