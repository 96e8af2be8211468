#include "scp/milp.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

#include "scp/errors.hpp"

namespace scp {

namespace {

struct BoundChange {
  int col{};
  double lb{};
  double ub{};
};

struct Node {
  long id{};
  double bound{};  // parent LP objective, model sense
  std::vector<BoundChange> changes;
  std::shared_ptr<Basis> start;
};

struct NodeOrder {
  bool maximize{};
  bool operator()(const Node& a, const Node& b) const {
    // priority_queue pops the "largest": best bound first, then oldest id.
    double sa = maximize ? a.bound : -a.bound;
    double sb = maximize ? b.bound : -b.bound;
    if (sa != sb) return sa < sb;
    return a.id > b.id;
  }
};

int most_fractional(const LinearModel& model, const std::vector<double>& x, double int_tol) {
  int best = -1;
  double best_frac = int_tol;
  for (size_t j = 0; j < model.cols.size(); ++j) {
    if (!model.cols[j].integer) continue;
    double frac = std::abs(x[j] - std::round(x[j]));
    if (frac > best_frac + 1e-12) {
      best_frac = frac;
      best = static_cast<int>(j);
    }
  }
  return best;
}

void apply_changes(LinearModel& model, const std::vector<BoundChange>& changes) {
  for (const auto& ch : changes) {
    model.cols[ch.col].lb = ch.lb;
    model.cols[ch.col].ub = ch.ub;
  }
}

void restore(LinearModel& model, const LinearModel& original,
             const std::vector<BoundChange>& changes) {
  for (const auto& ch : changes) {
    model.cols[ch.col].lb = original.cols[ch.col].lb;
    model.cols[ch.col].ub = original.cols[ch.col].ub;
  }
}

}  // namespace

MilpSolution solve_milp(const LinearModel& model, const MilpOptions& opt, const Basis* warm) {
  const bool maximize = model.sense == ObjSense::Maximize;
  const double dir = maximize ? 1.0 : -1.0;
  auto better = [&](double a, double b) { return dir * (a - b) > 0; };

  MilpSolution out;
  LinearModel work = model;

  LpSolution root = solve_lp(work, opt.lp, warm);
  out.lp_iterations += root.iterations;
  out.root_basis = root.basis;
  if (root.status == LpStatus::Infeasible) {
    out.status = MilpStatus::Infeasible;
    return out;
  }
  if (root.status == LpStatus::Unbounded) {
    out.status = MilpStatus::Unbounded;
    return out;
  }

  bool have_incumbent = false;
  double incumbent = maximize ? -kInf : kInf;
  std::vector<double> incumbent_x;

  auto gap_closed = [&](double bound) {
    if (!have_incumbent) return false;
    return dir * (bound - incumbent) <= opt.gap_tol * std::max(1.0, std::abs(incumbent));
  };

  // Fix-and-solve probe: round every integer column, fix it, re-solve the LP.
  auto rounding_probe = [&](const std::vector<double>& x, const Basis& basis) {
    if (!opt.rounding_heuristic) return;
    std::vector<BoundChange> fixes;
    for (size_t j = 0; j < work.cols.size(); ++j)
      if (work.cols[j].integer) {
        double v = std::round(x[j]);
        v = std::min(std::max(v, work.cols[j].lb), work.cols[j].ub);
        fixes.push_back({static_cast<int>(j), v, v});
      }
    apply_changes(work, fixes);
    LpSolution probe = solve_lp(work, opt.lp, &basis);
    out.lp_iterations += probe.iterations;
    restore(work, model, fixes);
    if (probe.status == LpStatus::Optimal &&
        (!have_incumbent || better(probe.objective, incumbent))) {
      have_incumbent = true;
      incumbent = probe.objective;
      incumbent_x = probe.x;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open(NodeOrder{maximize});
  long next_id = 0;

  {
    int frac = most_fractional(work, root.x, opt.int_tol);
    if (frac < 0) {
      out.status = MilpStatus::Optimal;
      out.objective = root.objective;
      out.best_bound = root.objective;
      out.x = root.x;
      out.nodes = 1;
      return out;
    }
    rounding_probe(root.x, root.basis);
    Node n;
    n.id = next_id++;
    n.bound = root.objective;
    n.start = std::make_shared<Basis>(root.basis);
    open.push(std::move(n));
  }

  double best_open_bound = root.objective;
  while (!open.empty()) {
    if (out.nodes >= opt.node_limit) {
      out.status = MilpStatus::NodeLimit;
      out.objective = incumbent;
      out.best_bound = best_open_bound;
      out.x = incumbent_x;
      if (!have_incumbent) out.objective = maximize ? -kInf : kInf;
      return out;
    }
    Node node = open.top();
    open.pop();
    best_open_bound = node.bound;
    if (gap_closed(node.bound)) break;

    ++out.nodes;
    apply_changes(work, node.changes);
    LpSolution lp = solve_lp(work, opt.lp, node.start.get());
    out.lp_iterations += lp.iterations;
    restore(work, model, node.changes);

    if (lp.status != LpStatus::Optimal) continue; // infeasible child (unbounded cannot appear below root)
    if (have_incumbent && !better(lp.objective, incumbent) &&
        std::abs(lp.objective - incumbent) > 1e-12)
      continue;

    int frac = most_fractional(work, lp.x, opt.int_tol);
    if (frac < 0) {
      if (!have_incumbent || better(lp.objective, incumbent)) {
        have_incumbent = true;
        incumbent = lp.objective;
        incumbent_x = lp.x;
      }
      continue;
    }
    if (gap_closed(lp.objective)) continue;
    if ((out.nodes & 63) == 1) rounding_probe(lp.x, lp.basis);

    double floor_v = std::floor(lp.x[frac] + opt.int_tol);
    auto branch = [&](double new_lb, double new_ub) {
      Node child;
      child.id = next_id++;
      child.bound = lp.objective;
      child.changes = node.changes;
      double lb = model.cols[frac].lb;
      double ub = model.cols[frac].ub;
      for (const auto& ch : node.changes)
        if (ch.col == frac) {
          lb = ch.lb;
          ub = ch.ub;
        }
      lb = std::max(lb, new_lb);
      ub = std::min(ub, new_ub);
      if (lb > ub + 1e-9) return;
      child.changes.push_back({frac, lb, ub});
      child.start = std::make_shared<Basis>(lp.basis);
      open.push(std::move(child));
    };
    branch(-kInf, floor_v);      // x <= floor
    branch(floor_v + 1.0, kInf); // x >= ceil
  }

  if (!have_incumbent) {
    out.status = MilpStatus::Infeasible;
    return out;
  }
  out.status = MilpStatus::Optimal;
  out.objective = incumbent;
  double remaining = open.empty() ? incumbent : best_open_bound;
  out.best_bound = better(remaining, incumbent) ? remaining : incumbent;
  out.x = incumbent_x;
  return out;
}

}  // namespace scp
