#include "scp/simplex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

#include "scp/errors.hpp"

namespace scp {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct Eta {
  int row{};
  std::vector<std::pair<int, double>> w; // sparse pivot column, includes (row, w_row)
  double w_row{};
};

/// Internal minimization workspace: columns 0..n-1 are structural, n..n+m-1
/// are row slacks with coefficient +1.
class Simplex {
 public:
  Simplex(const LinearModel& model, const SimplexOptions& opt) : model_(model), opt_(opt) {
    n_ = static_cast<int>(model.cols.size());
    m_ = static_cast<int>(model.rows.size());
    total_ = n_ + m_;
    const double sign = model.sense == ObjSense::Maximize ? -1.0 : 1.0;
    cost_.assign(total_, 0.0);
    lb_.assign(total_, 0.0);
    ub_.assign(total_, kInf);
    for (int j = 0; j < n_; ++j) {
      cost_[j] = sign * model.cols[j].obj;
      lb_[j] = model.cols[j].lb;
      ub_[j] = model.cols[j].ub;
    }
    rhs_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const Row& row = model.rows[i];
      rhs_[i] = row.rhs;
      switch (row.sense) {
        case RowSense::LE: lb_[n_ + i] = 0.0; ub_[n_ + i] = kInf; break;
        case RowSense::EQ: lb_[n_ + i] = 0.0; ub_[n_ + i] = 0.0; break;
        case RowSense::GE: lb_[n_ + i] = -kInf; ub_[n_ + i] = 0.0; break;
      }
    }
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m_; ++i)
      for (const auto& e : model.rows[i].entries) trip.emplace_back(i, e.col, e.coef);
    A_.resize(m_, n_);
    A_.setFromTriplets(trip.begin(), trip.end());
    A_.makeCompressed();
  }

  LpSolution run(const Basis* warm) {
    init_basis(warm);
    factorize_or_reset();
    compute_basic_values();

    LpSolution sol;
    // Phase 1: drive basic bound violations to zero.
    if (!phase_loop(/*phase1=*/true)) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = iterations_;
      sol.ray = farkas_ray();
      sol.basis = export_basis();
      sol.x = export_x();
      return sol;
    }
    // Phase 2: optimize the true objective.
    bool optimal = phase_loop(/*phase1=*/false);
    sol.iterations = iterations_;
    sol.basis = export_basis();
    sol.x = export_x();
    if (!optimal) {
      sol.status = LpStatus::Unbounded;
      sol.ray = unbounded_ray_;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.objective = model_.objective_value(sol.x);
    const double sign = model_.sense == ObjSense::Maximize ? -1.0 : 1.0;
    Vec y = btran(basic_cost_vector(/*phase1=*/false));
    sol.dual.resize(m_);
    for (int i = 0; i < m_; ++i) sol.dual[i] = sign * y[i];
    sol.reduced_cost.resize(n_);
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::Basic) {
        sol.reduced_cost[j] = 0.0;
      } else {
        double d = cost_[j] - col_dot(j, y);
        sol.reduced_cost[j] = sign * d;
      }
    }
    return sol;
  }

 private:
  const LinearModel& model_;
  SimplexOptions opt_;
  int n_{}, m_{}, total_{};
  SpMat A_;
  std::vector<double> cost_, lb_, ub_;
  Vec rhs_;

  std::vector<VarStatus> status_;
  std::vector<int> basic_;  // basis position -> column index
  std::vector<int> basis_pos_; // column index -> basis position or -1
  Vec xb_;                  // values of basic variables by position
  std::vector<double> xn_;  // values of all variables (nonbasic entries valid)

  mutable Eigen::SparseLU<SpMat> lu_;
  std::vector<Eta> etas_;
  int pivots_since_factor_{};
  int reset_attempts_{};
  long iterations_{};
  long degenerate_streak_{};
  bool bland_{false};
  std::vector<double> unbounded_ray_;

  // ---- basis & factorization ----------------------------------------------

  void init_basis(const Basis* warm) {
    status_.assign(total_, VarStatus::AtLower);
    for (int j = 0; j < total_; ++j) {
      if (std::isfinite(lb_[j]))
        status_[j] = VarStatus::AtLower;
      else if (std::isfinite(ub_[j]))
        status_[j] = VarStatus::AtUpper;
      else
        status_[j] = VarStatus::Free;
    }
    if (warm && !warm->empty()) {
      for (int j = 0; j < std::min<int>(n_, static_cast<int>(warm->col_status.size())); ++j)
        status_[j] = warm->col_status[j];
      for (int i = 0; i < std::min<int>(m_, static_cast<int>(warm->slack_status.size())); ++i)
        status_[n_ + i] = warm->slack_status[i];
      // A basis can come from a model with different bounds; nonbasic entries
      // parked on a bound that is now infinite must be re-homed.
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::AtLower && !std::isfinite(lb_[j]))
          status_[j] = nonbasic_status_for(j);
        if (status_[j] == VarStatus::AtUpper && !std::isfinite(ub_[j]))
          status_[j] = nonbasic_status_for(j);
      }
    } else {
      for (int i = 0; i < m_; ++i) status_[n_ + i] = VarStatus::Basic;
    }
    repair_basis();
  }

  /// Ensures exactly m basic variables: demotes surplus basics to bounds,
  /// promotes slacks of uncovered rows.
  void repair_basis() {
    int count = 0;
    for (int j = 0; j < total_; ++j)
      if (status_[j] == VarStatus::Basic) ++count;
    if (count > m_) {
      for (int j = total_ - 1; j >= 0 && count > m_; --j)
        if (status_[j] == VarStatus::Basic) {
          status_[j] = nonbasic_status_for(j);
          --count;
        }
    }
    if (count < m_) {
      for (int i = 0; i < m_ && count < m_; ++i)
        if (status_[n_ + i] != VarStatus::Basic) {
          status_[n_ + i] = VarStatus::Basic;
          ++count;
        }
      for (int j = 0; j < n_ && count < m_; ++j)
        if (status_[j] != VarStatus::Basic) {
          status_[j] = VarStatus::Basic;
          ++count;
        }
    }
    basic_.clear();
    basis_pos_.assign(total_, -1);
    for (int j = 0; j < total_; ++j)
      if (status_[j] == VarStatus::Basic) {
        basis_pos_[j] = static_cast<int>(basic_.size());
        basic_.push_back(j);
      }
  }

  VarStatus nonbasic_status_for(int j) const {
    if (std::isfinite(lb_[j])) return VarStatus::AtLower;
    if (std::isfinite(ub_[j])) return VarStatus::AtUpper;
    return VarStatus::Free;
  }

  void factorize_or_reset() {
    while (true) {
      if (try_factorize()) return;
      if (++reset_attempts_ > opt_.max_refactor_attempts)
        throw NumericalBreakdown("basis factorization failed repeatedly");
      // Fall back to the all-slack basis.
      for (int j = 0; j < n_; ++j) status_[j] = nonbasic_status_for(j);
      for (int i = 0; i < m_; ++i) status_[n_ + i] = VarStatus::Basic;
      repair_basis();
    }
  }

  bool try_factorize() {
    SpMat B(m_, m_);
    std::vector<Eigen::Triplet<double>> trip;
    for (int pos = 0; pos < m_; ++pos) {
      int j = basic_[pos];
      if (j >= n_) {
        trip.emplace_back(j - n_, pos, 1.0);
      } else {
        for (SpMat::InnerIterator it(A_, j); it; ++it) trip.emplace_back(it.row(), pos, it.value());
      }
    }
    B.setFromTriplets(trip.begin(), trip.end());
    B.makeCompressed();
    lu_.compute(B);
    if (lu_.info() != Eigen::Success) return false;
    etas_.clear();
    pivots_since_factor_ = 0;
    return true;
  }

  void compute_basic_values() {
    xn_.assign(total_, 0.0);
    for (int j = 0; j < total_; ++j) {
      switch (status_[j]) {
        case VarStatus::AtLower: xn_[j] = lb_[j]; break;
        case VarStatus::AtUpper: xn_[j] = ub_[j]; break;
        case VarStatus::Free: xn_[j] = 0.0; break;
        case VarStatus::Basic: break;
      }
    }
    Vec r = rhs_;
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == VarStatus::Basic || xn_[j] == 0.0) continue;
      for (SpMat::InnerIterator it(A_, j); it; ++it) r[it.row()] -= it.value() * xn_[j];
    }
    for (int i = 0; i < m_; ++i) {
      int sj = n_ + i;
      if (status_[sj] != VarStatus::Basic && xn_[sj] != 0.0) r[i] -= xn_[sj];
    }
    xb_ = ftran(r);
    for (int pos = 0; pos < m_; ++pos) xn_[basic_[pos]] = xb_[pos];
  }

  // ---- linear algebra ------------------------------------------------------

  Vec ftran(Vec v) const {
    Vec x = lu_.solve(v);
    for (const auto& eta : etas_) {
      double xr = x[eta.row] / eta.w_row;
      if (xr != 0.0)
        for (const auto& [i, wi] : eta.w)
          if (i != eta.row) x[i] -= wi * xr;
      x[eta.row] = xr;
    }
    return x;
  }

  Vec btran(Vec u) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = u[it->row];
      for (const auto& [i, wi] : it->w)
        if (i != it->row) acc -= wi * u[i];
      u[it->row] = acc / it->w_row;
    }
    return lu_.transpose().solve(u);
  }

  double col_dot(int j, const Vec& y) const {
    if (j >= n_) return y[j - n_];
    double acc = 0.0;
    for (SpMat::InnerIterator it(A_, j); it; ++it) acc += it.value() * y[it.row()];
    return acc;
  }

  Vec col_dense(int j) const {
    Vec a = Vec::Zero(m_);
    if (j >= n_)
      a[j - n_] = 1.0;
    else
      for (SpMat::InnerIterator it(A_, j); it; ++it) a[it.row()] = it.value();
    return a;
  }

  // ---- pricing -------------------------------------------------------------

  double infeasibility() const {
    double total = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      int j = basic_[pos];
      if (xb_[pos] < lb_[j] - opt_.feas_tol) total += lb_[j] - xb_[pos];
      if (xb_[pos] > ub_[j] + opt_.feas_tol) total += xb_[pos] - ub_[j];
    }
    return total;
  }

  Vec basic_cost_vector(bool phase1) const {
    Vec cb = Vec::Zero(m_);
    for (int pos = 0; pos < m_; ++pos) {
      int j = basic_[pos];
      if (phase1) {
        if (xb_[pos] < lb_[j] - opt_.feas_tol)
          cb[pos] = -1.0;
        else if (xb_[pos] > ub_[j] + opt_.feas_tol)
          cb[pos] = 1.0;
      } else {
        cb[pos] = cost_[j];
      }
    }
    return cb;
  }

  /// Picks the entering column (Dantzig, or Bland once cycling is suspected).
  /// Returns -1 when no candidate improves: phase-1 optimum or LP optimum.
  int price(const Vec& y, bool phase1, int& direction) const {
    int best = -1;
    double best_score = opt_.opt_tol;
    int best_dir = 0;
    for (int j = 0; j < total_; ++j) {
      VarStatus st = status_[j];
      if (st == VarStatus::Basic) continue;
      if (lb_[j] == ub_[j]) continue; // fixed
      double c = phase1 ? 0.0 : cost_[j];
      double d = c - col_dot(j, y);
      double score = 0.0;
      int dir = 0;
      if (st == VarStatus::AtLower || st == VarStatus::Free) {
        if (d < -opt_.opt_tol) {
          score = -d;
          dir = 1;
        }
      }
      if (dir == 0 && (st == VarStatus::AtUpper || st == VarStatus::Free)) {
        if (d > opt_.opt_tol) {
          score = d;
          dir = -1;
        }
      }
      if (dir == 0) continue;
      if (bland_) return direction = dir, j;
      if (score > best_score + 1e-15) {
        best_score = score;
        best = j;
        best_dir = dir;
      }
    }
    direction = best_dir;
    return best;
  }

  // ---- ratio test ----------------------------------------------------------

  struct RatioResult {
    double step{kInf};
    int leaving_pos{-1};       // -1 with finite step: bound flip of the entering var
    bool leaving_to_upper{};   // which bound the leaving basic hits
  };

  RatioResult ratio_test(int entering, int direction, const Vec& w, bool phase1) const {
    RatioResult res;
    double range = ub_[entering] - lb_[entering];
    if (std::isfinite(range)) res.step = range;

    double best_pivot = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      double wi = w[pos];
      if (std::abs(wi) < opt_.pivot_tol) continue;
      int j = basic_[pos];
      double move = -static_cast<double>(direction) * wi; // d(x_j)/d(step)
      double x = xb_[pos];
      double limit = kInf;
      bool to_upper = false;
      if (move > 0) {
        if (phase1 && x < lb_[j] - opt_.feas_tol) {
          limit = (lb_[j] - x) / move; // infeasible-below rising: gradient break at lb
          to_upper = false;
        } else if (std::isfinite(ub_[j]) && x <= ub_[j] + opt_.feas_tol) {
          limit = (ub_[j] - x) / move;
          to_upper = true;
        }
      } else {
        if (phase1 && x > ub_[j] + opt_.feas_tol) {
          limit = (ub_[j] - x) / move;
          to_upper = true;
        } else if (std::isfinite(lb_[j]) && x >= lb_[j] - opt_.feas_tol) {
          limit = (lb_[j] - x) / move;
          to_upper = false;
        }
      }
      if (limit == kInf) continue;
      limit = std::max(0.0, limit);
      if (limit < res.step - 1e-12) {
        res.step = limit;
        res.leaving_pos = pos;
        res.leaving_to_upper = to_upper;
        best_pivot = std::abs(wi);
      } else if (res.leaving_pos >= 0 && limit <= res.step + 1e-12 &&
                 std::abs(wi) > best_pivot) {
        // Same breakpoint; prefer the numerically stronger pivot.
        res.leaving_pos = pos;
        res.leaving_to_upper = to_upper;
        best_pivot = std::abs(wi);
      }
    }
    if (res.leaving_pos >= 0 && std::isfinite(range) && range < res.step - 1e-12) {
      res.step = range;
      res.leaving_pos = -1;
    }
    return res;
  }

  // ---- main loop -----------------------------------------------------------

  /// Runs one simplex phase. Returns true on success (phase 1: feasible;
  /// phase 2: optimal), false on failure (phase 1: infeasible; phase 2:
  /// unbounded).
  bool phase_loop(bool phase1) {
    degenerate_streak_ = 0;
    bland_ = false;
    while (true) {
      if (iterations_++ > opt_.iteration_limit)
        throw NumericalBreakdown("simplex iteration limit exceeded");
      if (phase1 && infeasibility() <= opt_.feas_tol * std::max(1, m_)) return true;

      Vec y = btran(basic_cost_vector(phase1));
      int direction = 0;
      int entering = price(y, phase1, direction);
      if (entering < 0) {
        if (phase1) return infeasibility() <= opt_.feas_tol * std::max(1, m_);
        return true;
      }
      Vec w = ftran(col_dense(entering));
      RatioResult rt = ratio_test(entering, direction, w, phase1);
      if (!std::isfinite(rt.step)) {
        if (phase1) {
          // No breakpoint can only be numerical noise in phase 1; refactor once.
          if (!recover()) throw NumericalBreakdown("phase-1 ratio test found no breakpoint");
          continue;
        }
        unbounded_ray_.assign(n_, 0.0);
        if (entering < n_) unbounded_ray_[entering] = direction;
        for (int pos = 0; pos < m_; ++pos) {
          int j = basic_[pos];
          if (j < n_ && std::abs(w[pos]) > opt_.pivot_tol)
            unbounded_ray_[j] = -direction * w[pos];
        }
        return false;
      }

      apply_step(entering, direction, w, rt);
      if (rt.step <= 1e-12) {
        if (++degenerate_streak_ > std::max<long>(1000, 4L * m_)) bland_ = true;
      } else {
        degenerate_streak_ = 0;
        bland_ = false;
      }
    }
  }

  bool recover() {
    if (reset_attempts_ > opt_.max_refactor_attempts) return false;
    ++reset_attempts_;
    factorize_or_reset();
    compute_basic_values();
    return true;
  }

  void apply_step(int entering, int direction, const Vec& w, const RatioResult& rt) {
    const double t = rt.step;
    // Move basics.
    if (t != 0.0)
      for (int pos = 0; pos < m_; ++pos)
        if (std::abs(w[pos]) > 0.0) {
          xb_[pos] -= direction * t * w[pos];
          xn_[basic_[pos]] = xb_[pos];
        }
    const double entering_value =
        (status_[entering] == VarStatus::AtUpper ? ub_[entering]
         : status_[entering] == VarStatus::Free  ? 0.0
                                                 : lb_[entering]) +
        direction * t;

    if (rt.leaving_pos < 0) {
      // Bound flip: entering travels to its opposite bound, basis unchanged.
      status_[entering] = direction > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
      xn_[entering] = entering_value;
      return;
    }

    int leaving = basic_[rt.leaving_pos];
    double pivot = w[rt.leaving_pos];
    if (std::abs(pivot) < opt_.pivot_tol) {
      if (!recover()) throw NumericalBreakdown("unstable pivot");
      return;
    }
    status_[leaving] = rt.leaving_to_upper ? VarStatus::AtUpper : VarStatus::AtLower;
    if (!std::isfinite(rt.leaving_to_upper ? ub_[leaving] : lb_[leaving]))
      status_[leaving] = VarStatus::Free;
    xn_[leaving] = status_[leaving] == VarStatus::AtUpper  ? ub_[leaving]
                   : status_[leaving] == VarStatus::AtLower ? lb_[leaving]
                                                            : 0.0;
    status_[entering] = VarStatus::Basic;
    basis_pos_[entering] = rt.leaving_pos;
    basis_pos_[leaving] = -1;
    basic_[rt.leaving_pos] = entering;
    xb_[rt.leaving_pos] = entering_value;
    xn_[entering] = entering_value;

    Eta eta;
    eta.row = rt.leaving_pos;
    eta.w_row = pivot;
    for (int pos = 0; pos < m_; ++pos)
      if (w[pos] != 0.0) eta.w.emplace_back(pos, w[pos]);
    etas_.push_back(std::move(eta));

    if (++pivots_since_factor_ >= opt_.refactor_interval) {
      factorize_or_reset();
      compute_basic_values();
    }
  }

  // ---- extraction ----------------------------------------------------------

  std::vector<double> export_x() const {
    std::vector<double> x(n_);
    for (int j = 0; j < n_; ++j) x[j] = xn_[j];
    return x;
  }

  Basis export_basis() const {
    Basis b;
    b.col_status.assign(status_.begin(), status_.begin() + n_);
    b.slack_status.assign(status_.begin() + n_, status_.end());
    return b;
  }

  std::vector<double> farkas_ray() {
    Vec y = btran(basic_cost_vector(/*phase1=*/true));
    std::vector<double> ray(m_);
    for (int i = 0; i < m_; ++i) ray[i] = y[i];
    return ray;
  }
};

}  // namespace

LpSolution solve_lp(const LinearModel& model, const SimplexOptions& options, const Basis* warm) {
  for (const auto& col : model.cols)
    if (col.lb > col.ub + 1e-12) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      sol.ray.assign(model.rows.size(), 0.0);
      sol.x.assign(model.cols.size(), 0.0);
      return sol;
    }
  Simplex s(model, options);
  return s.run(warm);
}

}  // namespace scp
