#pragma once

#include <map>
#include <string>
#include <vector>

#include "scp/instance.hpp"
#include "scp/linear_model.hpp"
#include "scp/quality.hpp"
#include "scp/scenario.hpp"

namespace scp {

/// Dense view over a filtered instance: stable part/supplier/mode/customer
/// orderings plus precomputed transport days per available route.
struct ModelIndex {
  std::vector<PartSpec> parts;
  std::vector<std::vector<SupplierSpec>> part_suppliers;   // [p][j]
  std::vector<ModeSpec> modes;
  std::vector<CustomerSpec> customers;
  std::vector<std::vector<std::vector<int>>> supplier_tdays; // [p][j][k], -1 unavailable
  std::vector<std::vector<int>> customer_tdays;              // [l][k], -1 unavailable
  HoldingCosts holding;

  int part_index(const std::string& id) const;
  int customer_index(const std::string& id) const;
};

ModelIndex make_model_index(const Instance& filtered);

/// Per-build knobs. Deadlines and demand figures come from the instance; the
/// planning window is positioned inside the analysis horizon by fp_start_day.
struct BuildConfig {
  int fp_start_day{1};
  int fp_days{};
  int sp_days{};                    // 0 builds a single-period model
  std::map<std::string, int> d2;    // per-customer quality uplift, fixed
  double penalty_total{};           // horizon-extension penalties, constant
  bool strict_integer{false};       // audit mode: alpha/phi integer too
};

struct StageLink {
  int block_row{};  // row index inside the block LP
  int first_col{};  // column index in the first-stage model
  double coef{};
};

struct ScenarioBlock {
  LinearModel lp;   // Max sense, objective delta_s - Omega_s, offset delta_s
  double prob{};
  int scenario_index{};
  std::vector<StageLink> links;
};

struct TwoStageModel {
  LinearModel first;  // Max sense, objective delta - Omega, offset delta - penalties
  std::vector<ScenarioBlock> blocks;
  ModelIndex index;
  BuildConfig config;
  std::map<std::string, int> link_phi;    // customer id -> first-stage column
  std::map<std::string, int> link_alpha;  // part id -> alpha column at t = fp_days
  std::map<std::string, int> bound_census; // labels implemented as variable bounds
};

/// Builds the first-stage block plus one LP block per scenario. Throws
/// InfeasibleStatic when first-stage supplier capacity provably cannot cover
/// theta_i * sum(D1).
TwoStageModel build_two_stage(const Instance& filtered, const QualityWeights& weights,
                              const ScenarioSet& scenarios, const BuildConfig& config);

/// Deterministic-equivalent MILP with every scenario block inlined.
LinearModel build_extensive_form(const TwoStageModel& model);

/// Variable and constraint counts per equation label (rows and bounds).
std::map<std::string, int> model_census(const TwoStageModel& model);

struct DelayedDeadlines {
  std::map<std::string, int> new_deadline; // absolute T^{d,Upsilon} per customer
  double penalty_total{};
  std::map<std::string, double> penalty_per_customer;
  int extension_days_per_period{};
};

/// Applies a horizon extension to an instance: replaces first-period deadlines,
/// stretches both periods of the planning horizon that starts at fp_start_day,
/// and shifts every later period. Returns the extended instance; the penalty
/// total goes into BuildConfig::penalty_total.
Instance apply_horizon_extension(const Instance& instance, int fp_period_index,
                                 const DelayedDeadlines& delayed);

}  // namespace scp
