#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scp/builder.hpp"

namespace scp {

/// The eight named cost totals plus penalty, revenue and profit.
struct CostBreakdown {
  double tppc{};  // part procurement
  double ticb{};  // part inventory (back end)
  double ticf{};  // eVTOL inventory (front end)
  double tmc{};   // manufacturing
  double ttcb{};  // transport, back end
  double ttcf{};  // transport, front end
  double tecb{};  // emissions, back end
  double tecf{};  // emissions, front end
  double tpc{};   // delay penalties
  double revenue{};
  double profit{};

  double cost_sum() const {
    return tppc + ticb + ticf + tmc + ttcb + ttcf + tecb + tecf + tpc;
  }
  CostBreakdown& accumulate(const CostBreakdown& other, double weight);
};

struct OrderEvent {
  int day{};  // order placement day (model-relative)
  std::string part_id, supplier_id, mode_id;
  int receipt_day{};
  double quantity{};
};

struct ReceiptEvent {
  int day{};
  std::string part_id, supplier_id, mode_id;
  double quantity{};
};

struct MfgEvent {
  int day{};
  std::string customer_id, mode_id;
  double quantity{};
};

struct StagePlan {
  std::vector<OrderEvent> orders;
  std::vector<ReceiptEvent> receipts;
  std::vector<MfgEvent> mfg;
  std::map<std::string, std::vector<double>> part_inventory;  // part -> per stage day
  std::map<std::string, double> overmanufacture;              // customer -> phi (stage 1)
};

struct ScenarioPlan {
  StagePlan stage;
  Scenario realization;
  double prob{};
};

/// Realized decision values for one planning-horizon solve.
struct Plan {
  int fp_start_day{1};
  int fp_days{};
  int sp_days{};
  std::map<std::string, int> d2;
  std::map<std::string, double> penalty_per_customer;
  double penalty_total{};
  std::map<std::string, int> fp_deadlines;  // absolute, after any extension
  StagePlan first;
  std::vector<ScenarioPlan> scenarios;
  double expected_profit{};
};

/// Pulls a Plan out of first-stage and per-scenario solution vectors.
Plan extract_plan(const TwoStageModel& model, const std::vector<double>& first_x,
                  const std::vector<std::vector<double>>& scenario_x,
                  const ScenarioSet& scenarios);

/// Pulls a Plan out of an extensive-form solution vector.
Plan extract_plan_extensive(const TwoStageModel& model, const std::vector<double>& x,
                            const ScenarioSet& scenarios);

nlohmann::ordered_json plan_to_json(const Plan& plan);
Plan plan_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json breakdown_to_json(const CostBreakdown& b);

}  // namespace scp
