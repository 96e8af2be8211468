#include "scp/plan.hpp"

#include <algorithm>
#include <cmath>

namespace scp {

CostBreakdown& CostBreakdown::accumulate(const CostBreakdown& other, double weight) {
  tppc += weight * other.tppc;
  ticb += weight * other.ticb;
  ticf += weight * other.ticf;
  tmc += weight * other.tmc;
  ttcb += weight * other.ttcb;
  ttcf += weight * other.ttcf;
  tecb += weight * other.tecb;
  tecf += weight * other.tecf;
  tpc += weight * other.tpc;
  revenue += weight * other.revenue;
  profit += weight * other.profit;
  return *this;
}

namespace {

constexpr double kQtyEps = 1e-9;

StagePlan extract_stage(const TwoStageModel& model, const LinearModel& lm,
                        const std::vector<double>& x, int t_begin, int days) {
  const ModelIndex& ix = model.index;
  StagePlan out;
  for (const auto& part : ix.parts) out.part_inventory[part.id].assign(days, 0.0);
  for (size_t col = 0; col < lm.cols.size(); ++col) {
    const VarId& id = lm.cols[col].id;
    const double v = x[col];
    switch (id.kind) {
      case VarKind::Receipt: {
        if (v <= kQtyEps) break;
        const auto& sup = ix.part_suppliers[id.part][id.supplier];
        out.receipts.push_back({id.t, sup.part_id, sup.id, ix.modes[id.mode].id, v});
        break;
      }
      case VarKind::Order: {
        if (v <= kQtyEps) break;
        const auto& sup = ix.part_suppliers[id.part][id.supplier];
        const int lag = sup.lead_time_days + ix.supplier_tdays[id.part][id.supplier][id.mode];
        out.orders.push_back({id.t - lag, sup.part_id, sup.id, ix.modes[id.mode].id, id.t, v});
        break;
      }
      case VarKind::Manufacture:
        if (v > kQtyEps)
          out.mfg.push_back({id.t, ix.customers[id.customer].id, ix.modes[id.mode].id, v});
        break;
      case VarKind::PartInventory:
        out.part_inventory[ix.parts[id.part].id][id.t - t_begin] = v;
        break;
      case VarKind::OverManufacture:
        out.overmanufacture[ix.customers[id.customer].id] = std::max(0.0, v);
        break;
      default:
        break;
    }
  }
  auto day_order = [](const auto& a, const auto& b) { return a.day < b.day; };
  std::stable_sort(out.orders.begin(), out.orders.end(), day_order);
  std::stable_sort(out.receipts.begin(), out.receipts.end(), day_order);
  std::stable_sort(out.mfg.begin(), out.mfg.end(), day_order);
  return out;
}

}  // namespace

Plan extract_plan(const TwoStageModel& model, const std::vector<double>& first_x,
                  const std::vector<std::vector<double>>& scenario_x,
                  const ScenarioSet& scenarios) {
  Plan plan;
  plan.fp_start_day = model.config.fp_start_day;
  plan.fp_days = model.config.fp_days;
  plan.sp_days = model.config.sp_days;
  plan.d2 = model.config.d2;
  plan.penalty_total = model.config.penalty_total;
  for (const auto& c : model.index.customers) plan.fp_deadlines[c.id] = c.deadline_fp;
  plan.first = extract_stage(model, model.first, first_x, 1, model.config.fp_days);
  for (size_t s = 0; s < model.blocks.size(); ++s) {
    ScenarioPlan sp;
    sp.prob = model.blocks[s].prob;
    sp.realization = scenarios.scenarios.at(s);
    sp.stage = extract_stage(model, model.blocks[s].lp, scenario_x.at(s),
                             model.config.fp_days + 1, model.config.sp_days);
    plan.scenarios.push_back(std::move(sp));
  }
  return plan;
}

Plan extract_plan_extensive(const TwoStageModel& model, const std::vector<double>& x,
                            const ScenarioSet& scenarios) {
  std::vector<double> first_x(x.begin(), x.begin() + model.first.cols.size());
  std::vector<std::vector<double>> sub;
  size_t base = model.first.cols.size();
  for (const auto& block : model.blocks) {
    sub.emplace_back(x.begin() + base, x.begin() + base + block.lp.cols.size());
    base += block.lp.cols.size();
  }
  return extract_plan(model, first_x, sub, scenarios);
}

namespace {

using Json = nlohmann::ordered_json;

Json stage_to_json(const StagePlan& s) {
  Json j;
  j["orders"] = Json::array();
  for (const auto& o : s.orders)
    j["orders"].push_back(Json{{"day", o.day},
                               {"part", o.part_id},
                               {"supplier", o.supplier_id},
                               {"mode", o.mode_id},
                               {"receipt_day", o.receipt_day},
                               {"qty", o.quantity}});
  j["receipts"] = Json::array();
  for (const auto& r : s.receipts)
    j["receipts"].push_back(Json{{"day", r.day},
                                 {"part", r.part_id},
                                 {"supplier", r.supplier_id},
                                 {"mode", r.mode_id},
                                 {"qty", r.quantity}});
  j["mfg"] = Json::array();
  for (const auto& m : s.mfg)
    j["mfg"].push_back(Json{
        {"day", m.day}, {"customer", m.customer_id}, {"mode", m.mode_id}, {"qty", m.quantity}});
  j["part_inventory"] = s.part_inventory;
  j["overmanufacture"] = s.overmanufacture;
  return j;
}

StagePlan stage_from_json(const Json& j) {
  StagePlan s;
  for (const auto& o : j.value("orders", Json::array()))
    s.orders.push_back({o.value("day", 0), o.value("part", ""), o.value("supplier", ""),
                        o.value("mode", ""), o.value("receipt_day", 0), o.value("qty", 0.0)});
  for (const auto& r : j.value("receipts", Json::array()))
    s.receipts.push_back({r.value("day", 0), r.value("part", ""), r.value("supplier", ""),
                          r.value("mode", ""), r.value("qty", 0.0)});
  for (const auto& m : j.value("mfg", Json::array()))
    s.mfg.push_back(
        {m.value("day", 0), m.value("customer", ""), m.value("mode", ""), m.value("qty", 0.0)});
  if (j.contains("part_inventory"))
    for (const auto& [pid, arr] : j["part_inventory"].items())
      s.part_inventory[pid] = arr.get<std::vector<double>>();
  if (j.contains("overmanufacture"))
    for (const auto& [cid, v] : j["overmanufacture"].items())
      s.overmanufacture[cid] = v.get<double>();
  return s;
}

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["prob"] = sc.prob;
  j["prices"] = sc.prices;
  j["capacities"] = sc.capacities;
  j["mfg_cost"] = sc.mfg_cost;
  j["extra_demand"] = sc.extra_demand;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario sc;
  sc.prob = j.value("prob", 0.0);
  if (j.contains("prices"))
    for (const auto& [k, v] : j["prices"].items()) sc.prices[k] = v.get<double>();
  if (j.contains("capacities"))
    for (const auto& [k, v] : j["capacities"].items()) sc.capacities[k] = v.get<double>();
  sc.mfg_cost = j.value("mfg_cost", 0.0);
  if (j.contains("extra_demand"))
    for (const auto& [k, v] : j["extra_demand"].items()) sc.extra_demand[k] = v.get<int>();
  return sc;
}

}  // namespace

Json plan_to_json(const Plan& plan) {
  Json j;
  j["fp_start_day"] = plan.fp_start_day;
  j["fp_days"] = plan.fp_days;
  j["sp_days"] = plan.sp_days;
  j["d2"] = plan.d2;
  j["fp_deadlines"] = plan.fp_deadlines;
  j["penalty_total"] = plan.penalty_total;
  j["penalty_per_customer"] = plan.penalty_per_customer;
  j["expected_profit"] = plan.expected_profit;
  j["first_stage"] = stage_to_json(plan.first);
  j["scenarios"] = Json::array();
  for (const auto& sp : plan.scenarios) {
    Json s;
    s["prob"] = sp.prob;
    s["realization"] = scenario_to_json(sp.realization);
    s["plan"] = stage_to_json(sp.stage);
    j["scenarios"].push_back(s);
  }
  return j;
}

Plan plan_from_json(const Json& j) {
  Plan plan;
  plan.fp_start_day = j.value("fp_start_day", 1);
  plan.fp_days = j.value("fp_days", 0);
  plan.sp_days = j.value("sp_days", 0);
  if (j.contains("d2"))
    for (const auto& [cid, v] : j["d2"].items()) plan.d2[cid] = v.get<int>();
  if (j.contains("fp_deadlines"))
    for (const auto& [cid, v] : j["fp_deadlines"].items()) plan.fp_deadlines[cid] = v.get<int>();
  plan.penalty_total = j.value("penalty_total", 0.0);
  if (j.contains("penalty_per_customer"))
    for (const auto& [cid, v] : j["penalty_per_customer"].items())
      plan.penalty_per_customer[cid] = v.get<double>();
  plan.expected_profit = j.value("expected_profit", 0.0);
  if (j.contains("first_stage")) plan.first = stage_from_json(j["first_stage"]);
  for (const auto& s : j.value("scenarios", Json::array())) {
    ScenarioPlan sp;
    sp.prob = s.value("prob", 0.0);
    if (s.contains("realization")) sp.realization = scenario_from_json(s["realization"]);
    if (s.contains("plan")) sp.stage = stage_from_json(s["plan"]);
    plan.scenarios.push_back(std::move(sp));
  }
  return plan;
}

Json breakdown_to_json(const CostBreakdown& b) {
  return Json{{"tppc", b.tppc},
              {"ticb", b.ticb},
              {"ticf", b.ticf},
              {"tmc", b.tmc},
              {"ttcb", b.ttcb},
              {"ttcf", b.ttcf},
              {"tecb", b.tecb},
              {"tecf", b.tecf},
              {"tpc", b.tpc},
              {"revenue", b.revenue},
              {"profit", b.profit}};
}

}  // namespace scp
