#include "scp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace scp {

namespace {

constexpr double kEps = 1e-6;

struct RouteInfo {
  const RouteSpec* route;
  const ModeSpec* mode;
  int tdays;
};

RouteInfo supplier_route(const Instance& inst, const std::string& part, const std::string& sup,
                         const std::string& mode_id) {
  const SupplierSpec* s = inst.find_supplier(part, sup);
  const ModeSpec* m = inst.find_mode(mode_id);
  if (!s || !m) throw InconsistentPlan("unknown supplier/mode " + part + "/" + sup + "/" + mode_id);
  auto it = s->routes.find(mode_id);
  if (it == s->routes.end() || !it->second.available)
    throw InconsistentPlan("receipt uses unavailable route " + part + "/" + sup + "/" + mode_id);
  return {&it->second, m, transport_days(it->second, *m)};
}

RouteInfo customer_route(const Instance& inst, const std::string& cust,
                         const std::string& mode_id) {
  const CustomerSpec* c = inst.find_customer(cust);
  const ModeSpec* m = inst.find_mode(mode_id);
  if (!c || !m) throw InconsistentPlan("unknown customer/mode " + cust + "/" + mode_id);
  auto it = c->routes.find(mode_id);
  if (it == c->routes.end() || !it->second.available)
    throw InconsistentPlan("dispatch uses unavailable route " + cust + "/" + mode_id);
  return {&it->second, m, transport_days(it->second, *m)};
}

/// Direct-summation costs of one stage of decisions. Days are model-relative;
/// day0 converts to absolute for the per-day freight and emission prices.
CostBreakdown stage_costs(const Instance& inst, const StagePlan& stage, int day0, int t_begin,
                          int t_end, const std::map<std::string, int>& deadline_abs,
                          double mfg_unit_cost, const std::map<std::string, double>* prices) {
  CostBreakdown b;
  HoldingCosts hold = holding_costs(inst);
  for (const auto& r : stage.receipts) {
    const SupplierSpec* s = inst.find_supplier(r.part_id, r.supplier_id);
    const PartSpec* part = inst.find_part(r.part_id);
    RouteInfo ri = supplier_route(inst, r.part_id, r.supplier_id, r.mode_id);
    double price = s->price;
    if (prices) {
      auto it = prices->find(r.part_id + "/" + r.supplier_id);
      if (it != prices->end()) price = it->second;
    }
    const int abs_day = day0 + r.day;
    b.tppc += price * r.quantity;
    b.ttcb += freight_cost_on_day(inst, *ri.mode, abs_day) * part->weight *
              ri.route->distance_km * r.quantity;
    b.tecb += emission_cost_on_day(inst, abs_day) * ri.route->emission_tons_per_ton *
              part->weight * r.quantity;
  }
  for (const auto& m : stage.mfg) {
    RouteInfo ri = customer_route(inst, m.customer_id, m.mode_id);
    const int abs_day = day0 + m.day;
    const int dl_rel = std::min(deadline_abs.at(m.customer_id) - day0, t_end);
    b.tmc += mfg_unit_cost * m.quantity;
    b.ttcf += freight_cost_on_day(inst, *ri.mode, abs_day) * inst.em.evtol_weight *
              ri.route->distance_km * m.quantity;
    b.tecf += emission_cost_on_day(inst, abs_day) * ri.route->emission_tons_per_ton *
              inst.em.evtol_weight * m.quantity;
    b.ticf += hold.per_evtol_per_day * std::max(0, dl_rel - ri.tdays - m.day) * m.quantity;
  }
  // The stage's last day of part holding is not charged (matching the
  // objective's t sums to |T|/2 - 1 and |T| - 1).
  for (const auto& [pid, inv] : stage.part_inventory)
    for (int t = t_begin; t < t_end; ++t)
      b.ticb += hold.per_part_per_day.at(pid) * inv.at(t - t_begin);
  return b;
}

}  // namespace

std::vector<Receipt> stage1_receipts(const Plan& plan) {
  std::vector<Receipt> out;
  for (const auto& r : plan.first.receipts) out.push_back({r.part_id, r.supplier_id, r.quantity});
  return out;
}

CostBreakdown evaluate_stage1(const Plan& plan, const Instance& inst) {
  const int day0 = plan.fp_start_day - 1;
  CostBreakdown b = stage_costs(inst, plan.first, day0, 1, plan.fp_days, plan.fp_deadlines,
                                inst.em.base_mfg_cost, nullptr);
  b.tpc = plan.penalty_total;
  for (const auto& c : inst.customers) b.revenue += inst.em.selling_price * c.orders_fp;
  b.profit = b.revenue - b.cost_sum();
  return b;
}

CostBreakdown evaluate_scenario_branch(const Plan& plan, size_t s, const Instance& inst) {
  const auto& sp = plan.scenarios.at(s);
  const int day0 = plan.fp_start_day - 1;
  std::map<std::string, int> deadline_sp;
  for (const auto& c : inst.customers) deadline_sp[c.id] = c.deadline_sp;
  CostBreakdown b =
      stage_costs(inst, sp.stage, day0, plan.fp_days + 1, plan.fp_days + plan.sp_days,
                  deadline_sp, sp.realization.mfg_cost, &sp.realization.prices);
  for (const auto& c : inst.customers) {
    const int d2 = plan.d2.count(c.id) ? plan.d2.at(c.id) : 0;
    const int ds =
        sp.realization.extra_demand.count(c.id) ? sp.realization.extra_demand.at(c.id) : 0;
    b.revenue += inst.em.selling_price * (d2 + c.orders_sp_initial + ds);
  }
  b.profit = b.revenue - b.cost_sum();
  return b;
}

CostBreakdown evaluate_plan(const Plan& plan, const Instance& inst, int scenario_index) {
  CostBreakdown b = evaluate_stage1(plan, inst);
  if (scenario_index >= 0)
    b.accumulate(evaluate_scenario_branch(plan, static_cast<size_t>(scenario_index), inst), 1.0);
  return b;
}

CostBreakdown expected_breakdown(const Plan& plan, const Instance& inst) {
  CostBreakdown b = evaluate_stage1(plan, inst);
  for (size_t s = 0; s < plan.scenarios.size(); ++s)
    b.accumulate(evaluate_scenario_branch(plan, s, inst), plan.scenarios[s].prob);
  return b;
}

namespace {

struct StageCheckContext {
  const Instance& inst;
  const StagePlan& stage;
  int day0, t_begin, t_end;
  const std::map<std::string, int>& deadline_abs;
  std::map<std::string, double> initial_inventory;
  const std::map<std::string, double>* capacities;  // realized y^s, or null
  std::string tag;
};

void fail(const std::string& what) { throw InconsistentPlan(what); }

/// Per-stage flow replay. Returns closing inventory per part.
std::map<std::string, double> check_stage(const StageCheckContext& ctx) {
  const Instance& inst = ctx.inst;
  const int days = ctx.t_end - ctx.t_begin + 1;

  std::map<std::string, std::vector<double>> recv, used;
  std::vector<double> mfg_per_day(days, 0.0);
  for (const auto& p : inst.parts) {
    recv[p.id].assign(days, 0.0);
    used[p.id].assign(days, 0.0);
  }
  for (const auto& r : ctx.stage.receipts) {
    if (r.day < ctx.t_begin || r.day > ctx.t_end)
      fail(ctx.tag + ": receipt outside the stage day range");
    recv[r.part_id][r.day - ctx.t_begin] += r.quantity;
  }
  for (const auto& m : ctx.stage.mfg) {
    if (m.day < ctx.t_begin || m.day > ctx.t_end) fail(ctx.tag + ": mfg outside the stage range");
    mfg_per_day[m.day - ctx.t_begin] += m.quantity;
    for (const auto& p : inst.parts) used[p.id][m.day - ctx.t_begin] += p.per_evtol * m.quantity;
  }

  for (int t = 0; t < days; ++t)
    if (mfg_per_day[t] > inst.em.daily_mfg_cap + kEps)
      fail(ctx.tag + ": daily manufacturing cap exceeded on day " +
           std::to_string(ctx.t_begin + t));

  // Inventory conservation in cumulative form, caps, next-day availability.
  std::map<std::string, double> closing;
  for (const auto& p : inst.parts) {
    auto it = ctx.stage.part_inventory.find(p.id);
    if (it == ctx.stage.part_inventory.end() || static_cast<int>(it->second.size()) != days)
      fail(ctx.tag + ": missing inventory series for part " + p.id);
    double cum = ctx.initial_inventory.count(p.id) ? ctx.initial_inventory.at(p.id) : 0.0;
    for (int t = 0; t < days; ++t) {
      cum += recv[p.id][t] - used[p.id][t];
      if (std::abs(cum - it->second[t]) > kEps)
        fail(ctx.tag + ": inventory replay mismatch for part " + p.id + " on day " +
             std::to_string(ctx.t_begin + t));
      if (cum < -kEps || cum > p.inventory_cap + kEps)
        fail(ctx.tag + ": inventory bound violated for part " + p.id);
      if (t + 1 < days && cum + kEps < p.per_evtol * mfg_per_day[t + 1])
        fail(ctx.tag + ": next-day availability violated for part " + p.id + " on day " +
             std::to_string(ctx.t_begin + t));
    }
    closing[p.id] = cum;
  }

  // Order-receipt coupling: every receipt is matched by an order placed on
  // day t - T'' - T' >= 1, and vice versa.
  std::map<std::string, double> order_qty, receipt_qty;
  auto event_key = [](int day, const std::string& p, const std::string& s, const std::string& m) {
    return std::to_string(day) + "|" + p + "|" + s + "|" + m;
  };
  for (const auto& o : ctx.stage.orders) {
    if (o.day < 1) fail(ctx.tag + ": order placed before day 1");
    RouteInfo ri = supplier_route(inst, o.part_id, o.supplier_id, o.mode_id);
    const SupplierSpec* s = inst.find_supplier(o.part_id, o.supplier_id);
    if (o.receipt_day != o.day + s->lead_time_days + ri.tdays)
      fail(ctx.tag + ": order/receipt day mismatch for " + o.part_id + "/" + o.supplier_id);
    order_qty[event_key(o.receipt_day, o.part_id, o.supplier_id, o.mode_id)] += o.quantity;
  }
  for (const auto& r : ctx.stage.receipts)
    receipt_qty[event_key(r.day, r.part_id, r.supplier_id, r.mode_id)] += r.quantity;
  for (const auto& [key, qty] : receipt_qty) {
    auto it = order_qty.find(key);
    if (it == order_qty.end() || std::abs(it->second - qty) > kEps)
      fail(ctx.tag + ": receipt without matching order (" + key + ")");
  }
  for (const auto& [key, qty] : order_qty)
    if (!receipt_qty.count(key) && qty > kEps)
      fail(ctx.tag + ": order without matching receipt (" + key + ")");

  // Supplier stage capacity.
  std::map<std::string, double> per_supplier;
  for (const auto& o : ctx.stage.orders)
    per_supplier[o.part_id + "/" + o.supplier_id] += o.quantity;
  for (const auto& [key, qty] : per_supplier) {
    auto slash = key.find('/');
    const SupplierSpec* s = inst.find_supplier(key.substr(0, slash), key.substr(slash + 1));
    double cap = s->capacity;
    if (ctx.capacities && ctx.capacities->count(key)) cap = ctx.capacities->at(key);
    if (qty > cap + kEps) fail(ctx.tag + ": supplier capacity exceeded for " + key);
  }

  // eVTOL inventory cap over holding-days.
  for (int t = 0; t < days; ++t) {
    double held = 0.0;
    for (const auto& m : ctx.stage.mfg) {
      if (m.day != ctx.t_begin + t) continue;
      RouteInfo ri = customer_route(inst, m.customer_id, m.mode_id);
      const int dl_rel = std::min(ctx.deadline_abs.at(m.customer_id) - ctx.day0, ctx.t_end);
      held += std::max(0, dl_rel - ri.tdays - m.day) * m.quantity;
    }
    if (held > inst.em.evtol_inventory_cap + kEps)
      fail(ctx.tag + ": eVTOL inventory cap exceeded on day " + std::to_string(ctx.t_begin + t));
  }
  return closing;
}

}  // namespace

void verify_plan(const Plan& plan, const Instance& inst) {
  const int day0 = plan.fp_start_day - 1;

  std::map<std::string, double> alpha1;
  for (const auto& [pid, qty] : inst.em.initial_part_inventory) alpha1[pid] = qty;

  StageCheckContext first{
      inst,  plan.first, day0, 1, plan.fp_days, plan.fp_deadlines, alpha1, nullptr, "stage1"};
  auto closing = check_stage(first);

  // First-period fulfillment (eq20) and over-manufacture identity (eq21).
  for (const auto& c : inst.customers) {
    double in_window = 0.0, total = 0.0;
    for (const auto& m : plan.first.mfg) {
      if (m.customer_id != c.id) continue;
      RouteInfo ri = customer_route(inst, c.id, m.mode_id);
      const int dl_rel = std::min(plan.fp_deadlines.at(c.id) - day0, plan.fp_days);
      if (m.day <= dl_rel - ri.tdays) in_window += m.quantity;
      total += m.quantity;
    }
    if (in_window + kEps < c.orders_fp) fail("stage1: fulfillment short for customer " + c.id);
    const double phi =
        plan.first.overmanufacture.count(c.id) ? plan.first.overmanufacture.at(c.id) : 0.0;
    if (std::abs(total - c.orders_fp - phi) > kEps)
      fail("stage1: over-manufacture identity violated for customer " + c.id);
  }

  // Quality floor over first-stage receipts.
  auto receipts = stage1_receipts(plan);
  if (!receipts.empty()) {
    auto weights = ewm_weights(inst);
    double q = batch_quality(receipts, weights, inst);
    if (q + 1e-9 < inst.em.base_quality + inst.em.quality_epsilon)
      fail("stage1: batch quality " + std::to_string(q) + " below the floor");
  }

  std::map<std::string, int> deadline_sp;
  for (const auto& c : inst.customers) deadline_sp[c.id] = c.deadline_sp;
  for (size_t s = 0; s < plan.scenarios.size(); ++s) {
    const auto& sp = plan.scenarios[s];
    const std::string tag = "scenario " + std::to_string(s);
    StageCheckContext ctx{inst,
                          sp.stage,
                          day0,
                          plan.fp_days + 1,
                          plan.fp_days + plan.sp_days,
                          deadline_sp,
                          closing,
                          &sp.realization.capacities,
                          tag};
    check_stage(ctx);

    // Stage-boundary availability: the first scenario day's parts must be on
    // hand at the end of the first period.
    for (const auto& p : inst.parts) {
      double first_day_usage = 0.0;
      for (const auto& m : sp.stage.mfg)
        if (m.day == plan.fp_days + 1) first_day_usage += p.per_evtol * m.quantity;
      if (closing.at(p.id) + kEps < first_day_usage)
        fail(tag + ": stage-boundary availability violated for part " + p.id);
    }

    // Second-period fulfillment equality (eq22).
    for (const auto& c : inst.customers) {
      const int d2 = plan.d2.count(c.id) ? plan.d2.at(c.id) : 0;
      const int ds =
          sp.realization.extra_demand.count(c.id) ? sp.realization.extra_demand.at(c.id) : 0;
      const double phi =
          plan.first.overmanufacture.count(c.id) ? plan.first.overmanufacture.at(c.id) : 0.0;
      double in_window = 0.0;
      for (const auto& m : sp.stage.mfg) {
        if (m.customer_id != c.id) continue;
        RouteInfo ri = customer_route(inst, c.id, m.mode_id);
        const int dl_rel = std::min(c.deadline_sp - day0, plan.fp_days + plan.sp_days);
        if (m.day <= dl_rel - ri.tdays) in_window += m.quantity;
      }
      if (std::abs(in_window - (d2 + c.orders_sp_initial + ds - phi)) > kEps)
        fail(tag + ": second-period fulfillment mismatch for customer " + c.id);
    }
  }
}

}  // namespace scp
