#include "scp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace scp {

const PartSpec* Instance::find_part(const std::string& id) const {
  for (const auto& p : parts)
    if (p.id == id) return &p;
  return nullptr;
}

const SupplierSpec* Instance::find_supplier(const std::string& part_id,
                                            const std::string& id) const {
  for (const auto& s : suppliers)
    if (s.part_id == part_id && s.id == id) return &s;
  return nullptr;
}

const CustomerSpec* Instance::find_customer(const std::string& id) const {
  for (const auto& c : customers)
    if (c.id == id) return &c;
  return nullptr;
}

const ModeSpec* Instance::find_mode(const std::string& id) const {
  for (const auto& m : modes)
    if (m.id == id) return &m;
  return nullptr;
}

std::vector<const SupplierSpec*> Instance::suppliers_of(const std::string& part_id) const {
  std::vector<const SupplierSpec*> out;
  for (const auto& s : suppliers)
    if (s.part_id == part_id) out.push_back(&s);
  return out;
}

namespace {

void check_routes(const Instance& inst, const std::string& owner,
                  const std::map<std::string, RouteSpec>& routes,
                  std::vector<Violation>& out) {
  for (const auto& [mode_id, route] : routes) {
    if (!inst.find_mode(mode_id))
      out.push_back({owner + ".routes." + mode_id, "references an unknown transport mode"});
    if (route.available && !(route.distance_km > 0))
      out.push_back({owner + ".routes." + mode_id + ".distance_km",
                     "available route must have distance_km > 0"});
    if (route.emission_tons_per_ton < 0)
      out.push_back({owner + ".routes." + mode_id + ".emission_tons_per_ton", "must be >= 0"});
  }
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> v;
  if (inst.parts.empty()) v.push_back({"parts", "at least one part is required"});
  if (inst.customers.empty()) v.push_back({"customers", "at least one customer is required"});
  if (inst.modes.empty()) v.push_back({"modes", "at least one transport mode is required"});

  std::set<std::string> part_ids;
  for (const auto& p : inst.parts) {
    const std::string f = "parts." + p.id;
    if (!part_ids.insert(p.id).second) v.push_back({f, "duplicate part id"});
    if (!(p.weight > 0)) v.push_back({f + ".weight", "must be > 0"});
    if (p.per_evtol < 1) v.push_back({f + ".per_evtol", "must be an integer >= 1"});
    if (p.min_quality < 0 || p.min_quality > 10)
      v.push_back({f + ".min_quality", "must lie in [0, 10]"});
    if (p.inventory_cap < 0) v.push_back({f + ".inventory_cap", "must be >= 0"});
  }

  std::set<std::pair<std::string, std::string>> supplier_keys;
  for (const auto& s : inst.suppliers) {
    const std::string f = "suppliers." + s.part_id + "/" + s.id;
    if (!supplier_keys.insert({s.part_id, s.id}).second)
      v.push_back({f, "duplicate supplier id for this part"});
    if (!inst.find_part(s.part_id)) v.push_back({f + ".part_id", "references an unknown part"});
    if (s.quality < 0 || s.quality > 10) v.push_back({f + ".quality", "must lie in [0, 10]"});
    if (s.price < 0) v.push_back({f + ".price", "must be >= 0"});
    if (s.capacity < 0) v.push_back({f + ".capacity", "must be >= 0"});
    if (s.lead_time_days < 0) v.push_back({f + ".lead_time_days", "must be >= 0"});
    check_routes(inst, f, s.routes, v);
    bool any_route = std::any_of(s.routes.begin(), s.routes.end(),
                                 [](const auto& kv) { return kv.second.available; });
    if (!any_route) v.push_back({f + ".routes", "at least one route must be available"});
  }

  const int ah_end = inst.horizon.analysis_end_day();
  std::set<std::string> customer_ids;
  for (const auto& c : inst.customers) {
    const std::string f = "customers." + c.id;
    if (!customer_ids.insert(c.id).second) v.push_back({f, "duplicate customer id"});
    if (c.orders_fp < 0) v.push_back({f + ".orders_fp", "must be an integer >= 0"});
    if (c.orders_sp_initial < 0) v.push_back({f + ".orders_sp_initial", "must be an integer >= 0"});
    if (c.deadline_fp > c.deadline_sp)
      v.push_back({f + ".deadline_fp", "must not exceed deadline_sp"});
    if (c.deadline_fp < 1 || c.deadline_fp > ah_end)
      v.push_back({f + ".deadline_fp", "must lie within the analysis horizon"});
    if (c.deadline_sp < 1 || c.deadline_sp > ah_end)
      v.push_back({f + ".deadline_sp", "must lie within the analysis horizon"});
    check_routes(inst, f, c.routes, v);
    bool any_route = std::any_of(c.routes.begin(), c.routes.end(),
                                 [](const auto& kv) { return kv.second.available; });
    if (!any_route) v.push_back({f + ".routes", "at least one route must be available"});
  }

  std::set<std::string> mode_ids;
  for (const auto& m : inst.modes) {
    const std::string f = "modes." + m.id;
    if (!mode_ids.insert(m.id).second) v.push_back({f, "duplicate mode id"});
    if (!(m.speed_kmh > 0)) v.push_back({f + ".speed_kmh", "must be > 0"});
    if (!(m.max_daily_hours > 0) || m.max_daily_hours > 24)
      v.push_back({f + ".max_daily_hours", "must lie in (0, 24]"});
    if (m.freight_cost_per_ton_km_by_year.empty())
      v.push_back({f + ".freight_cost_per_ton_km_by_year", "must have at least one year"});
  }

  const auto& em = inst.em;
  if (em.daily_mfg_cap < 1) v.push_back({"em.daily_mfg_cap", "must be >= 1"});
  if (!(em.selling_price > 0)) v.push_back({"em.selling_price", "must be > 0"});
  if (em.holding_rate < 0 || em.holding_rate > 1)
    v.push_back({"em.holding_rate", "must lie in [0, 1]"});
  if (em.base_quality < 0 || em.base_quality > 10)
    v.push_back({"em.base_quality", "must lie in [0, 10]"});
  if (em.quality_sensitivity < 0) v.push_back({"em.quality_sensitivity", "must be >= 0"});
  if (!(em.quality_epsilon > 0)) v.push_back({"em.quality_epsilon", "must be > 0"});
  if (em.evtol_inventory_cap < 0) v.push_back({"em.evtol_inventory_cap", "must be >= 0"});
  if (!(em.evtol_weight > 0)) v.push_back({"em.evtol_weight", "must be > 0"});
  if (em.base_mfg_cost < 0) v.push_back({"em.base_mfg_cost", "must be >= 0"});
  for (const auto& [pid, qty] : em.initial_part_inventory) {
    if (!inst.find_part(pid))
      v.push_back({"em.initial_part_inventory." + pid, "references an unknown part"});
    if (qty < 0) v.push_back({"em.initial_part_inventory." + pid, "must be >= 0"});
  }

  const auto& brackets = inst.penalty_policy.brackets;
  int prev_bound = 0;
  double prev_rate = -1.0;
  for (size_t b = 0; b < brackets.size(); ++b) {
    const std::string f = "penalty_policy.brackets[" + std::to_string(b) + "]";
    if (brackets[b].delay_day_upper_bound <= prev_bound)
      v.push_back({f + ".delay_day_upper_bound", "bounds must be strictly increasing"});
    if (brackets[b].pct_of_contract_per_day < 0)
      v.push_back({f + ".pct_of_contract_per_day", "must be >= 0"});
    if (brackets[b].pct_of_contract_per_day <= prev_rate)
      v.push_back({f + ".pct_of_contract_per_day", "rates must be strictly increasing"});
    prev_bound = brackets[b].delay_day_upper_bound;
    prev_rate = brackets[b].pct_of_contract_per_day;
  }

  const auto& periods = inst.horizon.periods;
  if (periods.empty()) v.push_back({"horizon.periods", "at least one period is required"});
  for (size_t p = 0; p < periods.size(); ++p) {
    const std::string f = "horizon.periods[" + std::to_string(p) + "]";
    if (periods[p].start_day > periods[p].end_day) v.push_back({f, "start_day must be <= end_day"});
    if (p == 0) {
      if (periods[p].start_day != 1) v.push_back({f, "the first period must start on day 1"});
    } else if (periods[p].start_day != periods[p - 1].end_day + 1) {
      v.push_back({f, "periods must be contiguous and non-overlapping"});
    }
  }
  if (inst.horizon.lookahead < 1) v.push_back({"horizon.lookahead", "must be >= 1"});
  if (inst.horizon.days_per_year < 1) v.push_back({"horizon.days_per_year", "must be >= 1"});

  return v;
}

FilterResult filter_suppliers(const Instance& inst) {
  FilterResult out;
  out.instance = inst;
  out.instance.suppliers.clear();
  for (const auto& s : inst.suppliers) {
    const PartSpec* part = inst.find_part(s.part_id);
    if (part && s.quality >= part->min_quality - 1e-12)
      out.instance.suppliers.push_back(s);
    else
      out.removed.push_back(s.part_id + "/" + s.id);
  }
  for (const auto& p : inst.parts)
    if (out.instance.suppliers_of(p.id).empty()) throw NoSupplierForPart(p.id);
  return out;
}

int transport_days(const RouteSpec& route, const ModeSpec& mode) {
  if (!route.available || !(route.distance_km > 0))
    throw RouteUnavailable(std::to_string(route.distance_km) + "km", mode.id);
  double raw = route.distance_km / mode.km_per_day();
  int days = static_cast<int>(std::ceil(raw - 1e-9));
  return std::max(1, days);
}

HoldingCosts holding_costs(const Instance& inst) {
  HoldingCosts out;
  const double per_day = inst.em.holding_rate / inst.horizon.days_per_year;
  double evtol_value = 0.0;
  for (const auto& p : inst.parts) {
    double sum = 0.0;
    int n = 0;
    for (const auto& s : inst.suppliers)
      if (s.part_id == p.id) {
        sum += s.price;
        ++n;
      }
    const double mean_price = n > 0 ? sum / n : 0.0;
    out.per_part_per_day[p.id] = per_day * mean_price;
    evtol_value += p.per_evtol * mean_price;
  }
  out.per_evtol_per_day = per_day * evtol_value;
  return out;
}

double emission_cost_on_day(const Instance& inst, int day) {
  const int years = inst.horizon.year_of_day(day) - inst.horizon.first_year;
  return inst.em.emission_cost_base * std::pow(1.0 + inst.em.emission_cost_growth, years);
}

double freight_cost_on_day(const Instance& inst, const ModeSpec& mode, int day) {
  const auto& by_year = mode.freight_cost_per_ton_km_by_year;
  if (by_year.empty()) throw DataError("mode " + mode.id + " has no freight costs");
  const int year = inst.horizon.year_of_day(day);
  auto it = by_year.lower_bound(year);
  if (it == by_year.end()) return by_year.rbegin()->second;
  if (it->first == year || it == by_year.begin()) return it->second;
  return std::prev(it)->second; // clamp down to the nearest covered year
}

double delay_penalty(const PenaltyPolicy& policy, double contract_value, int delay_days) {
  if (delay_days < 0) throw OutOfRange("delay_days must be >= 0");
  if (delay_days > policy.max_delay_days()) throw DelayExceedsPolicy(delay_days);
  double total = 0.0;
  size_t b = 0;
  for (int d = 1; d <= delay_days; ++d) {
    while (b < policy.brackets.size() && d > policy.brackets[b].delay_day_upper_bound) ++b;
    total += policy.brackets[b].pct_of_contract_per_day * contract_value;
  }
  return total;
}

}  // namespace scp
