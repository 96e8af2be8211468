#include "scp/instance_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace scp {

namespace {

Json routes_to_json(const std::map<std::string, RouteSpec>& routes) {
  Json j = Json::object();
  for (const auto& [mode, r] : routes)
    j[mode] = Json{{"distance_km", r.distance_km},
                   {"emission_tons_per_ton", r.emission_tons_per_ton},
                   {"available", r.available}};
  return j;
}

std::map<std::string, RouteSpec> routes_from_json(const Json& j) {
  std::map<std::string, RouteSpec> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    RouteSpec r;
    r.distance_km = it.value().value("distance_km", 0.0);
    r.emission_tons_per_ton = it.value().value("emission_tons_per_ton", 0.0);
    r.available = it.value().value("available", true);
    out[it.key()] = r;
  }
  return out;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["parts"] = Json::array();
  for (const auto& p : inst.parts)
    j["parts"].push_back(Json{{"id", p.id},
                              {"weight", p.weight},
                              {"per_evtol", p.per_evtol},
                              {"min_quality", p.min_quality},
                              {"inventory_cap", p.inventory_cap}});
  j["suppliers"] = Json::array();
  for (const auto& s : inst.suppliers)
    j["suppliers"].push_back(Json{{"id", s.id},
                                  {"part_id", s.part_id},
                                  {"quality", s.quality},
                                  {"price", s.price},
                                  {"capacity", s.capacity},
                                  {"lead_time_days", s.lead_time_days},
                                  {"routes", routes_to_json(s.routes)}});
  j["customers"] = Json::array();
  for (const auto& c : inst.customers)
    j["customers"].push_back(Json{{"id", c.id},
                                  {"orders_fp", c.orders_fp},
                                  {"orders_sp_initial", c.orders_sp_initial},
                                  {"deadline_fp", c.deadline_fp},
                                  {"deadline_sp", c.deadline_sp},
                                  {"routes", routes_to_json(c.routes)}});
  j["modes"] = Json::array();
  for (const auto& m : inst.modes) {
    Json freight = Json::object();
    for (const auto& [year, cost] : m.freight_cost_per_ton_km_by_year)
      freight[std::to_string(year)] = cost;
    j["modes"].push_back(Json{{"id", m.id},
                              {"speed_kmh", m.speed_kmh},
                              {"max_daily_hours", m.max_daily_hours},
                              {"freight_cost_per_ton_km_by_year", freight}});
  }
  j["em"] = Json{{"daily_mfg_cap", inst.em.daily_mfg_cap},
                 {"evtol_inventory_cap", inst.em.evtol_inventory_cap},
                 {"selling_price", inst.em.selling_price},
                 {"base_mfg_cost", inst.em.base_mfg_cost},
                 {"holding_rate", inst.em.holding_rate},
                 {"base_quality", inst.em.base_quality},
                 {"quality_sensitivity", inst.em.quality_sensitivity},
                 {"quality_epsilon", inst.em.quality_epsilon},
                 {"evtol_weight", inst.em.evtol_weight},
                 {"emission_cost_base", inst.em.emission_cost_base},
                 {"emission_cost_growth", inst.em.emission_cost_growth}};
  if (!inst.em.initial_part_inventory.empty())
    j["em"]["initial_part_inventory"] = inst.em.initial_part_inventory;
  j["penalty_policy"] = Json::object();
  j["penalty_policy"]["brackets"] = Json::array();
  for (const auto& b : inst.penalty_policy.brackets)
    j["penalty_policy"]["brackets"].push_back(
        Json::array({b.delay_day_upper_bound, b.pct_of_contract_per_day}));
  Json periods = Json::array();
  for (const auto& p : inst.horizon.periods) periods.push_back(Json::array({p.start_day, p.end_day}));
  j["horizon"] = Json{{"periods", periods},
                      {"lookahead", inst.horizon.lookahead},
                      {"first_year", inst.horizon.first_year},
                      {"days_per_year", inst.horizon.days_per_year}};
  Json u;
  u["price_sd_frac"] = inst.uncertainty.price_sd_frac;
  u["capacity_sd_frac"] = inst.uncertainty.capacity_sd_frac;
  u["mfg_cost_sd_frac"] = inst.uncertainty.mfg_cost_sd_frac;
  Json extra = Json::object();
  for (const auto& [cid, e] : inst.uncertainty.extra_demand)
    extra[cid] = Json{{"ex", e.ex}, {"sd", e.sd}};
  u["extra_demand"] = extra;
  if (!inst.uncertainty.price_sd_frac_overrides.empty())
    u["price_sd_frac_overrides"] = inst.uncertainty.price_sd_frac_overrides;
  if (!inst.uncertainty.capacity_sd_frac_overrides.empty())
    u["capacity_sd_frac_overrides"] = inst.uncertainty.capacity_sd_frac_overrides;
  j["uncertainty"] = u;
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  for (const auto& p : j.value("parts", Json::array())) {
    PartSpec spec;
    spec.id = p.value("id", "");
    spec.weight = p.value("weight", 0.0);
    spec.per_evtol = p.value("per_evtol", 1);
    spec.min_quality = p.value("min_quality", 0.0);
    spec.inventory_cap = p.value("inventory_cap", 0.0);
    inst.parts.push_back(spec);
  }
  for (const auto& s : j.value("suppliers", Json::array())) {
    SupplierSpec spec;
    spec.id = s.value("id", "");
    spec.part_id = s.value("part_id", "");
    spec.quality = s.value("quality", 0.0);
    spec.price = s.value("price", 0.0);
    spec.capacity = s.value("capacity", 0.0);
    spec.lead_time_days = s.value("lead_time_days", 0);
    if (s.contains("routes")) spec.routes = routes_from_json(s["routes"]);
    inst.suppliers.push_back(spec);
  }
  for (const auto& c : j.value("customers", Json::array())) {
    CustomerSpec spec;
    spec.id = c.value("id", "");
    spec.orders_fp = c.value("orders_fp", 0);
    spec.orders_sp_initial = c.value("orders_sp_initial", 0);
    spec.deadline_fp = c.value("deadline_fp", 0);
    spec.deadline_sp = c.value("deadline_sp", 0);
    if (c.contains("routes")) spec.routes = routes_from_json(c["routes"]);
    inst.customers.push_back(spec);
  }
  for (const auto& m : j.value("modes", Json::array())) {
    ModeSpec spec;
    spec.id = m.value("id", "");
    spec.speed_kmh = m.value("speed_kmh", 0.0);
    spec.max_daily_hours = m.value("max_daily_hours", 0.0);
    if (m.contains("freight_cost_per_ton_km_by_year"))
      for (const auto& [year, cost] : m["freight_cost_per_ton_km_by_year"].items())
        spec.freight_cost_per_ton_km_by_year[std::stoi(year)] = cost.get<double>();
    inst.modes.push_back(spec);
  }
  if (j.contains("em")) {
    const auto& e = j["em"];
    inst.em.daily_mfg_cap = e.value("daily_mfg_cap", 0.0);
    inst.em.evtol_inventory_cap = e.value("evtol_inventory_cap", 0.0);
    inst.em.selling_price = e.value("selling_price", 0.0);
    inst.em.base_mfg_cost = e.value("base_mfg_cost", 0.0);
    inst.em.holding_rate = e.value("holding_rate", 0.0);
    inst.em.base_quality = e.value("base_quality", 0.0);
    inst.em.quality_sensitivity = e.value("quality_sensitivity", 0.0);
    inst.em.quality_epsilon = e.value("quality_epsilon", 1e-6);
    inst.em.evtol_weight = e.value("evtol_weight", 0.0);
    inst.em.emission_cost_base = e.value("emission_cost_base", 0.0);
    inst.em.emission_cost_growth = e.value("emission_cost_growth", 0.0);
    if (e.contains("initial_part_inventory"))
      for (const auto& [pid, qty] : e["initial_part_inventory"].items())
        inst.em.initial_part_inventory[pid] = qty.get<double>();
  }
  if (j.contains("penalty_policy"))
    for (const auto& b : j["penalty_policy"].value("brackets", Json::array()))
      inst.penalty_policy.brackets.push_back(
          PenaltyBracket{b.at(0).get<int>(), b.at(1).get<double>()});
  if (j.contains("horizon")) {
    const auto& h = j["horizon"];
    for (const auto& p : h.value("periods", Json::array()))
      inst.horizon.periods.push_back(Period{p.at(0).get<int>(), p.at(1).get<int>()});
    inst.horizon.lookahead = h.value("lookahead", 2);
    inst.horizon.first_year = h.value("first_year", 2026);
    inst.horizon.days_per_year = h.value("days_per_year", 360);
  }
  if (j.contains("uncertainty")) {
    const auto& u = j["uncertainty"];
    inst.uncertainty.price_sd_frac = u.value("price_sd_frac", 0.10);
    inst.uncertainty.capacity_sd_frac = u.value("capacity_sd_frac", 0.10);
    inst.uncertainty.mfg_cost_sd_frac = u.value("mfg_cost_sd_frac", 0.10);
    if (u.contains("extra_demand"))
      for (const auto& [cid, e] : u["extra_demand"].items())
        inst.uncertainty.extra_demand[cid] =
            UncertaintyConfig::ExtraDemand{e.value("ex", 4.0), e.value("sd", 2.0)};
    if (u.contains("price_sd_frac_overrides"))
      for (const auto& [key, f] : u["price_sd_frac_overrides"].items())
        inst.uncertainty.price_sd_frac_overrides[key] = f.get<double>();
    if (u.contains("capacity_sd_frac_overrides"))
      for (const auto& [key, f] : u["capacity_sd_frac_overrides"].items())
        inst.uncertainty.capacity_sd_frac_overrides[key] = f.get<double>();
  } else {
    // §5.1 defaults: 10% SDs and extra demand EX 4 / SD 2 for every customer.
    for (const auto& c : inst.customers)
      inst.uncertainty.extra_demand[c.id] = UncertaintyConfig::ExtraDemand{4.0, 2.0};
  }
  return inst;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << content;
}

Instance parse_instance_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed instance file " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

Instance load_instance_file(const std::string& path) {
  Instance inst = parse_instance_file(path);
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "instance " + path + " failed validation:";
    for (const auto& v : violations) msg += "\n  " + v.field + ": " + v.rule;
    throw DataError(msg);
  }
  return inst;
}

std::string text_fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_fnv1a_hex(const std::string& path) { return text_fnv1a_hex(read_text_file(path)); }

}  // namespace scp
