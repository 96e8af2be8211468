#include "scp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scp {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::string supplier_key(const UncertainSpec& s) { return s.part_id + "/" + s.supplier_id; }

/// Portable uniform in [0, 1) from the top 53 bits of a mt19937_64 draw;
/// std::uniform_real_distribution is implementation-defined and would break
/// byte-identical artifacts across standard libraries.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double realize(const UncertainSpec& spec, int level) {
  double value = spec.ex + static_cast<double>(level) * spec.sd;
  switch (spec.target) {
    case UncertainTarget::SupplierCapacity:
      return std::max(0.0, value);
    case UncertainTarget::ExtraDemand:
      return std::max(0.0, std::round(value));
    default:
      return value;
  }
}

void assign(Scenario& sc, const UncertainSpec& spec, double value) {
  switch (spec.target) {
    case UncertainTarget::SupplierPrice:
      sc.prices[supplier_key(spec)] = value;
      break;
    case UncertainTarget::SupplierCapacity:
      sc.capacities[supplier_key(spec)] = value;
      break;
    case UncertainTarget::MfgCost:
      sc.mfg_cost = value;
      break;
    case UncertainTarget::ExtraDemand:
      sc.extra_demand[spec.customer_id] = static_cast<int>(value);
      break;
  }
}

void renormalize(ScenarioSet& set) {
  double total = 0.0;
  for (const auto& sc : set.scenarios) total += sc.prob;
  if (total <= 0.0) throw DataError("scenario probabilities sum to zero");
  for (auto& sc : set.scenarios) sc.prob /= total;
}

std::vector<double> parameter_vector(const Scenario& sc) {
  std::vector<double> v;
  for (const auto& [_, p] : sc.prices) v.push_back(p);
  for (const auto& [_, c] : sc.capacities) v.push_back(c);
  v.push_back(sc.mfg_cost);
  for (const auto& [_, d] : sc.extra_demand) v.push_back(static_cast<double>(d));
  return v;
}

/// Per-component scale for the similarity metric: |EX| of the matching spec,
/// with 1 substituted for zero-centered specs. Order matches parameter_vector
/// (map iteration is key-sorted, so sort the specs the same way).
std::vector<double> scale_vector(const Scenario& sc, const std::vector<UncertainSpec>& specs) {
  std::map<std::string, double> price_ex, cap_ex;
  std::map<std::string, double> demand_ex;
  double mfg_ex = 1.0;
  for (const auto& s : specs) {
    switch (s.target) {
      case UncertainTarget::SupplierPrice: price_ex[supplier_key(s)] = s.ex; break;
      case UncertainTarget::SupplierCapacity: cap_ex[supplier_key(s)] = s.ex; break;
      case UncertainTarget::MfgCost: mfg_ex = s.ex; break;
      case UncertainTarget::ExtraDemand: demand_ex[s.customer_id] = s.ex; break;
    }
  }
  auto safe = [](double x) { return std::abs(x) > 1e-12 ? std::abs(x) : 1.0; };
  std::vector<double> v;
  for (const auto& [key, _] : sc.prices) v.push_back(safe(price_ex.count(key) ? price_ex[key] : 1.0));
  for (const auto& [key, _] : sc.capacities) v.push_back(safe(cap_ex.count(key) ? cap_ex[key] : 1.0));
  v.push_back(safe(mfg_ex));
  for (const auto& [key, _] : sc.extra_demand)
    v.push_back(safe(demand_ex.count(key) ? demand_ex[key] : 1.0));
  return v;
}

}  // namespace

LevelTable discretize_levels() {
  LevelTable t;
  for (int idx = 0; idx < 7; ++idx) {
    const int level = LevelTable::level_of_index(idx);
    double p;
    if (level == -3)
      p = std_normal_cdf(-2.5);
    else if (level == 3)
      p = 1.0 - std_normal_cdf(2.5);
    else
      p = std_normal_cdf(level + 0.5) - std_normal_cdf(level - 0.5);
    t.probability[idx] = p;
  }
  double total = 0.0;
  for (double p : t.probability) total += p;
  double cum = 0.0;
  for (int idx = 0; idx < 7; ++idx) {
    t.probability[idx] /= total;
    cum += t.probability[idx];
    t.cumulative[idx] = cum;
  }
  t.cumulative[6] = 1.0;
  return t;
}

int roulette_draw(const LevelTable& table, double u) {
  for (int idx = 0; idx < 7; ++idx)
    if (u < table.cumulative[idx]) return LevelTable::level_of_index(idx);
  return 3;
}

std::vector<UncertainSpec> default_uncertain_specs(const Instance& inst) {
  std::vector<UncertainSpec> specs;
  const auto& u = inst.uncertainty;
  for (const auto& s : inst.suppliers) {
    const std::string key = s.part_id + "/" + s.id;
    UncertainSpec price;
    price.target = UncertainTarget::SupplierPrice;
    price.part_id = s.part_id;
    price.supplier_id = s.id;
    price.ex = s.price;
    double price_frac =
        u.price_sd_frac_overrides.count(key) ? u.price_sd_frac_overrides.at(key) : u.price_sd_frac;
    price.sd = price_frac * s.price;
    specs.push_back(price);

    UncertainSpec cap = price;
    cap.target = UncertainTarget::SupplierCapacity;
    cap.ex = s.capacity;
    double cap_frac = u.capacity_sd_frac_overrides.count(key) ? u.capacity_sd_frac_overrides.at(key)
                                                              : u.capacity_sd_frac;
    cap.sd = cap_frac * s.capacity;
    specs.push_back(cap);
  }
  UncertainSpec mfg;
  mfg.target = UncertainTarget::MfgCost;
  mfg.ex = inst.em.base_mfg_cost;
  mfg.sd = u.mfg_cost_sd_frac * inst.em.base_mfg_cost;
  specs.push_back(mfg);
  for (const auto& c : inst.customers) {
    UncertainSpec d;
    d.target = UncertainTarget::ExtraDemand;
    d.customer_id = c.id;
    auto it = u.extra_demand.find(c.id);
    d.ex = it != u.extra_demand.end() ? it->second.ex : 4.0;
    d.sd = it != u.extra_demand.end() ? it->second.sd : 2.0;
    specs.push_back(d);
  }
  return specs;
}

ScenarioSet generate_scenarios(const std::vector<UncertainSpec>& specs, int n,
                               std::uint64_t seed) {
  if (n < 1) throw DataError("scenario count must be >= 1");
  for (const auto& s : specs)
    if (s.sd < 0 || !std::isfinite(s.ex)) throw DataError("uncertain spec has invalid EX/SD");
  const LevelTable table = discretize_levels();
  std::mt19937_64 rng(seed);
  ScenarioSet set;
  set.seed = seed;
  set.scenarios.reserve(n);
  for (int i = 0; i < n; ++i) {
    Scenario sc;
    sc.prob = 1.0;
    for (const auto& spec : specs) {
      if (spec.sd == 0.0) {
        // Degenerate parameter: single level with mass one, no draw consumed.
        assign(sc, spec, realize(spec, 0));
        continue;
      }
      const int level = roulette_draw(table, next_uniform(rng));
      sc.prob *= table.probability[LevelTable::index_of_level(level)];
      assign(sc, spec, realize(spec, level));
    }
    set.scenarios.push_back(std::move(sc));
  }
  renormalize(set);
  return set;
}

ScenarioSet reduce_scenarios(const ScenarioSet& set, const std::vector<UncertainSpec>& specs,
                             double sim_tol, double min_prob) {
  if (set.scenarios.empty()) throw DataError("cannot reduce an empty scenario set");
  ScenarioSet out;
  out.seed = set.seed;
  for (const auto& sc : set.scenarios)
    if (sc.prob >= min_prob) out.scenarios.push_back(sc);
  if (out.scenarios.empty()) throw AllScenariosReduced();

  // Pairwise merge in stable order: scan (i, j) pairs, fold the lower-probability
  // scenario of the first close pair into the other, restart until no pair merges.
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < out.scenarios.size() && !merged; ++i) {
      const auto vi = parameter_vector(out.scenarios[i]);
      const auto scale = scale_vector(out.scenarios[i], specs);
      for (size_t j = i + 1; j < out.scenarios.size() && !merged; ++j) {
        const auto vj = parameter_vector(out.scenarios[j]);
        double dist = 0.0;
        for (size_t k = 0; k < vi.size(); ++k)
          dist = std::max(dist, std::abs(vi[k] - vj[k]) / scale[k]);
        if (dist <= sim_tol) {
          size_t keep = out.scenarios[i].prob >= out.scenarios[j].prob ? i : j;
          size_t drop = keep == i ? j : i;
          out.scenarios[keep].prob += out.scenarios[drop].prob;
          out.scenarios.erase(out.scenarios.begin() + static_cast<std::ptrdiff_t>(drop));
          merged = true;
        }
      }
    }
  }
  renormalize(out);
  return out;
}

Scenario nominal_scenario(const std::vector<UncertainSpec>& specs) {
  Scenario sc;
  sc.prob = 1.0;
  for (const auto& spec : specs) assign(sc, spec, realize(spec, 0));
  return sc;
}

nlohmann::ordered_json scenario_set_to_json(const ScenarioSet& set) {
  nlohmann::ordered_json j;
  j["seed"] = set.seed;
  j["scenarios"] = nlohmann::ordered_json::array();
  for (const auto& sc : set.scenarios) {
    nlohmann::ordered_json s;
    s["prob"] = sc.prob;
    s["prices"] = sc.prices;
    s["capacities"] = sc.capacities;
    s["mfg_cost"] = sc.mfg_cost;
    s["extra_demand"] = sc.extra_demand;
    j["scenarios"].push_back(s);
  }
  return j;
}

ScenarioSet scenario_set_from_json(const nlohmann::ordered_json& j) {
  ScenarioSet set;
  set.seed = j.value("seed", 0ull);
  for (const auto& s : j.value("scenarios", nlohmann::ordered_json::array())) {
    Scenario sc;
    sc.prob = s.value("prob", 0.0);
    if (s.contains("prices"))
      for (const auto& [k, v] : s["prices"].items()) sc.prices[k] = v.get<double>();
    if (s.contains("capacities"))
      for (const auto& [k, v] : s["capacities"].items()) sc.capacities[k] = v.get<double>();
    sc.mfg_cost = s.value("mfg_cost", 0.0);
    if (s.contains("extra_demand"))
      for (const auto& [k, v] : s["extra_demand"].items()) sc.extra_demand[k] = v.get<int>();
    set.scenarios.push_back(std::move(sc));
  }
  return set;
}

}  // namespace scp
