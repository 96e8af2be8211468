#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scp/instance.hpp"

namespace scp {

/// Which uncertain parameter a spec describes.
enum class UncertainTarget { SupplierPrice, SupplierCapacity, MfgCost, ExtraDemand };

struct UncertainSpec {
  UncertainTarget target{};
  std::string part_id;     // SupplierPrice / SupplierCapacity
  std::string supplier_id; // SupplierPrice / SupplierCapacity
  std::string customer_id; // ExtraDemand
  double ex{};             // expected value
  double sd{};             // standard deviation
};

/// Seven-level discretization of the unit-normal error value: levels -3..+3,
/// each one SD wide, tails absorbed into the outermost levels.
struct LevelTable {
  std::array<double, 7> probability{}; // index 0 -> level -3
  std::array<double, 7> cumulative{};

  static constexpr int level_of_index(int idx) { return idx - 3; }
  static constexpr int index_of_level(int level) { return level + 3; }
};

/// One realization of every uncertain second-stage parameter.
struct Scenario {
  std::map<std::string, double> prices;     // "part/supplier" -> x^s
  std::map<std::string, double> capacities; // "part/supplier" -> y^s
  double mfg_cost{};                        // L^s
  std::map<std::string, int> extra_demand;  // customer -> D^s
  double prob{};                            // pi^s
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;
  std::uint64_t seed{};
};

LevelTable discretize_levels();

/// Picks the level whose cumulative interval contains u in [0, 1).
int roulette_draw(const LevelTable& table, double u);

/// Builds the uncertain-parameter specs for an instance: supplier prices and
/// capacities and the manufacturing cost centered on their current values,
/// extra demand per customer from the instance's uncertainty section.
std::vector<UncertainSpec> default_uncertain_specs(const Instance& instance);

/// Samples n scenarios by independent roulette-wheel draws per spec; value =
/// EX + level * SD, capacities floored at 0, extra demand rounded and floored
/// at 0; probabilities renormalized to sum 1. Deterministic per seed.
ScenarioSet generate_scenarios(const std::vector<UncertainSpec>& specs, int n, std::uint64_t seed);

/// Drops scenarios with probability below min_prob, then merges pairs whose
/// EX-scaled parameter vectors differ by at most sim_tol in max-norm (lower
/// probability merged into higher); renormalizes. Throws AllScenariosReduced
/// if nothing survives.
ScenarioSet reduce_scenarios(const ScenarioSet& set, const std::vector<UncertainSpec>& specs,
                             double sim_tol, double min_prob);

/// Nominal realization: every parameter at its EX (extra demand rounded).
Scenario nominal_scenario(const std::vector<UncertainSpec>& specs);

nlohmann::ordered_json scenario_set_to_json(const ScenarioSet& set);
ScenarioSet scenario_set_from_json(const nlohmann::ordered_json& j);

}  // namespace scp
