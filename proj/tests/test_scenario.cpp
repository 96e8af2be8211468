#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scp/instance_io.hpp"
#include "scp/scenario.hpp"
#include "test_support.hpp"

using namespace scp;

TEST_CASE("discretize_levels matches standard-normal bin masses") {
  LevelTable t = discretize_levels();
  // Center bin: Phi(0.5) - Phi(-0.5).
  CHECK(t.probability[LevelTable::index_of_level(0)] == doctest::Approx(0.3829249).epsilon(1e-6));
  double sum = 0.0;
  for (double p : t.probability) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k <= 3; ++k)
    CHECK(t.probability[LevelTable::index_of_level(-k)] ==
          doctest::Approx(t.probability[LevelTable::index_of_level(k)]).epsilon(1e-12));
}

TEST_CASE("roulette_draw picks the level whose interval holds u") {
  LevelTable t = discretize_levels();
  CHECK(roulette_draw(t, 0.0) == -3);
  CHECK(roulette_draw(t, 0.5) == 0);
  CHECK(roulette_draw(t, std::nextafter(1.0, 0.0)) == 3);
  // Interval endpoints belong to the next level.
  CHECK(roulette_draw(t, t.cumulative[0]) == -2);
}

static std::vector<UncertainSpec> two_specs() {
  UncertainSpec price;
  price.target = UncertainTarget::SupplierPrice;
  price.part_id = "p1";
  price.supplier_id = "s1";
  price.ex = 100.0;
  price.sd = 10.0;
  UncertainSpec demand;
  demand.target = UncertainTarget::ExtraDemand;
  demand.customer_id = "c1";
  demand.ex = 4.0;
  demand.sd = 2.0;
  return {price, demand};
}

TEST_CASE("generate_scenarios") {
  SUBCASE("zero SD collapses to EX with uniform probabilities") {
    auto specs = two_specs();
    specs[0].sd = 0.0;
    specs[1].sd = 0.0;
    ScenarioSet set = generate_scenarios(specs, 5, 7);
    REQUIRE(set.scenarios.size() == 5);
    for (const auto& sc : set.scenarios) {
      CHECK(sc.prices.at("p1/s1") == 100.0);
      CHECK(sc.extra_demand.at("c1") == 4);
      CHECK(sc.prob == doctest::Approx(0.2).epsilon(1e-12));
    }
  }

  SUBCASE("level -3 demand truncates at zero") {
    UncertainSpec d;
    d.target = UncertainTarget::ExtraDemand;
    d.customer_id = "c1";
    d.ex = 4.0;
    d.sd = 2.0;
    // EX + (-3)*SD = -2 -> max(0, round(-2)) = 0.
    Scenario sc;
    bool saw_zero = false;
    ScenarioSet set = generate_scenarios({d}, 400, 11);
    for (const auto& s : set.scenarios)
      if (s.extra_demand.at("c1") == 0) saw_zero = true;
    CHECK(saw_zero);
    for (const auto& s : set.scenarios) CHECK(s.extra_demand.at("c1") >= 0);
  }

  SUBCASE("deterministic per seed") {
    auto a = generate_scenarios(two_specs(), 30, 42);
    auto b = generate_scenarios(two_specs(), 30, 42);
    CHECK(scenario_set_to_json(a) == scenario_set_to_json(b));
    auto c = generate_scenarios(two_specs(), 30, 43);
    CHECK(scenario_set_to_json(a) != scenario_set_to_json(c));
  }

  SUBCASE("probabilities sum to one") {
    auto set = generate_scenarios(two_specs(), 30, 1);
    double sum = 0.0;
    for (const auto& sc : set.scenarios) sum += sc.prob;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

// Independent O(n^2) merge oracle: repeatedly scan pairs in order, merge the
// first close pair, restart. Written against the spec of the reduction, not
// its implementation.
namespace {

struct FlatScenario {
  std::vector<double> values;
  std::vector<double> scales;
  double prob;
};

std::vector<FlatScenario> flatten(const ScenarioSet& set, const std::vector<UncertainSpec>& specs) {
  std::vector<FlatScenario> out;
  for (const auto& sc : set.scenarios) {
    FlatScenario f;
    f.prob = sc.prob;
    for (const auto& [key, v] : sc.prices) {
      f.values.push_back(v);
      double ex = 1.0;
      for (const auto& s : specs)
        if (s.target == UncertainTarget::SupplierPrice && s.part_id + "/" + s.supplier_id == key)
          ex = s.ex;
      f.scales.push_back(std::abs(ex) > 1e-12 ? std::abs(ex) : 1.0);
    }
    for (const auto& [key, v] : sc.capacities) {
      f.values.push_back(v);
      double ex = 1.0;
      for (const auto& s : specs)
        if (s.target == UncertainTarget::SupplierCapacity && s.part_id + "/" + s.supplier_id == key)
          ex = s.ex;
      f.scales.push_back(std::abs(ex) > 1e-12 ? std::abs(ex) : 1.0);
    }
    f.values.push_back(sc.mfg_cost);
    {
      double ex = 1.0;
      for (const auto& s : specs)
        if (s.target == UncertainTarget::MfgCost) ex = s.ex;
      f.scales.push_back(std::abs(ex) > 1e-12 ? std::abs(ex) : 1.0);
    }
    for (const auto& [key, v] : sc.extra_demand) {
      f.values.push_back(v);
      double ex = 1.0;
      for (const auto& s : specs)
        if (s.target == UncertainTarget::ExtraDemand && s.customer_id == key) ex = s.ex;
      f.scales.push_back(std::abs(ex) > 1e-12 ? std::abs(ex) : 1.0);
    }
    out.push_back(std::move(f));
  }
  return out;
}

size_t oracle_reduced_count(const ScenarioSet& set, const std::vector<UncertainSpec>& specs,
                            double sim_tol, double min_prob) {
  auto flat = flatten(set, specs);
  std::vector<FlatScenario> kept;
  for (const auto& f : flat)
    if (f.prob >= min_prob) kept.push_back(f);
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < kept.size() && !merged; ++i)
      for (size_t j = i + 1; j < kept.size() && !merged; ++j) {
        double dist = 0.0;
        for (size_t k = 0; k < kept[i].values.size(); ++k)
          dist = std::max(dist, std::abs(kept[i].values[k] - kept[j].values[k]) / kept[i].scales[k]);
        if (dist <= sim_tol) {
          size_t keep = kept[i].prob >= kept[j].prob ? i : j;
          size_t drop = keep == i ? j : i;
          kept[keep].prob += kept[drop].prob;
          kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(drop));
          merged = true;
        }
      }
  }
  return kept.size();
}

}  // namespace

TEST_CASE("reduce_scenarios") {
  SUBCASE("two identical scenarios merge into probability one") {
    auto specs = two_specs();
    ScenarioSet set;
    Scenario a = nominal_scenario(specs);
    a.prob = 0.6;
    Scenario b = nominal_scenario(specs);
    b.prob = 0.4;
    set.scenarios = {a, b};
    auto out = reduce_scenarios(set, specs, 0.0, 0.0);
    REQUIRE(out.scenarios.size() == 1);
    CHECK(out.scenarios[0].prob == doctest::Approx(1.0));
  }

  SUBCASE("identity with zero tolerances on distinct scenarios") {
    auto specs = two_specs();
    auto set = generate_scenarios(specs, 6, 3);
    size_t distinct = oracle_reduced_count(set, specs, 0.0, 0.0);
    auto out = reduce_scenarios(set, specs, 0.0, 0.0);
    CHECK(out.scenarios.size() == distinct);
  }

  SUBCASE("matches the brute-force oracle on the base fixture, seed 42") {
    Instance inst = load_instance_file(test::fixtures_dir() + "/base.json");
    auto specs = default_uncertain_specs(inst);
    auto set = generate_scenarios(specs, 30, 42);
    auto out = reduce_scenarios(set, specs, 0.05, 0.001);
    CHECK(out.scenarios.size() == oracle_reduced_count(set, specs, 0.05, 0.001));
    CHECK(out.scenarios.size() <= set.scenarios.size());
    double sum = 0.0;
    for (const auto& sc : out.scenarios) sum += sc.prob;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("reduction cannot empty the set") {
    auto specs = two_specs();
    auto set = generate_scenarios(specs, 3, 5);
    CHECK_THROWS_AS(reduce_scenarios(set, specs, 0.0, 2.0), AllScenariosReduced);
  }

  SUBCASE("probability-weighted means move by at most sim_tol + dropped mass") {
    auto specs = two_specs();
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
      auto set = generate_scenarios(specs, 40, seed);
      const double sim_tol = 0.05, min_prob = 0.01;
      double dropped = 0.0;
      for (const auto& sc : set.scenarios)
        if (sc.prob < min_prob) dropped += sc.prob;
      auto out = reduce_scenarios(set, specs, sim_tol, min_prob);
      auto mean_price = [](const ScenarioSet& s) {
        double m = 0.0;
        for (const auto& sc : s.scenarios) m += sc.prob * sc.prices.at("p1/s1");
        return m;
      };
      double before = mean_price(set) / 100.0;
      double after = mean_price(out) / 100.0;
      CHECK(std::abs(after - before) <= sim_tol + dropped + 1e-9);
    }
  }
}

TEST_CASE("default_uncertain_specs honors the instance uncertainty section") {
  Instance inst = load_instance_file(test::fixtures_dir() + "/desk.json");
  auto specs = default_uncertain_specs(inst);
  bool found_override = false;
  for (const auto& s : specs)
    if (s.target == UncertainTarget::SupplierCapacity && s.part_id == "p1" && s.supplier_id == "s1") {
      CHECK(s.sd == doctest::Approx(0.3 * 6.0));
      found_override = true;
    }
  CHECK(found_override);
}
