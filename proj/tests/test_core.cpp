#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scp/instance.hpp"
#include "scp/instance_io.hpp"
#include "test_support.hpp"

using namespace scp;

static Instance base() {
  static Instance inst = load_instance_file(test::fixtures_dir() + "/base.json");
  return inst;
}

TEST_CASE("validate_instance accepts the base fixture") {
  CHECK(validate_instance(base()).empty());
}

TEST_CASE("validate_instance names the violated field and rule") {
  Instance inst = test::tiny_instance();
  inst.suppliers[0].capacity = -1;
  auto v = validate_instance(inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "suppliers.p1/s1.capacity");

  inst = test::tiny_instance();
  inst.customers[0].deadline_sp = 99; // beyond day 20
  v = validate_instance(inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "customers.c1.deadline_sp");
}

TEST_CASE("filter_suppliers enforces the per-part quality floor") {
  auto res = filter_suppliers(base());
  // Part a: s3 at 7.2 misses 7.5. Part e: s4 at 7.5 stays, s5 at 7.0 leaves.
  CHECK(std::count(res.removed.begin(), res.removed.end(), std::string("a/s3")) == 1);
  CHECK(std::count(res.removed.begin(), res.removed.end(), std::string("e/s5")) == 1);
  CHECK(res.instance.find_supplier("e", "s4") != nullptr);
  CHECK(res.removed.size() == 2);

  SUBCASE("idempotent") {
    auto again = filter_suppliers(res.instance);
    CHECK(again.removed.empty());
    CHECK(again.instance.suppliers.size() == res.instance.suppliers.size());
  }

  SUBCASE("identity when every quality is maximal") {
    Instance inst = test::tiny_instance();
    inst.suppliers[0].quality = 10.0;
    auto r = filter_suppliers(inst);
    CHECK(r.removed.empty());
  }

  SUBCASE("NoSupplierForPart when a part loses everything") {
    Instance inst = test::tiny_instance();
    inst.suppliers[0].quality = 1.0;
    CHECK_THROWS_AS(filter_suppliers(inst), NoSupplierForPart);
  }
}

TEST_CASE("transport_days") {
  ModeSpec truck{"truck", 80, 11, {{2026, 1.0}}};
  ModeSpec ship{"ship", 30, 24, {{2026, 1.0}}};

  CHECK(transport_days(RouteSpec{2640, 0, true}, truck) == 3);
  CHECK(transport_days(RouteSpec{720, 0, true}, ship) == 1);
  // Table route for supplier s3 of part b: 10736.94 km by ship, raw 14.912.
  CHECK(transport_days(RouteSpec{10736.94, 0, true}, ship) == 15);
  CHECK(transport_days(RouteSpec{1, 0, true}, ship) == 1);
  CHECK_THROWS_AS(transport_days(RouteSpec{100, 0, false}, truck), RouteUnavailable);

  SUBCASE("monotone in distance, antitone in speed*hours") {
    ModeSpec fast{"fast", 160, 11, {{2026, 1.0}}};
    for (double km = 100; km <= 5000; km += 137) {
      CHECK(transport_days(RouteSpec{km, 0, true}, truck) <=
            transport_days(RouteSpec{km + 211, 0, true}, truck));
      CHECK(transport_days(RouteSpec{km, 0, true}, fast) <=
            transport_days(RouteSpec{km, 0, true}, truck));
    }
  }
}

TEST_CASE("holding_costs use the annual rate over a 360-day year") {
  auto hc = holding_costs(base());
  // Part a mean price over Table 2: (30+29.5+28.5+30.3+30.7)k / 5 = 29.8k.
  CHECK(hc.per_part_per_day.at("a") == doctest::Approx(0.329 * 29800.0 / 360.0).epsilon(1e-9));
  CHECK(hc.per_part_per_day.at("a") == doctest::Approx(27.23).epsilon(1e-3));
  // Per-eVTOL basis: sum theta_i * mean price_i = 295.14k.
  CHECK(hc.per_evtol_per_day == doctest::Approx(0.329 * 295140.0 / 360.0).epsilon(1e-9));
  CHECK(hc.per_evtol_per_day == doctest::Approx(269.74).epsilon(1e-3));

  SUBCASE("zero rate zeroes everything") {
    Instance inst = base();
    inst.em.holding_rate = 0.0;
    auto z = holding_costs(inst);
    for (auto& [_, h] : z.per_part_per_day) CHECK(h == 0.0);
    CHECK(z.per_evtol_per_day == 0.0);
  }
}

TEST_CASE("emission_cost_on_day") {
  Instance inst = base();
  CHECK(emission_cost_on_day(inst, 1) == doctest::Approx(16.5));
  CHECK(emission_cost_on_day(inst, 360) == doctest::Approx(16.5));
  CHECK(emission_cost_on_day(inst, 361) == doctest::Approx(16.5 * 1.05));
  CHECK(emission_cost_on_day(inst, 900) == doctest::Approx(16.5 * 1.05 * 1.05));

  SUBCASE("zero growth is constant") {
    inst.em.emission_cost_growth = 0.0;
    CHECK(emission_cost_on_day(inst, 900) == doctest::Approx(16.5));
  }
  SUBCASE("nondecreasing across years for nonnegative growth") {
    for (int d = 1; d < 900; d += 90)
      CHECK(emission_cost_on_day(inst, d) <= emission_cost_on_day(inst, d + 90) + 1e-12);
  }
}

TEST_CASE("delay_penalty reproduces the disrupted-case penalties") {
  const PenaltyPolicy policy = base().penalty_policy;
  // Contract value = selling price x first-period orders.
  CHECK(delay_penalty(policy, 12.0e6, 52) == doctest::Approx(1.23e6).epsilon(1e-9));
  CHECK(delay_penalty(policy, 10.5e6, 80) == doctest::Approx(3.12375e6).epsilon(1e-9));
  CHECK(delay_penalty(policy, 6.0e6, 50) == doctest::Approx(0.555e6).epsilon(1e-9));
  CHECK(delay_penalty(policy, 6.0e6, 35) == doctest::Approx(0.225e6).epsilon(1e-9));
  CHECK(delay_penalty(policy, 12.0e6, 0) == 0.0);
  CHECK_THROWS_AS(delay_penalty(policy, 1e6, 91), DelayExceedsPolicy);

  SUBCASE("marginal per-day cost is non-decreasing") {
    double prev = 0.0;
    double prev_marginal = -1.0;
    for (int d = 1; d <= 90; ++d) {
      double p = delay_penalty(policy, 1e6, d);
      double marginal = p - prev;
      CHECK(marginal >= prev_marginal - 1e-9);
      prev = p;
      prev_marginal = marginal;
    }
  }
}

TEST_CASE("freight cost follows the projected per-year table") {
  Instance inst = base();
  const ModeSpec* rail = inst.find_mode("rail");
  REQUIRE(rail);
  CHECK(freight_cost_on_day(inst, *rail, 100) == doctest::Approx(2.9621));
  CHECK(freight_cost_on_day(inst, *rail, 540) == doctest::Approx(3.0180));
  CHECK(freight_cost_on_day(inst, *rail, 850) == doctest::Approx(3.0739));
}

TEST_CASE("instance json round-trip preserves the fixture") {
  Instance inst = base();
  Json j = instance_to_json(inst);
  Instance back = instance_from_json(j);
  CHECK(instance_to_json(back) == j);
  CHECK(back.suppliers.size() == inst.suppliers.size());
  CHECK(validate_instance(back).empty());
}
