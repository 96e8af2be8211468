#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "scp/benders.hpp"
#include "scp/builder.hpp"
#include "scp/evaluate.hpp"
#include "scp/instance_io.hpp"
#include "scp/milp.hpp"
#include "test_support.hpp"

using namespace scp;

namespace {

Instance desk() {
  static Instance inst =
      filter_suppliers(load_instance_file(test::fixtures_dir() + "/desk.json")).instance;
  return inst;
}

TwoStageModel build_desk(int n, std::uint64_t seed, ScenarioSet* out = nullptr) {
  Instance inst = desk();
  ScenarioSet set = generate_scenarios(default_uncertain_specs(inst), n, seed);
  if (out) *out = set;
  BuildConfig cfg;
  cfg.fp_days = 10;
  cfg.sp_days = 10;
  return build_two_stage(inst, ewm_weights(inst), set, cfg);
}

}  // namespace

TEST_CASE("single deterministic scenario converges in at most two iterations") {
  Instance inst = test::tiny_instance();
  ScenarioSet set = generate_scenarios(default_uncertain_specs(inst), 1, 5);
  BuildConfig cfg;
  cfg.fp_days = 10;
  cfg.sp_days = 10;
  auto model = build_two_stage(inst, ewm_weights(inst), set, cfg);
  auto result = benders_solve(model);
  CHECK(result.state.converged);
  CHECK(result.state.iterations <= 2);
  auto ext = solve_milp(build_extensive_form(model));
  REQUIRE(ext.status == MilpStatus::Optimal);
  CHECK(result.objective == doctest::Approx(ext.objective).epsilon(1e-6));
}

TEST_CASE("desk fixture: benders equals the extensive form across seeds") {
  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    ScenarioSet set;
    auto model = build_desk(3, seed, &set);
    auto bd = benders_solve(model);
    REQUIRE(bd.state.converged);
    auto ext = solve_milp(build_extensive_form(model));
    REQUIRE(ext.status == MilpStatus::Optimal);
    CHECK(bd.objective ==
          doctest::Approx(ext.objective).epsilon(1e-4));

    // Bound sequences are monotone in the right directions.
    const auto& st = bd.state;
    for (size_t i = 1; i < st.upper_bounds.size(); ++i)
      CHECK(st.upper_bounds[i] <= st.upper_bounds[i - 1] + 1e-6);
    for (size_t i = 1; i < st.lower_bounds.size(); ++i)
      CHECK(st.lower_bounds[i] >= st.lower_bounds[i - 1] - 1e-6);

    // The returned plan passes the full replay suite.
    Plan plan = extract_plan(model, bd.master_x, bd.scenario_x, set);
    verify_plan(plan, desk());
    CostBreakdown ebd = expected_breakdown(plan, desk());
    CHECK(ebd.profit == doctest::Approx(bd.objective).epsilon(1e-6));
  }
}

TEST_CASE("parallel subproblem solves match serial exactly") {
  ScenarioSet set;
  auto model = build_desk(4, 21, &set);
  BendersOptions serial;
  BendersOptions parallel;
  parallel.threads = 4;
  auto a = benders_solve(model, serial);
  auto b = benders_solve(model, parallel);
  CHECK(a.objective == b.objective);
  CHECK(a.master_x == b.master_x);
  CHECK(a.state.cuts.size() == b.state.cuts.size());
}

// Weak-duality audit: every optimality cut over-estimates (never under-
// estimates) the true recourse value at other feasible first-stage points.
TEST_CASE("optimality cuts are valid at alternative first-stage plans") {
  ScenarioSet set;
  auto model = build_desk(3, 13, &set);
  auto bd = benders_solve(model);
  REQUIRE(bd.state.converged);

  // Generate a few alternative feasible first-stage plans by perturbing the
  // first-stage objective and re-solving the plain first-stage MILP.
  std::vector<std::vector<double>> plans;
  for (int variant = 0; variant < 3; ++variant) {
    LinearModel fs = model.first;
    for (size_t j = 0; j < fs.cols.size(); ++j)
      if (fs.cols[j].id.kind == VarKind::Receipt)
        fs.cols[j].obj *= 1.0 + 0.07 * variant * ((j % 3) - 1);
    auto sol = solve_milp(fs);
    if (sol.status == MilpStatus::Optimal) plans.push_back(sol.x);
  }
  REQUIRE(!plans.empty());

  for (const auto& x : plans) {
    for (const auto& cut : bd.state.cuts) {
      if (cut.feasibility) continue;
      // True recourse value at x.
      LinearModel lp = model.blocks[cut.scenario].lp;
      for (const auto& link : model.blocks[cut.scenario].links)
        lp.rows[link.block_row].rhs -= link.coef * x[link.first_col];
      auto sub = solve_lp(lp);
      if (sub.status != LpStatus::Optimal) continue;  // cut vacuously fine
      double cut_bound = cut.rhs;
      for (const auto& [col, a] : cut.master_coef) cut_bound -= a * x[col];
      CHECK(cut_bound >= sub.objective - 1e-6 * std::max(1.0, std::abs(sub.objective)));
    }
  }
}

TEST_CASE("scenario capacity collapse forces a feasibility cut and hedging") {
  // One part, one supplier; the second-period supplier capacity drops to zero
  // in the only scenario, so all second-period demand must be pre-built.
  Instance inst = test::tiny_instance();
  inst.customers[0].orders_fp = 1;
  inst.customers[0].orders_sp_initial = 2;
  inst.suppliers[0].capacity = 10.0;
  ScenarioSet set = generate_scenarios(default_uncertain_specs(inst), 1, 2);
  set.scenarios[0].capacities["p1/s1"] = 0.0;
  BuildConfig cfg;
  cfg.fp_days = 10;
  cfg.sp_days = 10;
  auto model = build_two_stage(inst, ewm_weights(inst), set, cfg);
  auto bd = benders_solve(model);
  REQUIRE(bd.state.converged);
  bool saw_feasibility_cut = false;
  for (const auto& cut : bd.state.cuts) saw_feasibility_cut |= cut.feasibility;
  CHECK(saw_feasibility_cut);
  // The master hedged: over-manufacture covers the entire second-period demand.
  double phi = 0.0;
  for (size_t j = 0; j < model.first.cols.size(); ++j)
    if (model.first.cols[j].id.kind == VarKind::OverManufacture) phi = bd.master_x[j];
  CHECK(phi == doctest::Approx(2.0));
  auto ext = solve_milp(build_extensive_form(model));
  REQUIRE(ext.status == MilpStatus::Optimal);
  CHECK(bd.objective == doctest::Approx(ext.objective).epsilon(1e-6));
}

TEST_CASE("infeasible master is reported as MasterInfeasible") {
  Instance inst = test::tiny_instance();
  inst.customers[0].deadline_fp = 2;  // impossible: first receipt lands day 3
  ScenarioSet set = generate_scenarios(default_uncertain_specs(inst), 1, 2);
  BuildConfig cfg;
  cfg.fp_days = 10;
  cfg.sp_days = 10;
  auto model = build_two_stage(inst, ewm_weights(inst), set, cfg);
  CHECK_THROWS_AS(benders_solve(model), MasterInfeasible);
}
