#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "scp/milp.hpp"
#include "scp/simplex.hpp"

using namespace scp;

namespace {

int col(LinearModel& m, double lb, double ub, double obj, bool integer = false,
        const std::string& name = "") {
  Column c;
  c.lb = lb;
  c.ub = ub;
  c.obj = obj;
  c.integer = integer;
  c.name = name;
  return m.add_col(c);
}

void row(LinearModel& m, RowSense sense, double rhs, std::vector<RowEntry> entries,
         const std::string& label = "t") {
  Row r;
  r.sense = sense;
  r.rhs = rhs;
  r.entries = std::move(entries);
  r.label = label;
  m.add_row(r);
}

}  // namespace

TEST_CASE("lp: max x subject to x <= 5") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, kInf, 1.0);
  row(m, RowSense::LE, 5.0, {{x, 1.0}});
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[x] == doctest::Approx(5.0));
  CHECK(sol.objective == doctest::Approx(5.0));
  CHECK(sol.dual[0] == doctest::Approx(1.0));
}

TEST_CASE("lp: infeasible with certifying ray") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, kInf, 1.0);
  row(m, RowSense::LE, -1.0, {{x, 1.0}});
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Infeasible);
  REQUIRE(sol.ray.size() == 1);
  // sigma'b > 0 and sigma <= 0 on the <= row.
  CHECK(sol.ray[0] * -1.0 > 1e-9);
  CHECK(sol.ray[0] <= 1e-12);
}

TEST_CASE("lp: unbounded with improving ray") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, kInf, 1.0);
  int y = col(m, 0, kInf, 0.0);
  row(m, RowSense::GE, 1.0, {{x, 1.0}, {y, 1.0}});
  auto sol = solve_lp(m);
  CHECK(sol.status == LpStatus::Unbounded);
  REQUIRE(sol.ray.size() == 2);
  CHECK(sol.ray[x] > 0.5);
}

// Three-route transport LP; optimum verified by hand: supply (20, 30),
// demand (25, 25), costs [[3, 7], [4, 2]]. Optimal: x11=20, x21=5, x22=25
// -> 3*20 + 4*5 + 2*25 = 130.
TEST_CASE("lp: transport fixture matches the hand optimum and duality holds") {
  LinearModel m;
  m.sense = ObjSense::Minimize;
  int x11 = col(m, 0, kInf, 3.0);
  int x12 = col(m, 0, kInf, 7.0);
  int x21 = col(m, 0, kInf, 4.0);
  int x22 = col(m, 0, kInf, 2.0);
  row(m, RowSense::LE, 20.0, {{x11, 1.0}, {x12, 1.0}});
  row(m, RowSense::LE, 30.0, {{x21, 1.0}, {x22, 1.0}});
  row(m, RowSense::GE, 25.0, {{x11, 1.0}, {x21, 1.0}});
  row(m, RowSense::GE, 25.0, {{x12, 1.0}, {x22, 1.0}});
  auto sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(130.0).epsilon(1e-8));
  CHECK(sol.x[x11] == doctest::Approx(20.0));
  CHECK(sol.x[x22] == doctest::Approx(25.0));

  // Strong duality: c'x = y'b ... with bounds at zero contributing nothing.
  double yb = 0.0;
  std::vector<double> rhs = {20, 30, 25, 25};
  for (int i = 0; i < 4; ++i) yb += sol.dual[i] * rhs[i];
  CHECK(yb == doctest::Approx(130.0).epsilon(1e-8));
}

TEST_CASE("lp: complementary slackness on random feasible LPs") {
  std::mt19937_64 rng(99);
  auto u = [&](double a, double b) {
    return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6, mrows = 4;
    LinearModel m;
    m.sense = trial % 2 ? ObjSense::Maximize : ObjSense::Minimize;
    for (int j = 0; j < n; ++j) col(m, 0.0, u(2.0, 8.0), u(-5.0, 5.0));
    for (int i = 0; i < mrows; ++i) {
      std::vector<RowEntry> e;
      for (int j = 0; j < n; ++j)
        if (u(0, 1) < 0.6) e.push_back({j, u(-2.0, 3.0)});
      if (e.empty()) e.push_back({0, 1.0});
      row(m, i % 2 ? RowSense::LE : RowSense::GE, u(-1.0, i % 2 ? 12.0 : 2.0), e);
    }
    auto sol = solve_lp(m);
    if (sol.status != LpStatus::Optimal) continue;
    for (size_t i = 0; i < m.rows.size(); ++i) {
      double act = 0.0;
      for (const auto& e : m.rows[i].entries) act += e.coef * sol.x[e.col];
      double slack = m.rows[i].rhs - act;
      CHECK(std::abs(sol.dual[i] * slack) < 1e-6 * (1.0 + std::abs(sol.dual[i])));
    }
    // Primal feasibility residual.
    for (size_t i = 0; i < m.rows.size(); ++i) {
      double act = 0.0;
      for (const auto& e : m.rows[i].entries) act += e.coef * sol.x[e.col];
      if (m.rows[i].sense == RowSense::LE) CHECK(act <= m.rows[i].rhs + 1e-7);
      if (m.rows[i].sense == RowSense::GE) CHECK(act >= m.rows[i].rhs - 1e-7);
    }
  }
}

TEST_CASE("lp: warm start reaches the same optimum") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, 10, 3.0);
  int y = col(m, 0, 10, 2.0);
  row(m, RowSense::LE, 12.0, {{x, 1.0}, {y, 1.0}});
  row(m, RowSense::LE, 9.0, {{x, 1.0}});
  auto cold = solve_lp(m);
  REQUIRE(cold.status == LpStatus::Optimal);
  m.cols[y].ub = 2.0;
  auto warm = solve_lp(m, {}, &cold.basis);
  auto fresh = solve_lp(m);
  REQUIRE(warm.status == LpStatus::Optimal);
  CHECK(warm.objective == doctest::Approx(fresh.objective).epsilon(1e-9));
}

TEST_CASE("milp: max x, x <= 2.5, x integer") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, kInf, 1.0, true);
  row(m, RowSense::LE, 2.5, {{x, 1.0}});
  auto sol = solve_milp(m);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.x[x] == doctest::Approx(2.0));
  CHECK(sol.objective == doctest::Approx(2.0));
}

TEST_CASE("milp: integral flow polytope solves at the root") {
  // Assignment-like LP with integral vertices: no branching needed.
  LinearModel m;
  m.sense = ObjSense::Minimize;
  int x11 = col(m, 0, kInf, 1.0, true);
  int x12 = col(m, 0, kInf, 4.0, true);
  int x21 = col(m, 0, kInf, 2.0, true);
  int x22 = col(m, 0, kInf, 1.0, true);
  row(m, RowSense::EQ, 1.0, {{x11, 1.0}, {x12, 1.0}});
  row(m, RowSense::EQ, 1.0, {{x21, 1.0}, {x22, 1.0}});
  row(m, RowSense::EQ, 1.0, {{x11, 1.0}, {x21, 1.0}});
  row(m, RowSense::EQ, 1.0, {{x12, 1.0}, {x22, 1.0}});
  auto sol = solve_milp(m);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.nodes <= 1);
  CHECK(sol.objective == doctest::Approx(2.0));
}

TEST_CASE("milp: 6-item knapsack matches exhaustive enumeration") {
  const double values[6] = {9, 11, 13, 15, 8, 20};
  const double weights[6] = {3, 4, 5, 6, 2, 7};
  const double cap = 14;
  double best = 0;
  for (int mask = 0; mask < 64; ++mask) {
    double v = 0, w = 0;
    for (int j = 0; j < 6; ++j)
      if (mask & (1 << j)) {
        v += values[j];
        w += weights[j];
      }
    if (w <= cap) best = std::max(best, v);
  }
  LinearModel m;
  m.sense = ObjSense::Maximize;
  std::vector<RowEntry> e;
  for (int j = 0; j < 6; ++j) {
    int c = col(m, 0, 1, values[j], true);
    e.push_back({c, weights[j]});
  }
  row(m, RowSense::LE, cap, e);
  auto sol = solve_milp(m);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(best));
}

TEST_CASE("milp: infeasible integer model is reported") {
  LinearModel m;
  m.sense = ObjSense::Maximize;
  int x = col(m, 0, kInf, 1.0, true);
  row(m, RowSense::GE, 1.2, {{x, 1.0}});
  row(m, RowSense::LE, 1.8, {{x, 1.0}});
  auto sol = solve_milp(m);
  CHECK(sol.status == MilpStatus::Infeasible);
}

TEST_CASE("milp: random small MILPs match enumeration") {
  std::mt19937_64 rng(7);
  auto u = [&](double a, double b) {
    return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5;
    LinearModel m;
    m.sense = ObjSense::Maximize;
    double c[n], a1[n], a2[n];
    for (int j = 0; j < n; ++j) {
      c[j] = u(1, 10);
      a1[j] = u(0.5, 4);
      a2[j] = u(0.5, 4);
      col(m, 0, 3, c[j], true);
    }
    double b1 = u(4, 14), b2 = u(4, 14);
    std::vector<RowEntry> e1, e2;
    for (int j = 0; j < n; ++j) {
      e1.push_back({j, a1[j]});
      e2.push_back({j, a2[j]});
    }
    row(m, RowSense::LE, b1, e1);
    row(m, RowSense::LE, b2, e2);

    double best = -1;
    int idx[n];
    for (idx[0] = 0; idx[0] <= 3; ++idx[0])
      for (idx[1] = 0; idx[1] <= 3; ++idx[1])
        for (idx[2] = 0; idx[2] <= 3; ++idx[2])
          for (idx[3] = 0; idx[3] <= 3; ++idx[3])
            for (idx[4] = 0; idx[4] <= 3; ++idx[4]) {
              double v = 0, w1 = 0, w2 = 0;
              for (int j = 0; j < n; ++j) {
                v += c[j] * idx[j];
                w1 += a1[j] * idx[j];
                w2 += a2[j] * idx[j];
              }
              if (w1 <= b1 + 1e-9 && w2 <= b2 + 1e-9) best = std::max(best, v);
            }
    auto sol = solve_milp(m);
    REQUIRE(sol.status == MilpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-7));
  }
}
