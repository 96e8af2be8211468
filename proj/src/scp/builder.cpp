#include "scp/builder.hpp"

#include <algorithm>
#include <cmath>

namespace scp {

namespace {

std::string key(const std::string& part, const std::string& sup) { return part + "/" + sup; }

}  // namespace

int ModelIndex::part_index(const std::string& id) const {
  for (size_t p = 0; p < parts.size(); ++p)
    if (parts[p].id == id) return static_cast<int>(p);
  return -1;
}

int ModelIndex::customer_index(const std::string& id) const {
  for (size_t l = 0; l < customers.size(); ++l)
    if (customers[l].id == id) return static_cast<int>(l);
  return -1;
}

ModelIndex make_model_index(const Instance& inst) {
  ModelIndex ix;
  ix.parts = inst.parts;
  ix.modes = inst.modes;
  ix.customers = inst.customers;
  ix.holding = holding_costs(inst);
  ix.part_suppliers.resize(inst.parts.size());
  ix.supplier_tdays.resize(inst.parts.size());
  for (size_t p = 0; p < inst.parts.size(); ++p) {
    for (const auto& s : inst.suppliers)
      if (s.part_id == inst.parts[p].id) ix.part_suppliers[p].push_back(s);
    ix.supplier_tdays[p].resize(ix.part_suppliers[p].size());
    for (size_t j = 0; j < ix.part_suppliers[p].size(); ++j) {
      ix.supplier_tdays[p][j].assign(inst.modes.size(), -1);
      for (size_t k = 0; k < inst.modes.size(); ++k) {
        auto it = ix.part_suppliers[p][j].routes.find(inst.modes[k].id);
        if (it != ix.part_suppliers[p][j].routes.end() && it->second.available)
          ix.supplier_tdays[p][j][k] = transport_days(it->second, inst.modes[k]);
      }
    }
  }
  ix.customer_tdays.resize(inst.customers.size());
  for (size_t l = 0; l < inst.customers.size(); ++l) {
    ix.customer_tdays[l].assign(inst.modes.size(), -1);
    for (size_t k = 0; k < inst.modes.size(); ++k) {
      auto it = inst.customers[l].routes.find(inst.modes[k].id);
      if (it != inst.customers[l].routes.end() && it->second.available)
        ix.customer_tdays[l][k] = transport_days(it->second, inst.modes[k]);
    }
  }
  return ix;
}

namespace {

/// Emits one stage's variables and rows into a LinearModel. Scenario -1 is
/// the first stage over days 1..fp_days; otherwise days fp_days+1..
/// fp_days+sp_days with realized prices/capacities/cost from the scenario.
struct StageEmitter {
  const Instance& inst;
  const ModelIndex& ix;
  const BuildConfig& cfg;
  LinearModel& m;
  int scenario;        // -1 for first stage
  const Scenario* sc;  // null for first stage
  int t_begin, t_end;  // inclusive model-relative day range
  std::map<std::string, int>& bound_census;

  // Column ids: z[p][j][k][t - t_begin]; empty vector when route unavailable.
  std::vector<std::vector<std::vector<std::vector<int>>>> zcol, vcol;
  std::vector<std::vector<std::vector<int>>> rcol;  // [l][k][t - t_begin]
  std::vector<std::vector<int>> acol;               // [p][t - t_begin]
  std::vector<int> phicol;                          // first stage only

  int days() const { return t_end - t_begin + 1; }
  int abs_day(int t) const { return cfg.fp_start_day - 1 + t; }

  double price_of(int p, size_t j) const {
    const auto& s = ix.part_suppliers[p][j];
    if (sc) {
      auto it = sc->prices.find(key(s.part_id, s.id));
      if (it != sc->prices.end()) return it->second;
    }
    return s.price;
  }
  double capacity_of(int p, size_t j) const {
    const auto& s = ix.part_suppliers[p][j];
    if (sc) {
      auto it = sc->capacities.find(key(s.part_id, s.id));
      if (it != sc->capacities.end()) return it->second;
    }
    return s.capacity;
  }
  double mfg_cost() const { return sc ? sc->mfg_cost : inst.em.base_mfg_cost; }

  /// Stage deadline of customer l, model-relative, clamped to the stage end.
  int deadline_rel(int l) const {
    const auto& c = ix.customers[l];
    int abs = scenario < 0 ? c.deadline_fp : c.deadline_sp;
    return std::min(abs - (cfg.fp_start_day - 1), t_end);
  }

  void emit_columns() {
    const int P = static_cast<int>(ix.parts.size());
    const int K = static_cast<int>(ix.modes.size());
    const int L = static_cast<int>(ix.customers.size());
    const bool integer_stage = scenario < 0;  // second stage stays continuous

    zcol.assign(P, {});
    vcol.assign(P, {});
    for (int p = 0; p < P; ++p) {
      const size_t J = ix.part_suppliers[p].size();
      zcol[p].assign(J, std::vector<std::vector<int>>(K));
      vcol[p].assign(J, std::vector<std::vector<int>>(K));
      for (size_t j = 0; j < J; ++j)
        for (int k = 0; k < K; ++k) {
          if (ix.supplier_tdays[p][j][k] < 0) continue;
          zcol[p][j][k].assign(days(), -1);
          vcol[p][j][k].assign(days(), -1);
          const auto& route = ix.part_suppliers[p][j].routes.at(ix.modes[k].id);
          const int lead = ix.part_suppliers[p][j].lead_time_days;
          const int tdays = ix.supplier_tdays[p][j][k];
          for (int t = t_begin; t <= t_end; ++t) {
            Column z;
            z.id = {VarKind::Receipt, t, p, static_cast<int>(j), k, -1, scenario};
            z.name = var_name(z.id);
            z.integer = integer_stage;
            if (t - lead - tdays < 1) z.ub = 0.0;  // cannot order before day 1
            z.obj = -(price_of(p, j) +
                      freight_cost_on_day(inst, ix.modes[k], abs_day(t)) * ix.parts[p].weight *
                          route.distance_km +
                      emission_cost_on_day(inst, abs_day(t)) * route.emission_tons_per_ton *
                          ix.parts[p].weight);
            zcol[p][j][k][t - t_begin] = m.add_col(z);

            Column v;
            v.id = {VarKind::Order, t, p, static_cast<int>(j), k, -1, scenario};
            v.name = var_name(v.id);
            v.integer = integer_stage;
            if (t - lead - tdays < 1) v.ub = 0.0;
            vcol[p][j][k][t - t_begin] = m.add_col(v);
          }
        }
    }

    rcol.assign(L, std::vector<std::vector<int>>(K));
    for (int l = 0; l < L; ++l)
      for (int k = 0; k < K; ++k) {
        if (ix.customer_tdays[l][k] < 0) continue;
        rcol[l][k].assign(days(), -1);
        const int dl = deadline_rel(l);
        const int tdays = ix.customer_tdays[l][k];
        const auto& route = ix.customers[l].routes.at(ix.modes[k].id);
        for (int t = t_begin; t <= t_end; ++t) {
          Column r;
          r.id = {VarKind::Manufacture, t, -1, -1, k, l, scenario};
          r.name = var_name(r.id);
          r.integer = integer_stage;
          const double hold_days = std::max(0, dl - tdays - t);
          r.obj = -(freight_cost_on_day(inst, ix.modes[k], abs_day(t)) * inst.em.evtol_weight *
                        route.distance_km +
                    emission_cost_on_day(inst, abs_day(t)) * route.emission_tons_per_ton *
                        inst.em.evtol_weight +
                    mfg_cost() + ix.holding.per_evtol_per_day * hold_days);
          rcol[l][k][t - t_begin] = m.add_col(r);
        }
      }

    acol.assign(P, {});
    for (int p = 0; p < P; ++p) {
      acol[p].assign(days(), -1);
      for (int t = t_begin; t <= t_end; ++t) {
        Column a;
        a.id = {VarKind::PartInventory, t, p, -1, -1, -1, scenario};
        a.name = var_name(a.id);
        a.integer = cfg.strict_integer && scenario < 0;
        a.ub = ix.parts[p].inventory_cap;
        a.obj = t < t_end ? -ix.holding.per_part_per_day.at(ix.parts[p].id) : 0.0;
        acol[p][t - t_begin] = m.add_col(a);
        bound_census[scenario < 0 ? "eq30" : "eq31"] += 1;
      }
    }
  }

  void emit_rows() {
    const int P = static_cast<int>(ix.parts.size());
    const int K = static_cast<int>(ix.modes.size());
    const int L = static_cast<int>(ix.customers.size());
    const bool first_stage = scenario < 0;

    // Daily manufacturing cap (eq23 / eq24).
    for (int t = t_begin; t <= t_end; ++t) {
      Row r;
      r.label = first_stage ? "eq23" : "eq24";
      r.name = row_name(r.label, t);
      r.sense = RowSense::LE;
      r.rhs = inst.em.daily_mfg_cap;
      for (int l = 0; l < L; ++l)
        for (int k = 0; k < K; ++k)
          if (!rcol[l][k].empty()) r.entries.push_back({rcol[l][k][t - t_begin], 1.0});
      m.add_row(r);
    }

    // Part-flow balance in recurrence form (eq25 / eq27).
    for (int t = t_begin; t <= t_end; ++t)
      for (int p = 0; p < P; ++p) {
        Row r;
        r.label = first_stage ? "eq25" : "eq27";
        r.name = row_name(r.label, t, p);
        r.sense = RowSense::EQ;
        r.rhs = 0.0;
        r.entries.push_back({acol[p][t - t_begin], 1.0});
        if (t > t_begin) r.entries.push_back({acol[p][t - 1 - t_begin], -1.0});
        if (first_stage && t == t_begin) {
          auto it = inst.em.initial_part_inventory.find(ix.parts[p].id);
          r.rhs = it != inst.em.initial_part_inventory.end() ? it->second : 0.0;
        }
        for (size_t j = 0; j < ix.part_suppliers[p].size(); ++j)
          for (int k = 0; k < K; ++k)
            if (!zcol[p][j][k].empty())
              r.entries.push_back({zcol[p][j][k][t - t_begin], -1.0});
        for (int l = 0; l < L; ++l)
          for (int k = 0; k < K; ++k)
            if (!rcol[l][k].empty())
              r.entries.push_back(
                  {rcol[l][k][t - t_begin], static_cast<double>(ix.parts[p].per_evtol)});
        m.add_row(r);
      }

    // Next-day availability within the stage (eq28 / eq29).
    for (int t = t_begin; t < t_end; ++t)
      for (int p = 0; p < P; ++p) {
        Row r;
        r.label = first_stage ? "eq28" : "eq29";
        r.name = row_name(r.label, t, p);
        r.sense = RowSense::GE;
        r.rhs = 0.0;
        r.entries.push_back({acol[p][t - t_begin], 1.0});
        for (int l = 0; l < L; ++l)
          for (int k = 0; k < K; ++k)
            if (!rcol[l][k].empty())
              r.entries.push_back(
                  {rcol[l][k][t + 1 - t_begin], -static_cast<double>(ix.parts[p].per_evtol)});
        m.add_row(r);
      }

    // eVTOL inventory cap over holding-days (eq34 / eq35).
    for (int t = t_begin; t <= t_end; ++t) {
      Row r;
      r.label = first_stage ? "eq34" : "eq35";
      r.name = row_name(r.label, t);
      r.sense = RowSense::LE;
      r.rhs = inst.em.evtol_inventory_cap;
      for (int l = 0; l < L; ++l) {
        const int dl = deadline_rel(l);
        for (int k = 0; k < K; ++k) {
          if (rcol[l][k].empty()) continue;
          double held = std::max(0, dl - ix.customer_tdays[l][k] - t);
          if (held > 0) r.entries.push_back({rcol[l][k][t - t_begin], held});
        }
      }
      if (!r.entries.empty()) m.add_row(r);
    }

    // Order-receipt coupling for receipts whose order day is >= 1 (eq36/eq37).
    for (int p = 0; p < P; ++p)
      for (size_t j = 0; j < ix.part_suppliers[p].size(); ++j)
        for (int k = 0; k < K; ++k) {
          if (zcol[p][j][k].empty()) continue;
          const int lag =
              ix.part_suppliers[p][j].lead_time_days + ix.supplier_tdays[p][j][k];
          for (int t = t_begin; t <= t_end; ++t) {
            if (t - lag < 1) continue;
            Row r;
            r.label = first_stage ? "eq36" : "eq37";
            r.name = row_name(r.label, t, p, static_cast<int>(j), k);
            r.sense = RowSense::EQ;
            r.rhs = 0.0;
            r.entries.push_back({vcol[p][j][k][t - t_begin], 1.0});
            r.entries.push_back({zcol[p][j][k][t - t_begin], -1.0});
            m.add_row(r);
          }
        }

    // Supplier capacity across the stage (eq38 / eq39).
    for (int p = 0; p < P; ++p)
      for (size_t j = 0; j < ix.part_suppliers[p].size(); ++j) {
        Row r;
        r.label = first_stage ? "eq38" : "eq39";
        r.name = row_name(r.label, -1, p, static_cast<int>(j));
        r.sense = RowSense::LE;
        r.rhs = capacity_of(p, j);
        for (int k = 0; k < K; ++k) {
          if (vcol[p][j][k].empty()) continue;
          for (int t = t_begin; t <= t_end; ++t)
            r.entries.push_back({vcol[p][j][k][t - t_begin], 1.0});
        }
        m.add_row(r);
      }
  }

  std::string row_name(const std::string& label, int t, int a = -1, int b = -1,
                       int c = -1) const {
    std::string n = scenario >= 0 ? "s" + std::to_string(scenario) + "_" + label : label;
    if (t >= 0) n += "_" + std::to_string(t);
    if (a >= 0) n += "_" + std::to_string(a);
    if (b >= 0) n += "_" + std::to_string(b);
    if (c >= 0) n += "_" + std::to_string(c);
    return n;
  }
};

}  // namespace

TwoStageModel build_two_stage(const Instance& inst, const QualityWeights& weights,
                              const ScenarioSet& scenarios, const BuildConfig& cfg) {
  if (cfg.fp_days < 1) throw DataError("fp_days must be >= 1");
  if (cfg.sp_days > 0 && scenarios.scenarios.empty())
    throw DataError("a two-stage build needs at least one scenario");

  TwoStageModel out;
  out.index = make_model_index(inst);
  out.config = cfg;
  const ModelIndex& ix = out.index;
  const int P = static_cast<int>(ix.parts.size());
  const int L = static_cast<int>(ix.customers.size());
  const int K = static_cast<int>(ix.modes.size());

  // Provable static infeasibility before any solve: first-stage supplier
  // capacity cannot cover theta_i * total first-period orders.
  int total_d1 = 0;
  for (const auto& c : ix.customers) total_d1 += c.orders_fp;
  for (int p = 0; p < P; ++p) {
    double cap = 0.0;
    for (const auto& s : ix.part_suppliers[p]) cap += s.capacity;
    if (cap + 1e-9 < static_cast<double>(ix.parts[p].per_evtol) * total_d1)
      throw InfeasibleStatic("part " + ix.parts[p].id + " has capacity " + std::to_string(cap) +
                             " < theta * D1 = " +
                             std::to_string(ix.parts[p].per_evtol * total_d1));
  }

  // ---- first stage ----
  out.first.sense = ObjSense::Maximize;
  out.first.name = "scp_first";
  StageEmitter fs{inst, ix, cfg, out.first, -1, nullptr, 1, cfg.fp_days, out.bound_census};
  fs.emit_columns();

  fs.phicol.assign(L, -1);
  for (int l = 0; l < L; ++l) {
    Column phi;
    phi.id = {VarKind::OverManufacture, -1, -1, -1, -1, l, -1};
    phi.name = var_name(phi.id);
    phi.integer = cfg.strict_integer;
    if (cfg.sp_days == 0) phi.ub = 0.0;  // no second period to hedge for
    fs.phicol[l] = out.first.add_col(phi);
    out.link_phi[ix.customers[l].id] = fs.phicol[l];
  }
  fs.emit_rows();
  for (int p = 0; p < P; ++p)
    out.link_alpha[ix.parts[p].id] = fs.acol[p][cfg.fp_days - 1];

  // Fulfillment (eq20) and over-manufacture definition (eq21).
  for (int l = 0; l < L; ++l) {
    Row fulfill;
    fulfill.label = "eq20";
    fulfill.name = fs.row_name("eq20", -1, l);
    fulfill.sense = RowSense::GE;
    fulfill.rhs = ix.customers[l].orders_fp;
    Row over;
    over.label = "eq21";
    over.name = fs.row_name("eq21", -1, l);
    over.sense = RowSense::EQ;
    over.rhs = ix.customers[l].orders_fp;
    over.entries.push_back({fs.phicol[l], -1.0});
    const int dl = fs.deadline_rel(l);
    for (int k = 0; k < K; ++k) {
      if (fs.rcol[l][k].empty()) continue;
      for (int t = 1; t <= cfg.fp_days; ++t) {
        int col = fs.rcol[l][k][t - 1];
        if (t <= dl - ix.customer_tdays[l][k]) fulfill.entries.push_back({col, 1.0});
        over.entries.push_back({col, 1.0});
      }
    }
    out.first.add_row(fulfill);
    out.first.add_row(over);
  }

  // Quality floor, cross-multiplied: sum w_i (Q_ij - (Qb + eps)) z >= 0.
  {
    Row q;
    q.label = "eq17_18";
    q.name = "quality_floor";
    q.sense = RowSense::GE;
    q.rhs = 0.0;
    const double floor = inst.em.base_quality + inst.em.quality_epsilon;
    for (int p = 0; p < P; ++p)
      for (size_t j = 0; j < ix.part_suppliers[p].size(); ++j) {
        const double coef =
            weights.omega.at(ix.parts[p].id) * (ix.part_suppliers[p][j].quality - floor);
        for (int k = 0; k < K; ++k) {
          if (fs.zcol[p][j][k].empty()) continue;
          for (int t = 1; t <= cfg.fp_days; ++t)
            q.entries.push_back({fs.zcol[p][j][k][t - 1], coef});
        }
      }
    out.first.add_row(q);
  }

  double delta = 0.0;
  for (const auto& c : ix.customers) delta += inst.em.selling_price * c.orders_fp;
  out.first.obj_offset = delta - cfg.penalty_total;

  // ---- scenario blocks ----
  if (cfg.sp_days > 0) {
    for (size_t s = 0; s < scenarios.scenarios.size(); ++s) {
      const Scenario& sc = scenarios.scenarios[s];
      ScenarioBlock block;
      block.prob = sc.prob;
      block.scenario_index = static_cast<int>(s);
      block.lp.sense = ObjSense::Maximize;
      block.lp.name = "scp_s" + std::to_string(s);
      StageEmitter em{inst,
                      ix,
                      cfg,
                      block.lp,
                      static_cast<int>(s),
                      &sc,
                      cfg.fp_days + 1,
                      cfg.fp_days + cfg.sp_days,
                      out.bound_census};
      em.emit_columns();
      em.emit_rows();

      for (int p = 0; p < P; ++p) {
        // The first scenario day's balance row draws on alpha^2 (eq26 link).
        int balance_row = -1;
        const std::string target = em.row_name("eq27", cfg.fp_days + 1, p);
        for (size_t ri = 0; ri < block.lp.rows.size(); ++ri)
          if (block.lp.rows[ri].name == target) balance_row = static_cast<int>(ri);
        block.links.push_back({balance_row, out.link_alpha.at(ix.parts[p].id), -1.0});

        // Stage-boundary availability: parts for the first scenario day must
        // already be on hand at the end of the first period.
        Row bound;
        bound.label = "eq28b";
        bound.name = em.row_name("eq28b", cfg.fp_days, p);
        bound.sense = RowSense::LE;
        bound.rhs = 0.0;
        for (int l = 0; l < L; ++l)
          for (int k = 0; k < K; ++k)
            if (!em.rcol[l][k].empty())
              bound.entries.push_back(
                  {em.rcol[l][k][0], static_cast<double>(ix.parts[p].per_evtol)});
        int row_id = block.lp.add_row(bound);
        block.links.push_back({row_id, out.link_alpha.at(ix.parts[p].id), -1.0});
      }

      // Second-period fulfillment (eq22), equality on d2 + D2 + Ds - phi.
      double delta_s = 0.0;
      for (int l = 0; l < L; ++l) {
        const auto& cust = ix.customers[l];
        const int d2 = cfg.d2.count(cust.id) ? cfg.d2.at(cust.id) : 0;
        const int ds = sc.extra_demand.count(cust.id) ? sc.extra_demand.at(cust.id) : 0;
        delta_s += inst.em.selling_price * (d2 + cust.orders_sp_initial + ds);
        Row r;
        r.label = "eq22";
        r.name = em.row_name("eq22", -1, l);
        r.sense = RowSense::EQ;
        r.rhs = d2 + cust.orders_sp_initial + ds;
        const int dl = em.deadline_rel(l);
        for (int k = 0; k < K; ++k) {
          if (em.rcol[l][k].empty()) continue;
          for (int t = cfg.fp_days + 1; t <= cfg.fp_days + cfg.sp_days; ++t)
            if (t <= dl - ix.customer_tdays[l][k])
              r.entries.push_back({em.rcol[l][k][t - cfg.fp_days - 1], 1.0});
        }
        int row_id = block.lp.add_row(r);
        block.links.push_back({row_id, out.link_phi.at(cust.id), 1.0});
      }
      block.lp.obj_offset = delta_s;
      out.blocks.push_back(std::move(block));
    }
  }
  return out;
}

LinearModel build_extensive_form(const TwoStageModel& model) {
  if (model.config.sp_days > 0 && model.blocks.empty())
    throw DataError("extensive form needs at least one scenario block");
  LinearModel ext = model.first;
  ext.name = "scp_extensive";
  for (const auto& block : model.blocks) {
    const int col_base = static_cast<int>(ext.cols.size());
    const int row_base = static_cast<int>(ext.rows.size());
    for (const auto& col : block.lp.cols) {
      Column c = col;
      c.obj *= block.prob;
      ext.cols.push_back(c);
    }
    for (const auto& row : block.lp.rows) {
      Row r = row;
      for (auto& e : r.entries) e.col += col_base;
      ext.rows.push_back(r);
    }
    for (const auto& link : block.links)
      ext.rows[row_base + link.block_row].entries.push_back({link.first_col, link.coef});
    ext.obj_offset += block.prob * block.lp.obj_offset;
  }
  return ext;
}

std::map<std::string, int> model_census(const TwoStageModel& model) {
  std::map<std::string, int> census = model.first.row_census();
  for (const auto& [label, count] : model.bound_census) census[label] += count;
  for (const auto& block : model.blocks)
    for (const auto& [label, count] : block.lp.row_census()) census[label] += count;
  auto add_vars = [&](const LinearModel& m, const std::string& prefix) {
    for (const auto& c : m.cols) census["var_" + prefix + var_kind_tag(c.id.kind)] += 1;
  };
  add_vars(model.first, "");
  for (const auto& block : model.blocks) add_vars(block.lp, "s_");
  return census;
}

Instance apply_horizon_extension(const Instance& inst, int fp_period_index,
                                 const DelayedDeadlines& delayed) {
  Instance out = inst;
  const Period fp = inst.horizon.periods.at(fp_period_index);
  int max_needed = 0;
  for (const auto& [cid, new_deadline] : delayed.new_deadline) {
    if (!inst.find_customer(cid)) throw DataError("unknown customer in deadline map: " + cid);
    max_needed = std::max(max_needed, new_deadline - fp.end_day);
  }
  // Both planning-horizon periods stretch by the same amount, rounded up to a
  // multiple of 10; every later period shifts by twice that.
  const int ext = max_needed <= 0 ? 0 : (max_needed + 9) / 10 * 10;
  for (size_t p = 0; p < out.horizon.periods.size(); ++p) {
    auto& period = out.horizon.periods[p];
    const int idx = static_cast<int>(p);
    if (idx == fp_period_index) {
      period.end_day += ext;
    } else if (idx == fp_period_index + 1) {
      period.start_day += ext;
      period.end_day += 2 * ext;
    } else if (idx > fp_period_index + 1) {
      period.start_day += 2 * ext;
      period.end_day += 2 * ext;
    }
  }
  for (auto& c : out.customers) {
    auto it = delayed.new_deadline.find(c.id);
    if (it != delayed.new_deadline.end()) c.deadline_fp = it->second;
  }
  return out;
}

}  // namespace scp
