#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scp/errors.hpp"

namespace scp {

/// One origin-destination leg for a given transport mode.
struct RouteSpec {
  double distance_km{};
  double emission_tons_per_ton{};
  bool available{false};
};

struct PartSpec {
  std::string id;
  double weight{};        // tons per unit
  int per_evtol{1};       // units required per eVTOL
  double min_quality{};   // required quality, 0-10
  double inventory_cap{}; // max units held per day
};

struct SupplierSpec {
  std::string id;
  std::string part_id;
  double quality{};  // 0-10
  double price{};    // $ per unit
  double capacity{}; // units per period
  int lead_time_days{};
  std::map<std::string, RouteSpec> routes; // mode id -> route
};

struct CustomerSpec {
  std::string id;
  int orders_fp{};         // final pre-orders for the first period
  int orders_sp_initial{}; // initial pre-orders for the second period
  int deadline_fp{};       // absolute day
  int deadline_sp{};       // absolute day
  std::map<std::string, RouteSpec> routes;
};

struct ModeSpec {
  std::string id;
  double speed_kmh{};
  double max_daily_hours{};
  std::map<int, double> freight_cost_per_ton_km_by_year;

  double km_per_day() const { return speed_kmh * max_daily_hours; }
};

struct EmSpec {
  double daily_mfg_cap{};       // R
  double evtol_inventory_cap{}; // cap on held-eVTOL days per day
  double selling_price{};       // $ per eVTOL
  double base_mfg_cost{};       // $ per eVTOL
  double holding_rate{};        // fraction of value per year
  double base_quality{};        // minimum certifiable batch quality
  double quality_sensitivity{}; // kappa
  double quality_epsilon{1e-6}; // strictness margin for the quality floor
  double evtol_weight{};        // tons
  double emission_cost_base{};  // $ per ton in the first year
  double emission_cost_growth{};
  std::map<std::string, double> initial_part_inventory; // part id -> units, default 0
};

struct PenaltyBracket {
  int delay_day_upper_bound{};
  double pct_of_contract_per_day{}; // fraction, e.g. 0.0005 for 0.05%
};

/// Progressive delay-penalty policy: day d accrues the rate of the bracket
/// containing d, on a contract value of selling_price * orders_fp.
struct PenaltyPolicy {
  std::vector<PenaltyBracket> brackets;
  int max_delay_days() const {
    return brackets.empty() ? 0 : brackets.back().delay_day_upper_bound;
  }
};

struct Period {
  int start_day{};
  int end_day{};
  int days() const { return end_day - start_day + 1; }
};

struct HorizonLayout {
  std::vector<Period> periods;
  int lookahead{2}; // V
  int first_year{2026};
  int days_per_year{360};

  int analysis_end_day() const { return periods.empty() ? 0 : periods.back().end_day; }
  int year_of_day(int day) const { return first_year + (day - 1) / days_per_year; }
};

/// EX/SD configuration used to derive the uncertain-parameter specs.
/// Absent values fall back to 10% SD fractions and extra demand EX 4 / SD 2.
struct UncertaintyConfig {
  struct ExtraDemand {
    double ex{4.0};
    double sd{2.0};
  };
  double price_sd_frac{0.10};
  double capacity_sd_frac{0.10};
  double mfg_cost_sd_frac{0.10};
  std::map<std::string, ExtraDemand> extra_demand;           // customer id ->
  std::map<std::string, double> price_sd_frac_overrides;     // "part/supplier" ->
  std::map<std::string, double> capacity_sd_frac_overrides;  // "part/supplier" ->
};

struct Instance {
  std::vector<PartSpec> parts;
  std::vector<SupplierSpec> suppliers;
  std::vector<CustomerSpec> customers;
  std::vector<ModeSpec> modes;
  EmSpec em;
  PenaltyPolicy penalty_policy;
  HorizonLayout horizon;
  UncertaintyConfig uncertainty;

  const PartSpec* find_part(const std::string& id) const;
  const SupplierSpec* find_supplier(const std::string& part_id, const std::string& id) const;
  const CustomerSpec* find_customer(const std::string& id) const;
  const ModeSpec* find_mode(const std::string& id) const;
  std::vector<const SupplierSpec*> suppliers_of(const std::string& part_id) const;
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Checks every type invariant; violations are data, not exceptions.
std::vector<Violation> validate_instance(const Instance& instance);

struct FilterResult {
  Instance instance;
  std::vector<std::string> removed; // "part/supplier" ids
};

/// Drops suppliers whose quality is below the part's minimum requirement.
/// Throws NoSupplierForPart if a part loses all of its suppliers.
FilterResult filter_suppliers(const Instance& instance);

/// Whole transport days for a route: ceil(distance / (speed * daily hours)), >= 1.
/// Throws RouteUnavailable when the route is not available.
int transport_days(const RouteSpec& route, const ModeSpec& mode);

struct HoldingCosts {
  std::map<std::string, double> per_part_per_day; // H^a_i
  double per_evtol_per_day{};                     // H^b
};

/// Per-day holding costs derived from the annual holding rate and the
/// pre-filter mean supplier price of each part.
HoldingCosts holding_costs(const Instance& instance);

/// Emission cost ($ per ton) on an absolute day: base grows by the yearly rate.
double emission_cost_on_day(const Instance& instance, int day);

/// Freight cost ($ per ton-km) for a mode on an absolute day; the year map is
/// clamped to its first/last entry outside the covered range.
double freight_cost_on_day(const Instance& instance, const ModeSpec& mode, int day);

/// Progressive delay penalty: sum over days 1..delay_days of the bracket rate
/// times the contract value. Throws DelayExceedsPolicy past the last bracket.
double delay_penalty(const PenaltyPolicy& policy, double contract_value, int delay_days);

}  // namespace scp
