#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace scp {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Variable families of the two-stage formulation. Scenario membership is
/// carried separately on the VarId so z and z^s share one kind tag.
enum class VarKind : std::uint8_t {
  Receipt,        // z: parts received
  Order,          // v: parts ordered
  Manufacture,    // r: eVTOLs manufactured
  PartInventory,  // alpha: parts held
  EvtolInventory, // beta: eVTOL holding-days (eliminated by substitution in built models)
  OverManufacture,// phi: first-period production beyond D1
  Recourse,       // theta: per-scenario recourse value in the Benders master
  Aux,
};

/// Typed identity of a model column. Indices are dense positions into the
/// filtered instance's part/supplier/mode/customer arrays; -1 means unused.
/// scenario == -1 marks a first-stage variable.
struct VarId {
  VarKind kind{VarKind::Aux};
  int t{-1};
  int part{-1};
  int supplier{-1};
  int mode{-1};
  int customer{-1};
  int scenario{-1};
};

std::string var_kind_tag(VarKind kind);
std::string var_name(const VarId& id);

enum class RowSense : char { LE = 'L', EQ = 'E', GE = 'G' };

struct RowEntry {
  int col{};
  double coef{};
};

struct Row {
  std::string name;
  std::string label; // provenance tag: eq20..eq39, quality, cut_opt, cut_feas, ...
  RowSense sense{RowSense::LE};
  double rhs{};
  std::vector<RowEntry> entries;
};

struct Column {
  std::string name;
  VarId id;
  double lb{};
  double ub{kInf};
  double obj{};
  bool integer{false};
};

enum class ObjSense { Minimize, Maximize };

/// Plain row-wise LP/MILP container shared by the builder, the solvers, and
/// the MPS writer.
struct LinearModel {
  ObjSense sense{ObjSense::Maximize};
  std::vector<Column> cols;
  std::vector<Row> rows;
  double obj_offset{};
  std::string name{"scp"};

  int add_col(Column c) {
    cols.push_back(std::move(c));
    return static_cast<int>(cols.size()) - 1;
  }
  int add_row(Row r) {
    rows.push_back(std::move(r));
    return static_cast<int>(rows.size()) - 1;
  }

  /// Objective value of a point, in the model's sense, including the offset.
  double objective_value(const std::vector<double>& x) const {
    double v = obj_offset;
    for (size_t j = 0; j < cols.size(); ++j) v += cols[j].obj * x[j];
    return v;
  }

  /// Row counts per provenance label; bound-implemented labels are folded in
  /// by the builder via bound_census.
  std::map<std::string, int> row_census() const {
    std::map<std::string, int> census;
    for (const auto& r : rows) ++census[r.label];
    return census;
  }
};

inline std::string var_kind_tag(VarKind kind) {
  switch (kind) {
    case VarKind::Receipt: return "z";
    case VarKind::Order: return "v";
    case VarKind::Manufacture: return "r";
    case VarKind::PartInventory: return "al";
    case VarKind::EvtolInventory: return "be";
    case VarKind::OverManufacture: return "ph";
    case VarKind::Recourse: return "th";
    case VarKind::Aux: return "x";
  }
  return "x";
}

inline std::string var_name(const VarId& id) {
  std::string n;
  if (id.scenario >= 0) n += "s" + std::to_string(id.scenario) + "_";
  n += var_kind_tag(id.kind);
  if (id.t >= 0) n += "_" + std::to_string(id.t);
  if (id.part >= 0) n += "_i" + std::to_string(id.part);
  if (id.supplier >= 0) n += "_j" + std::to_string(id.supplier);
  if (id.mode >= 0) n += "_k" + std::to_string(id.mode);
  if (id.customer >= 0) n += "_l" + std::to_string(id.customer);
  return n;
}

}  // namespace scp
