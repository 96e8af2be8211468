#include "scp/mps.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace scp {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string pad(const std::string& s, size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string export_mps(const LinearModel& model) {
  std::ostringstream out;
  out << "NAME          " << model.name << "\n";
  out << "OBJSENSE\n    " << (model.sense == ObjSense::Maximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n";
  out << " N  profit\n";
  std::vector<std::string> row_names(model.rows.size());
  for (size_t i = 0; i < model.rows.size(); ++i) {
    row_names[i] = model.rows[i].name.empty() ? "r" + std::to_string(i) : model.rows[i].name;
    out << " " << static_cast<char>(model.rows[i].sense) << "  " << row_names[i] << "\n";
  }

  // Row-wise entries regrouped per column.
  std::vector<std::vector<std::pair<int, double>>> col_entries(model.cols.size());
  for (size_t i = 0; i < model.rows.size(); ++i)
    for (const auto& e : model.rows[i].entries)
      col_entries[e.col].emplace_back(static_cast<int>(i), e.coef);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (size_t j = 0; j < model.cols.size(); ++j) {
    const Column& c = model.cols[j];
    if (c.integer != in_int) {
      out << "    MARKER_" << marker++ << "  'MARKER'  " << (c.integer ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int = c.integer;
    }
    const std::string name = c.name.empty() ? "x" + std::to_string(j) : c.name;
    if (c.obj != 0.0) out << "    " << pad(name, 24) << pad("profit", 24) << num(c.obj) << "\n";
    for (const auto& [row, coef] : col_entries[j])
      out << "    " << pad(name, 24) << pad(row_names[row], 24) << num(coef) << "\n";
    if (c.obj == 0.0 && col_entries[j].empty())
      out << "    " << pad(name, 24) << pad("profit", 24) << "0\n";
  }
  if (in_int) out << "    MARKER_" << marker++ << "  'MARKER'  'INTEND'\n";

  out << "RHS\n";
  // Objective constant: obj(x) = c'x - rhs entry on the objective row.
  if (model.obj_offset != 0.0)
    out << "    " << pad("RHS", 24) << pad("profit", 24) << num(-model.obj_offset) << "\n";
  for (size_t i = 0; i < model.rows.size(); ++i)
    if (model.rows[i].rhs != 0.0)
      out << "    " << pad("RHS", 24) << pad(row_names[i], 24) << num(model.rows[i].rhs) << "\n";

  out << "BOUNDS\n";
  for (size_t j = 0; j < model.cols.size(); ++j) {
    const Column& c = model.cols[j];
    const std::string name = c.name.empty() ? "x" + std::to_string(j) : c.name;
    const bool lb_zero = c.lb == 0.0;
    const bool ub_inf = c.ub == kInf;
    if (c.lb == c.ub) {
      out << " FX " << pad("BND", 20) << pad(name, 24) << num(c.lb) << "\n";
      continue;
    }
    if (lb_zero && ub_inf && !c.integer) continue;  // MPS default
    if (c.lb == -kInf && ub_inf) {
      out << " FR " << pad("BND", 20) << pad(name, 24) << "\n";
      continue;
    }
    if (c.lb == -kInf)
      out << " MI " << pad("BND", 20) << pad(name, 24) << "\n";
    else if (!lb_zero || c.integer)
      out << " LO " << pad("BND", 20) << pad(name, 24) << num(c.lb) << "\n";
    if (ub_inf) {
      // Explicit plus-infinity keeps integer columns from defaulting to [0,1].
      if (c.integer) out << " PL " << pad("BND", 20) << pad(name, 24) << "\n";
    } else {
      out << " UP " << pad("BND", 20) << pad(name, 24) << num(c.ub) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace scp
