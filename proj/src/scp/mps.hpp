#pragma once

#include <string>

#include "scp/linear_model.hpp"

namespace scp {

/// Column-aligned MPS document with deterministic `<kind>_<indices>` row and
/// column names, an OBJSENSE section, integer markers, and explicit bounds on
/// every integer column. The objective constant is carried as an RHS entry on
/// the objective row. Re-exporting the same model is byte-identical.
std::string export_mps(const LinearModel& model);

}  // namespace scp
