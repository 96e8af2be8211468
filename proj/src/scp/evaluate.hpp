#pragma once

#include "scp/instance.hpp"
#include "scp/plan.hpp"
#include "scp/quality.hpp"

namespace scp {

/// First-period replay: revenue eta*sum(D1), the eight cost components over
/// the first-stage decisions, and any extension penalties as tpc.
CostBreakdown evaluate_stage1(const Plan& plan, const Instance& instance);

/// Second-period replay of one scenario branch at its realized prices,
/// capacities, manufacturing cost and extra demand.
CostBreakdown evaluate_scenario_branch(const Plan& plan, size_t scenario_index,
                                       const Instance& instance);

/// Full-path replay: first stage plus one realized branch (the spec's
/// evaluate_plan). scenario_index < 0 evaluates the first stage alone.
CostBreakdown evaluate_plan(const Plan& plan, const Instance& instance, int scenario_index);

/// Probability-weighted breakdown: stage 1 plus sum_s pi_s * branch_s.
CostBreakdown expected_breakdown(const Plan& plan, const Instance& instance);

/// Flow replay suite: day-by-day inventory conservation in cumulative form,
/// order-receipt lead-time matching, every capacity cap, stage-boundary
/// availability, fulfillment, and the quality floor. Throws InconsistentPlan
/// naming the first violated rule.
void verify_plan(const Plan& plan, const Instance& instance);

/// First-stage receipts in batch_quality form.
std::vector<Receipt> stage1_receipts(const Plan& plan);

}  // namespace scp
