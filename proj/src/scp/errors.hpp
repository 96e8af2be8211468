#pragma once

#include <stdexcept>
#include <string>

namespace scp {

/// Base class for all engine errors. `code()` selects the CLI exit code:
/// data errors map to 1, solver failures to 2.
class Error : public std::runtime_error {
 public:
  enum class Kind { Data, Solver };
  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct DataError : Error {
  explicit DataError(const std::string& what) : Error(Kind::Data, what) {}
};

struct SolverError : Error {
  explicit SolverError(const std::string& what) : Error(Kind::Solver, what) {}
};

struct NoSupplierForPart : DataError {
  explicit NoSupplierForPart(const std::string& part)
      : DataError("no quality-passing supplier left for part " + part) {}
};

struct RouteUnavailable : DataError {
  RouteUnavailable(const std::string& origin, const std::string& mode)
      : DataError("route " + origin + " via " + mode + " is unavailable") {}
};

struct DelayExceedsPolicy : DataError {
  explicit DelayExceedsPolicy(int days)
      : DataError("delay of " + std::to_string(days) + " days exceeds the penalty policy") {}
};

struct EmptyBatch : DataError {
  EmptyBatch() : DataError("batch quality of an empty receipt plan is undefined") {}
};

struct AllScenariosReduced : DataError {
  AllScenariosReduced() : DataError("scenario reduction emptied the set; relax sim_tol/min_prob") {}
};

struct InfeasibleStatic : DataError {
  explicit InfeasibleStatic(const std::string& why)
      : DataError("statically infeasible instance: " + why) {}
};

struct DeadlineBeforeMinimum : DataError {
  explicit DeadlineBeforeMinimum(const std::string& customer)
      : DataError("chosen deadline for " + customer + " violates the minimum delay") {}
};

struct OutOfRange : DataError {
  explicit OutOfRange(const std::string& what) : DataError(what) {}
};

struct InconsistentPlan : DataError {
  explicit InconsistentPlan(const std::string& why) : DataError("inconsistent plan: " + why) {}
};

struct NumericalBreakdown : SolverError {
  explicit NumericalBreakdown(const std::string& why)
      : SolverError("numerical breakdown: " + why) {}
};

struct MasterInfeasible : SolverError {
  MasterInfeasible() : SolverError("Benders master problem is infeasible") {}
};

struct IterationLimit : SolverError {
  explicit IterationLimit(const std::string& why) : SolverError(why) {}
};

struct StageBInfeasible : SolverError {
  StageBInfeasible()
      : SolverError("sequential stage B infeasible: stage-A receipts cannot support any schedule") {}
};

struct InfeasibleHeuristic : SolverError {
  explicit InfeasibleHeuristic(const std::string& why)
      : SolverError("heuristic infeasible: " + why) {}
};

}  // namespace scp
