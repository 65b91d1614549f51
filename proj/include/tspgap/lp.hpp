#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tspgap/rational.hpp"

namespace tspgap {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  int variable;
  Rat coefficient;
};

struct LpConstraint {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kEqual;
  Rat rhs = 0;
};

struct LpVariable {
  Rat cost;
  Rat lower;
  std::optional<Rat> upper;  // nullopt means +infinity
};

/// min sum cost_j x_j subject to the constraints and lower_j <= x_j <= upper_j.
class LinearProgram {
 public:
  int add_variable(Rat cost, Rat lower = 0, std::optional<Rat> upper = std::nullopt);
  int add_constraint(LpConstraint constraint);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }

 private:
  std::vector<LpVariable> variables_;
  std::vector<LpConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rat> values;
  Rat objective;
  /// Basic column per row: structural j < num_variables, slack of row i is
  /// num_variables + i, artificial of row i is num_variables + rows + i.
  std::vector<int> basis;
  std::vector<Rat> duals;          // per constraint
  std::vector<Rat> reduced_costs;  // per variable, cost_j - duals^T A_j
  Rat dual_objective;
  int pivots = 0;
};

/// Exact two-phase bounded-variable primal simplex with Bland's rule over a
/// dense tableau. Optimal solutions are basic; duals certify optimality.
LpSolution solve_lp(const LinearProgram& lp);

/// Appends `constraint` to `lp` and solves the augmented program. The result
/// is identical to a cold solve of the augmented LP.
LpSolution add_constraint_and_resolve(LinearProgram& lp, const LpSolution& previous,
                                      LpConstraint constraint);

/// Recomputes reduced costs from the duals and checks dual feasibility,
/// complementary slackness and primal/dual objective equality. Returns a
/// description of the first failure.
std::optional<std::string> check_optimality_certificate(const LinearProgram& lp,
                                                        const LpSolution& solution);

}  // namespace tspgap
