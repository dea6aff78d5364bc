#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ambush/lp_model.hpp"

namespace ambush {

enum class SolverKind { kSimplex, kIpm };
enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(SolverKind kind);
const char* to_string(SolveStatus status);
SolverKind solver_from_string(const std::string& name);

struct SolveReport {
  SolveStatus status = SolveStatus::kOptimal;
  SolverKind solver = SolverKind::kSimplex;
  Eigen::VectorXd x;               // primal point (optimal status only)
  Eigen::VectorXd y;               // equality-row multipliers
  Eigen::VectorXd reduced_costs;   // c - A^T y
  double objective = 0.0;
  int iterations = 0;
  double max_primal_residual = 0.0;  // ||A x - b||_inf
  double max_dual_residual = 0.0;    // ipm only
  double duality_gap = 0.0;          // ipm only, relative
  double phase1_infeasibility = 0.0; // simplex, infeasible status
  int unbounded_column = -1;         // simplex, unbounded status
  std::vector<int> redundant_rows;   // rows found linearly dependent
  std::vector<double> mu_history;    // ipm complementarity per iteration
};

struct SimplexOptions {
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  int max_iterations = 500000;
  int refactor_interval = 100;
};

// Two-phase revised simplex with Bland's rule and a dense basis inverse.
// Returns a basic optimal solution. Throws kIterationCap past the cap.
SolveReport simplex_solve(const StandardLP& lp, const SimplexOptions& opts = {});

struct IpmOptions {
  double gap_tol = 1e-9;
  double feasibility_tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.99;
};

// Mehrotra predictor-corrector primal-dual interior-point method. The final
// iterate is returned as is (no crossover). Throws kIterationCap past the cap.
SolveReport ipm_solve(const StandardLP& lp, const IpmOptions& opts = {});

struct SolverOptions {
  SimplexOptions simplex;
  IpmOptions ipm;
};

SolveReport solve_lp(const StandardLP& lp, SolverKind kind, const SolverOptions& opts = {});

}  // namespace ambush
