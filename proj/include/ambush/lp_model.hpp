#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ambush/network.hpp"

namespace ambush {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

// Minimax game LP over variables (p, z):
//   minimize   cost . (p, z)
//   subject to D p - 1 z <= 0,  A p = b,  p >= 0,  z >= 0.
// Column k of p is edge id k; row j of D is node id j.
struct GameProgram {
  Eigen::MatrixXd outcome;         // D, nodes x edges
  Eigen::MatrixXd flow;            // A, flow rows x edges
  Eigen::VectorXd flow_rhs;        // b
  std::vector<int> flow_row_node;  // node id owning each row of A
  Eigen::VectorXd cost;            // length edges + 1; last entry multiplies z
  double length_weight = 0.0;

  [[nodiscard]] int num_edges() const { return static_cast<int>(outcome.cols()); }
  [[nodiscard]] int num_nodes() const { return static_cast<int>(outcome.rows()); }
  [[nodiscard]] int z_column() const { return num_edges(); }
};

// D_jk = alpha_j when edge k heads into node j, else 0.
Eigen::MatrixXd build_outcome_matrix(const Network& net);

struct FlowConstraints {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::vector<int> row_node;
};

// Rows: one balance row (inflow - outflow = 0) per internal node in id order,
// then the origin outflow row and the destination inflow row (both = 1).
FlowConstraints build_flow_constraints(const Network& net);

// Assembles the LP with cost (1 - w) z + w sum_k p_k l_k, w in [0, 1).
// Verifies the flow bookkeeping identity origin - sum(internal) = destination.
GameProgram assemble_game_lp(const Network& net, double length_weight = 0.0);

// Max abs entry of (origin row - sum of internal rows - destination row).
double flow_bookkeeping_residual(const GameProgram& gp);

// One constraint per line; stable for golden-file comparison.
std::string to_debug_text(const GameProgram& gp);

enum class ColumnKind { kEdge, kZ, kSlack, kOther };

struct ColumnMeta {
  ColumnKind kind = ColumnKind::kOther;
  int index = 0;  // edge id, 0 for z, node id for slacks
};

// minimize c.x subject to A x = b, x >= 0.
struct StandardLP {
  Eigen::VectorXd c;
  SparseMatrix a_eq;
  Eigen::VectorXd b_eq;
  std::vector<ColumnMeta> column_meta;

  [[nodiscard]] int rows() const { return static_cast<int>(a_eq.rows()); }
  [[nodiscard]] int cols() const { return static_cast<int>(a_eq.cols()); }

  static StandardLP from_dense(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b);
};

// Columns: edges, z, one slack per outcome row. Rows: outcome rows, then flow rows.
StandardLP to_standard_form(const GameProgram& gp);

struct GameSolution {
  Eigen::VectorXd p;
  double z = 0.0;
};

// Maps a StandardLP point back to (p, z) through column_meta.
GameSolution recover_game_solution(const StandardLP& lp, const Eigen::VectorXd& x);

// Largest violation of the game LP constraints at (p, z).
double max_game_violation(const GameProgram& gp, const GameSolution& sol);

}  // namespace ambush
