#include "ambush/lp_model.hpp"

#include <cmath>
#include <sstream>

#include "ambush/error.hpp"
#include "ambush/io.hpp"

namespace ambush {

Eigen::MatrixXd build_outcome_matrix(const Network& net) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(net.num_nodes(), net.num_edges());
  for (const Edge& e : net.edges) d(e.head, e.id) = net.nodes[e.head].alpha;
  return d;
}

FlowConstraints build_flow_constraints(const Network& net) {
  FlowConstraints fc;
  for (const Node& n : net.nodes) {
    if (!net.is_endpoint(n.id)) fc.row_node.push_back(n.id);
  }
  fc.row_node.push_back(net.origin);
  fc.row_node.push_back(net.destination);
  const int rows = static_cast<int>(fc.row_node.size());
  const int internal = rows - 2;

  std::vector<int> row_of(net.nodes.size(), -1);
  for (int r = 0; r < internal; ++r) row_of[fc.row_node[r]] = r;

  fc.matrix = Eigen::MatrixXd::Zero(rows, net.num_edges());
  fc.rhs = Eigen::VectorXd::Zero(rows);
  fc.rhs(internal) = 1.0;
  fc.rhs(internal + 1) = 1.0;
  for (const Edge& e : net.edges) {
    if (row_of[e.head] >= 0) fc.matrix(row_of[e.head], e.id) += 1.0;
    if (row_of[e.tail] >= 0) fc.matrix(row_of[e.tail], e.id) -= 1.0;
    if (e.tail == net.origin) fc.matrix(internal, e.id) = 1.0;
    if (e.head == net.destination) fc.matrix(internal + 1, e.id) = 1.0;
  }
  return fc;
}

double flow_bookkeeping_residual(const GameProgram& gp) {
  const int rows = static_cast<int>(gp.flow.rows());
  if (rows < 2) return 0.0;
  Eigen::VectorXd combo = gp.flow.row(rows - 2) - gp.flow.row(rows - 1);
  for (int r = 0; r < rows - 2; ++r) combo -= gp.flow.row(r).transpose();
  return combo.size() ? combo.cwiseAbs().maxCoeff() : 0.0;
}

GameProgram assemble_game_lp(const Network& net, double length_weight) {
  if (!(length_weight >= 0.0 && length_weight < 1.0)) {
    throw Error(ErrorKind::kUsage, "length weight must lie in [0, 1)");
  }
  GameProgram gp;
  gp.outcome = build_outcome_matrix(net);
  FlowConstraints fc = build_flow_constraints(net);
  gp.flow = std::move(fc.matrix);
  gp.flow_rhs = std::move(fc.rhs);
  gp.flow_row_node = std::move(fc.row_node);
  gp.length_weight = length_weight;
  gp.cost = Eigen::VectorXd::Zero(net.num_edges() + 1);
  for (const Edge& e : net.edges) gp.cost(e.id) = length_weight * e.length;
  gp.cost(net.num_edges()) = 1.0 - length_weight;
  if (flow_bookkeeping_residual(gp) != 0.0) {
    throw Error(ErrorKind::kContract, "flow bookkeeping identity failed; network allows flow into the origin or out of the destination");
  }
  return gp;
}

std::string to_debug_text(const GameProgram& gp) {
  std::ostringstream os;
  auto term = [&](bool& first, double coef, const std::string& var) {
    if (coef == 0.0) return;
    if (first) {
      if (coef < 0) os << "-";
    } else {
      os << (coef < 0 ? " - " : " + ");
    }
    os << format_double(std::abs(coef)) << "*" << var;
    first = false;
  };
  os << "minimize";
  {
    bool first = true;
    os << " ";
    for (int k = 0; k <= gp.num_edges(); ++k) {
      term(first, gp.cost(k), k == gp.z_column() ? "z" : "p" + std::to_string(k));
    }
    if (first) os << "0";
  }
  os << "\n";
  for (int j = 0; j < gp.num_nodes(); ++j) {
    bool first = true;
    os << "outcome n" << j << ": ";
    for (int k = 0; k < gp.num_edges(); ++k) term(first, gp.outcome(j, k), "p" + std::to_string(k));
    term(first, -1.0, "z");
    os << " <= 0\n";
  }
  for (int r = 0; r < gp.flow.rows(); ++r) {
    bool first = true;
    os << "flow n" << gp.flow_row_node[r] << ": ";
    for (int k = 0; k < gp.num_edges(); ++k) term(first, gp.flow(r, k), "p" + std::to_string(k));
    if (first) os << "0";
    os << " = " << format_double(gp.flow_rhs(r)) << "\n";
  }
  return os.str();
}

StandardLP StandardLP::from_dense(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  StandardLP lp;
  lp.c = c;
  lp.a_eq = a.sparseView();
  lp.a_eq.makeCompressed();
  lp.b_eq = b;
  lp.column_meta.assign(static_cast<std::size_t>(a.cols()), ColumnMeta{});
  return lp;
}

StandardLP to_standard_form(const GameProgram& gp) {
  const int n = gp.num_edges();
  const int m = gp.num_nodes();
  const int flow_rows = static_cast<int>(gp.flow.rows());
  StandardLP lp;
  const int cols = n + 1 + m;
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.c.head(n + 1) = gp.cost;
  lp.b_eq = Eigen::VectorXd::Zero(m + flow_rows);
  lp.b_eq.tail(flow_rows) = gp.flow_rhs;

  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < m; ++j) {
      if (gp.outcome(j, k) != 0.0) trips.emplace_back(j, k, gp.outcome(j, k));
    }
    for (int r = 0; r < flow_rows; ++r) {
      if (gp.flow(r, k) != 0.0) trips.emplace_back(m + r, k, gp.flow(r, k));
    }
  }
  for (int j = 0; j < m; ++j) {
    trips.emplace_back(j, n, -1.0);
    trips.emplace_back(j, n + 1 + j, 1.0);
  }
  lp.a_eq.resize(m + flow_rows, cols);
  lp.a_eq.setFromTriplets(trips.begin(), trips.end());
  lp.a_eq.makeCompressed();

  lp.column_meta.resize(cols);
  for (int k = 0; k < n; ++k) lp.column_meta[k] = {ColumnKind::kEdge, k};
  lp.column_meta[n] = {ColumnKind::kZ, 0};
  for (int j = 0; j < m; ++j) lp.column_meta[n + 1 + j] = {ColumnKind::kSlack, j};
  return lp;
}

GameSolution recover_game_solution(const StandardLP& lp, const Eigen::VectorXd& x) {
  int edges = 0;
  for (const ColumnMeta& meta : lp.column_meta) edges += meta.kind == ColumnKind::kEdge;
  GameSolution sol;
  sol.p = Eigen::VectorXd::Zero(edges);
  for (int col = 0; col < lp.cols(); ++col) {
    const ColumnMeta& meta = lp.column_meta[col];
    if (meta.kind == ColumnKind::kEdge) sol.p(meta.index) = x(col);
    if (meta.kind == ColumnKind::kZ) sol.z = x(col);
  }
  return sol;
}

double max_game_violation(const GameProgram& gp, const GameSolution& sol) {
  double v = 0.0;
  if (gp.num_edges() > 0) {
    v = std::max(v, (-sol.p).maxCoeff());
    v = std::max(v, (gp.flow * sol.p - gp.flow_rhs).cwiseAbs().maxCoeff());
    v = std::max(v, ((gp.outcome * sol.p).array() - sol.z).maxCoeff());
  }
  return std::max(v, -sol.z);
}

}  // namespace ambush
