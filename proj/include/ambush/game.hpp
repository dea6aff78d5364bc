#pragma once

#include <string>

#include <Eigen/Dense>

#include "ambush/network.hpp"
#include "ambush/solver.hpp"

namespace ambush {

// Player 1 strategies are per-edge probability vectors indexed by edge id;
// Player 2 strategies are per-node vectors indexed by node id.
using EdgeStrategy = Eigen::VectorXd;
using NodeStrategy = Eigen::VectorXd;

struct Equilibrium {
  EdgeStrategy p;      // after cycle cancellation
  EdgeStrategy p_raw;  // solver output, negatives clipped
  double z_star = 0.0;
  double objective = 0.0;
  double entropy = 0.0;
  double length_weight = 0.0;
  SolverKind solver = SolverKind::kIpm;
  SolveReport report;
};

// Solves the minimax LP and maps the optimum back to an acyclic edge flow.
// Throws kPlanning for infeasible networks and kSolver for other failures.
Equilibrium solve_minimax(const Network& net, SolverKind solver, double length_weight = 0.0,
                          const SolverOptions& opts = {});

// Removes every directed cycle from the support of p by flow decomposition.
EdgeStrategy cancel_cycles(const Network& net, const EdgeStrategy& p);

bool is_acyclic(const Network& net, const EdgeStrategy& p);

// Inflow sum per node.
Eigen::VectorXd passage_probabilities(const Network& net, const EdgeStrategy& p);

// max_j passage_j * alpha_j
double max_node_product(const Network& net, const EdgeStrategy& p);

struct BestResponse {
  int node = 0;
  NodeStrategy q;
  double value = 0.0;  // q^T D p
};

// Pure best response on the max-product node; ties go to the lowest id.
BestResponse best_response(const Network& net, const EdgeStrategy& p);

// Expected loss q^T D p.
double game_value(const Network& net, const EdgeStrategy& p, const NodeStrategy& q);

double ambush_probability(const Network& net, const EdgeStrategy& p, const NodeStrategy& q);

// -sum p ln p over edges, in nats, with 0 ln 0 = 0.
double entropy(const EdgeStrategy& p);

// sum over outgoing edges of p * unit direction. Throws kLookup for bad ids.
Vec2 mean_direction(const Network& net, const EdgeStrategy& p, int node);

std::string equilibrium_to_json(const Network& net, const Equilibrium& eq);

}  // namespace ambush
