#include "ambush/game.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "ambush/error.hpp"
#include "ambush/lp_model.hpp"

namespace ambush {

Equilibrium solve_minimax(const Network& net, SolverKind solver, double length_weight, const SolverOptions& opts) {
  const GameProgram gp = assemble_game_lp(net, length_weight);
  const StandardLP lp = to_standard_form(gp);
  Equilibrium eq;
  eq.solver = solver;
  eq.length_weight = length_weight;
  eq.report = solve_lp(lp, solver, opts);
  if (eq.report.status == SolveStatus::kInfeasible) {
    throw Error(ErrorKind::kPlanning, std::string("minimax LP is infeasible (") + to_string(solver) + ", " +
                                          std::to_string(eq.report.iterations) + " iterations)");
  }
  if (eq.report.status != SolveStatus::kOptimal) {
    throw Error(ErrorKind::kSolver, std::string("minimax LP solve failed: ") + to_string(eq.report.status) +
                                        " (" + to_string(solver) + ", " + std::to_string(eq.report.iterations) +
                                        " iterations)");
  }
  const GameSolution sol = recover_game_solution(lp, eq.report.x);
  eq.p_raw = sol.p.cwiseMax(0.0);
  eq.p = cancel_cycles(net, eq.p_raw);
  eq.z_star = sol.z;
  eq.objective = eq.report.objective;
  eq.entropy = entropy(eq.p);
  return eq;
}

namespace {

// Finds one directed cycle in the positive support; returns its edge ids.
std::vector<int> find_cycle(const Network& net, const std::vector<std::vector<int>>& out, const EdgeStrategy& p) {
  const int m = net.num_nodes();
  std::vector<int> color(m, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> via(m, -1);   // edge used to reach node on the current stack
  std::vector<std::size_t> cursor(m, 0);
  for (int root = 0; root < m; ++root) {
    if (color[root]) continue;
    std::vector<int> stack{root};
    color[root] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      if (cursor[u] == out[u].size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const int eid = out[u][cursor[u]++];
      if (!(p(eid) > 0.0)) continue;
      const int v = net.edges[eid].head;
      if (color[v] == 0) {
        color[v] = 1;
        via[v] = eid;
        stack.push_back(v);
      } else if (color[v] == 1) {
        std::vector<int> cycle{eid};
        for (int w = u; w != v; w = net.edges[via[w]].tail) cycle.push_back(via[w]);
        return cycle;
      }
    }
  }
  return {};
}

}  // namespace

EdgeStrategy cancel_cycles(const Network& net, const EdgeStrategy& p) {
  EdgeStrategy flow = p.cwiseMax(0.0);
  const auto out = net.out_edges();
  while (true) {
    const std::vector<int> cycle = find_cycle(net, out, flow);
    if (cycle.empty()) return flow;
    int argmin = cycle.front();
    for (int eid : cycle) {
      if (flow(eid) < flow(argmin)) argmin = eid;
    }
    const double amount = flow(argmin);
    for (int eid : cycle) flow(eid) = std::max(0.0, flow(eid) - amount);
    flow(argmin) = 0.0;
  }
}

bool is_acyclic(const Network& net, const EdgeStrategy& p) { return find_cycle(net, net.out_edges(), p).empty(); }

Eigen::VectorXd passage_probabilities(const Network& net, const EdgeStrategy& p) {
  Eigen::VectorXd pass = Eigen::VectorXd::Zero(net.num_nodes());
  for (const Edge& e : net.edges) pass(e.head) += p(e.id);
  return pass;
}

double max_node_product(const Network& net, const EdgeStrategy& p) {
  const Eigen::VectorXd pass = passage_probabilities(net, p);
  double best = 0.0;
  for (const Node& n : net.nodes) best = std::max(best, pass(n.id) * n.alpha);
  return best;
}

BestResponse best_response(const Network& net, const EdgeStrategy& p) {
  const Eigen::VectorXd pass = passage_probabilities(net, p);
  const double top = max_node_product(net, p);
  const double tie = 1e-12 * std::max(1.0, top);
  BestResponse br;
  for (const Node& n : net.nodes) {
    if (pass(n.id) * n.alpha >= top - tie) {
      br.node = n.id;
      break;
    }
  }
  br.q = NodeStrategy::Zero(net.num_nodes());
  br.q(br.node) = 1.0;
  br.value = game_value(net, p, br.q);
  return br;
}

double game_value(const Network& net, const EdgeStrategy& p, const NodeStrategy& q) {
  double v = 0.0;
  for (const Edge& e : net.edges) v += q(e.head) * net.nodes[e.head].alpha * p(e.id);
  return v;
}

double ambush_probability(const Network& net, const EdgeStrategy& p, const NodeStrategy& q) {
  double prob = 0.0;
  for (const Edge& e : net.edges) prob += p(e.id) * q(e.head);
  return prob;
}

double entropy(const EdgeStrategy& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) > 0.0) h -= p(k) * std::log(p(k));
  }
  return h;
}

Vec2 mean_direction(const Network& net, const EdgeStrategy& p, int node) {
  if (node < 0 || node >= net.num_nodes()) {
    throw Error(ErrorKind::kLookup, "unknown node id " + std::to_string(node));
  }
  Vec2 dir;
  for (const Edge& e : net.edges) {
    if (e.tail != node || !(p(e.id) > 0.0)) continue;
    const Vec2 delta = net.nodes[e.head].pos - net.nodes[e.tail].pos;
    dir = dir + (p(e.id) / norm(delta)) * delta;
  }
  return dir;
}

std::string equilibrium_to_json(const Network& net, const Equilibrium& eq) {
  const BestResponse br = best_response(net, eq.p);
  const Eigen::VectorXd pass = passage_probabilities(net, eq.p);
  nlohmann::ordered_json j;
  j["solver_tag"] = to_string(eq.solver);
  j["length_weight"] = eq.length_weight;
  j["z_star"] = eq.z_star;
  j["objective"] = eq.objective;
  j["entropy"] = eq.entropy;
  j["V"] = br.value;
  j["q_star"] = br.node;
  j["iterations"] = eq.report.iterations;
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : net.edges) {
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"p", eq.p(e.id)}, {"p_raw", eq.p_raw(e.id)}});
  }
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : net.nodes) {
    nodes.push_back({{"id", n.id}, {"passage", pass(n.id)}, {"q", br.q(n.id)}});
  }
  return j.dump(1) + "\n";
}

}  // namespace ambush
