#include "ambush/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "ambush/error.hpp"
#include "ambush/io.hpp"

namespace ambush {

PathSample make_path_sample(const Network& net, std::vector<int> nodes, std::uint64_t seed) {
  PathSample s;
  s.seed = seed;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s.max_alpha = std::max(s.max_alpha, net.nodes[nodes[i]].alpha);
    if (i) s.length += distance(net.nodes[nodes[i - 1]].pos, net.nodes[nodes[i]].pos);
  }
  s.nodes = std::move(nodes);
  return s;
}

namespace {

// Two-level cost compared lexicographically.
struct Cost {
  double primary = 0.0;
  double secondary = 0.0;
  friend Cost operator+(Cost a, Cost b) { return {a.primary + b.primary, a.secondary + b.secondary}; }
  friend bool operator<(Cost a, Cost b) {
    return a.primary < b.primary || (a.primary == b.primary && a.secondary < b.secondary);
  }
};

bool nearly_equal(Cost a, Cost b) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)}); };
  return close(a.primary, b.primary) && close(a.secondary, b.secondary);
}

template <typename EdgeCost>
PathSample lexicographic_best_path(const Network& net, EdgeCost edge_cost) {
  // Costs-to-go by Dijkstra on the reversed graph.
  const Cost inf{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::vector<Cost> to_go(net.nodes.size(), inf);
  const auto in = net.in_edges();
  using Item = std::pair<Cost, int>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  to_go[net.destination] = {};
  heap.push({{}, net.destination});
  while (!heap.empty()) {
    const auto [cost, v] = heap.top();
    heap.pop();
    if (to_go[v] < cost) continue;
    for (int eid : in[v]) {
      const Edge& e = net.edges[eid];
      const Cost cand = cost + edge_cost(e);
      if (cand < to_go[e.tail]) {
        to_go[e.tail] = cand;
        heap.push({cand, e.tail});
      }
    }
  }
  if (!(to_go[net.origin] < inf)) {
    throw Error(ErrorKind::kPlanning, "destination is unreachable from the origin");
  }
  // Walk forward choosing the lowest-id successor that stays optimal.
  const auto out = net.out_edges();
  std::vector<int> nodes{net.origin};
  Cost prefix{};
  int u = net.origin;
  while (u != net.destination) {
    int best_edge = -1;
    for (int eid : out[u]) {
      const Edge& e = net.edges[eid];
      if (!(to_go[e.head] < inf)) continue;
      if (!nearly_equal(prefix + edge_cost(e) + to_go[e.head], to_go[net.origin])) continue;
      if (best_edge < 0 || e.head < net.edges[best_edge].head) best_edge = eid;
    }
    if (best_edge < 0 || nodes.size() > net.nodes.size()) {
      throw Error(ErrorKind::kPlanning, "failed to reconstruct an optimal path");
    }
    prefix = prefix + edge_cost(net.edges[best_edge]);
    u = net.edges[best_edge].head;
    nodes.push_back(u);
  }
  return make_path_sample(net, std::move(nodes));
}

}  // namespace

PathSample shortest_path(const Network& net) {
  return lexicographic_best_path(net, [](const Edge& e) { return Cost{e.length, 0.0}; });
}

PathSample safest_path(const Network& net) {
  // Charging each edge its head's alpha is node splitting in disguise.
  return lexicographic_best_path(net, [&](const Edge& e) { return Cost{net.nodes[e.head].alpha, e.length}; });
}

EdgeStrategy path_flow(const Network& net, const PathSample& path) {
  EdgeStrategy flow = EdgeStrategy::Zero(net.num_edges());
  const auto out = net.out_edges();
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    bool found = false;
    for (int eid : out[path.nodes[i - 1]]) {
      if (net.edges[eid].head == path.nodes[i]) {
        flow(eid) += 1.0;
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::kContract, "path uses a pair of nodes not joined by an edge");
  }
  return flow;
}

PathSampler::PathSampler(const Network& net, const EdgeStrategy& p)
    : net_(net), choices_(net.nodes.size()), cumulative_(net.nodes.size()) {
  if (p.size() != net.num_edges()) throw Error(ErrorKind::kContract, "strategy size does not match the network");
  if (!is_acyclic(net, p)) {
    throw Error(ErrorKind::kContract, "path sampling requires an acyclic flow; cancel cycles first");
  }
  for (const Edge& e : net.edges) {
    if (!(p(e.id) > 0.0)) continue;
    const double prev = cumulative_[e.tail].empty() ? 0.0 : cumulative_[e.tail].back();
    choices_[e.tail].push_back(e.id);
    cumulative_[e.tail].push_back(prev + p(e.id));
  }
}

PathSample PathSampler::sample(std::mt19937_64& rng) const {
  std::vector<int> nodes{net_.origin};
  int u = net_.origin;
  while (u != net_.destination) {
    const auto& cum = cumulative_[u];
    if (cum.empty()) {
      throw Error(ErrorKind::kContract, "random walk reached node " + std::to_string(u) + " with no outgoing mass");
    }
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), r);
    if (it == cum.end()) --it;
    u = net_.edges[choices_[u][it - cum.begin()]].head;
    nodes.push_back(u);
  }
  return make_path_sample(net_, std::move(nodes));
}

PathSample sample_path(const Network& net, const EdgeStrategy& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PathSample s = PathSampler(net, p).sample(rng);
  s.seed = seed;
  return s;
}

std::vector<PathSample> sample_paths(const Network& net, const EdgeStrategy& p, int count, std::uint64_t seed) {
  const PathSampler sampler(net, p);
  std::mt19937_64 rng(seed);
  std::vector<PathSample> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int i = 0; i < count; ++i) {
    out.push_back(sampler.sample(rng));
    out.back().seed = seed;
  }
  return out;
}

std::string planner_name(const PlannerSpec& spec) {
  switch (spec.kind) {
    case PlannerKind::kShortest: return "shortest";
    case PlannerKind::kSafest: return "safest";
    case PlannerKind::kStochastic: {
      std::string name = std::string("stochastic-") + to_string(spec.solver);
      if (spec.length_weight != 0.0) name += "-w" + format_double(spec.length_weight);
      return name;
    }
  }
  return "unknown";
}

namespace {

int max_alpha_node(const Network& net, const PathSample& path) {
  int best = path.nodes.front();
  for (int v : path.nodes) {
    if (net.nodes[v].alpha > net.nodes[best].alpha) best = v;
  }
  return best;
}

}  // namespace

EvalReport evaluate_planner(const Network& net, const PlannerSpec& spec, const Equilibrium& reference,
                            int iterations, std::uint64_t seed, const SolverOptions& opts) {
  EvalReport rep;
  rep.planner = planner_name(spec);
  rep.iterations = iterations;

  // First game: Player 2 best-responds to the minimax strategy it assumes.
  const BestResponse first = best_response(net, reference.p);
  rep.p1 = ambush_probability(net, reference.p, first.q);

  std::mt19937_64 rng(seed);
  int hits = 0;
  double loss = 0.0;
  if (spec.kind == PlannerKind::kStochastic) {
    const bool reuse = spec.solver == reference.solver && spec.length_weight == reference.length_weight;
    const Equilibrium own = reuse ? reference : solve_minimax(net, spec.solver, spec.length_weight, opts);
    rep.expected_length = 0.0;
    for (const Edge& e : net.edges) rep.expected_length += own.p(e.id) * e.length;
    // Only the distribution can be learned, so the informed ambush is its best response.
    const BestResponse informed = best_response(net, own.p);
    rep.p_inf = ambush_probability(net, own.p, informed.q);
    rep.v_inf = informed.value;
    if (iterations > 0) {
      const PathSampler sampler(net, own.p);
      for (int it = 0; it < iterations; ++it) {
        const PathSample path = sampler.sample(rng);
        const int ambush = it == 0 ? first.node : informed.node;
        if (std::find(path.nodes.begin(), path.nodes.end(), ambush) != path.nodes.end()) {
          ++hits;
          loss += net.nodes[ambush].alpha;
        }
      }
    }
  } else {
    const PathSample path = spec.kind == PlannerKind::kShortest ? shortest_path(net) : safest_path(net);
    rep.expected_length = path.length;
    // A fixed path is learned exactly; the ambush goes to its riskiest node.
    rep.p_inf = 1.0;
    rep.v_inf = path.max_alpha;
    const int informed = max_alpha_node(net, path);
    for (int it = 0; it < iterations; ++it) {
      const int ambush = it == 0 ? first.node : informed;
      if (std::find(path.nodes.begin(), path.nodes.end(), ambush) != path.nodes.end()) {
        ++hits;
        loss += net.nodes[ambush].alpha;
      }
    }
  }
  if (iterations > 0) {
    rep.empirical_ambush_rate = static_cast<double>(hits) / iterations;
    rep.empirical_loss = loss / iterations;
  }
  return rep;
}

EvalReport evaluate_planner(const Network& net, const PlannerSpec& spec, int iterations, std::uint64_t seed,
                            const SolverOptions& opts) {
  const Equilibrium reference = solve_minimax(net, spec.solver, 0.0, opts);
  return evaluate_planner(net, spec, reference, iterations, seed, opts);
}

std::string eval_csv_header() { return "planner,E,P1,P_inf,V_inf"; }

std::string to_csv_row(const EvalReport& r) {
  std::ostringstream os;
  os << r.planner << ',' << format_double(r.expected_length) << ',' << format_double(r.p1) << ','
     << format_double(r.p_inf) << ',' << format_double(r.v_inf);
  return os.str();
}

}  // namespace ambush
