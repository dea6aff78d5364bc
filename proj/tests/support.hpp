#pragma once

#include <random>
#include <utility>
#include <vector>

#include "ambush/network.hpp"
#include "oracles/oracles.hpp"

namespace support {

struct NodeSpec {
  double x;
  double y;
  double alpha;
};

// Ids follow the argument order; lengths are Euclidean.
inline ambush::Network make_network(const std::vector<NodeSpec>& nodes, const std::vector<std::pair<int, int>>& edges,
                                    int origin, int destination) {
  ambush::Network net;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    net.nodes.push_back({static_cast<int>(i), {nodes[i].x, nodes[i].y}, nodes[i].alpha});
  }
  for (const auto& [t, h] : edges) {
    net.edges.push_back({net.num_edges(), t, h, ambush::distance(net.nodes[t].pos, net.nodes[h].pos)});
  }
  net.origin = origin;
  net.destination = destination;
  ambush::validate(net);
  return net;
}

// origin -> n1 -> ... -> destination along the y axis.
inline ambush::Network chain(const std::vector<double>& internal_alpha) {
  std::vector<NodeSpec> nodes{{0, 0, 0}};
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < internal_alpha.size(); ++i) nodes.push_back({0, static_cast<double>(i + 1), internal_alpha[i]});
  nodes.push_back({0, static_cast<double>(internal_alpha.size() + 1), 0});
  for (int i = 0; i + 1 < static_cast<int>(nodes.size()); ++i) edges.emplace_back(i, i + 1);
  return make_network(nodes, edges, 0, static_cast<int>(nodes.size()) - 1);
}

// `k` node-disjoint branches between origin 0 and destination 1, each with
// `hops` internal nodes of the given alpha.
inline ambush::Network disjoint_paths(int k, int hops = 1, double alpha = 1.0) {
  std::vector<NodeSpec> nodes{{0, 0, 0}, {0, static_cast<double>(hops + 1), 0}};
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < k; ++b) {
    int prev = 0;
    for (int h = 0; h < hops; ++h) {
      nodes.push_back({static_cast<double>(b - k / 2) + 0.25, static_cast<double>(h + 1), alpha});
      const int id = static_cast<int>(nodes.size()) - 1;
      edges.emplace_back(prev, id);
      prev = id;
    }
    edges.emplace_back(prev, 1);
  }
  return make_network(nodes, edges, 0, 1);
}

// Small layered random network: origin, `layers` layers of up to `width`
// nodes, destination. Edges go forward one layer, with optional sideways links.
inline ambush::Network random_layered(std::mt19937_64& rng, int layers, int width, bool sideways,
                                      double alpha_max = 3.0) {
  std::uniform_real_distribution<double> ua(0.1, alpha_max);
  std::uniform_int_distribution<int> uw(1, width);
  std::bernoulli_distribution coin(0.5);
  std::vector<NodeSpec> nodes{{0, 0, 0}};
  std::vector<std::vector<int>> layer_ids;
  for (int l = 0; l < layers; ++l) {
    const int w = uw(rng);
    layer_ids.emplace_back();
    for (int i = 0; i < w; ++i) {
      nodes.push_back({i - (w - 1) / 2.0, l + 1.0, ua(rng)});
      layer_ids.back().push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  nodes.push_back({0, layers + 1.0, 0});
  const int dest = static_cast<int>(nodes.size()) - 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> prev{0};
  for (const auto& ids : layer_ids) {
    for (int v : ids) {
      bool linked = false;
      for (int u : prev) {
        if (coin(rng)) {
          edges.emplace_back(u, v);
          linked = true;
        }
      }
      if (!linked) edges.emplace_back(prev[std::uniform_int_distribution<int>(0, static_cast<int>(prev.size()) - 1)(rng)], v);
    }
    if (sideways) {
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        if (coin(rng)) edges.emplace_back(ids[i], ids[i + 1]);
      }
    }
    prev = ids;
  }
  for (int u : prev) edges.emplace_back(u, dest);
  return make_network(nodes, edges, 0, dest);
}

}  // namespace support
