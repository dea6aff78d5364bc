#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ambush/geometry.hpp"

namespace ambush {

struct Node {
  int id = 0;
  Vec2 pos;
  double alpha = 0.0;  // loss if ambushed here
};

struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
  double length = 0.0;
};

// Directed roadmap. Node and edge ids equal their vector positions.
struct Network {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  int origin = 0;
  int destination = 0;

  [[nodiscard]] int num_nodes() const { return static_cast<int>(nodes.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] bool is_endpoint(int node) const { return node == origin || node == destination; }

  // Outgoing / incoming edge ids per node, in edge-id order.
  [[nodiscard]] std::vector<std::vector<int>> out_edges() const;
  [[nodiscard]] std::vector<std::vector<int>> in_edges() const;
};

// Throws kContract describing the first violated structural invariant.
void validate(const Network& net);

// Nodes that lie on some directed origin -> destination walk.
std::vector<bool> useful_nodes(const Network& net);

bool has_origin_destination_path(const Network& net);

// Keeps the nodes flagged in `keep` (origin and destination must be kept),
// renumbering nodes and edges densely in their original order.
Network induced_subnetwork(const Network& net, const std::vector<bool>& keep);

std::string network_to_json(const Network& net);
Network network_from_json(const std::string& text);
Network load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const Network& net);

}  // namespace ambush
