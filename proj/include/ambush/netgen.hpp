#pragma once

#include <cstdint>
#include <vector>

#include "ambush/network.hpp"
#include "ambush/riskmap.hpp"

namespace ambush {

// Sampling + connectivity schemes.
enum class BuildMethod {
  kRandomDelaunay = 1,      // uniform random points, Delaunay edges
  kGridEightConnected = 2,  // square lattice, 8-neighbour edges
  kGridDelaunay = 3,        // square lattice, Delaunay edges
};

BuildMethod build_method_from_int(int method);

struct BuildParams {
  BuildMethod method = BuildMethod::kGridDelaunay;
  int node_budget = 100;
  Vec2 origin;
  Vec2 destination;
  std::uint64_t seed = 0;
};

struct LatticeShape {
  int rows = 1;
  int cols = 1;
};

// Lattice whose point count is closest to `target`, preferring square cells.
// Exact ties go to the shape with more points along `axis`.
LatticeShape choose_lattice(const Rect& bounds, double target, Vec2 axis = {1, 0});

// Builds the directed roadmap. Obstacle samples are discarded, endpoints snap
// to the nearest retained sample, every clear undirected link becomes two
// directed edges except those entering the origin or leaving the destination,
// and nodes that lie on no origin -> destination walk are trimmed.
Network build_network(const RiskField& field, const BuildParams& params);

// Drops internal nodes with alpha > threshold, then trims nodes left on no
// origin -> destination walk. Throws kInfeasiblePruning if the endpoints
// disconnect.
Network prune_threshold(const Network& net, double alpha_threshold);

}  // namespace ambush
