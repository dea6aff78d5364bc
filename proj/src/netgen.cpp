#include "ambush/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "ambush/delaunay.hpp"
#include "ambush/error.hpp"

namespace ambush {

BuildMethod build_method_from_int(int method) {
  switch (method) {
    case 1: return BuildMethod::kRandomDelaunay;
    case 2: return BuildMethod::kGridEightConnected;
    case 3: return BuildMethod::kGridDelaunay;
    default: throw Error(ErrorKind::kUsage, "construction method must be 1, 2 or 3");
  }
}

LatticeShape choose_lattice(const Rect& bounds, double target, Vec2 axis) {
  target = std::max(1.0, target);
  LatticeShape best;
  double best_score = std::numeric_limits<double>::infinity();
  const int max_cols = static_cast<int>(std::ceil(target)) + 1;
  for (int cols = 1; cols <= max_cols; ++cols) {
    const double ideal_rows = target / cols;
    for (int rows : {static_cast<int>(std::floor(ideal_rows)), static_cast<int>(std::ceil(ideal_rows))}) {
      if (rows < 1) continue;
      const double aspect = (bounds.width() / cols) / (bounds.height() / rows);
      const double score = std::abs(rows * static_cast<double>(cols) - target) + std::abs(std::log(aspect));
      const bool along = std::abs(axis.x) >= std::abs(axis.y) ? cols > best.cols : rows > best.rows;
      if (score < best_score - 1e-12 || (score <= best_score + 1e-12 && along)) {
        best_score = score;
        best = {rows, cols};
      }
    }
  }
  return best;
}

namespace {

struct Samples {
  std::vector<Vec2> points;
  std::vector<std::pair<int, int>> lattice;  // (row, col) per point, lattice methods only
  LatticeShape shape;
};

double free_fraction(const RiskField& field) {
  const Rect& b = field.bounds();
  double blocked = 0.0;
  for (const Rect& o : field.obstacles()) {
    const double w = std::min(o.xmax, b.xmax) - std::max(o.xmin, b.xmin);
    const double h = std::min(o.ymax, b.ymax) - std::max(o.ymin, b.ymin);
    if (w > 0 && h > 0) blocked += w * h;
  }
  return std::clamp(1.0 - blocked / (b.width() * b.height()), 0.05, 1.0);
}

// Uniform double in [0, 1) from the top 53 bits; platform independent.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Samples sample_random(const RiskField& field, int budget, std::uint64_t seed) {
  Samples s;
  std::mt19937_64 rng(seed);
  const Rect& b = field.bounds();
  for (int i = 0; i < budget; ++i) {
    const double x = b.xmin + unit(rng) * b.width();
    const double y = b.ymin + unit(rng) * b.height();
    if (!field.in_obstacle({x, y})) s.points.push_back({x, y});
  }
  return s;
}

Samples sample_lattice(const RiskField& field, int budget, Vec2 axis) {
  Samples s;
  const Rect& b = field.bounds();
  s.shape = choose_lattice(b, budget / free_fraction(field), axis);
  const double dx = b.width() / s.shape.cols;
  const double dy = b.height() / s.shape.rows;
  for (int r = 0; r < s.shape.rows; ++r) {
    for (int c = 0; c < s.shape.cols; ++c) {
      const Vec2 p{b.xmin + (c + 0.5) * dx, b.ymin + (r + 0.5) * dy};
      if (field.in_obstacle(p)) continue;
      s.points.push_back(p);
      s.lattice.emplace_back(r, c);
    }
  }
  return s;
}

int nearest(const std::vector<Vec2>& pts, Vec2 target) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double d = distance(pts[i], target);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

std::vector<std::pair<int, int>> delaunay_links(const std::vector<Vec2>& pts) {
  try {
    return triangulation_edges(delaunay(pts));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerateInput) throw;
  }
  // Two points or a collinear set: the triangulation degenerates to a chain.
  std::vector<int> order(pts.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(pts[a].x, pts[a].y, a) < std::tie(pts[b].x, pts[b].y, b);
  });
  std::vector<std::pair<int, int>> links;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (pts[order[i]] == pts[order[i - 1]]) continue;
    links.emplace_back(std::min(order[i - 1], order[i]), std::max(order[i - 1], order[i]));
  }
  std::sort(links.begin(), links.end());
  return links;
}

std::vector<std::pair<int, int>> grid_links(const Samples& s) {
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < static_cast<int>(s.lattice.size()); ++i) index[s.lattice[i]] = i;
  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < static_cast<int>(s.lattice.size()); ++i) {
    const auto [r, c] = s.lattice[i];
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        auto it = index.find({r + dr, c + dc});
        if (it != index.end() && it->second > i) links.emplace_back(i, it->second);
      }
    }
  }
  std::sort(links.begin(), links.end());
  return links;
}

}  // namespace

Network build_network(const RiskField& field, const BuildParams& params) {
  if (params.node_budget < 2) {
    throw Error(ErrorKind::kConstruction, "node budget must be at least 2");
  }
  for (Vec2 p : {params.origin, params.destination}) {
    if (!field.bounds().contains(p)) {
      std::ostringstream os;
      os << "endpoint (" << p.x << ", " << p.y << ") lies outside the risk field";
      throw Error(ErrorKind::kOutOfDomain, os.str());
    }
    if (field.in_obstacle(p)) {
      std::ostringstream os;
      os << "endpoint (" << p.x << ", " << p.y << ") lies inside an obstacle";
      throw Error(ErrorKind::kConstruction, os.str());
    }
  }

  const Samples s = params.method == BuildMethod::kRandomDelaunay
                        ? sample_random(field, params.node_budget, params.seed)
                        : sample_lattice(field, params.node_budget, params.destination - params.origin);
  if (s.points.size() < 2) {
    throw Error(ErrorKind::kConstruction, "node budget too small: fewer than 2 samples outside obstacles");
  }
  const int origin = nearest(s.points, params.origin);
  const int dest = nearest(s.points, params.destination);
  if (origin == dest) {
    throw Error(ErrorKind::kConstruction,
                "node budget too small to place both endpoints: they snap to the same sample");
  }

  const auto links = params.method == BuildMethod::kGridEightConnected ? grid_links(s) : delaunay_links(s.points);

  Network net;
  net.origin = origin;
  net.destination = dest;
  for (int i = 0; i < static_cast<int>(s.points.size()); ++i) {
    const double alpha = (i == origin || i == dest) ? 0.0 : field.risk_at(s.points[i]);
    net.nodes.push_back({i, s.points[i], alpha});
  }
  auto add_edge = [&](int tail, int head) {
    if (head == origin || tail == dest) return;
    net.edges.push_back({net.num_edges(), tail, head, distance(s.points[tail], s.points[head])});
  };
  for (const auto& [u, v] : links) {
    if (!field.segment_clear(s.points[u], s.points[v])) continue;
    add_edge(u, v);
    add_edge(v, u);
  }

  if (!has_origin_destination_path(net)) {
    throw Error(ErrorKind::kConstruction, "origin and destination are disconnected after obstacle clipping");
  }
  return induced_subnetwork(net, useful_nodes(net));
}

Network prune_threshold(const Network& net, double alpha_threshold) {
  std::vector<bool> keep(net.nodes.size());
  for (const Node& n : net.nodes) keep[n.id] = net.is_endpoint(n.id) || n.alpha <= alpha_threshold;
  Network reduced = induced_subnetwork(net, keep);
  if (!has_origin_destination_path(reduced)) {
    std::ostringstream os;
    os << "infeasible pruning: alpha threshold " << alpha_threshold << " disconnects origin and destination";
    throw Error(ErrorKind::kInfeasiblePruning, os.str());
  }
  return induced_subnetwork(reduced, useful_nodes(reduced));
}

}  // namespace ambush
