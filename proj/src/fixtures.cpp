#include "ambush/fixtures.hpp"

#include <cmath>

namespace ambush::fixtures {

Network canonical_diamond() {
  Network net;
  const Vec2 pos[8] = {{0, 0}, {-1, 1}, {1, 1}, {0, 2}, {-1, 3}, {1, 3}, {0, 4}, {0, 5}};
  for (int i = 0; i < 8; ++i) net.nodes.push_back({i, pos[i], (i == 0 || i == 7) ? 0.0 : 1.0});
  net.origin = 0;
  net.destination = 7;
  // O=0, L1=1, R1=2, M=3, L2=4, R2=5, T=6, D=7
  const int links[13][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 5}, {3, 4},
                            {3, 5}, {4, 6}, {5, 6}, {4, 7}, {5, 7}, {6, 7}};
  for (const auto& l : links) {
    net.edges.push_back({net.num_edges(), l[0], l[1], distance(pos[l[0]], pos[l[1]])});
  }
  return net;
}

namespace {

constexpr double kSide = 30.0;
constexpr int kCells = 30;

double hill(double x, double y, double cx, double cy, double height, double spread) {
  const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
  return height * std::exp(-d2 / (2.0 * spread * spread));
}

Rect central_obstacle() { return {12.5, 12.5, 17.5, 17.5}; }

}  // namespace

RiskField reconstructed_field() {
  std::vector<double> samples;
  samples.reserve(kCells * kCells);
  for (int r = 0; r < kCells; ++r) {
    for (int c = 0; c < kCells; ++c) {
      const double x = (c + 0.5) * kSide / kCells;
      const double y = (r + 0.5) * kSide / kCells;
      const double alpha = 0.5 + 0.02 * y + hill(x, y, 20.0, 7.0, 7.0, 4.0) + hill(x, y, 8.0, 23.0, 2.5, 3.5);
      samples.push_back(std::round(alpha * 1e4) / 1e4);
    }
  }
  return RiskField({0, 0, kSide, kSide}, kCells, kCells, std::move(samples), {central_obstacle()});
}

Vec2 reconstructed_origin() { return {1.5, 6.5}; }
Vec2 reconstructed_destination() { return {28.5, 6.5}; }

BuildParams reconstructed_params(BuildMethod method, int node_budget, std::uint64_t seed) {
  return {method, node_budget, reconstructed_origin(), reconstructed_destination(), seed};
}

Network reconstructed_network() {
  return build_network(reconstructed_field(), reconstructed_params(BuildMethod::kGridEightConnected, 200));
}

RiskField uniform_field(double alpha, bool with_obstacle) {
  std::vector<Rect> obstacles;
  if (with_obstacle) obstacles.push_back(central_obstacle());
  return RiskField({0, 0, kSide, kSide}, 1, 1, {alpha}, std::move(obstacles));
}

}  // namespace ambush::fixtures
