#pragma once

#include <string>

#include "ambush/game.hpp"
#include "ambush/network.hpp"
#include "ambush/riskmap.hpp"

namespace ambush {

// Edges with probability at or below this are not drawn.
inline constexpr double kDrawThreshold = 1e-6;

// Edge-probability plot: one <line class="edge"> per drawn edge, stroke width
// growing with p, over a grayscale risk background when `field` is given.
std::string render_flow_svg(const Network& net, const EdgeStrategy& p, const RiskField* field = nullptr);

// One arrow (<g class="arrow">) per node with non-negligible mean direction.
std::string render_mean_direction_svg(const Network& net, const EdgeStrategy& p, const RiskField* field = nullptr);

// Graphviz digraph with p as edge labels.
std::string render_dot(const Network& net, const EdgeStrategy& p);

}  // namespace ambush
