#pragma once

#include "ambush/netgen.hpp"
#include "ambush/network.hpp"
#include "ambush/riskmap.hpp"

namespace ambush::fixtures {

// Mirror-symmetric 8-node, 13-edge double diamond. Internal alpha = 1,
// endpoint alpha = 0; the mirror is x -> -x. Value 1/2.
Network canonical_diamond();

// Representative 30 x 30 environment: low background risk, a strong risk hill
// in the south-east across the direct route, a milder hill in the north-west
// and a square obstacle in the middle. Reconstructed, not measured data.
RiskField reconstructed_field();

Vec2 reconstructed_origin();
Vec2 reconstructed_destination();

BuildParams reconstructed_params(BuildMethod method, int node_budget, std::uint64_t seed = 1);

// Lattice network (method 2, 200 nodes) on reconstructed_field(); used for the
// planner comparison.
Network reconstructed_network();

// Same geometry as reconstructed_field() with constant risk `alpha`.
RiskField uniform_field(double alpha = 1.0, bool with_obstacle = true);

}  // namespace ambush::fixtures
