#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ambush/game.hpp"
#include "ambush/network.hpp"

namespace ambush {

struct PathSample {
  std::vector<int> nodes;  // origin ... destination
  double length = 0.0;
  double max_alpha = 0.0;
  std::uint64_t seed = 0;
};

PathSample make_path_sample(const Network& net, std::vector<int> nodes, std::uint64_t seed = 0);

// Minimum total edge length; ties go to the lexicographically smallest node sequence.
PathSample shortest_path(const Network& net);

// Minimum summed alpha over visited nodes, then minimum length, then
// lexicographically smallest node sequence.
PathSample safest_path(const Network& net);

// Edge indicator vector of a path (1 on its edges).
EdgeStrategy path_flow(const Network& net, const PathSample& path);

// Random walk that leaves each node along edge k with probability
// p_k / (outflow of the node). Requires an acyclic strategy.
class PathSampler {
 public:
  PathSampler(const Network& net, const EdgeStrategy& p);

  PathSample sample(std::mt19937_64& rng) const;

 private:
  const Network& net_;
  std::vector<std::vector<int>> choices_;      // positive-mass out-edges per node
  std::vector<std::vector<double>> cumulative_;
};

PathSample sample_path(const Network& net, const EdgeStrategy& p, std::uint64_t seed);

// `count` paths drawn from one generator seeded with `seed`.
std::vector<PathSample> sample_paths(const Network& net, const EdgeStrategy& p, int count, std::uint64_t seed);

enum class PlannerKind { kStochastic, kShortest, kSafest };

struct PlannerSpec {
  PlannerKind kind = PlannerKind::kStochastic;
  SolverKind solver = SolverKind::kIpm;
  double length_weight = 0.0;
};

std::string planner_name(const PlannerSpec& spec);

struct EvalReport {
  std::string planner;
  double expected_length = 0.0;  // E
  double p1 = 0.0;               // ambush probability, first game
  double p_inf = 0.0;            // ambush probability once Player 2 has learned
  double v_inf = 0.0;            // expected loss once Player 2 has learned
  // Monte-Carlo replay of `iterations` games against the informed ambush.
  int iterations = 0;
  double empirical_ambush_rate = 0.0;
  double empirical_loss = 0.0;
};

// `reference` is the minimax equilibrium Player 2 assumes in the first game.
EvalReport evaluate_planner(const Network& net, const PlannerSpec& spec, const Equilibrium& reference,
                            int iterations, std::uint64_t seed, const SolverOptions& opts = {});

// Solves the reference equilibrium with spec.solver at length weight 0.
EvalReport evaluate_planner(const Network& net, const PlannerSpec& spec, int iterations, std::uint64_t seed,
                            const SolverOptions& opts = {});

std::string eval_csv_header();
std::string to_csv_row(const EvalReport& report);

}  // namespace ambush
