#include <doctest.h>

#include <map>
#include <random>

#include "ambush/error.hpp"
#include "ambush/eval.hpp"
#include "ambush/fixtures.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace ambush;

namespace {

double alpha_sum(const Network& net, const std::vector<int>& nodes) {
  double s = 0;
  for (int v : nodes) s += net.nodes[v].alpha;
  return s;
}

void check_valid_path(const Network& net, const PathSample& s) {
  REQUIRE_FALSE(s.nodes.empty());
  CHECK(s.nodes.front() == net.origin);
  CHECK(s.nodes.back() == net.destination);
  std::vector<bool> seen(net.nodes.size(), false);
  for (int v : s.nodes) {
    CHECK_FALSE(seen[v]);
    seen[v] = true;
  }
  CHECK(path_flow(net, s).sum() == doctest::Approx(static_cast<double>(s.nodes.size() - 1)));
  CHECK(s.length == doctest::Approx(oracle::path_length(net, s.nodes)).epsilon(1e-12));
}

// Two branches: 0 -> 2 -> 1 (length 5) and 0 -> 3 -> 1 (length 7).
Network two_lengths(double alpha_short, double alpha_long) {
  return support::make_network({{0, 0, 0}, {0, 4, 0}, {1.5, 2, alpha_short}, {-std::sqrt(12.25 - 4), 2, alpha_long}},
                               {{0, 2}, {2, 1}, {0, 3}, {3, 1}}, 0, 1);
}

}  // namespace

TEST_CASE("deterministic planners on tiny networks") {
  const Network single = support::chain({2.0, 1.0});
  CHECK(shortest_path(single).nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(safest_path(single).nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(safest_path(single).max_alpha == 2.0);

  const Network net = two_lengths(3.0, 1.0);
  CHECK(oracle::path_length(net, {0, 2, 1}) == doctest::Approx(5.0));
  CHECK(oracle::path_length(net, {0, 3, 1}) == doctest::Approx(7.0));
  CHECK(shortest_path(net).nodes == std::vector<int>{0, 2, 1});
  CHECK(shortest_path(net).length == doctest::Approx(5.0));
  CHECK(safest_path(net).nodes == std::vector<int>{0, 3, 1});

  // Uniform alpha: fewest nodes, then shortest.
  const Network uni = two_lengths(1.0, 1.0);
  CHECK(safest_path(uni).nodes == std::vector<int>{0, 2, 1});
}

TEST_CASE("unreachable destination is a planning error") {
  const Network net = support::make_network({{0, 0, 0}, {0, 1, 1}, {0, 2, 0}}, {{0, 1}}, 0, 2);
  for (auto planner : {shortest_path, safest_path}) {
    try {
      (void)planner(net);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kPlanning);
    }
  }
}

TEST_CASE("planners match simple-path enumeration") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const Network net = support::random_layered(rng, 4, 3, t % 2 == 0);
    const auto paths = oracle::simple_paths(net);
    REQUIRE_FALSE(paths.empty());
    double best_len = 1e300, best_alpha = 1e300, best_alpha_len = 1e300;
    for (const auto& p : paths) {
      const double len = oracle::path_length(net, p);
      const double a = alpha_sum(net, p);
      best_len = std::min(best_len, len);
      if (a < best_alpha - 1e-12 || (std::abs(a - best_alpha) <= 1e-12 && len < best_alpha_len)) {
        best_alpha = a;
        best_alpha_len = len;
      }
    }
    const PathSample sp = shortest_path(net);
    const PathSample sf = safest_path(net);
    check_valid_path(net, sp);
    check_valid_path(net, sf);
    CHECK(sp.length == doctest::Approx(best_len).epsilon(1e-12));
    CHECK(alpha_sum(net, sf.nodes) == doctest::Approx(best_alpha).epsilon(1e-12));
    CHECK(sf.length == doctest::Approx(best_alpha_len).epsilon(1e-9));
  }
}

TEST_CASE("sampling a deterministic flow returns the unique path") {
  const Network net = support::chain({1.0, 1.0});
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    CHECK(sample_path(net, Eigen::VectorXd::Ones(3), seed).nodes == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("two-branch frequencies") {
  const Network net = support::disjoint_paths(2);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.5);
  const auto paths = sample_paths(net, p, 10000, 5);
  int left = 0;
  for (const auto& s : paths) left += s.nodes[1] == 2;
  CHECK(std::abs(left / 10000.0 - 0.5) <= 0.02);
  const auto again = sample_paths(net, p, 10000, 5);
  for (std::size_t i = 0; i < paths.size(); ++i) REQUIRE(paths[i].nodes == again[i].nodes);
}

TEST_CASE("sampled edge marginals reproduce the strategy") {
  const Network net = build_network(fixtures::reconstructed_field(),
                                    fixtures::reconstructed_params(BuildMethod::kGridDelaunay, 120));
  const Equilibrium eq = solve_minimax(net, SolverKind::kIpm);
  constexpr int kCount = 50000;
  Eigen::VectorXd usage = Eigen::VectorXd::Zero(net.num_edges());
  for (const auto& s : sample_paths(net, eq.p, kCount, 11)) usage += path_flow(net, s);
  CHECK((usage / kCount - eq.p).cwiseAbs().maxCoeff() <= 0.02);
}

TEST_CASE("sampling a cyclic flow is a contract error") {
  const Network net = support::make_network({{0, 0, 0}, {0, 1, 1}, {0, 2, 1}, {0, 3, 0}},
                                            {{0, 1}, {1, 2}, {2, 1}, {2, 3}}, 0, 3);
  Eigen::VectorXd p(4);
  p << 1, 1.4, 0.4, 1;
  try {
    (void)sample_path(net, p, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kContract);
  }
}

TEST_CASE("repeated-game report on the reconstructed network") {
  const Network net = fixtures::reconstructed_network();
  const Equilibrium ref = solve_minimax(net, SolverKind::kIpm);
  std::map<PlannerKind, EvalReport> rep;
  for (PlannerKind k : {PlannerKind::kStochastic, PlannerKind::kShortest, PlannerKind::kSafest}) {
    rep[k] = evaluate_planner(net, {k, SolverKind::kIpm, 0.0}, ref, 200, 3);
    const EvalReport& r = rep[k];
    CHECK(0.0 <= r.p1);
    CHECK(r.p1 <= r.p_inf + 1e-12);
    CHECK(r.p_inf <= 1.0);
    CHECK(r.v_inf >= 0.0);
  }
  const EvalReport& sto = rep[PlannerKind::kStochastic];
  const EvalReport& sho = rep[PlannerKind::kShortest];
  const EvalReport& saf = rep[PlannerKind::kSafest];
  CHECK(sho.p1 == sto.p1);
  CHECK(saf.p1 == sto.p1);
  CHECK(sho.p_inf == 1.0);
  CHECK(saf.p_inf == 1.0);
  CHECK(sto.p_inf == sto.p1);
  CHECK(sto.v_inf == doctest::Approx(ref.z_star).epsilon(1e-9));
  CHECK(sto.v_inf < std::min(sho.v_inf, saf.v_inf));
  CHECK(sho.expected_length < saf.expected_length);
  CHECK(saf.expected_length < sto.expected_length);
  CHECK(sho.v_inf == shortest_path(net).max_alpha);
  CHECK(saf.empirical_ambush_rate >= 0.99);

  // Any single path is feasible, so z* bounds its riskiest node from below.
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    CHECK(sample_path(net, ref.p, rng()).max_alpha >= ref.z_star - 1e-9);
  }
}

TEST_CASE("blended objective trades length for risk") {
  const Network net = fixtures::reconstructed_network();
  double prev_e = 1e300, prev_z = -1.0;
  std::vector<double> lengths;
  for (double w : {0.0, 0.01, 0.05, 0.1}) {
    const Equilibrium eq = solve_minimax(net, SolverKind::kIpm, w);
    double e = 0;
    for (const auto& edge : net.edges) e += eq.p(edge.id) * edge.length;
    CHECK(e <= prev_e + 1e-6);
    CHECK(eq.z_star >= prev_z - 1e-7);
    prev_e = e;
    prev_z = eq.z_star;
    lengths.push_back(e);
  }
  CHECK(lengths[1] < lengths[0] - 1e-3);
}

TEST_CASE("planner CSV rows") {
  CHECK(eval_csv_header() == "planner,E,P1,P_inf,V_inf");
  EvalReport r;
  r.planner = "shortest";
  r.expected_length = 31.25;
  r.p1 = 0.5;
  r.p_inf = 1;
  r.v_inf = 6;
  CHECK(to_csv_row(r) == "shortest,31.25,0.5,1,6");
  CHECK(planner_name({PlannerKind::kStochastic, SolverKind::kSimplex, 0.0}) == "stochastic-simplex");
  CHECK(planner_name({PlannerKind::kStochastic, SolverKind::kIpm, 0.05}) == "stochastic-ipm-w0.05");
}
