#include <doctest.h>

#include <random>
#include <sstream>

#include "ambush/error.hpp"
#include "ambush/riskmap.hpp"
#include "oracles/oracles.hpp"

using namespace ambush;

namespace {

RiskField constant_field(double v, int rows = 4, int cols = 5) {
  return RiskField({0, 0, 10, 8}, rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, v));
}

RiskField random_field(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> s(static_cast<std::size_t>(rows) * cols);
  for (auto& v : s) v = u(rng);
  return RiskField({-2, 1, 8, 6}, rows, cols, s);
}

}  // namespace

TEST_CASE("risk_at on a constant field is the constant") {
  const RiskField f = constant_field(1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0, 10), uy(0, 8);
  for (int i = 0; i < 200; ++i) CHECK(f.risk_at({ux(rng), uy(rng)}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.risk_at({0, 0}) == 1.0);
  CHECK(f.risk_at({10, 8}) == 1.0);
}

TEST_CASE("risk_at at a cell center returns the sample") {
  std::vector<double> s(12, 0.2);
  s[1 * 4 + 2] = 0.7;
  const RiskField f({0, 0, 4, 3}, 3, 4, s);
  CHECK(f.risk_at(f.cell_center(1, 2)) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(f.risk_at({2.5, 1.5}) == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("risk_at halfway between two cell centers") {
  // Columns hold 0 and 1; rows are identical so only x varies.
  const RiskField f({0, 0, 2, 2}, 2, 2, {0.0, 1.0, 0.0, 1.0});
  const Vec2 a = f.cell_center(0, 0);
  const Vec2 b = f.cell_center(0, 1);
  CHECK(f.risk_at(0.5 * (a + b)) == doctest::Approx(0.5).epsilon(1e-15));
  // Hand-evaluated bilinear value at a general point.
  const RiskField g({0, 0, 2, 2}, 2, 2, {1.0, 2.0, 3.0, 5.0});
  const double tx = 0.3, ty = 0.6;  // offsets from the (0,0) center at (0.5,0.5)
  const double expect = (1 - ty) * ((1 - tx) * 1.0 + tx * 2.0) + ty * ((1 - tx) * 3.0 + tx * 5.0);
  CHECK(g.risk_at({0.5 + tx, 0.5 + ty}) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("risk_at outside bounds is an out-of-domain error") {
  const RiskField f = constant_field(1.0);
  try {
    (void)f.risk_at({10.0001, 4});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kOutOfDomain);
  }
  CHECK_THROWS_AS((void)f.risk_at({5, -1e-9}), Error);
}

TEST_CASE("risk_at is continuous and stays within the sample range") {
  std::mt19937_64 rng(11);
  const RiskField f = random_field(rng, 6, 7);
  const double lo = f.min_sample();
  const double hi = f.max_sample();
  // Interpolation patches meet on the lines through cell centers.
  const double h = 1e-13;
  for (int c = 0; c < f.cols(); ++c) {
    for (int k = 0; k < 20; ++k) {
      const double x = f.cell_center(0, c).x;
      const double y = f.bounds().ymin + (k + 0.37) * f.bounds().height() / 20;
      CHECK(std::abs(f.risk_at({x - h, y}) - f.risk_at({x + h, y})) <= 1e-12);
    }
  }
  for (int r = 0; r < f.rows(); ++r) {
    for (int k = 0; k < 20; ++k) {
      const double y = f.cell_center(r, 0).y;
      const double x = f.bounds().xmin + (k + 0.61) * f.bounds().width() / 20;
      CHECK(std::abs(f.risk_at({x, y - h}) - f.risk_at({x, y + h})) <= 1e-12);
    }
  }
  std::uniform_real_distribution<double> ux(-2, 8), uy(1, 6);
  for (int i = 0; i < 2000; ++i) {
    const double v = f.risk_at({ux(rng), uy(rng)});
    CHECK(v >= lo - 1e-15);
    CHECK(v <= hi + 1e-15);
  }
}

TEST_CASE("segment_clear basic cases") {
  const RiskField empty = constant_field(0.5);
  CHECK(empty.segment_clear({0, 0}, {10, 8}));
  const RiskField f({0, 0, 4, 4}, 1, 1, {1.0}, {{0.9, 0.9, 1.1, 1.1}});
  CHECK_FALSE(f.segment_clear({0, 0}, {2, 2}));
  CHECK(f.segment_clear({0, 2}, {4, 2}));
  // Touching the border or a corner counts as blocked.
  CHECK_FALSE(f.segment_clear({0, 1.1}, {4, 1.1}));
  CHECK_FALSE(f.segment_clear({0, 2.2}, {2.2, 0}));
  // Endpoint inside the obstacle.
  CHECK_FALSE(f.segment_clear({1, 1}, {1, 1}));
}

TEST_CASE("segment_clear matches dense sampling on non-grazing segments") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 10), size(0.5, 2.5);
  std::vector<Rect> obstacles;
  for (int i = 0; i < 5; ++i) {
    const double x = u(rng) * 0.8, y = u(rng) * 0.8;
    obstacles.push_back({x, y, x + size(rng), y + size(rng)});
  }
  const RiskField f({0, 0, 10, 10}, 2, 2, {1, 1, 1, 1}, obstacles);
  // A segment is grazing when sampling disagrees between obstacles shrunk and
  // grown by delta; sample spacing (< 0.015) is well below 2 * delta.
  const double delta = 0.05;
  std::vector<Rect> shrunk, grown;
  for (const auto& r : obstacles) {
    shrunk.push_back({r.xmin + delta, r.ymin + delta, r.xmax - delta, r.ymax - delta});
    grown.push_back({r.xmin - delta, r.ymin - delta, r.xmax + delta, r.ymax + delta});
  }
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const Vec2 a{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    const bool inner = oracle::sampled_clear(a, b, shrunk);
    const bool outer = oracle::sampled_clear(a, b, grown);
    if (inner != outer) continue;
    ++compared;
    CHECK(f.segment_clear(a, b) == outer);
  }
  CHECK(compared >= 80);
}

TEST_CASE("segment_clear is symmetric") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  const RiskField f({0, 0, 10, 10}, 1, 1, {0.0}, {{2, 2, 4, 4}, {6, 1, 6.5, 9}, {1, 7, 9, 7.2}});
  for (int i = 0; i < 2000; ++i) {
    const Vec2 a{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    CHECK(f.segment_clear(a, b) == f.segment_clear(b, a));
  }
  // Exactly grazing a corner from both directions.
  CHECK(f.segment_clear({0, 8}, {8, 0}) == f.segment_clear({8, 0}, {0, 8}));
}

TEST_CASE("load of an all-zero 2x2 grid") {
  std::istringstream in("riskfield v1\nbounds 0 0 2 2\ngrid 2 2\n0,0\n0,0\n");
  const RiskField f = parse_risk_field(in);
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 2);
  CHECK(f.samples() == std::vector<double>{0, 0, 0, 0});
  CHECK(f.obstacles().empty());
}

TEST_CASE("parse errors name the offending position") {
  auto message_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      (void)parse_risk_field(in);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string neg = message_of("riskfield v1\nbounds 0 0 2 2\ngrid 2 2\n0,0\n0,-1.5\n");
  CHECK(neg.find("row 1") != std::string::npos);
  CHECK(neg.find("column 1") != std::string::npos);
  const std::string bad = message_of("riskfield v1\nbounds 0 0 2 2\ngrid 2 2\n0,x\n0,0\n");
  CHECK(bad.find("row 0") != std::string::npos);
  CHECK(bad.find("column 1") != std::string::npos);
  CHECK(message_of("riskfield v2\n").find("header") != std::string::npos);
  CHECK(message_of("riskfield v1\nbounds 0 0 2 2\ngrid 2 2\n0,0\n").find("line") != std::string::npos);
  CHECK(message_of("riskfield v1\nbounds 0 0 2 2\ngrid 2 2\n0,0\n0,0,0\n").find("row 1") != std::string::npos);
}

TEST_CASE("write then read round-trips a random field") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> s(400);
  for (auto& v : s) v = u(rng);
  const RiskField f({-3.5, 2, 16.5, 22}, 20, 20, s, {{1, 3, 2, 4}, {10, 10, 12.25, 11}});
  std::stringstream buf;
  write_risk_field(buf, f);
  const RiskField g = parse_risk_field(buf);
  CHECK(g == f);

  // Values with at most nine significant digits survive bit-exactly.
  std::vector<double> nine(400);
  for (std::size_t i = 0; i < nine.size(); ++i) nine[i] = std::round(u(rng) * 1e8) / 1e8;
  const RiskField h({0, 0, 1, 1}, 20, 20, nine);
  std::stringstream buf2;
  write_risk_field(buf2, h);
  CHECK(parse_risk_field(buf2).samples() == nine);
}
