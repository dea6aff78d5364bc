#pragma once

// Independent reference implementations used only by the tests. None of them
// shares code with the library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "ambush/delaunay.hpp"
#include "ambush/network.hpp"
#include "ambush/riskmap.hpp"

namespace oracle {

// Edmonds-Karp on the node-split graph: every internal node becomes v_in -> v_out
// with capacity 1, every network edge gets capacity 1 (integral, so the value
// counts internally node-disjoint origin -> destination paths).
inline int node_disjoint_paths(const ambush::Network& net) {
  const int n = net.num_nodes();
  const int vertices = 2 * n;
  std::vector<std::vector<int>> cap(vertices, std::vector<int>(vertices, 0));
  auto in = [](int v) { return 2 * v; };
  auto out = [](int v) { return 2 * v + 1; };
  for (int v = 0; v < n; ++v) cap[in(v)][out(v)] = net.is_endpoint(v) ? n : 1;
  for (const auto& e : net.edges) cap[out(e.tail)][in(e.head)] += 1;
  const int s = out(net.origin);
  const int t = in(net.destination);
  int flow = 0;
  while (true) {
    std::vector<int> parent(vertices, -1);
    parent[s] = s;
    std::queue<int> bfs;
    bfs.push(s);
    while (!bfs.empty() && parent[t] < 0) {
      const int u = bfs.front();
      bfs.pop();
      for (int v = 0; v < vertices; ++v) {
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = u;
          bfs.push(v);
        }
      }
    }
    if (parent[t] < 0) return flow;
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    ++flow;
  }
}

// All simple origin -> destination paths as node sequences.
inline std::vector<std::vector<int>> simple_paths(const ambush::Network& net) {
  std::vector<std::vector<int>> adj(net.num_nodes());
  for (const auto& e : net.edges) adj[e.tail].push_back(e.head);
  std::vector<std::vector<int>> paths;
  std::vector<int> stack{net.origin};
  std::vector<bool> on(net.num_nodes(), false);
  on[net.origin] = true;
  std::function<void(int)> dfs = [&](int u) {
    if (u == net.destination) {
      paths.push_back(stack);
      return;
    }
    for (int v : adj[u]) {
      if (on[v]) continue;
      on[v] = true;
      stack.push_back(v);
      dfs(v);
      stack.pop_back();
      on[v] = false;
    }
  };
  dfs(net.origin);
  return paths;
}

inline double path_length(const ambush::Network& net, const std::vector<int>& nodes) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += ambush::distance(net.nodes[nodes[i]].pos, net.nodes[nodes[i + 1]].pos);
  }
  return total;
}

// Value of the zero-sum game where the row player (minimizer) picks a row and
// the column player (maximizer) picks a column of `m`, by Shapley-Snow kernel
// enumeration over square submatrices.
inline double matrix_game_value(const Eigen::MatrixXd& m, double tol = 1e-9) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  double best = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> r_sel, c_sel;
  auto check_kernel = [&]() {
    const int k = static_cast<int>(r_sel.size());
    // Row weights x over r_sel: x^T B = v 1^T, sum x = 1.
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) sys(j, i) = m(r_sel[i], c_sel[j]);
      sys(j, k) = -1.0;
    }
    for (int i = 0; i < k; ++i) sys(k, i) = 1.0;
    rhs(k) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_x(sys);
    if (!lu_x.isInvertible()) return false;
    const Eigen::VectorXd xv = lu_x.solve(rhs);
    // Column weights y over c_sel: B y = v 1, sum y = 1.
    Eigen::MatrixXd sys_y = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) sys_y(i, j) = m(r_sel[i], c_sel[j]);
      sys_y(i, k) = -1.0;
    }
    for (int j = 0; j < k; ++j) sys_y(k, j) = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_y(sys_y);
    if (!lu_y.isInvertible()) return false;
    const Eigen::VectorXd yv = lu_y.solve(rhs);
    const double v = xv(k);
    if (std::abs(v - yv(k)) > 1e-7) return false;
    if (xv.head(k).minCoeff() < -tol || yv.head(k).minCoeff() < -tol) return false;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(rows);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < k; ++i) x(r_sel[i]) = xv(i);
    for (int j = 0; j < k; ++j) y(c_sel[j]) = yv(j);
    if ((m.transpose() * x).maxCoeff() > v + 1e-7) return false;
    if ((m * y).minCoeff() < v - 1e-7) return false;
    best = v;
    return true;
  };
  std::function<bool(int, int, int)> choose_cols;
  std::function<bool(int, int)> choose_rows = [&](int start, int k) -> bool {
    if (static_cast<int>(r_sel.size()) == k) return choose_cols(0, k, 0);
    for (int i = start; i < rows; ++i) {
      r_sel.push_back(i);
      if (choose_rows(i + 1, k)) return true;
      r_sel.pop_back();
    }
    return false;
  };
  choose_cols = [&](int start, int k, int) -> bool {
    if (static_cast<int>(c_sel.size()) == k) return check_kernel();
    for (int j = start; j < cols; ++j) {
      c_sel.push_back(j);
      if (choose_cols(j + 1, k, 0)) return true;
      c_sel.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    r_sel.clear();
    c_sel.clear();
    if (choose_rows(0, k)) return best;
  }
  return best;
}

// Paths x nodes payoff matrix: entry = alpha of the node if the path visits it.
inline Eigen::MatrixXd path_game_matrix(const ambush::Network& net) {
  const auto paths = simple_paths(net);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(paths.size()), net.num_nodes());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (int v : paths[i]) m(static_cast<Eigen::Index>(i), v) = net.nodes[v].alpha;
  }
  return m;
}

// Minimum of c.x over every basic feasible solution of A x = b, x >= 0
// (A must have full row rank). Returns +inf when none is feasible.
inline double best_vertex_objective(const Eigen::VectorXd& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> basis;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(basis.size()) == m) {
      Eigen::MatrixXd bm(m, m);
      for (int i = 0; i < m; ++i) bm.col(i) = a.col(basis[i]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(bm);
      if (!lu.isInvertible()) return;
      const Eigen::VectorXd xb = lu.solve(b);
      if (xb.minCoeff() < -1e-10) return;
      double obj = 0.0;
      for (int i = 0; i < m; ++i) obj += c(basis[i]) * xb(i);
      best = std::min(best, obj);
      return;
    }
    for (int j = start; j < n; ++j) {
      basis.push_back(j);
      rec(j + 1);
      basis.pop_back();
    }
  };
  rec(0);
  return best;
}

// True iff no input point lies strictly inside any triangle's circumcircle,
// with the radius shrunk by a relative tolerance.
inline bool empty_circumcircles(const std::vector<ambush::Vec2>& pts, const std::vector<ambush::Triangle>& tris,
                                double rel_tol = 1e-9) {
  for (const auto& t : tris) {
    const long double ax = pts[t[0]].x, ay = pts[t[0]].y;
    const long double bx = pts[t[1]].x, by = pts[t[1]].y;
    const long double cx = pts[t[2]].x, cy = pts[t[2]].y;
    const long double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (d == 0) return false;
    const long double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const long double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const long double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    const long double r = std::hypot(ax - ux, ay - uy);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const int id = static_cast<int>(i);
      if (id == t[0] || id == t[1] || id == t[2]) continue;
      const long double dist = std::hypot(pts[i].x - ux, pts[i].y - uy);
      if (dist < r * (1 - rel_tol)) return false;
    }
  }
  return true;
}

// Dense sampling of the closed segment against closed rectangles.
inline bool sampled_clear(ambush::Vec2 a, ambush::Vec2 b, const std::vector<ambush::Rect>& rects, int samples = 1000) {
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    const ambush::Vec2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    for (const auto& r : rects) {
      if (p.x >= r.xmin && p.x <= r.xmax && p.y >= r.ymin && p.y <= r.ymax) return false;
    }
  }
  return true;
}

}  // namespace oracle
