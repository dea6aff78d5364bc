#include "ambush/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "ambush/error.hpp"

namespace ambush {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(const Rational& r) { return r.sign(); }

int orient_exact(Vec2 a, Vec2 b, Vec2 c) {
  const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int incircle_exact(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Rational dx(d.x), dy(d.y);
  const Rational adx = Rational(a.x) - dx, ady = Rational(a.y) - dy;
  const Rational bdx = Rational(b.x) - dx, bdy = Rational(b.y) - dy;
  const Rational cdx = Rational(c.x) - dx, cdy = Rational(c.y) - dy;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                       clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

}  // namespace

int orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient_exact(a, b, c);
}

int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
  const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                           (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                           (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return incircle_exact(a, b, c, d);
}

namespace {

// Bowyer-Watson over real triangles plus "ghost" triangles (u, v, inf) on the
// outside of each hull edge. A ghost's circumdisk is the open half-plane left
// of u->v together with the open segment (u, v).
class Triangulator {
 public:
  explicit Triangulator(std::span<const Vec2> pts) : pts_(pts), inf_(static_cast<int>(pts.size())) {}

  std::vector<Triangle> run() {
    std::vector<int> order = distinct_indices();
    if (order.size() < 3) {
      throw Error(ErrorKind::kDegenerateInput, "delaunay needs at least 3 distinct points");
    }
    const int a = order[0];
    const int b = order[1];
    int c = -1;
    for (std::size_t i = 2; i < order.size(); ++i) {
      if (orient2d(pts_[a], pts_[b], pts_[order[i]]) != 0) {
        c = order[i];
        break;
      }
    }
    if (c < 0) throw Error(ErrorKind::kDegenerateInput, "delaunay input points are all collinear");

    if (orient2d(pts_[a], pts_[b], pts_[c]) > 0) {
      seed(a, b, c);
    } else {
      seed(a, c, b);
    }
    for (int idx : order) {
      if (idx == a || idx == b || idx == c) continue;
      insert(idx);
    }

    std::vector<Triangle> out;
    for (const Cell& t : cells_) {
      if (!t.alive || is_ghost(t.v)) continue;
      Triangle tri = t.v;
      std::rotate(tri.begin(), std::min_element(tri.begin(), tri.end()), tri.end());
      out.push_back(tri);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Cell {
    Triangle v;
    bool alive = true;
    // Conservative circumdisk for cheap rejection (real triangles only).
    double cx = 0.0, cy = 0.0, r2 = 0.0;
    bool has_disk = false;
  };

  std::vector<int> distinct_indices() const {
    std::vector<int> order;
    std::set<std::pair<double, double>> seen;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
      if (!std::isfinite(pts_[i].x) || !std::isfinite(pts_[i].y)) {
        throw Error(ErrorKind::kDegenerateInput, "delaunay input contains a non-finite point");
      }
      if (seen.insert({pts_[i].x, pts_[i].y}).second) order.push_back(i);
    }
    return order;
  }

  bool is_ghost(const Triangle& t) const { return t[0] == inf_ || t[1] == inf_ || t[2] == inf_; }

  void add(int a, int b, int c) {
    Cell cell;
    cell.v = {a, b, c};
    if (!is_ghost(cell.v)) {
      const Vec2 pa = pts_[a], pb = pts_[b], pc = pts_[c];
      const double bx = pb.x - pa.x, by = pb.y - pa.y;
      const double cx = pc.x - pa.x, cy = pc.y - pa.y;
      const double d = 2.0 * (bx * cy - by * cx);
      const double scale = std::max({bx * bx + by * by, cx * cx + cy * cy});
      if (std::abs(d) > 1e-6 * scale) {
        const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
        const double ux = (cy * b2 - by * c2) / d;
        const double uy = (bx * c2 - cx * b2) / d;
        cell.cx = pa.x + ux;
        cell.cy = pa.y + uy;
        cell.r2 = ux * ux + uy * uy;
        cell.has_disk = std::isfinite(cell.r2);
      }
    }
    cells_.push_back(cell);
  }

  void seed(int a, int b, int c) {
    add(a, b, c);
    add(b, a, inf_);
    add(c, b, inf_);
    add(a, c, inf_);
  }

  bool in_disk(const Cell& cell, Vec2 p) const {
    Triangle t = cell.v;
    if (is_ghost(t)) {
      while (t[2] != inf_) std::rotate(t.begin(), t.begin() + 1, t.end());
      const Vec2 u = pts_[t[0]], v = pts_[t[1]];
      const int o = orient2d(u, v, p);
      if (o != 0) return o > 0;
      // On the supporting line: inside only on the open segment.
      const double s = (p.x - u.x) * (v.x - u.x) + (p.y - u.y) * (v.y - u.y);
      const double len2 = (v.x - u.x) * (v.x - u.x) + (v.y - u.y) * (v.y - u.y);
      return s > 0.0 && s < len2;
    }
    if (cell.has_disk) {
      const double dx = p.x - cell.cx, dy = p.y - cell.cy;
      const double d2 = dx * dx + dy * dy;
      if (d2 > cell.r2 * (1.0 + 1e-6) + 1e-300) return false;
    }
    return incircle(pts_[t[0]], pts_[t[1]], pts_[t[2]], p) > 0;
  }

  void insert(int idx) {
    const Vec2 p = pts_[idx];
    std::map<std::pair<int, int>, int> boundary;  // directed edge -> multiplicity
    std::vector<std::pair<int, int>> edge_order;
    for (Cell& cell : cells_) {
      if (!cell.alive || !in_disk(cell, p)) continue;
      cell.alive = false;
      for (int k = 0; k < 3; ++k) {
        const std::pair<int, int> e{cell.v[k], cell.v[(k + 1) % 3]};
        const std::pair<int, int> rev{e.second, e.first};
        if (auto it = boundary.find(rev); it != boundary.end()) {
          boundary.erase(it);
        } else {
          boundary.emplace(e, 1);
          edge_order.push_back(e);
        }
      }
    }
    if (boundary.empty()) {
      throw Error(ErrorKind::kDegenerateInput, "delaunay cavity is empty (internal error)");
    }
    std::erase_if(cells_, [](const Cell& c) { return !c.alive; });
    for (const auto& e : edge_order) {
      if (boundary.count(e)) add(e.first, e.second, idx);
    }
  }

  std::span<const Vec2> pts_;
  int inf_;
  std::vector<Cell> cells_;
};

}  // namespace

std::vector<Triangle> delaunay(std::span<const Vec2> points) { return Triangulator(points).run(); }

std::vector<std::pair<int, int>> triangulation_edges(std::span<const Triangle> triangles) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(triangles.size() * 3);
  for (const Triangle& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k];
      const int b = t[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace ambush
