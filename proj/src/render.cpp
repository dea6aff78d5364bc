#include "ambush/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ambush {

namespace {

constexpr double kCanvas = 600.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Canvas {
 public:
  Canvas(const Network& net, const RiskField* field) : field_(field) {
    if (field) {
      world_ = field->bounds();
    } else {
      world_ = {1e300, 1e300, -1e300, -1e300};
      for (const Node& n : net.nodes) {
        world_.xmin = std::min(world_.xmin, n.pos.x);
        world_.ymin = std::min(world_.ymin, n.pos.y);
        world_.xmax = std::max(world_.xmax, n.pos.x);
        world_.ymax = std::max(world_.ymax, n.pos.y);
      }
      const double pad = 0.05 * std::max({world_.width(), world_.height(), 1.0});
      world_ = {world_.xmin - pad, world_.ymin - pad, world_.xmax + pad, world_.ymax + pad};
    }
    scale_ = kCanvas / std::max(world_.width(), world_.height());
    width_ = world_.width() * scale_;
    height_ = world_.height() * scale_;
    os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
        << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n";
    background();
  }

  double px(double x) const { return (x - world_.xmin) * scale_; }
  double py(double y) const { return height_ - (y - world_.ymin) * scale_; }
  double unit() const { return scale_; }
  std::ostringstream& out() { return os_; }

  std::string finish() {
    os_ << "</svg>\n";
    return os_.str();
  }

 private:
  void background() {
    os_ << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_) << "\" fill=\"white\"/>\n";
    if (!field_) return;
    const double lo = field_->min_sample();
    const double span = std::max(field_->max_sample() - lo, 1e-12);
    const double cw = field_->cell_width() * scale_;
    const double ch = field_->cell_height() * scale_;
    os_ << "<g class=\"risk\">\n";
    for (int r = 0; r < field_->rows(); ++r) {
      for (int c = 0; c < field_->cols(); ++c) {
        const int gray = 255 - static_cast<int>(std::lround(180.0 * (field_->sample(r, c) - lo) / span));
        os_ << "<rect x=\"" << num(c * cw) << "\" y=\"" << num(height_ - (r + 1) * ch) << "\" width=\"" << num(cw)
            << "\" height=\"" << num(ch) << "\" fill=\"rgb(" << gray << ',' << gray << ',' << gray << ")\"/>\n";
      }
    }
    os_ << "</g>\n";
    for (const Rect& o : field_->obstacles()) {
      os_ << "<rect class=\"obstacle\" x=\"" << num(px(o.xmin)) << "\" y=\"" << num(py(o.ymax)) << "\" width=\""
          << num(o.width() * scale_) << "\" height=\"" << num(o.height() * scale_) << "\" fill=\"#707070\"/>\n";
    }
  }

  const RiskField* field_;
  Rect world_;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
  std::ostringstream os_;
};

void draw_nodes(Canvas& canvas, const Network& net) {
  auto& os = canvas.out();
  for (const Node& n : net.nodes) {
    const char* fill = n.id == net.origin ? "green" : n.id == net.destination ? "red" : "black";
    const double r = net.is_endpoint(n.id) ? 5.0 : 1.5;
    os << "<circle cx=\"" << num(canvas.px(n.pos.x)) << "\" cy=\"" << num(canvas.py(n.pos.y)) << "\" r=\"" << num(r)
       << "\" fill=\"" << fill << "\"/>\n";
  }
}

}  // namespace

std::string render_flow_svg(const Network& net, const EdgeStrategy& p, const RiskField* field) {
  Canvas canvas(net, field);
  auto& os = canvas.out();
  for (const Edge& e : net.edges) {
    if (!(p(e.id) > kDrawThreshold)) continue;
    const Vec2 a = net.nodes[e.tail].pos;
    const Vec2 b = net.nodes[e.head].pos;
    os << "<line class=\"edge\" data-edge=\"" << e.id << "\" x1=\"" << num(canvas.px(a.x)) << "\" y1=\""
       << num(canvas.py(a.y)) << "\" x2=\"" << num(canvas.px(b.x)) << "\" y2=\"" << num(canvas.py(b.y))
       << "\" stroke=\"#1f4e9c\" stroke-opacity=\"0.8\" stroke-width=\"" << num(0.3 + 6.0 * p(e.id)) << "\"/>\n";
  }
  draw_nodes(canvas, net);
  return canvas.finish();
}

std::string render_mean_direction_svg(const Network& net, const EdgeStrategy& p, const RiskField* field) {
  Canvas canvas(net, field);
  auto& os = canvas.out();
  double spacing = 1e300;
  for (const Edge& e : net.edges) spacing = std::min(spacing, e.length);
  const double len_px = 0.8 * std::min(spacing, 1e6) * canvas.unit();
  for (const Node& n : net.nodes) {
    const Vec2 dir = mean_direction(net, p, n.id);
    const double mag = norm(dir);
    if (!(mag > kDrawThreshold)) continue;
    const double ux = dir.x / mag;
    const double uy = -dir.y / mag;  // screen y points down
    const double x0 = canvas.px(n.pos.x);
    const double y0 = canvas.py(n.pos.y);
    const double l = len_px * std::min(1.0, mag);
    const double x1 = x0 + ux * l;
    const double y1 = y0 + uy * l;
    const double head = std::max(2.0, 0.3 * l);
    const double bx = x1 - ux * head;
    const double by = y1 - uy * head;
    os << "<g class=\"arrow\" data-node=\"" << n.id << "\"><line x1=\"" << num(x0) << "\" y1=\"" << num(y0)
       << "\" x2=\"" << num(bx) << "\" y2=\"" << num(by) << "\" stroke=\"#b22222\" stroke-width=\"1.2\"/>"
       << "<polygon points=\"" << num(x1) << ',' << num(y1) << ' ' << num(bx - uy * head * 0.5) << ','
       << num(by + ux * head * 0.5) << ' ' << num(bx + uy * head * 0.5) << ',' << num(by - ux * head * 0.5)
       << "\" fill=\"#b22222\"/></g>\n";
  }
  draw_nodes(canvas, net);
  return canvas.finish();
}

std::string render_dot(const Network& net, const EdgeStrategy& p) {
  std::ostringstream os;
  os << "digraph roadmap {\n";
  for (const Node& n : net.nodes) {
    os << "  n" << n.id << " [pos=\"" << n.pos.x << ',' << n.pos.y << "!\", alpha=\"" << n.alpha << "\"";
    if (n.id == net.origin) os << ", label=\"origin\"";
    if (n.id == net.destination) os << ", label=\"destination\"";
    os << "];\n";
  }
  for (const Edge& e : net.edges) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p(e.id));
    os << "  n" << e.tail << " -> n" << e.head << " [label=\"" << buf << "\", penwidth=\"" << num(0.2 + 5.0 * p(e.id))
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ambush
