#include "ambush/riskmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "ambush/error.hpp"
#include "ambush/io.hpp"

namespace ambush {

namespace {

std::string fmt_point(Vec2 p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace

RiskField::RiskField(Rect bounds, int rows, int cols, std::vector<double> samples,
                     std::vector<Rect> obstacles)
    : bounds_(bounds),
      rows_(rows),
      cols_(cols),
      samples_(std::move(samples)),
      obstacles_(std::move(obstacles)) {
  if (!(bounds_.xmax > bounds_.xmin) || !(bounds_.ymax > bounds_.ymin) ||
      !std::isfinite(bounds_.width()) || !std::isfinite(bounds_.height())) {
    throw Error(ErrorKind::kParse, "risk field bounds must be a non-empty finite rectangle");
  }
  if (rows_ < 1 || cols_ < 1) {
    throw Error(ErrorKind::kParse, "risk field grid must be at least 1 x 1");
  }
  if (samples_.size() != static_cast<std::size_t>(rows_) * cols_) {
    throw Error(ErrorKind::kParse, "risk field sample count does not match grid size");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]) || samples_[i] < 0.0) {
      throw Error(ErrorKind::kParse,
                  "risk sample at row " + std::to_string(i / cols_) + ", column " +
                      std::to_string(i % cols_) + " must be finite and non-negative");
    }
  }
  for (const Rect& o : obstacles_) {
    if (!(o.xmax >= o.xmin) || !(o.ymax >= o.ymin) || !o.intersects(bounds_)) {
      throw Error(ErrorKind::kParse, "obstacle must be a valid rectangle intersecting the bounds");
    }
  }
}

Vec2 RiskField::cell_center(int row, int col) const {
  return {bounds_.xmin + (col + 0.5) * cell_width(), bounds_.ymin + (row + 0.5) * cell_height()};
}

void RiskField::require_inside(Vec2 p) const {
  if (!bounds_.contains(p)) {
    throw Error(ErrorKind::kOutOfDomain, "point " + fmt_point(p) + " lies outside the risk field");
  }
}

double RiskField::risk_at(Vec2 p) const {
  require_inside(p);
  // Continuous cell coordinate with sample centers at integers.
  auto locate = [](double coord, double origin, double step, int count, int& lo, double& t) {
    if (count == 1) {
      lo = 0;
      t = 0.0;
      return;
    }
    double u = std::clamp((coord - origin) / step - 0.5, 0.0, static_cast<double>(count - 1));
    lo = std::min(static_cast<int>(std::floor(u)), count - 2);
    t = u - lo;
  };
  int c0 = 0;
  int r0 = 0;
  double tx = 0.0;
  double ty = 0.0;
  locate(p.x, bounds_.xmin, cell_width(), cols_, c0, tx);
  locate(p.y, bounds_.ymin, cell_height(), rows_, r0, ty);
  const int c1 = std::min(c0 + 1, cols_ - 1);
  const int r1 = std::min(r0 + 1, rows_ - 1);
  const double bottom = (1.0 - tx) * sample(r0, c0) + tx * sample(r0, c1);
  const double top = (1.0 - tx) * sample(r1, c0) + tx * sample(r1, c1);
  return (1.0 - ty) * bottom + ty * top;
}

bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - r.xmin, r.xmax - a.x, a.y - r.ymin, r.ymax - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return false;
  }
  return true;
}

bool RiskField::segment_clear(Vec2 a, Vec2 b) const {
  require_inside(a);
  require_inside(b);
  // Canonical endpoint order keeps the predicate symmetric under rounding.
  if (std::tie(b.x, b.y) < std::tie(a.x, a.y)) std::swap(a, b);
  return std::none_of(obstacles_.begin(), obstacles_.end(),
                      [&](const Rect& o) { return segment_intersects_rect(a, b, o); });
}

bool RiskField::in_obstacle(Vec2 p) const {
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [&](const Rect& o) { return o.contains(p); });
}

double RiskField::min_sample() const { return *std::min_element(samples_.begin(), samples_.end()); }
double RiskField::max_sample() const { return *std::max_element(samples_.begin(), samples_.end()); }

// File format ---------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorKind::kParse, "risk field line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto w : split(trim(s), ' ')) {
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

Rect parse_rect(const std::vector<std::string_view>& w, int line_no) {
  if (w.size() != 5) parse_fail(line_no, "expected 4 coordinates after '" + std::string(w[0]) + "'");
  double v[4];
  for (int i = 0; i < 4; ++i) {
    if (!parse_number(w[i + 1], v[i])) {
      parse_fail(line_no, "non-numeric coordinate '" + std::string(w[i + 1]) + "'");
    }
  }
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

RiskField parse_risk_field(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };

  if (!next() || trim(line) != "riskfield v1") parse_fail(1, "expected header 'riskfield v1'");

  if (!next()) parse_fail(line_no + 1, "missing bounds line");
  auto w = words(line);
  if (w.empty() || w[0] != "bounds") parse_fail(line_no, "expected 'bounds xmin ymin xmax ymax'");
  const Rect bounds = parse_rect(w, line_no);

  if (!next()) parse_fail(line_no + 1, "missing grid line");
  w = words(line);
  int rows = 0;
  int cols = 0;
  if (w.size() != 3 || w[0] != "grid" || !parse_number(w[1], rows) || !parse_number(w[2], cols) ||
      rows < 1 || cols < 1) {
    parse_fail(line_no, "expected 'grid rows cols' with positive integers");
  }

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    if (!next()) parse_fail(line_no + 1, "missing grid row " + std::to_string(r));
    const auto cells = split(trim(line), ',');
    if (static_cast<int>(cells.size()) != cols) {
      parse_fail(line_no, "grid row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                              " columns, expected " + std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      double v = 0.0;
      const std::string where = "row " + std::to_string(r) + ", column " + std::to_string(c);
      if (!parse_number(cells[c], v) || !std::isfinite(v)) {
        parse_fail(line_no, where + ": non-numeric cell '" + std::string(trim(cells[c])) + "'");
      }
      if (v < 0.0) parse_fail(line_no, where + ": negative risk " + std::string(trim(cells[c])));
      samples.push_back(v);
    }
  }

  std::vector<Rect> obstacles;
  while (next()) {
    w = words(line);
    if (w.empty()) continue;
    if (w[0] != "obstacle") parse_fail(line_no, "expected 'obstacle xmin ymin xmax ymax'");
    obstacles.push_back(parse_rect(w, line_no));
  }
  return RiskField(bounds, rows, cols, std::move(samples), std::move(obstacles));
}

RiskField load_risk_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open risk field file " + path.string());
  return parse_risk_field(in);
}

void write_risk_field(std::ostream& out, const RiskField& field) {
  const Rect& b = field.bounds();
  out << "riskfield v1\n";
  out << "bounds " << format_double(b.xmin) << ' ' << format_double(b.ymin) << ' '
      << format_double(b.xmax) << ' ' << format_double(b.ymax) << '\n';
  out << "grid " << field.rows() << ' ' << field.cols() << '\n';
  for (int r = 0; r < field.rows(); ++r) {
    for (int c = 0; c < field.cols(); ++c) {
      if (c) out << ',';
      out << format_double(field.sample(r, c));
    }
    out << '\n';
  }
  for (const Rect& o : field.obstacles()) {
    out << "obstacle " << format_double(o.xmin) << ' ' << format_double(o.ymin) << ' '
        << format_double(o.xmax) << ' ' << format_double(o.ymax) << '\n';
  }
}

void save_risk_field(const std::filesystem::path& path, const RiskField& field) {
  std::ostringstream os;
  write_risk_field(os, field);
  write_file_atomic(path, os.str());
}

}  // namespace ambush
