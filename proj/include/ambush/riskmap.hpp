#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ambush/geometry.hpp"

namespace ambush {

// Scalar risk field over a rectangle, sampled on a row-major grid whose row 0
// sits at minimum y, plus axis-aligned rectangular obstacles. Immutable once
// constructed.
class RiskField {
 public:
  // Validates every invariant; throws Error on violation.
  RiskField(Rect bounds, int rows, int cols, std::vector<double> samples,
            std::vector<Rect> obstacles = {});

  [[nodiscard]] const Rect& bounds() const { return bounds_; }
  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] double cell_width() const { return bounds_.width() / cols_; }
  [[nodiscard]] double cell_height() const { return bounds_.height() / rows_; }
  [[nodiscard]] double sample(int row, int col) const {
    return samples_[static_cast<std::size_t>(row) * cols_ + col];
  }
  [[nodiscard]] const std::vector<double>& samples() const { return samples_; }
  [[nodiscard]] const std::vector<Rect>& obstacles() const { return obstacles_; }
  [[nodiscard]] Vec2 cell_center(int row, int col) const;

  // Bilinear interpolation between cell-center samples, held constant in the
  // half cell next to the border. Throws kOutOfDomain outside bounds().
  [[nodiscard]] double risk_at(Vec2 p) const;

  // True iff the closed segment [a, b] touches no obstacle.
  [[nodiscard]] bool segment_clear(Vec2 a, Vec2 b) const;

  // True iff p lies in (or on the border of) some obstacle.
  [[nodiscard]] bool in_obstacle(Vec2 p) const;

  [[nodiscard]] double min_sample() const;
  [[nodiscard]] double max_sample() const;

  friend bool operator==(const RiskField&, const RiskField&) = default;

 private:
  void require_inside(Vec2 p) const;

  Rect bounds_;
  int rows_;
  int cols_;
  std::vector<double> samples_;
  std::vector<Rect> obstacles_;
};

// Exact closed segment/rectangle intersection test (Liang-Barsky clipping).
bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r);

RiskField parse_risk_field(std::istream& in);
RiskField load_risk_field(const std::filesystem::path& path);
void write_risk_field(std::ostream& out, const RiskField& field);
void save_risk_field(const std::filesystem::path& path, const RiskField& field);

}  // namespace ambush
