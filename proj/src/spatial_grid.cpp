#include "wedsearch/spatial_grid.hpp"

#include <algorithm>
#include <cmath>

namespace wedsearch {

double euclidean(const Coordinate& a, const Coordinate& b) {
  const double dx = a.lon - b.lon;
  const double dy = a.lat - b.lat;
  return std::sqrt(dx * dx + dy * dy);
}

SpatialGrid::SpatialGrid(std::vector<Coordinate> points, double cell_size)
    : points_(std::move(points)) {
  if (points_.empty()) {
    nx_ = ny_ = 0;
    cell_start_.assign(1, 0);
    return;
  }
  double max_x = points_[0].lon, max_y = points_[0].lat;
  min_x_ = points_[0].lon;
  min_y_ = points_[0].lat;
  for (const auto& p : points_) {
    min_x_ = std::min(min_x_, p.lon);
    min_y_ = std::min(min_y_, p.lat);
    max_x = std::max(max_x, p.lon);
    max_y = std::max(max_y, p.lat);
  }
  const double width = max_x - min_x_;
  const double height = max_y - min_y_;
  const double n = static_cast<double>(points_.size());
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    // Roughly one point per cell for a uniform spread.
    const double extent = std::max(width, height);
    cell_size = extent > 0.0 ? extent / std::max(1.0, std::sqrt(n)) : 1.0;
  }
  // Keep the cell count proportional to the point count.
  while ((width / cell_size + 1.0) * (height / cell_size + 1.0) > 4.0 * n + 16.0) {
    cell_size *= 2.0;
  }
  cell_size_ = cell_size;
  nx_ = static_cast<long>(std::floor(width / cell_size_)) + 1;
  ny_ = static_cast<long>(std::floor(height / cell_size_)) + 1;

  const auto cells = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::size_t> counts(cells + 1, 0);
  std::vector<std::size_t> owner(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long cx = std::clamp(cell_x(points_[i].lon), 0L, nx_ - 1);
    const long cy = std::clamp(cell_y(points_[i].lat), 0L, ny_ - 1);
    owner[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++counts[owner[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) counts[c + 1] += counts[c];
  cell_start_ = counts;
  cell_items_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    cell_items_[counts[owner[i]]++] = static_cast<VertexId>(i);
  }
}

long SpatialGrid::cell_x(double x) const {
  return static_cast<long>(std::floor((x - min_x_) / cell_size_));
}

long SpatialGrid::cell_y(double y) const {
  return static_cast<long>(std::floor((y - min_y_) / cell_size_));
}

template <typename Fn>
void SpatialGrid::for_cell(long cx, long cy, Fn&& fn) const {
  if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) return;
  const auto c = static_cast<std::size_t>(cy * nx_ + cx);
  for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) fn(cell_items_[k]);
}

std::vector<VertexId> SpatialGrid::range(const Coordinate& center, double radius) const {
  std::vector<VertexId> out;
  if (points_.empty() || !(radius >= 0.0)) return out;
  // One cell of slack on each side absorbs rounding in the cell arithmetic.
  const auto clamp_cell = [](double v, long n) {
    return static_cast<long>(std::clamp(v, -1.0, static_cast<double>(n)));
  };
  const long x0 = std::max(0L, clamp_cell(std::floor((center.lon - radius - min_x_) / cell_size_) - 1.0, nx_));
  const long x1 = std::min(nx_ - 1, clamp_cell(std::floor((center.lon + radius - min_x_) / cell_size_) + 1.0, nx_));
  const long y0 = std::max(0L, clamp_cell(std::floor((center.lat - radius - min_y_) / cell_size_) - 1.0, ny_));
  const long y1 = std::min(ny_ - 1, clamp_cell(std::floor((center.lat + radius - min_y_) / cell_size_) + 1.0, ny_));
  for (long cy = y0; cy <= y1; ++cy) {
    for (long cx = x0; cx <= x1; ++cx) {
      for_cell(cx, cy, [&](VertexId id) {
        if (euclidean(center, points_[id]) <= radius) out.push_back(id);
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SpatialGrid::nearest_beyond(const Coordinate& center, double radius) const {
  double best = kInfinity;
  if (points_.empty()) return best;
  const long cx = cell_x(center.lon);
  const long cy = cell_y(center.lat);
  const auto consider = [&](VertexId id) {
    const double d = euclidean(center, points_[id]);
    if (d > radius && d < best) best = d;
  };
  if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) {
    for (VertexId id = 0; id < points_.size(); ++id) consider(id);
    return best;
  }
  const long max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
  // Ring k holds points at distances in [(k - 1) * cell, (k + 1) * sqrt(2) * cell];
  // bounds are widened by one cell for rounding.
  for (long ring = 0; ring <= max_ring; ++ring) {
    if (ring >= 2 && static_cast<double>(ring - 2) * cell_size_ >= best) break;
    if (static_cast<double>(ring + 2) * cell_size_ * std::sqrt(2.0) < radius) continue;
    if (ring == 0) {
      for_cell(cx, cy, consider);
      continue;
    }
    for (long x = cx - ring; x <= cx + ring; ++x) {
      for_cell(x, cy - ring, consider);
      for_cell(x, cy + ring, consider);
    }
    for (long y = cy - ring + 1; y <= cy + ring - 1; ++y) {
      for_cell(cx - ring, y, consider);
      for_cell(cx + ring, y, consider);
    }
  }
  return best;
}

}  // namespace wedsearch
