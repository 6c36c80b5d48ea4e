#pragma once

#include <cstddef>
#include <vector>

#include "wedsearch/types.hpp"

namespace wedsearch {

double euclidean(const Coordinate& a, const Coordinate& b);

/// Uniform bucket grid over a fixed point set. Every hit is checked against
/// the true Euclidean distance, so results are exact; the grid only limits
/// which points get checked.
class SpatialGrid {
 public:
  SpatialGrid() = default;
  /// cell_size <= 0 picks a size from the point density.
  SpatialGrid(std::vector<Coordinate> points, double cell_size);

  /// All point ids p with euclidean(center, p) <= radius, ascending.
  std::vector<VertexId> range(const Coordinate& center, double radius) const;

  /// min { euclidean(center, p) : euclidean(center, p) > radius }, or
  /// +infinity when every point lies within radius.
  double nearest_beyond(const Coordinate& center, double radius) const;

  double cell_size() const { return cell_size_; }
  std::size_t size() const { return points_.size(); }

 private:
  long cell_x(double x) const;
  long cell_y(double y) const;
  template <typename Fn>
  void for_cell(long cx, long cy, Fn&& fn) const;

  std::vector<Coordinate> points_;
  double cell_size_ = 1.0;
  double min_x_ = 0.0;
  double min_y_ = 0.0;
  long nx_ = 0;
  long ny_ = 0;
  // CSR layout: ids of points in cell c are cell_items_[cell_start_[c] .. cell_start_[c+1]).
  std::vector<std::size_t> cell_start_;
  std::vector<VertexId> cell_items_;
};

}  // namespace wedsearch
