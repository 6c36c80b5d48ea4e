#pragma once

#include <cstdint>
#include <vector>

#include "wedsearch/network.hpp"
#include "wedsearch/trajectory.hpp"

namespace wedsearch {

struct NetworkRecords {
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
};

/// rows x cols lattice with 4-neighbor edges in both directions, so
/// 2 * (rows * (cols - 1) + cols * (rows - 1)) edges. Node (r, c) sits at
/// (c * spacing, r * spacing) plus uniform jitter in [-jitter, jitter].
/// Each directed edge weighs its Euclidean length times an independent
/// factor drawn from [1, max_weight_factor]. External ids start at 1.
struct GridSpec {
  std::size_t rows = 10;
  std::size_t cols = 10;
  double spacing = 1.0;
  double jitter = 0.0;
  double max_weight_factor = 2.0;
  std::uint64_t seed = 1;
};
NetworkRecords grid_network(const GridSpec& spec);

/// Uniform points in [0, extent]^2, each joined to its k nearest neighbors
/// in both directions.
struct GeometricSpec {
  std::size_t vertices = 100;
  std::size_t k = 3;
  double extent = 100.0;
  double max_weight_factor = 2.0;
  std::uint64_t seed = 1;
};
NetworkRecords geometric_network(const GeometricSpec& spec);

/// Random walks along out-edges that avoid stepping straight back when
/// another move exists. Lengths (in vertices) are uniform in
/// [min_length, max_length]; a walk that reaches a dead end stops early.
/// Timestamps, when enabled, start uniformly in [0, start_window] and
/// advance by weight / speed scaled by a factor in [1 - noise, 1 + noise].
struct WalkSpec {
  std::size_t count = 100;
  std::size_t min_length = 10;
  std::size_t max_length = 60;
  bool timed = true;
  double start_window = 3600.0;
  double speed = 1.0;
  double noise = 0.2;
  std::uint64_t seed = 1;
};
std::vector<TrajectoryRecord> random_walks(const RoadNetwork& network, const WalkSpec& spec);

}  // namespace wedsearch
