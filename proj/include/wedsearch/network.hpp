#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wedsearch/spatial_grid.hpp"
#include "wedsearch/types.hpp"

namespace wedsearch {

struct NodeRecord {
  std::int64_t id = 0;
  double lon = 0.0;
  double lat = 0.0;
};

struct EdgeRecord {
  std::int64_t id = 0;
  std::int64_t source = 0;
  std::int64_t target = 0;
  double weight = 0.0;
};

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  double weight = 0.0;
};

/// Undirected adjacency entry; weight is the minimum over parallel and
/// antiparallel edges between the two endpoints.
struct UndirectedArc {
  VertexId to = 0;
  double weight = 0.0;
};

class DistanceCache;

/// Directed road graph with dense ids. Immutable after construction; the
/// shortest-path memo is internally synchronized, so concurrent readers are
/// safe.
class RoadNetwork {
 public:
  static constexpr std::size_t kDefaultCacheRows = 1024;

  /// Remaps raw ids to dense ids in record order. Throws DataError on
  /// duplicate ids, dangling endpoints, or negative/non-finite weights.
  static RoadNetwork from_records(std::span<const NodeRecord> nodes,
                                  std::span<const EdgeRecord> edges,
                                  std::size_t cache_rows = kDefaultCacheRows);

  RoadNetwork(RoadNetwork&&) noexcept;
  RoadNetwork& operator=(RoadNetwork&&) noexcept;
  ~RoadNetwork();

  std::size_t vertex_count() const { return coords_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Coordinate& coordinate(VertexId v) const;
  const Edge& edge(EdgeId e) const;
  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const UndirectedArc> undirected_arcs(VertexId v) const;
  /// Lowest-id edge u -> v, if any.
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  std::int64_t vertex_external_id(VertexId v) const;
  std::int64_t edge_external_id(EdgeId e) const;
  std::optional<VertexId> vertex_by_external(std::int64_t raw) const;
  std::optional<EdgeId> edge_by_external(std::int64_t raw) const;

  double euclid(VertexId a, VertexId b) const;

  /// Shortest-path distance on the undirected view; +infinity when
  /// disconnected.
  double network_distance(VertexId a, VertexId b) const;

  /// Full single-source distance row on the undirected view (memoized, LRU).
  std::shared_ptr<const std::vector<double>> distances_from(VertexId source) const;

  /// Vertices within network distance `radius` of `source`, by truncated
  /// Dijkstra. Sorted by vertex id.
  std::vector<std::pair<VertexId, double>> network_ball(VertexId source, double radius) const;

  /// Smallest network distance strictly greater than `radius`; +infinity if
  /// no reachable vertex lies beyond it.
  double network_nearest_beyond(VertexId source, double radius) const;

  std::vector<VertexId> range_query(const Coordinate& center, double radius) const;
  double euclid_nearest_beyond(const Coordinate& center, double radius) const;

  Coordinate barycenter() const;
  double median_edge_weight() const;
  /// Median over v of the distance to the closest vertex at positive distance.
  double median_nearest_neighbor_distance() const;

 private:
  RoadNetwork();
  void check_vertex(VertexId v) const;
  std::vector<double> dijkstra(VertexId source) const;

  std::vector<Coordinate> coords_;
  std::vector<std::int64_t> vertex_raw_;
  std::unordered_map<std::int64_t, VertexId> vertex_index_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> edge_raw_;
  std::unordered_map<std::int64_t, EdgeId> edge_index_;
  std::vector<std::size_t> out_start_;
  std::vector<EdgeId> out_items_;
  std::vector<std::size_t> arc_start_;
  std::vector<UndirectedArc> arcs_;
  SpatialGrid grid_;
  std::unique_ptr<DistanceCache> cache_;
};

/// Reads `node_id<TAB>lon<TAB>lat` and `edge_id<TAB>src<TAB>dst<TAB>weight`
/// records. `#` lines and blank lines are skipped. Errors carry the line
/// number.
RoadNetwork parse_network(std::istream& nodes, std::istream& edges);
RoadNetwork load_network(const std::filesystem::path& nodes_path,
                         const std::filesystem::path& edges_path);

void write_network(std::ostream& nodes, std::ostream& edges,
                   std::span<const NodeRecord> node_records,
                   std::span<const EdgeRecord> edge_records);

}  // namespace wedsearch
