#include "wedsearch/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <list>
#include <map>
#include <mutex>
#include <ostream>
#include <queue>
#include <string>

#include "text_util.hpp"

namespace wedsearch {

std::string_view to_string(Representation r) {
  return r == Representation::kVertex ? "vertex" : "edge";
}

Representation parse_representation(std::string_view s) {
  if (s == "vertex") return Representation::kVertex;
  if (s == "edge") return Representation::kEdge;
  throw ConfigError("unknown representation '" + std::string(s) + "' (expected vertex|edge)");
}

/// Bounded LRU of full distance rows keyed by source vertex.
class DistanceCache {
 public:
  using Row = std::shared_ptr<const std::vector<double>>;

  explicit DistanceCache(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

  Row find(VertexId source) {
    std::lock_guard lock(mu_);
    auto it = index_.find(source);
    if (it == index_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }

  Row insert(VertexId source, Row row) {
    std::lock_guard lock(mu_);
    if (auto it = index_.find(source); it != index_.end()) return it->second->second;
    order_.emplace_front(source, std::move(row));
    index_[source] = order_.begin();
    if (order_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
    return order_.front().second;
  }

 private:
  std::mutex mu_;
  std::size_t capacity_;
  std::list<std::pair<VertexId, Row>> order_;
  std::unordered_map<VertexId, std::list<std::pair<VertexId, Row>>::iterator> index_;
};

RoadNetwork::RoadNetwork() = default;
RoadNetwork::RoadNetwork(RoadNetwork&&) noexcept = default;
RoadNetwork& RoadNetwork::operator=(RoadNetwork&&) noexcept = default;
RoadNetwork::~RoadNetwork() = default;

RoadNetwork RoadNetwork::from_records(std::span<const NodeRecord> nodes,
                                      std::span<const EdgeRecord> edges,
                                      std::size_t cache_rows) {
  RoadNetwork net;
  net.coords_.reserve(nodes.size());
  net.vertex_raw_.reserve(nodes.size());
  for (const auto& n : nodes) {
    if (!std::isfinite(n.lon) || !std::isfinite(n.lat)) {
      throw DataError("node " + std::to_string(n.id) + " has non-finite coordinates");
    }
    const auto dense = static_cast<VertexId>(net.coords_.size());
    if (!net.vertex_index_.emplace(n.id, dense).second) {
      throw DataError("duplicate node id " + std::to_string(n.id));
    }
    net.coords_.push_back({n.lon, n.lat});
    net.vertex_raw_.push_back(n.id);
  }

  net.edges_.reserve(edges.size());
  for (const auto& e : edges) {
    const auto src = net.vertex_index_.find(e.source);
    const auto dst = net.vertex_index_.find(e.target);
    if (src == net.vertex_index_.end() || dst == net.vertex_index_.end()) {
      const auto missing = src == net.vertex_index_.end() ? e.source : e.target;
      throw DataError("edge " + std::to_string(e.id) + " references unknown vertex " +
                      std::to_string(missing));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw DataError("edge " + std::to_string(e.id) + " has invalid weight " +
                      detail::format_double(e.weight));
    }
    const auto dense = static_cast<EdgeId>(net.edges_.size());
    if (!net.edge_index_.emplace(e.id, dense).second) {
      throw DataError("duplicate edge id " + std::to_string(e.id));
    }
    net.edges_.push_back({src->second, dst->second, e.weight});
    net.edge_raw_.push_back(e.id);
  }

  const std::size_t n = net.coords_.size();
  net.out_start_.assign(n + 1, 0);
  for (const auto& e : net.edges_) ++net.out_start_[e.source + 1];
  for (std::size_t v = 0; v < n; ++v) net.out_start_[v + 1] += net.out_start_[v];
  net.out_items_.resize(net.edges_.size());
  {
    auto fill = net.out_start_;
    for (EdgeId id = 0; id < net.edges_.size(); ++id) {
      net.out_items_[fill[net.edges_[id].source]++] = id;
    }
  }

  // Undirected view: one arc per unordered pair, minimum weight.
  std::map<std::pair<VertexId, VertexId>, double> pair_weight;
  for (const auto& e : net.edges_) {
    if (e.source == e.target) continue;
    const auto key = std::minmax(e.source, e.target);
    auto [it, inserted] = pair_weight.emplace(std::pair{key.first, key.second}, e.weight);
    if (!inserted) it->second = std::min(it->second, e.weight);
  }
  net.arc_start_.assign(n + 1, 0);
  for (const auto& [key, w] : pair_weight) {
    ++net.arc_start_[key.first + 1];
    ++net.arc_start_[key.second + 1];
  }
  for (std::size_t v = 0; v < n; ++v) net.arc_start_[v + 1] += net.arc_start_[v];
  net.arcs_.resize(net.arc_start_[n]);
  {
    auto fill = net.arc_start_;
    for (const auto& [key, w] : pair_weight) {
      net.arcs_[fill[key.first]++] = {key.second, w};
      net.arcs_[fill[key.second]++] = {key.first, w};
    }
  }

  net.grid_ = SpatialGrid(net.coords_, 0.0);
  net.cache_ = std::make_unique<DistanceCache>(cache_rows);
  return net;
}

void RoadNetwork::check_vertex(VertexId v) const {
  if (v >= coords_.size()) throw ConfigError("unknown vertex id " + std::to_string(v));
}

const Coordinate& RoadNetwork::coordinate(VertexId v) const {
  check_vertex(v);
  return coords_[v];
}

const Edge& RoadNetwork::edge(EdgeId e) const {
  if (e >= edges_.size()) throw ConfigError("unknown edge id " + std::to_string(e));
  return edges_[e];
}

std::span<const EdgeId> RoadNetwork::out_edges(VertexId v) const {
  check_vertex(v);
  return {out_items_.data() + out_start_[v], out_start_[v + 1] - out_start_[v]};
}

std::span<const UndirectedArc> RoadNetwork::undirected_arcs(VertexId v) const {
  check_vertex(v);
  return {arcs_.data() + arc_start_[v], arc_start_[v + 1] - arc_start_[v]};
}

std::optional<EdgeId> RoadNetwork::find_edge(VertexId u, VertexId v) const {
  std::optional<EdgeId> best;
  for (EdgeId e : out_edges(u)) {
    if (edges_[e].target == v && (!best || e < *best)) best = e;
  }
  return best;
}

std::int64_t RoadNetwork::vertex_external_id(VertexId v) const {
  check_vertex(v);
  return vertex_raw_[v];
}

std::int64_t RoadNetwork::edge_external_id(EdgeId e) const {
  edge(e);
  return edge_raw_[e];
}

std::optional<VertexId> RoadNetwork::vertex_by_external(std::int64_t raw) const {
  auto it = vertex_index_.find(raw);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> RoadNetwork::edge_by_external(std::int64_t raw) const {
  auto it = edge_index_.find(raw);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

double RoadNetwork::euclid(VertexId a, VertexId b) const {
  return euclidean(coordinate(a), coordinate(b));
}

std::vector<double> RoadNetwork::dijkstra(VertexId source) const {
  std::vector<double> dist(coords_.size(), kInfinity);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (std::size_t k = arc_start_[v]; k < arc_start_[v + 1]; ++k) {
      const auto& arc = arcs_[k];
      const double nd = d + arc.weight;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return dist;
}

std::shared_ptr<const std::vector<double>> RoadNetwork::distances_from(VertexId source) const {
  check_vertex(source);
  if (auto row = cache_->find(source)) return row;
  return cache_->insert(source, std::make_shared<const std::vector<double>>(dijkstra(source)));
}

double RoadNetwork::network_distance(VertexId a, VertexId b) const {
  check_vertex(a);
  check_vertex(b);
  if (a == b) return 0.0;
  // Either endpoint's row answers the query on the undirected view.
  if (auto row = cache_->find(b)) return (*row)[a];
  return (*distances_from(a))[b];
}

std::vector<std::pair<VertexId, double>> RoadNetwork::network_ball(VertexId source,
                                                                   double radius) const {
  check_vertex(source);
  std::vector<std::pair<VertexId, double>> out;
  if (!(radius >= 0.0)) return out;
  std::unordered_map<VertexId, double> dist;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    out.emplace_back(v, d);
    for (const auto& arc : undirected_arcs(v)) {
      const double nd = d + arc.weight;
      if (nd > radius) continue;
      auto it = dist.find(arc.to);
      if (it == dist.end() || nd < it->second) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double RoadNetwork::network_nearest_beyond(VertexId source, double radius) const {
  check_vertex(source);
  std::unordered_map<VertexId, double> dist;
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    // Vertices settle in nondecreasing distance order.
    if (d > radius) return d;
    for (const auto& arc : undirected_arcs(v)) {
      const double nd = d + arc.weight;
      auto it = dist.find(arc.to);
      if (it == dist.end() || nd < it->second) {
        dist[arc.to] = nd;
        heap.emplace(nd, arc.to);
      }
    }
  }
  return kInfinity;
}

std::vector<VertexId> RoadNetwork::range_query(const Coordinate& center, double radius) const {
  return grid_.range(center, radius);
}

double RoadNetwork::euclid_nearest_beyond(const Coordinate& center, double radius) const {
  return grid_.nearest_beyond(center, radius);
}

Coordinate RoadNetwork::barycenter() const {
  Coordinate g;
  if (coords_.empty()) return g;
  for (const auto& c : coords_) {
    g.lon += c.lon;
    g.lat += c.lat;
  }
  g.lon /= static_cast<double>(coords_.size());
  g.lat /= static_cast<double>(coords_.size());
  return g;
}

namespace {
double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}
}  // namespace

double RoadNetwork::median_edge_weight() const {
  std::vector<double> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return median(std::move(w));
}

double RoadNetwork::median_nearest_neighbor_distance() const {
  std::vector<double> d;
  d.reserve(coords_.size());
  for (const auto& c : coords_) {
    const double nn = grid_.nearest_beyond(c, 0.0);
    if (std::isfinite(nn)) d.push_back(nn);
  }
  return median(std::move(d));
}

namespace {

template <typename Fn>
void for_each_record(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    const auto fields = detail::split(detail::trim(line), '\t');
    try {
      fn(fields);
    } catch (const DataError& e) {
      throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

RoadNetwork parse_network(std::istream& nodes_in, std::istream& edges_in) {
  std::vector<NodeRecord> nodes;
  for_each_record(nodes_in, "nodes", [&](const std::vector<std::string_view>& f) {
    if (f.size() != 3) throw DataError("expected node_id<TAB>lon<TAB>lat");
    const auto id = detail::parse_int(f[0]);
    const auto lon = detail::parse_double(f[1]);
    const auto lat = detail::parse_double(f[2]);
    if (!id || !lon || !lat) throw DataError("malformed node record");
    nodes.push_back({*id, *lon, *lat});
  });
  std::vector<EdgeRecord> edges;
  for_each_record(edges_in, "edges", [&](const std::vector<std::string_view>& f) {
    if (f.size() != 4) throw DataError("expected edge_id<TAB>src<TAB>dst<TAB>weight");
    const auto id = detail::parse_int(f[0]);
    const auto src = detail::parse_int(f[1]);
    const auto dst = detail::parse_int(f[2]);
    const auto w = detail::parse_double(f[3]);
    if (!id || !src || !dst || !w) throw DataError("malformed edge record");
    edges.push_back({*id, *src, *dst, *w});
  });
  return RoadNetwork::from_records(nodes, edges);
}

RoadNetwork load_network(const std::filesystem::path& nodes_path,
                         const std::filesystem::path& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw DataError("cannot open " + nodes_path.string());
  std::ifstream edges(edges_path);
  if (!edges) throw DataError("cannot open " + edges_path.string());
  return parse_network(nodes, edges);
}

void write_network(std::ostream& nodes, std::ostream& edges,
                   std::span<const NodeRecord> node_records,
                   std::span<const EdgeRecord> edge_records) {
  nodes << "# node_id\tlon\tlat\n";
  for (const auto& n : node_records) {
    nodes << n.id << '\t' << detail::format_double(n.lon) << '\t' << detail::format_double(n.lat)
          << '\n';
  }
  edges << "# edge_id\tsrc\tdst\tweight\n";
  for (const auto& e : edge_records) {
    edges << e.id << '\t' << e.source << '\t' << e.target << '\t'
          << detail::format_double(e.weight) << '\n';
  }
}

}  // namespace wedsearch
