#include "wedsearch/synthetic.hpp"

#include <algorithm>
#include <random>

#include "wedsearch/spatial_grid.hpp"

namespace wedsearch {

namespace {

void add_edge(NetworkRecords& out, std::mt19937_64& rng, std::size_t a, std::size_t b,
              double max_factor) {
  std::uniform_real_distribution<double> factor(1.0, std::max(1.0, max_factor));
  const Coordinate pa{out.nodes[a].lon, out.nodes[a].lat};
  const Coordinate pb{out.nodes[b].lon, out.nodes[b].lat};
  const double len = euclidean(pa, pb);
  const auto id = static_cast<std::int64_t>(out.edges.size()) + 1;
  out.edges.push_back({id, out.nodes[a].id, out.nodes[b].id, len * factor(rng)});
}

}  // namespace

NetworkRecords grid_network(const GridSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw ConfigError("grid needs at least one row and column");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-spec.jitter, spec.jitter);
  NetworkRecords out;
  const auto at = [&](std::size_t r, std::size_t c) { return r * spec.cols + c; };
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      const double dx = spec.jitter > 0.0 ? jitter(rng) : 0.0;
      const double dy = spec.jitter > 0.0 ? jitter(rng) : 0.0;
      out.nodes.push_back({static_cast<std::int64_t>(at(r, c)) + 1,
                           static_cast<double>(c) * spec.spacing + dx,
                           static_cast<double>(r) * spec.spacing + dy});
    }
  }
  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      if (c + 1 < spec.cols) {
        add_edge(out, rng, at(r, c), at(r, c + 1), spec.max_weight_factor);
        add_edge(out, rng, at(r, c + 1), at(r, c), spec.max_weight_factor);
      }
      if (r + 1 < spec.rows) {
        add_edge(out, rng, at(r, c), at(r + 1, c), spec.max_weight_factor);
        add_edge(out, rng, at(r + 1, c), at(r, c), spec.max_weight_factor);
      }
    }
  }
  return out;
}

NetworkRecords geometric_network(const GeometricSpec& spec) {
  if (spec.vertices < 2) throw ConfigError("geometric network needs at least two vertices");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coord(0.0, spec.extent);
  NetworkRecords out;
  std::vector<Coordinate> pts;
  for (std::size_t i = 0; i < spec.vertices; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    pts.push_back({x, y});
    out.nodes.push_back({static_cast<std::int64_t>(i) + 1, x, y});
  }
  const std::size_t k = std::min(spec.k, spec.vertices - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    dist.clear();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != i) dist.emplace_back(euclidean(pts[i], pts[j]), j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t n = 0; n < k; ++n) {
      pairs.emplace_back(std::min(i, dist[n].second), std::max(i, dist[n].second));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (const auto& [a, b] : pairs) {
    add_edge(out, rng, a, b, spec.max_weight_factor);
    add_edge(out, rng, b, a, spec.max_weight_factor);
  }
  return out;
}

std::vector<TrajectoryRecord> random_walks(const RoadNetwork& network, const WalkSpec& spec) {
  if (spec.min_length == 0 || spec.min_length > spec.max_length) {
    throw ConfigError("walk lengths must satisfy 1 <= min_length <= max_length");
  }
  if (network.vertex_count() == 0) throw ConfigError("cannot walk an empty network");
  if (spec.timed && !(spec.speed > 0.0)) throw ConfigError("walk speed must be positive");
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> length(spec.min_length, spec.max_length);
  std::uniform_int_distribution<VertexId> start(
      0, static_cast<VertexId>(network.vertex_count() - 1));
  std::uniform_real_distribution<double> depart(0.0, spec.start_window);
  std::uniform_real_distribution<double> noise(1.0 - spec.noise, 1.0 + spec.noise);
  std::vector<TrajectoryRecord> out;
  std::vector<EdgeId> moves;
  for (std::size_t w = 0; w < spec.count; ++w) {
    TrajectoryRecord rec;
    rec.id = static_cast<std::int64_t>(w) + 1;
    const std::size_t len = length(rng);
    VertexId v = start(rng);
    std::optional<VertexId> previous;
    double t = spec.timed ? depart(rng) : 0.0;
    rec.vertices.push_back(network.vertex_external_id(v));
    if (spec.timed) rec.timestamps.push_back(t);
    while (rec.vertices.size() < len) {
      moves.clear();
      for (EdgeId e : network.out_edges(v)) {
        if (network.edge(e).target != v && network.edge(e).target != previous) moves.push_back(e);
      }
      if (moves.empty()) {
        for (EdgeId e : network.out_edges(v)) {
          if (network.edge(e).target != v) moves.push_back(e);
        }
      }
      if (moves.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
      const auto& edge = network.edge(moves[pick(rng)]);
      previous = v;
      v = edge.target;
      rec.vertices.push_back(network.vertex_external_id(v));
      if (spec.timed) {
        t += edge.weight / spec.speed * std::max(0.0, noise(rng));
        rec.timestamps.push_back(t);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace wedsearch
