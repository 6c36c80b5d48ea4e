#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "wedsearch/network.hpp"
#include "wedsearch/synthetic.hpp"

using namespace wedsearch;
using testing::close;

TEST_CASE("grid generator emits both directions of every grid edge") {
  const auto rec = grid_network({10, 10, 1.0, 0.0, 2.0, 7});
  CHECK(rec.nodes.size() == 100);
  CHECK(rec.edges.size() == 360);
  const auto net = RoadNetwork::from_records(rec.nodes, rec.edges);
  for (const auto& e : rec.edges) {
    const auto u = *net.vertex_by_external(e.source);
    const auto v = *net.vertex_by_external(e.target);
    CHECK(net.find_edge(v, u).has_value());
    CHECK(e.weight >= net.euclid(u, v) - 1e-12);
    CHECK(e.weight <= 2.0 * net.euclid(u, v) + 1e-12);
  }
}

TEST_CASE("generators are deterministic in the seed") {
  const auto a = grid_network({6, 7, 1.0, 0.3, 2.0, 11});
  const auto b = grid_network({6, 7, 1.0, 0.3, 2.0, 11});
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) CHECK(a.edges[i].weight == b.edges[i].weight);
  const auto g1 = geometric_network({50, 3, 10.0, 2.0, 5});
  const auto g2 = geometric_network({50, 3, 10.0, 2.0, 5});
  CHECK(g1.edges.size() == g2.edges.size());
  for (std::size_t i = 0; i < g1.nodes.size(); ++i) CHECK(g1.nodes[i].lon == g2.nodes[i].lon);
}

TEST_CASE("network distances agree with Bellman-Ford on the undirected view") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto rec = seed % 2 ? grid_network({7, 6, 1.0, 0.25, 3.0, seed})
                              : geometric_network({60, 3, 20.0, 2.5, seed});
    const auto net = RoadNetwork::from_records(rec.nodes, rec.edges);
    for (std::size_t s = 0; s < rec.nodes.size(); s += 7) {
      const auto expected = testing::bellman_ford(rec, s);
      const auto src = *net.vertex_by_external(rec.nodes[s].id);
      const auto row = net.distances_from(src);
      for (std::size_t t = 0; t < rec.nodes.size(); ++t) {
        const auto dst = *net.vertex_by_external(rec.nodes[t].id);
        if (std::isinf(expected[t])) {
          CHECK(std::isinf((*row)[dst]));
          continue;
        }
        CHECK(close((*row)[dst], expected[t]));
        CHECK(close(net.network_distance(dst, src), expected[t]));
      }
    }
  }
}

TEST_CASE("network ball and nearest-beyond match a linear scan of distances") {
  const auto rec = grid_network({8, 8, 1.0, 0.2, 2.0, 3});
  const auto net = RoadNetwork::from_records(rec.nodes, rec.edges);
  for (VertexId s = 0; s < net.vertex_count(); s += 5) {
    const auto row = net.distances_from(s);
    for (double r : {0.0, 0.9, 2.5, 4.0}) {
      std::vector<VertexId> expected, got;
      double beyond = kInfinity;
      for (VertexId v = 0; v < net.vertex_count(); ++v) {
        if ((*row)[v] <= r) expected.push_back(v);
        else beyond = std::min(beyond, (*row)[v]);
      }
      for (auto [v, d] : net.network_ball(s, r)) {
        got.push_back(v);
        CHECK(close(d, (*row)[v]));
      }
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
      CHECK(close(net.network_nearest_beyond(s, r), beyond));
    }
  }
}

TEST_CASE("spatial range query and nearest-beyond match a linear scan") {
  const auto rec = geometric_network({200, 3, 50.0, 2.0, 9});
  const auto net = RoadNetwork::from_records(rec.nodes, rec.edges);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coord(-5.0, 55.0), radius(0.0, 12.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Coordinate c{coord(rng), coord(rng)};
    const double r = trial % 10 == 0 ? 0.0 : radius(rng);
    std::vector<VertexId> expected;
    double beyond = kInfinity;
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      const double d = euclidean(c, net.coordinate(v));
      if (d <= r) expected.push_back(v);
      else beyond = std::min(beyond, d);
    }
    auto got = net.range_query(c, r);
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
    CHECK(close(net.euclid_nearest_beyond(c, r), beyond));
  }
}

TEST_CASE("median helpers") {
  const std::vector<NodeRecord> nodes{{1, 0, 0}, {2, 3, 0}, {3, 3, 4}, {4, 10, 4}};
  const std::vector<EdgeRecord> edges{{1, 1, 2, 5.0}, {2, 2, 3, 1.0}, {3, 3, 4, 2.0}, {4, 4, 1, 9.0}};
  const auto net = RoadNetwork::from_records(nodes, edges);
  CHECK(net.median_edge_weight() == doctest::Approx(3.5));
  // Nearest-neighbor distances: 3, 3, 4, 7.
  CHECK(net.median_nearest_neighbor_distance() == doctest::Approx(3.5));
}

TEST_CASE("undirected arcs keep the minimum weight over parallel and antiparallel edges") {
  const std::vector<NodeRecord> nodes{{10, 0, 0}, {20, 1, 0}};
  const std::vector<EdgeRecord> edges{{1, 10, 20, 5.0}, {2, 20, 10, 3.0}, {3, 10, 20, 4.0}};
  const auto net = RoadNetwork::from_records(nodes, edges);
  const auto u = *net.vertex_by_external(10);
  const auto v = *net.vertex_by_external(20);
  REQUIRE(net.undirected_arcs(u).size() == 1);
  CHECK(net.undirected_arcs(u)[0].weight == 3.0);
  CHECK(net.network_distance(u, v) == 3.0);
  CHECK(*net.find_edge(u, v) == *net.edge_by_external(1));
}

TEST_CASE("network records are validated") {
  const std::vector<NodeRecord> nodes{{1, 0, 0}, {2, 1, 1}};
  CHECK_THROWS_AS(RoadNetwork::from_records(nodes, std::vector<EdgeRecord>{{1, 1, 3, 1.0}}), DataError);
  CHECK_THROWS_AS(RoadNetwork::from_records(nodes, std::vector<EdgeRecord>{{1, 1, 2, -1.0}}), DataError);
  CHECK_THROWS_AS(RoadNetwork::from_records(nodes, std::vector<EdgeRecord>{{1, 1, 2, 1.0}, {1, 2, 1, 1.0}}),
                  DataError);
  CHECK_THROWS_AS(RoadNetwork::from_records(std::vector<NodeRecord>{{1, 0, 0}, {1, 2, 2}}, {}), DataError);
}

TEST_CASE("network text format round-trips and rejects malformed lines") {
  const auto rec = grid_network({3, 4, 1.0, 0.1, 2.0, 2});
  std::stringstream n, e;
  write_network(n, e, rec.nodes, rec.edges);
  const auto net = parse_network(n, e);
  const auto ref = RoadNetwork::from_records(rec.nodes, rec.edges);
  CHECK(net.vertex_count() == ref.vertex_count());
  REQUIRE(net.edge_count() == ref.edge_count());
  for (EdgeId i = 0; i < net.edge_count(); ++i) CHECK(net.edge(i).weight == ref.edge(i).weight);

  std::stringstream bad_nodes("1\t0.0\n"), edges_ok("");
  CHECK_THROWS_AS(parse_network(bad_nodes, edges_ok), DataError);
  std::stringstream nodes_ok("1\t0\t0\n2\t1\t1\n"), bad_edges("1\t1\t2\tabc\n");
  CHECK_THROWS_AS(parse_network(nodes_ok, bad_edges), DataError);
}
