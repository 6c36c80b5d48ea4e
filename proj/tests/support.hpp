#pragma once
// Fixtures and independent reference implementations shared by the unit tests.
// Nothing here calls into the library's DP, selection, or verification code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "wedsearch/cost_model.hpp"
#include "wedsearch/network.hpp"
#include "wedsearch/synthetic.hpp"
#include "wedsearch/trajectory.hpp"

namespace testing {

using namespace wedsearch;

inline bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

struct Fixture {
  NetworkRecords records;
  RoadNetwork network;
  TrajectoryDb db;
};

inline Fixture make_fixture(std::size_t side, std::size_t count, Representation rep,
                            std::uint64_t seed, std::size_t min_len = 5, std::size_t max_len = 14) {
  auto records = grid_network({side, side, 1.0, 0.2, 2.0, seed});
  auto network = RoadNetwork::from_records(records.nodes, records.edges);
  WalkSpec walks;
  walks.count = count;
  walks.min_length = min_len;
  walks.max_length = max_len;
  walks.seed = seed + 1;
  auto result = ingest(random_walks(network, walks), network, rep);
  return {std::move(records), std::move(network), std::move(result.db)};
}

/// wed(P, Q) by memoized top-down recursion on (|P| prefix, |Q| prefix).
inline double reference_wed(std::span<const Symbol> p, std::span<const Symbol> q,
                            const CostModel& m) {
  std::map<std::pair<std::size_t, std::size_t>, double> memo;
  std::function<double(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) -> double {
    if (i == 0 && j == 0) return 0.0;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    double best = kInfinity;
    if (i > 0) best = std::min(best, d(i - 1, j) + m.del(p[i - 1]));
    if (j > 0) best = std::min(best, d(i, j - 1) + m.ins(q[j - 1]));
    if (i > 0 && j > 0) best = std::min(best, d(i - 1, j - 1) + m.sub(p[i - 1], q[j - 1]));
    memo[{i, j}] = best;
    return best;
  };
  return d(p.size(), q.size());
}

struct Span {
  std::uint32_t trajectory;
  std::size_t start, end;
  double value;
  auto key() const { return std::tuple(trajectory, start, end); }
};

/// Every nonempty substring of every trajectory with wed < tau.
inline std::vector<Span> brute_force_matches(const TrajectoryDb& db, std::span<const Symbol> q,
                                             const CostModel& m, double tau) {
  std::vector<Span> out;
  for (std::uint32_t t = 0; t < db.size(); ++t) {
    const auto& p = db.get(t).symbols;
    for (std::size_t s = 0; s < p.size(); ++s) {
      for (std::size_t e = s; e < p.size(); ++e) {
        const double v = reference_wed(std::span(p).subspan(s, e - s + 1), q, m);
        if (v < tau) out.push_back({t, s, e, v});
      }
    }
  }
  return out;
}

/// Single-source distances on the undirected view (minimum weight per vertex
/// pair) by Bellman-Ford relaxation.
inline std::vector<double> bellman_ford(const NetworkRecords& rec, std::size_t source) {
  std::map<std::int64_t, std::size_t> dense;
  for (std::size_t i = 0; i < rec.nodes.size(); ++i) dense[rec.nodes[i].id] = i;
  std::vector<double> dist(rec.nodes.size(), kInfinity);
  dist[source] = 0.0;
  for (std::size_t round = 0; round < rec.nodes.size(); ++round) {
    bool changed = false;
    for (const auto& e : rec.edges) {
      const auto a = dense.at(e.source), b = dense.at(e.target);
      if (dist[a] + e.weight < dist[b]) dist[b] = dist[a] + e.weight, changed = true;
      if (dist[b] + e.weight < dist[a]) dist[a] = dist[b] + e.weight, changed = true;
    }
    if (!changed) break;
  }
  return dist;
}

inline std::vector<Symbol> random_symbols(std::mt19937_64& rng, std::size_t n, std::size_t alphabet) {
  std::uniform_int_distribution<Symbol> pick(0, static_cast<Symbol>(alphabet - 1));
  std::vector<Symbol> out(n);
  for (auto& s : out) s = pick(rng);
  return out;
}

/// Random symmetric cost table with zero diagonal; some entries are zero.
inline CostModel random_table(std::mt19937_64& rng, std::size_t n, double eta) {
  std::uniform_int_distribution<int> w(0, 6);
  CostTable t;
  t.sub.assign(n, std::vector<double>(n, 0.0));
  t.del.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    t.del[a] = 1 + w(rng);
    for (std::size_t b = a + 1; b < n; ++b) t.sub[a][b] = t.sub[b][a] = w(rng);
  }
  return CostModel::from_table(std::move(t), eta);
}

}  // namespace testing
