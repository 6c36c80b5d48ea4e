#include <doctest.h>

#include "support.hpp"
#include "wedsearch/engine.hpp"

using namespace wedsearch;
using testing::close;

namespace {

std::vector<Symbol> window(const TrajectoryDb& db, std::size_t t, std::size_t start, std::size_t len) {
  const auto& p = db.get(t).symbols;
  return {p.begin() + static_cast<long>(start), p.begin() + static_cast<long>(std::min(p.size(), start + len))};
}

}  // namespace

TEST_CASE("tau from a ratio scales the summed escape costs") {
  const auto fx = testing::make_fixture(6, 20, Representation::kVertex, 2);
  const auto lev = CostModel::create({}, fx.network);
  const auto index = InvertedIndex::build(fx.db);
  const Engine engine(fx.db, index, lev);
  Query q{std::vector<Symbol>(10, 3), std::nullopt, 0.1, {}};
  CHECK(engine.resolve_tau(q) == doctest::Approx(1.0));
  q.tau_ratio = 0.35;
  CHECK(engine.resolve_tau(q) == doctest::Approx(3.5));
  q.tau_ratio = 0.0;
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
  q.tau_ratio = 1.5;
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
  q.tau = 2.0;
  q.tau_ratio = 0.1;
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
  q.tau_ratio = std::nullopt;
  CHECK(engine.resolve_tau(q) == 2.0);
  q.tau = 10.5;
  CHECK_THROWS_AS(engine.resolve_tau(q), InfeasibleQuery);
  q.tau = -1.0;
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
  q.tau = 1.0;
  q.symbols.clear();
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
  q.symbols = {static_cast<Symbol>(fx.network.vertex_count())};
  CHECK_THROWS_AS(engine.resolve_tau(q), ConfigError);
}

TEST_CASE("engine rejects mismatched components") {
  const auto fx = testing::make_fixture(5, 10, Representation::kVertex, 2);
  const auto index = InvertedIndex::build(fx.db);
  CostConfig c;
  c.kind = CostKind::kSurs;
  const auto surs = CostModel::create(c, fx.network);
  CHECK_THROWS_AS(Engine(fx.db, index, surs), ConfigError);
  const auto other = testing::make_fixture(5, 12, Representation::kVertex, 3);
  const auto lev = CostModel::create({}, fx.network);
  CHECK_THROWS_AS(Engine(fx.db, InvertedIndex::build(other.db), lev), ConfigError);
}

TEST_CASE("candidate generation lists every db position near a selected symbol") {
  const auto fx = testing::make_fixture(7, 40, Representation::kVertex, 6);
  CostConfig c;
  c.kind = CostKind::kNetErp;
  const auto m = CostModel::create(c, fx.network);
  const auto index = InvertedIndex::build(fx.db);
  const Engine engine(fx.db, index, m);
  for (std::size_t t = 0; t < 10; ++t) {
    const Query q{window(fx.db, t, 1, 8), std::nullopt, 0.3, {}};
    const auto tau = engine.resolve_tau(q);
    const auto sel = engine.select(q, tau);
    std::vector<Candidate> expected;
    for (const auto& chosen : sel.chosen) {
      for (std::uint32_t u = 0; u < fx.db.size(); ++u) {
        const auto& p = fx.db.get(u).symbols;
        for (std::uint32_t k = 0; k < p.size(); ++k) {
          if (m.sub(chosen.symbol, p[k]) <= m.eta()) {
            expected.push_back({u, k, static_cast<std::uint32_t>(chosen.position)});
          }
        }
      }
    }
    auto got = engine.generate_candidates(sel);
    const auto order = [](const Candidate& a, const Candidate& b) {
      return std::tie(a.trajectory, a.position, a.query_position) <
             std::tie(b.trajectory, b.position, b.query_position);
    };
    std::sort(expected.begin(), expected.end(), order);
    std::sort(got.begin(), got.end(), order);
    CHECK(got == expected);
    CHECK(engine.candidate_count(q) == expected.size());
    std::uint64_t weight = 0;
    const auto items = engine.selection_items(q.symbols);
    for (const auto& chosen : sel.chosen) weight += items[chosen.position].weight;
    CHECK(weight == sel.objective);
  }
}

TEST_CASE("search returns exactly the substrings under the threshold") {
  for (auto kind : {CostKind::kLev, CostKind::kEdr, CostKind::kErp, CostKind::kNetErp}) {
    CAPTURE(to_string(kind));
    const auto fx = testing::make_fixture(5, 25, Representation::kVertex, 40 + static_cast<int>(kind), 4, 10);
    CostConfig c;
    c.kind = kind;
    if (kind == CostKind::kErp) c.eta = 0.6;
    if (kind == CostKind::kEdr) c.epsilon = 0.7;
    const auto m = CostModel::create(c, fx.network);
    const auto index = InvertedIndex::build(fx.db);
    for (auto strategy : {SelectionStrategy::kApprox, SelectionStrategy::kExact, SelectionStrategy::kPrefix}) {
      const Engine engine(fx.db, index, m, {strategy, {}});
      for (std::size_t t = 0; t < 4; ++t) {
        for (double ratio : {0.15, 0.3}) {
          const auto qs = window(fx.db, t * 5, 0, 4);
          const Query q{qs, std::nullopt, ratio, {}};
          const auto result = engine.search(q);
          const auto expected = testing::brute_force_matches(fx.db, qs, m, result.tau);
          REQUIRE(result.matches.size() == expected.size());
          for (std::size_t i = 0; i < expected.size(); ++i) {
            const auto& g = result.matches[i];
            CHECK(std::tuple(g.trajectory, g.start, g.end) == expected[i].key());
            CHECK(close(g.value, expected[i].value));
          }
          CHECK(result.verified_candidates <= result.candidate_count);
        }
      }
    }
  }
}

TEST_CASE("temporal predicates on spans") {
  Trajectory t{1, {0, 1, 2, 3}, {10, 20, 30, 40}};
  const TemporalConstraint contained{TemporalKind::kContained, 15, 35};
  const TemporalConstraint overlaps{TemporalKind::kOverlaps, 15, 35};
  CHECK(span_satisfies(contained, t, Representation::kVertex, 1, 2));
  CHECK_FALSE(span_satisfies(contained, t, Representation::kVertex, 0, 2));
  CHECK_FALSE(span_satisfies(contained, t, Representation::kVertex, 1, 3));
  CHECK(span_satisfies(overlaps, t, Representation::kVertex, 0, 1));
  CHECK_FALSE(span_satisfies(overlaps, t, Representation::kVertex, 0, 0));
  CHECK(span_satisfies(overlaps, t, Representation::kVertex, 3, 3) == false);
  // Edge k runs from timestamp k to timestamp k + 1.
  Trajectory e{2, {0, 1, 2}, {10, 20, 30, 40}};
  CHECK(span_satisfies(contained, e, Representation::kEdge, 1, 1));
  CHECK_FALSE(span_satisfies(contained, e, Representation::kEdge, 1, 2));
  CHECK(span_satisfies(overlaps, e, Representation::kEdge, 0, 0));
  Trajectory untimed{3, {0, 1}, {}};
  CHECK(span_satisfies(contained, untimed, Representation::kVertex, 0, 1));
  CHECK(trajectory_may_satisfy(contained, untimed));
  CHECK(trajectory_may_satisfy(contained, t));
  CHECK_FALSE(trajectory_may_satisfy({TemporalKind::kOverlaps, 41, 50}, t));
  CHECK(trajectory_may_satisfy({TemporalKind::kNone, 41, 50}, t));
  CHECK(parse_temporal_kind("overlaps") == TemporalKind::kOverlaps);
  CHECK_THROWS_AS(parse_temporal_kind("during"), ConfigError);
}

TEST_CASE("temporal search equals a filtered scan for both index orders") {
  const auto fx = testing::make_fixture(6, 40, Representation::kEdge, 14);
  const auto lev = [&] {
    CostConfig c;
    c.lev_representation = Representation::kEdge;
    return CostModel::create(c, fx.network);
  }();
  const auto by_id = InvertedIndex::build(fx.db, PostingsOrder::kById);
  const auto by_dep = InvertedIndex::build(fx.db, PostingsOrder::kByDeparture);
  const Engine a(fx.db, by_id, lev), b(fx.db, by_dep, lev);
  for (std::size_t t = 0; t < 6; ++t) {
    const auto span = *fx.db.time_span(t);
    for (auto kind : {TemporalKind::kContained, TemporalKind::kOverlaps}) {
      const Query q{window(fx.db, t, 0, 5), std::nullopt, 0.4,
                    {kind, span.first - 50, span.first + 400}};
      const auto ra = a.search(q);
      const auto rb = b.search(q);
      std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>> expected, ga, gb;
      for (const auto& s : testing::brute_force_matches(fx.db, q.symbols, lev, ra.tau)) {
        if (span_satisfies(q.temporal, fx.db.get(s.trajectory), Representation::kEdge, s.start, s.end)) {
          expected.push_back(s.key());
        }
      }
      for (const auto& m : ra.matches) ga.emplace_back(m.trajectory, m.start, m.end);
      for (const auto& m : rb.matches) gb.emplace_back(m.trajectory, m.start, m.end);
      CHECK(ga == expected);
      CHECK(gb == expected);
    }
  }
}

TEST_CASE("selection strategy names round-trip") {
  for (auto s : {SelectionStrategy::kApprox, SelectionStrategy::kExact, SelectionStrategy::kPrefix}) {
    CHECK(parse_selection_strategy(to_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_selection_strategy("random"), ConfigError);
}
