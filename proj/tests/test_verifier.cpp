#include <doctest.h>

#include "support.hpp"
#include "wedsearch/scenario.hpp"
#include "wedsearch/verifier.hpp"

using namespace wedsearch;
using testing::close;

TEST_CASE("prefix distances from the trie equal direct distances until the cutoff") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto m = testing::random_table(rng, 4, 0.0);
    const auto q = testing::random_symbols(rng, 1 + trial % 5, 4);
    CacheTrie trie(QueryProfile(m, q));
    VerifyStats stats;
    const double cutoff = 1.0 + trial % 9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto p = testing::random_symbols(rng, trial % 10, 4);
      const bool reversed = rep == 1;
      std::vector<Symbol> read(p);
      if (reversed) std::reverse(read.begin(), read.end());
      const auto e = all_prefix_wed(trie, p, reversed, cutoff, stats, {true, 0.0});
      REQUIRE(!e.empty());
      REQUIRE(e.size() <= p.size() + 1);
      for (std::size_t k = 0; k < e.size(); ++k) {
        CHECK(close(e[k], testing::reference_wed(std::span(read).first(k), q, m)));
      }
      for (std::size_t k = e.size(); k <= p.size(); ++k) {
        CHECK(testing::reference_wed(std::span(read).first(k), q, m) >= cutoff);
      }
    }
  }
}

TEST_CASE("repeated prefixes are served from the trie") {
  std::mt19937_64 rng(1);
  const auto m = testing::random_table(rng, 3, 0.0);
  const std::vector<Symbol> q{0, 1, 2};
  CacheTrie trie(QueryProfile(m, q));
  VerifyStats stats;
  const std::vector<Symbol> a{0, 1, 2, 0}, b{0, 1, 1};
  all_prefix_wed(trie, a, false, kInfinity, stats);
  CHECK(stats.step_dp_calls == 4);
  CHECK(stats.cache_hits == 0);
  all_prefix_wed(trie, b, false, kInfinity, stats);
  CHECK(stats.step_dp_calls == 5);
  CHECK(stats.cache_hits == 2);
  CHECK(trie.node_count() == 6);
  CHECK(trie.find_child(CacheTrie::kRoot, 0).has_value());
  CHECK_FALSE(trie.find_child(CacheTrie::kRoot, 2).has_value());
}

TEST_CASE("a candidate yields exactly the anchored spans under the threshold") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    const auto m = testing::random_table(rng, 4, 1.0);
    TrajectoryDb db(Representation::kVertex, 4);
    for (int t = 0; t < 3; ++t) db.add({static_cast<std::int64_t>(t), testing::random_symbols(rng, 1 + (trial + t) % 9, 4), {}});
    const auto q = testing::random_symbols(rng, 1 + trial % 5, 4);
    const double tau = 2.0 + trial % 6;
    Verifier verifier(db, m, q, tau, {true, 0.0});
    for (std::uint32_t t = 0; t < db.size(); ++t) {
      const auto& p = db.get(t).symbols;
      for (std::uint32_t j = 0; j < p.size(); ++j) {
        for (std::uint32_t iq = 0; iq < q.size(); ++iq) {
          std::vector<MatchResult> got;
          verifier.verify_candidate({t, j, iq}, got);
          normalize_matches(got);
          std::vector<MatchResult> expected;
          for (std::size_t s = 0; s <= j; ++s) {
            for (std::size_t e = j; e < p.size(); ++e) {
              const double v = m.sub(q[iq], p[j]) +
                               testing::reference_wed(std::span(p).subspan(s, j - s),
                                                      std::span(q).first(iq), m) +
                               testing::reference_wed(std::span(p).subspan(j + 1, e - j),
                                                      std::span(q).subspan(iq + 1), m);
              if (v < tau) expected.push_back({t, s, e, v});
            }
          }
          REQUIRE(got.size() == expected.size());
          for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].start == expected[i].start);
            CHECK(got[i].end == expected[i].end);
            CHECK(close(got[i].value, expected[i].value));
          }
        }
      }
    }
    const auto& st = verifier.stats();
    CHECK(st.surviving() + st.columns_pruned_early == st.columns_considered);
    CHECK(verifier.trie_count() <= 2 * q.size());
  }
}

TEST_CASE("normalization keeps the smallest value per span") {
  std::vector<MatchResult> v{{1, 2, 3, 4.0}, {0, 5, 5, 1.0}, {1, 2, 3, 2.5}, {1, 2, 3, 3.0}};
  normalize_matches(v);
  CHECK(v == std::vector<MatchResult>{{0, 5, 5, 1.0}, {1, 2, 3, 2.5}});
}

TEST_CASE("anchors that already reach the threshold are skipped") {
  const auto m = CostModel::from_table({{{0, 5}, {5, 0}}, {1, 1}}, 0.0);
  TrajectoryDb db(Representation::kVertex, 2);
  db.add({1, {1, 1, 1}, {}});
  const std::vector<Symbol> q{0};
  Verifier v(db, m, q, 5.0);
  std::vector<MatchResult> out;
  v.verify_candidate({0, 1, 0}, out);
  CHECK(out.empty());
  CHECK(v.stats().candidates_skipped == 1);
  CHECK(v.stats().columns_pruned_early == 3);
  CHECK_THROWS_AS(v.verify_candidate({0, 3, 0}, out), ConfigError);
}

TEST_CASE("internal consistency checks pass on random scenarios") {
  for (std::uint64_t seed : {3u, 4u}) {
    auto spec = random_scenario(seed, seed % 2 ? CostKind::kNetErp : CostKind::kLev);
    spec.trajectories = 60;
    spec.grid_rows = spec.grid_cols = 8;
    spec.verifier.debug_checks = true;
    const auto report = run_oracle_equivalence(spec);
    CAPTURE(report.summary());
    CHECK(report.passed());
  }
}

TEST_CASE("shrinking the pruning threshold is caught by the scan comparison") {
  auto spec = random_scenario(11, CostKind::kLev);
  spec.trajectories = 80;
  spec.grid_rows = spec.grid_cols = 8;
  spec.tau_ratios = {0.2, 0.3};
  spec.temporal = false;
  spec.verifier.tau_prime_offset = -1.0;
  const auto report = run_oracle_equivalence(spec);
  CHECK_FALSE(report.passed());
  CHECK(report.discrepancies > 0);
  CHECK_FALSE(report.failures.empty());
}
