#include <doctest.h>

#include <filesystem>

#include "support.hpp"
#include "wedsearch/inverted_index.hpp"

using namespace wedsearch;

namespace {

std::vector<Posting> scan_postings(const TrajectoryDb& db, Symbol b) {
  std::vector<Posting> out;
  for (std::uint32_t t = 0; t < db.size(); ++t) {
    const auto& p = db.get(t).symbols;
    for (std::uint32_t k = 0; k < p.size(); ++k) {
      if (p[k] == b) out.push_back({t, k});
    }
  }
  return out;
}

TrajectoryDb mixed_db(std::uint64_t seed) {
  auto fx = testing::make_fixture(6, 50, Representation::kVertex, seed);
  TrajectoryDb db(Representation::kVertex, fx.db.alphabet_size());
  for (std::size_t i = 0; i < fx.db.size(); ++i) {
    auto t = fx.db.get(i);
    if (i % 7 == 3) t.timestamps.clear();
    db.add(std::move(t));
  }
  return db;
}

std::vector<Posting> sorted(std::vector<Posting> v) {
  std::sort(v.begin(), v.end(), [](const Posting& a, const Posting& b) {
    return std::tie(a.trajectory, a.position) < std::tie(b.trajectory, b.position);
  });
  return v;
}

}  // namespace

TEST_CASE("postings equal a scan of the db in both orders") {
  const auto db = mixed_db(3);
  const auto by_id = InvertedIndex::build(db, PostingsOrder::kById);
  const auto by_dep = InvertedIndex::build(db, PostingsOrder::kByDeparture);
  CHECK(by_id.total_postings() == db.total_symbols());
  CHECK(by_dep.trajectory_count() == db.size());
  for (Symbol b = 0; b < db.alphabet_size(); ++b) {
    const auto expected = scan_postings(db, b);
    const auto id_list = by_id.lookup(b);
    CHECK(std::vector<Posting>(id_list.begin(), id_list.end()) == expected);
    const auto dep_list = by_dep.lookup(b);
    CHECK(sorted({dep_list.begin(), dep_list.end()}) == expected);
    double last = -kInfinity;
    for (const auto& p : dep_list) {
      const auto span = db.time_span(p.trajectory);
      const double dep = span ? span->first : -kInfinity;
      CHECK(dep >= last);
      last = dep;
    }
  }
  CHECK(by_id.lookup(static_cast<Symbol>(db.alphabet_size() + 5)).empty());
}

TEST_CASE("temporal lookup keeps trajectories whose span meets the interval") {
  const auto db = mixed_db(8);
  const auto index = InvertedIndex::build(db, PostingsOrder::kByDeparture);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> t(-100.0, 4000.0), len(0.0, 600.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lo = t(rng), hi = lo + len(rng);
    for (Symbol b = 0; b < db.alphabet_size(); b += 3) {
      std::vector<Posting> expected;
      for (const auto& p : scan_postings(db, b)) {
        const auto span = db.time_span(p.trajectory);
        if (!span || (span->first <= hi && span->last >= lo)) expected.push_back(p);
      }
      CHECK(sorted(index.lookup_temporal(b, lo, hi)) == expected);
    }
  }
  const auto by_id = InvertedIndex::build(db, PostingsOrder::kById);
  CHECK_THROWS_AS(by_id.lookup_temporal(0, 0.0, 1.0), ConfigError);
}

TEST_CASE("incremental add matches a bulk build") {
  const auto fx = testing::make_fixture(6, 40, Representation::kEdge, 4);
  InvertedIndex index(Representation::kEdge, fx.db.alphabet_size(), PostingsOrder::kById);
  for (std::size_t i = 0; i < fx.db.size(); ++i) index.add(fx.db, i);
  CHECK(index == InvertedIndex::build(fx.db));
  CHECK_THROWS_AS(index.add(fx.db, 3), ConfigError);

  TrajectoryDb db(Representation::kVertex, 4);
  db.add({1, {0, 1}, {10.0, 11.0}});
  db.add({2, {2, 3}, {5.0, 6.0}});
  db.add({3, {3, 1}, {7.0, 8.0}});
  InvertedIndex dep(Representation::kVertex, 4, PostingsOrder::kByDeparture);
  dep.add(db, 0);
  // Order is kept per postings list: disjoint symbols may arrive out of order.
  CHECK_NOTHROW(dep.add(db, 1));
  CHECK_THROWS_AS(dep.add(db, 2), ConfigError);
}

TEST_CASE("index files round-trip and corruption is detected") {
  const auto db = mixed_db(5);
  for (auto order : {PostingsOrder::kById, PostingsOrder::kByDeparture}) {
    const auto index = InvertedIndex::build(db, order);
    const auto path = std::filesystem::temp_directory_path() / "wedsearch_test_index.bin";
    save_index(index, path);
    CHECK(load_index(path) == index);
    std::filesystem::resize_file(path, std::filesystem::file_size(path) - 3);
    CHECK_THROWS_AS(load_index(path), DataError);
    std::string bytes = index.serialize();
    bytes[bytes.size() - 10] ^= 0x11;
    CHECK_THROWS_AS(InvertedIndex::deserialize(bytes), DataError);
    std::filesystem::remove(path);
  }
}
