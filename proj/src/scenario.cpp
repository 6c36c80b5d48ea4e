#include "wedsearch/scenario.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "wedsearch/engine.hpp"
#include "wedsearch/network.hpp"
#include "wedsearch/synthetic.hpp"

namespace wedsearch {

namespace {

using MatchKey = std::tuple<std::uint32_t, std::size_t, std::size_t>;

MatchKey key_of(const MatchResult& m) { return {m.trajectory, m.start, m.end}; }

struct MatchDiff {
  std::vector<MatchResult> missing;  // in the reference, not in the search
  std::vector<MatchResult> extra;    // in the search, not in the reference
  std::vector<std::pair<MatchResult, MatchResult>> value_mismatch;
  bool empty() const { return missing.empty() && extra.empty() && value_mismatch.empty(); }
};

bool close_values(double got, double want) {
  return std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want));
}

MatchDiff diff_matches(const std::vector<MatchResult>& got, const std::vector<MatchResult>& want) {
  MatchDiff d;
  std::size_t i = 0;
  std::size_t k = 0;
  while (i < got.size() || k < want.size()) {
    if (k == want.size() || (i < got.size() && key_of(got[i]) < key_of(want[k]))) {
      d.extra.push_back(got[i++]);
    } else if (i == got.size() || key_of(want[k]) < key_of(got[i])) {
      d.missing.push_back(want[k++]);
    } else {
      if (!close_values(got[i].value, want[k].value)) d.value_mismatch.emplace_back(got[i], want[k]);
      ++i;
      ++k;
    }
  }
  return d;
}

Trajectory slice(const Trajectory& t, std::size_t from, std::size_t len,
                 Representation representation) {
  Trajectory out;
  out.id = t.id;
  out.symbols.assign(t.symbols.begin() + static_cast<std::ptrdiff_t>(from),
                     t.symbols.begin() + static_cast<std::ptrdiff_t>(from + len));
  if (t.timed()) {
    const std::size_t extra = representation == Representation::kEdge ? 1 : 0;
    out.timestamps.assign(t.timestamps.begin() + static_cast<std::ptrdiff_t>(from),
                          t.timestamps.begin() + static_cast<std::ptrdiff_t>(from + len + extra));
  }
  return out;
}

/// A failing query over an explicit trajectory list, rebuilt from scratch on
/// every probe so shrinking never shares state with the original run.
struct FailureCase {
  std::vector<Trajectory> trajectories;
  std::vector<Symbol> query;
  double tau = 0.0;
  TemporalConstraint temporal;
};

class Shrinker {
 public:
  Shrinker(const CostModel& model, Representation representation, VerifierOptions options)
      : model_(&model), representation_(representation), options_(options) {}

  bool fails(const FailureCase& f, MatchDiff* diff = nullptr) {
    ++probes_;
    try {
      TrajectoryDb db(representation_, model_->alphabet_size());
      for (const auto& t : f.trajectories) db.add(t);
      const auto index = InvertedIndex::build(db);
      const Engine engine(db, index, *model_, {SelectionStrategy::kApprox, options_});
      Query q{f.query, f.tau, std::nullopt, f.temporal};
      const auto got = engine.search(q);
      const auto want = engine.plain_sw_scan(q);
      auto d = diff_matches(got.matches, want.matches);
      const bool bad = !d.empty();
      if (diff) *diff = std::move(d);
      return bad;
    } catch (const InfeasibleQuery&) {
      return false;
    } catch (const ConfigError&) {
      return false;
    }
  }

  FailureCase shrink(FailureCase f) {
    for (std::size_t i = f.trajectories.size(); i-- > 0 && probes_ < kBudget;) {
      auto trial = f;
      trial.trajectories.erase(trial.trajectories.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(trial)) f = std::move(trial);
    }
    for (auto& t : f.trajectories) {
      for (bool front : {false, true}) {
        std::size_t step = t.symbols.size() / 2;
        while (step > 0 && probes_ < kBudget) {
          if (t.symbols.size() <= step) {
            step /= 2;
            continue;
          }
          const std::size_t len = t.symbols.size() - step;
          auto trial = f;
          auto& tt = trial.trajectories[static_cast<std::size_t>(&t - f.trajectories.data())];
          tt = slice(t, front ? step : 0, len, representation_);
          if (fails(trial)) {
            t = tt;
          } else {
            step /= 2;
          }
        }
      }
    }
    for (std::size_t i = f.query.size(); i-- > 0 && probes_ < kBudget;) {
      if (f.query.size() == 1) break;
      auto trial = f;
      trial.query.erase(trial.query.begin() + static_cast<std::ptrdiff_t>(i));
      if (fails(trial)) f = std::move(trial);
    }
    return f;
  }

 private:
  static constexpr std::size_t kBudget = 600;
  const CostModel* model_;
  Representation representation_;
  VerifierOptions options_;
  std::size_t probes_ = 0;
};

std::string dump_case(const FailureCase& f, const MatchDiff& d, CostKind kind,
                      Representation representation) {
  std::ostringstream out;
  out.precision(17);
  out << "cost=" << to_string(kind) << " rep=" << to_string(representation) << " tau=" << f.tau
      << " temporal=" << to_string(f.temporal.kind);
  if (f.temporal.kind != TemporalKind::kNone) out << " [" << f.temporal.lo << ", " << f.temporal.hi << "]";
  out << "\n  Q =";
  for (Symbol s : f.query) out << ' ' << s;
  for (std::size_t i = 0; i < f.trajectories.size(); ++i) {
    out << "\n  traj #" << i << " (id " << f.trajectories[i].id << ") =";
    for (Symbol s : f.trajectories[i].symbols) out << ' ' << s;
  }
  for (const auto& m : d.missing) {
    out << "\n  missing #" << m.trajectory << " [" << m.start << ", " << m.end << "] wed " << m.value;
  }
  for (const auto& m : d.extra) {
    out << "\n  extra #" << m.trajectory << " [" << m.start << ", " << m.end << "] value " << m.value;
  }
  for (const auto& [g, w] : d.value_mismatch) {
    out << "\n  value #" << g.trajectory << " [" << g.start << ", " << g.end << "] got " << g.value
        << " want " << w.value;
  }
  return out.str();
}

Symbol random_nearby(const RoadNetwork& network, Representation representation, Symbol s,
                     std::mt19937_64& rng) {
  if (representation == Representation::kVertex) {
    const auto arcs = network.undirected_arcs(s);
    if (arcs.empty()) return s;
    std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
    return arcs[pick(rng)].to;
  }
  const auto out = network.out_edges(network.edge(s).target);
  if (out.empty()) return s;
  std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
  return out[pick(rng)];
}

/// A window of a random long-enough trajectory with a few local edits:
/// substitutions by nearby symbols, one deletion, one insertion.
std::vector<Symbol> sample_query(const TrajectoryDb& db, const RoadNetwork& network,
                                 std::size_t length, std::mt19937_64& rng) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (db.get(i).symbols.size() >= length) eligible.push_back(i);
  }
  std::vector<Symbol> q;
  if (eligible.empty()) {
    std::uniform_int_distribution<Symbol> any(0, static_cast<Symbol>(db.alphabet_size() - 1));
    for (std::size_t k = 0; k < length; ++k) q.push_back(any(rng));
    return q;
  }
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  const auto& p = db.get(eligible[pick(rng)]).symbols;
  const std::size_t window = std::min(p.size(), length + 1);
  std::uniform_int_distribution<std::size_t> begin(0, p.size() - window);
  const std::size_t b = begin(rng);
  q.assign(p.begin() + static_cast<std::ptrdiff_t>(b),
           p.begin() + static_cast<std::ptrdiff_t>(b + window));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const auto rep = db.representation();
  if (coin(rng) < 0.4 && q.size() > 1) {
    std::uniform_int_distribution<std::size_t> at(0, q.size() - 1);
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(at(rng)));
  }
  if (coin(rng) < 0.4) {
    std::uniform_int_distribution<std::size_t> at(0, q.size() - 1);
    const std::size_t i = at(rng);
    q.insert(q.begin() + static_cast<std::ptrdiff_t>(i), random_nearby(network, rep, q[i], rng));
  }
  for (auto& s : q) {
    if (coin(rng) < 0.15) s = random_nearby(network, rep, s, rng);
  }
  while (q.size() < length) q.push_back(random_nearby(network, rep, q.back(), rng));
  q.resize(length);
  return q;
}

std::vector<Symbol> random_query(const TrajectoryDb& db, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<Symbol> any(0, static_cast<Symbol>(db.alphabet_size() - 1));
  std::vector<Symbol> q;
  for (std::size_t k = 0; k < length; ++k) q.push_back(any(rng));
  return q;
}

TemporalConstraint random_interval(const TrajectoryDb& db, TemporalKind kind, std::mt19937_64& rng) {
  double lo = kInfinity;
  double hi = -kInfinity;
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (auto span = db.time_span(i)) {
      lo = std::min(lo, span->first);
      hi = std::max(hi, span->last);
    }
  }
  if (!(lo <= hi)) return {kind, 0.0, 1.0};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double width = (hi - lo) * (0.1 + 0.4 * unit(rng));
  const double start = lo + (hi - lo - width) * unit(rng);
  return {kind, start, start + width};
}

/// Counts (trajectory, j, i_q) with sub(Q_{i_q}, P_j) <= eta by scanning
/// every position of every trajectory.
std::uint64_t scan_candidate_count(const TrajectoryDb& db, const CostModel& model,
                                   const TauSubsequence& selection) {
  std::uint64_t count = 0;
  for (const auto& chosen : selection.chosen) {
    for (const auto& t : db.trajectories()) {
      for (Symbol p : t.symbols) {
        if (model.sub(chosen.symbol, p) <= model.eta()) ++count;
      }
    }
  }
  return count;
}

struct Fixture {
  std::unique_ptr<RoadNetwork> network;
  std::unique_ptr<TrajectoryDb> db;
  std::unique_ptr<CostModel> model;
  std::unique_ptr<InvertedIndex> by_id;
  std::unique_ptr<InvertedIndex> by_departure;
};

Fixture build_fixture(const ScenarioSpec& spec) {
  Fixture f;
  const auto records = grid_network({spec.grid_rows, spec.grid_cols, 1.0, 0.2, 2.0, spec.seed});
  f.network = std::make_unique<RoadNetwork>(RoadNetwork::from_records(records.nodes, records.edges));
  WalkSpec walks;
  walks.count = spec.trajectories;
  walks.min_length = spec.min_length;
  walks.max_length = spec.max_length;
  walks.seed = spec.seed * 7919 + 17;
  auto traj = random_walks(*f.network, walks);
  for (std::size_t i = 9; i < traj.size(); i += 10) traj[i].timestamps.clear();
  CostConfig config;
  config.kind = spec.kind;
  config.lev_representation = spec.representation;
  f.model = std::make_unique<CostModel>(CostModel::create(config, *f.network));
  auto ingested = ingest(traj, *f.network, f.model->representation());
  f.db = std::make_unique<TrajectoryDb>(std::move(ingested.db));
  f.by_id = std::make_unique<InvertedIndex>(InvertedIndex::build(*f.db, PostingsOrder::kById));
  f.by_departure =
      std::make_unique<InvertedIndex>(InvertedIndex::build(*f.db, PostingsOrder::kByDeparture));
  return f;
}

std::filesystem::path scratch_path(const ScenarioSpec& spec, const std::string& name) {
  const auto dir = spec.scratch_dir.empty() ? std::filesystem::temp_directory_path() : spec.scratch_dir;
  return dir / ("wedsearch-" + std::to_string(::getpid()) + "-" + std::to_string(spec.seed) + "-" +
                std::string(to_string(spec.kind)) + "-" + name);
}

class ScenarioRunner {
 public:
  ScenarioRunner(const ScenarioSpec& spec, Fixture& fixture, ScenarioReport& report)
      : spec_(spec),
        fx_(fixture),
        report_(report),
        rng_(spec.seed ^ 0x9e3779b97f4a7c15ULL),
        by_id_(*fx_.db, *fx_.by_id, *fx_.model, {SelectionStrategy::kApprox, spec.verifier}),
        by_departure_(*fx_.db, *fx_.by_departure, *fx_.model,
                      {SelectionStrategy::kApprox, spec.verifier}) {}

  void attach_loaded(const Engine* loaded_id, const Engine* loaded_departure) {
    loaded_id_ = loaded_id;
    loaded_departure_ = loaded_departure;
  }

  void run() {
    std::vector<std::size_t> lengths = spec_.query_lengths;
    std::vector<double> ratios = spec_.tau_ratios;
    std::sort(ratios.begin(), ratios.end());
    for (std::size_t len : lengths) {
      const auto q = sample_query(*fx_.db, *fx_.network, len, rng_);
      std::vector<std::set<MatchKey>> per_ratio;
      for (double r : ratios) {
        const Query query{q, std::nullopt, r, {}};
        per_ratio.push_back(check(by_id_, query, r));
        if (spec_.temporal) {
          for (auto kind : {TemporalKind::kContained, TemporalKind::kOverlaps}) {
            const Query tq{q, std::nullopt, r, random_interval(*fx_.db, kind, rng_)};
            ++report_.temporal_queries;
            check(by_id_, tq, r);
            check(by_departure_, tq, r);
          }
        }
      }
      for (std::size_t i = 1; i < per_ratio.size(); ++i) {
        if (!std::includes(per_ratio[i].begin(), per_ratio[i].end(), per_ratio[i - 1].begin(),
                           per_ratio[i - 1].end())) {
          ++report_.monotonicity_violations;
        }
      }
    }
    const Query empty{random_query(*fx_.db, 5, rng_), std::nullopt, 0.05, {}};
    const auto before = report_.oracle_matches;
    check(by_id_, empty, 0.05);
    if (report_.oracle_matches == before) ++report_.empty_queries;
  }

 private:
  std::set<MatchKey> check(const Engine& engine, const Query& query, double ratio) {
    const auto got = engine.search(query);
    const auto want = engine.plain_sw_scan(query);
    ++report_.queries;
    report_.oracle_matches += want.matches.size();
    report_.stats += got.stats;
    if (ratio == 0.1) report_.stats_ratio_01 += got.stats;
    const bool temporal = query.temporal.kind != TemporalKind::kNone;

    auto diff = diff_matches(got.matches, want.matches);
    if (!diff.empty()) {
      ++report_.discrepancies;
      if (temporal) ++report_.temporal_violations;
      record_failure(query, got.tau);
    }

    // Every reference match is covered by a candidate that survives the
    // interval pre-filter, anchored inside the span.
    const auto candidates = engine.generate_candidates(got.selection);
    std::vector<std::vector<std::uint32_t>> anchors(fx_.db->size());
    std::uint64_t baseline = 0;
    for (const auto& c : candidates) {
      const auto& t = fx_.db->get(c.trajectory);
      if (!trajectory_may_satisfy(query.temporal, t)) continue;
      anchors[c.trajectory].push_back(c.position);
      baseline += t.symbols.size();
    }
    for (auto& a : anchors) std::sort(a.begin(), a.end());
    for (const auto& m : want.matches) {
      if (!trajectory_may_satisfy(query.temporal, fx_.db->get(m.trajectory))) {
        ++report_.prefilter_violations;
      }
      const auto& a = anchors[m.trajectory];
      auto it = std::lower_bound(a.begin(), a.end(), static_cast<std::uint32_t>(m.start));
      if (it == a.end() || *it > m.end) ++report_.coverage_misses;
    }

    const auto scanned = scan_candidate_count(*fx_.db, *fx_.model, got.selection);
    if (scanned != got.candidate_count || scanned != got.selection.objective ||
        scanned != engine.candidate_count(query) || (!temporal && scanned != candidates.size())) {
      ++report_.count_mismatches;
    }

    const auto& st = got.stats;
    if (st.columns_considered != baseline || st.step_dp_calls > baseline ||
        st.surviving() + st.columns_pruned_early != st.columns_considered) {
      ++report_.conservation_violations;
    }
    if (std::abs(st.tur() - st.upr() * st.cmr()) > 1e-12) ++report_.rate_identity_violations;

    const Engine* loaded = &engine == &by_id_ ? loaded_id_ : loaded_departure_;
    if (loaded) {
      ++report_.persistence_checks;
      if (loaded->search(query).matches != got.matches) ++report_.persistence_mismatches;
    }

    std::set<MatchKey> keys;
    for (const auto& m : want.matches) keys.insert(key_of(m));
    return keys;
  }

  void record_failure(const Query& query, double tau) {
    if (report_.failures.size() >= spec_.max_failures_reported) return;
    FailureCase f{{fx_.db->trajectories().begin(), fx_.db->trajectories().end()},
                  query.symbols,
                  tau,
                  query.temporal};
    Shrinker shrinker(*fx_.model, fx_.db->representation(), spec_.verifier);
    MatchDiff diff;
    if (!shrinker.fails(f, &diff)) {
      report_.failures.push_back("non-reproducible discrepancy");
      return;
    }
    f = shrinker.shrink(std::move(f));
    shrinker.fails(f, &diff);
    report_.failures.push_back(dump_case(f, diff, spec_.kind, fx_.db->representation()));
  }

  const ScenarioSpec& spec_;
  Fixture& fx_;
  ScenarioReport& report_;
  std::mt19937_64 rng_;
  Engine by_id_;
  Engine by_departure_;
  const Engine* loaded_id_ = nullptr;
  const Engine* loaded_departure_ = nullptr;
};

}  // namespace

ScenarioSpec random_scenario(std::uint64_t seed, CostKind kind, Representation representation) {
  std::mt19937_64 rng(seed);
  ScenarioSpec spec;
  spec.seed = seed;
  spec.kind = kind;
  spec.representation = representation;
  std::uniform_int_distribution<std::size_t> side(8, 20);
  std::uniform_int_distribution<std::size_t> count(100, 300);
  spec.grid_rows = side(rng);
  spec.grid_cols = side(rng);
  spec.trajectories = count(rng);
  spec.min_length = 10;
  spec.max_length = 60;
  return spec;
}

std::string describe(const ScenarioSpec& spec) {
  std::ostringstream out;
  const auto rep = spec.kind == CostKind::kSurs ? Representation::kEdge
                   : spec.kind == CostKind::kLev ? spec.representation
                                                 : Representation::kVertex;
  out << to_string(spec.kind) << '/' << to_string(rep) << " seed=" << spec.seed << " grid="
      << spec.grid_rows << 'x' << spec.grid_cols << " trajectories=" << spec.trajectories;
  return out.str();
}

bool ScenarioReport::passed() const {
  return discrepancies == 0 && coverage_misses == 0 && count_mismatches == 0 &&
         conservation_violations == 0 && rate_identity_violations == 0 &&
         temporal_violations == 0 && prefilter_violations == 0 && monotonicity_violations == 0 &&
         persistence_mismatches == 0;
}

std::string ScenarioReport::summary() const {
  std::ostringstream out;
  out << label << ": queries=" << queries << " matches=" << oracle_matches
      << " discrepancies=" << discrepancies << " coverage_misses=" << coverage_misses
      << " count_mismatches=" << count_mismatches
      << " conservation=" << conservation_violations << " temporal=" << temporal_violations
      << " prefilter=" << prefilter_violations << " monotonicity=" << monotonicity_violations;
  if (persistence_checks) out << " persistence=" << persistence_mismatches << '/' << persistence_checks;
  return out.str();
}

ScenarioReport run_oracle_equivalence(const ScenarioSpec& spec) {
  ScenarioReport report;
  report.label = describe(spec);
  auto fixture = build_fixture(spec);
  ScenarioRunner runner(spec, fixture, report);

  std::unique_ptr<TrajectoryDb> loaded_db;
  std::unique_ptr<InvertedIndex> loaded_id;
  std::unique_ptr<InvertedIndex> loaded_departure;
  std::unique_ptr<Engine> engine_id;
  std::unique_ptr<Engine> engine_departure;
  if (spec.persistence) {
    const auto db_path = scratch_path(spec, "db.bin");
    const auto id_path = scratch_path(spec, "by-id.idx");
    const auto dep_path = scratch_path(spec, "by-departure.idx");
    save_db(*fixture.db, db_path);
    save_index(*fixture.by_id, id_path);
    save_index(*fixture.by_departure, dep_path);
    loaded_db = std::make_unique<TrajectoryDb>(load_db(db_path));
    loaded_id = std::make_unique<InvertedIndex>(load_index(id_path));
    loaded_departure = std::make_unique<InvertedIndex>(load_index(dep_path));
    std::filesystem::remove(db_path);
    std::filesystem::remove(id_path);
    std::filesystem::remove(dep_path);
    ++report.persistence_checks;
    if (!(*loaded_db == *fixture.db) || !(*loaded_id == *fixture.by_id) ||
        !(*loaded_departure == *fixture.by_departure)) {
      ++report.persistence_mismatches;
    }
    const EngineOptions options{SelectionStrategy::kApprox, spec.verifier};
    engine_id = std::make_unique<Engine>(*loaded_db, *loaded_id, *fixture.model, options);
    engine_departure = std::make_unique<Engine>(*loaded_db, *loaded_departure, *fixture.model, options);
    runner.attach_loaded(engine_id.get(), engine_departure.get());
  }
  runner.run();
  return report;
}

}  // namespace wedsearch
