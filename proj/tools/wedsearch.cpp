// Command-line front end: gen, ingest, build-index, query, bench, oracle-check.
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "wedsearch/engine.hpp"
#include "wedsearch/network.hpp"
#include "wedsearch/scenario.hpp"
#include "wedsearch/synthetic.hpp"

using namespace wedsearch;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDataError = 3,
  kInfeasible = 4,
  kOracleFailure = 5,
};

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    const auto pos = s.find_first_of(", \t");
    const auto item = s.substr(0, pos);
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

double parse_number(std::string_view s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("malformed ") + what + " '" + std::string(s) + "'");
}

struct ModelFlags {
  std::string cost = "lev";
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<double> neterp_gap;
  std::string erp_reference;  // "lon,lat"

  void attach(CLI::App* cmd) {
    cmd->add_option("--cost", cost, "lev | edr | erp | netedr | neterp | surs")->capture_default_str();
    cmd->add_option("--eta", eta, "substitution-neighbor threshold (default per cost)");
    cmd->add_option("--epsilon", epsilon, "match threshold for edr / netedr");
    cmd->add_option("--neterp-gap", neterp_gap, "constant gap cost for neterp");
    cmd->add_option("--erp-reference", erp_reference, "gap reference point lon,lat for erp");
  }

  CostModel build(const RoadNetwork& network, Representation representation) const {
    CostConfig c;
    c.kind = parse_cost_kind(cost);
    c.eta = eta;
    c.epsilon = epsilon;
    c.neterp_del = neterp_gap;
    c.lev_representation = representation;
    if (!erp_reference.empty()) {
      const auto parts = split_list(erp_reference);
      if (parts.size() != 2) throw ConfigError("--erp-reference expects lon,lat");
      c.erp_reference = Coordinate{parse_number(parts[0], "longitude"),
                                   parse_number(parts[1], "latitude")};
    }
    return CostModel::create(c, network);
  }
};

/// External ids (vertex or edge, by representation) to dense symbols.
std::vector<Symbol> parse_symbols(std::string_view text, const RoadNetwork& network,
                                  Representation representation) {
  std::vector<Symbol> out;
  for (auto item : split_list(text)) {
    const auto raw = static_cast<std::int64_t>(parse_number(item, "symbol id"));
    const auto s = representation == Representation::kVertex ? network.vertex_by_external(raw)
                                                              : network.edge_by_external(raw);
    if (!s) {
      throw ConfigError("query symbol " + std::string(item) + " is not a known " +
                        (representation == Representation::kVertex ? "vertex" : "edge"));
    }
    out.push_back(*s);
  }
  if (out.empty()) throw ConfigError("empty query");
  return out;
}

/// Random windows of db trajectories; trajectories shorter than `length`
/// are never drawn.
std::vector<std::vector<Symbol>> sample_windows(const TrajectoryDb& db, std::size_t length,
                                                std::size_t count, std::uint64_t seed) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (db.get(i).symbols.size() >= length) eligible.push_back(i);
  }
  if (eligible.empty()) {
    throw ConfigError("no trajectory has at least " + std::to_string(length) + " symbols");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  std::vector<std::vector<Symbol>> out;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& p = db.get(eligible[pick(rng)]).symbols;
    std::uniform_int_distribution<std::size_t> start(0, p.size() - length);
    const auto b = static_cast<std::ptrdiff_t>(start(rng));
    out.emplace_back(p.begin() + b, p.begin() + b + static_cast<std::ptrdiff_t>(length));
  }
  return out;
}

// ---- gen -------------------------------------------------------------------

struct GenFlags {
  std::string network = "grid";
  std::size_t rows = 10, cols = 10, vertices = 100, k = 3;
  double spacing = 1.0, jitter = 0.0;
  std::size_t count = 100, min_length = 10, max_length = 60;
  bool untimed = false;
  double speed = 1.0;
  std::uint64_t seed = 42;
  std::string out_dir = ".";
};

int cmd_gen(const GenFlags& f) {
  NetworkRecords records;
  if (f.network == "grid") {
    records = grid_network({f.rows, f.cols, f.spacing, f.jitter, 2.0, f.seed});
  } else if (f.network == "geometric") {
    records = geometric_network({f.vertices, f.k, 100.0, 2.0, f.seed});
  } else {
    throw ConfigError("unknown network kind '" + f.network + "'");
  }
  const auto network = RoadNetwork::from_records(records.nodes, records.edges);
  WalkSpec walks;
  walks.count = f.count;
  walks.min_length = f.min_length;
  walks.max_length = f.max_length;
  walks.timed = !f.untimed;
  walks.speed = f.speed;
  walks.seed = f.seed + 1;
  const auto traj = random_walks(network, walks);

  std::filesystem::create_directories(f.out_dir);
  const std::filesystem::path dir(f.out_dir);
  std::ofstream nodes(dir / "nodes.tsv");
  std::ofstream edges(dir / "edges.tsv");
  std::ofstream trajs(dir / "trajectories.tsv");
  if (!nodes || !edges || !trajs) throw DataError("cannot write into " + f.out_dir);
  write_network(nodes, edges, records.nodes, records.edges);
  write_trajectories(trajs, traj);
  std::cout << "generated " << records.nodes.size() << " nodes, " << records.edges.size()
            << " edges, " << traj.size() << " trajectories in " << f.out_dir << '\n';
  return kOk;
}

// ---- ingest ----------------------------------------------------------------

struct IngestFlags {
  std::string nodes, edges, trajectories, db;
  std::string representation = "vertex";
  bool allow_rejects = false;
};

int cmd_ingest(const IngestFlags& f) {
  const auto network = load_network(f.nodes, f.edges);
  const auto records = load_trajectories(f.trajectories);
  const auto result = ingest(records, network, parse_representation(f.representation));
  for (const auto& r : result.rejected) {
    std::cerr << f.trajectories << ':' << r.line << ": trajectory " << r.trajectory_id << ": "
              << r.reason << '\n';
  }
  save_db(result.db, f.db);
  char crc[16];
  std::snprintf(crc, sizeof crc, "%08x", result.db.checksum());
  std::cout << "ingested " << result.db.size() << " trajectories (" << result.db.total_symbols()
            << " symbols), rejected " << result.rejected.size() << ", checksum " << crc << '\n';
  return result.rejected.empty() || f.allow_rejects ? kOk : kDataError;
}

// ---- build-index -----------------------------------------------------------

struct IndexFlags {
  std::string db, index;
  std::string order = "id";
};

int cmd_build_index(const IndexFlags& f) {
  const auto db = load_db(f.db);
  PostingsOrder order;
  if (f.order == "id") {
    order = PostingsOrder::kById;
  } else if (f.order == "departure") {
    order = PostingsOrder::kByDeparture;
  } else {
    throw ConfigError("unknown postings order '" + f.order + "'");
  }
  const auto index = InvertedIndex::build(db, order);
  save_index(index, f.index);
  std::cout << "indexed " << index.trajectory_count() << " trajectories, "
            << index.total_postings() << " postings over " << index.alphabet_size()
            << " symbols\n";
  return kOk;
}

// ---- query -----------------------------------------------------------------

struct QueryFlags {
  std::string nodes, edges, db, index;
  ModelFlags model;
  std::string query, query_file;
  std::size_t sample = 0;
  std::size_t sample_length = 10;
  std::uint64_t seed = 42;
  std::optional<double> tau, tau_ratio;
  std::string temporal = "none";
  double t_lo = 0.0, t_hi = 0.0;
  std::string format = "tsv";
  std::string strategy = "approx";
  bool stats = false;
  bool oracle_check = false;
  std::size_t threads = 1;
};

struct Loaded {
  RoadNetwork network;
  TrajectoryDb db;
  InvertedIndex index;
};

Loaded load_all(const std::string& nodes, const std::string& edges, const std::string& db,
                const std::string& index) {
  return {load_network(nodes, edges), load_db(db), load_index(index)};
}

struct QueryOutcome {
  std::string text;
  int code = kOk;
};

QueryOutcome run_one(const Engine& engine, const Query& query,
                     std::size_t number, bool batch, const QueryFlags& f) {
  std::ostringstream out;
  out.precision(17);
  const auto& db = engine.db();
  QueryOutcome outcome;
  QueryResult result;
  try {
    result = engine.search(query);
  } catch (const InfeasibleQuery& e) {
    std::ostringstream err;
    err << "query " << number << ": infeasible: " << e.what() << '\n';
    return {err.str(), kInfeasible};
  }
  const bool json = f.format == "jsonl";
  if (batch && !json) out << "# query " << number << '\n';
  for (const auto& m : result.matches) {
    const auto id = db.get(m.trajectory).id;
    if (json) {
      nlohmann::json j{{"traj_id", id}, {"s", m.start + 1}, {"t", m.end + 1}, {"wed", m.value}};
      if (batch) j["query"] = number;
      out << j.dump() << '\n';
    } else {
      out << id << '\t' << m.start + 1 << '\t' << m.end + 1 << '\t' << m.value << '\n';
    }
  }
  if (f.stats) {
    const auto& st = result.stats;
    if (json) {
      nlohmann::json j{{"stats",
                        {{"tau", result.tau},
                         {"candidates", result.candidate_count},
                         {"verified_candidates", result.verified_candidates},
                         {"matches", result.matches.size()},
                         {"upr", st.upr()},
                         {"cmr", st.cmr()},
                         {"tur", st.tur()},
                         {"mincand_ms", result.timings.mincand_ms},
                         {"lookup_ms", result.timings.lookup_ms},
                         {"verify_ms", result.timings.verify_ms}}}};
      if (batch) j["query"] = number;
      out << j.dump() << '\n';
    } else {
      out << "# tau " << result.tau << " candidates " << result.candidate_count << " verified "
          << result.verified_candidates << " matches " << result.matches.size() << '\n'
          << "# UPR " << 100 * st.upr() << "% CMR " << 100 * st.cmr() << "% TUR "
          << 100 * st.tur() << "%\n"
          << "# ms mincand " << result.timings.mincand_ms << " lookup "
          << result.timings.lookup_ms << " verify " << result.timings.verify_ms << '\n';
    }
  }
  if (f.oracle_check) {
    const auto reference = engine.plain_sw_scan(query);
    bool same = reference.matches.size() == result.matches.size();
    for (std::size_t i = 0; same && i < reference.matches.size(); ++i) {
      const auto& a = reference.matches[i];
      const auto& b = result.matches[i];
      same = a.trajectory == b.trajectory && a.start == b.start && a.end == b.end &&
             std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(a.value));
    }
    if (json) {
      nlohmann::json j{{"oracle_check", same ? "PASS" : "FAIL"}};
      if (batch) j["query"] = number;
      out << j.dump() << '\n';
    } else {
      out << "# oracle-check " << (same ? "PASS" : "FAIL") << '\n';
    }
    if (!same) outcome.code = kOracleFailure;
  }
  outcome.text = out.str();
  return outcome;
}

int cmd_query(const QueryFlags& f) {
  if (f.tau.has_value() == f.tau_ratio.has_value()) {
    throw ConfigError("give exactly one of --tau and --tau-ratio");
  }
  if (f.format != "tsv" && f.format != "jsonl") throw ConfigError("--format is tsv or jsonl");
  const int sources = !f.query.empty() + !f.query_file.empty() + (f.sample > 0);
  if (sources != 1) throw ConfigError("give exactly one of --q, --query-file, --sample");
  auto data = load_all(f.nodes, f.edges, f.db, f.index);
  const auto rep = data.db.representation();
  const auto model = f.model.build(data.network, rep);
  EngineOptions options;
  options.strategy = parse_selection_strategy(f.strategy);
  const Engine engine(data.db, data.index, model, options);

  std::vector<std::vector<Symbol>> queries;
  if (!f.query.empty()) {
    queries.push_back(parse_symbols(f.query, data.network, rep));
  } else if (!f.query_file.empty()) {
    std::ifstream in(f.query_file);
    if (!in) throw DataError("cannot open " + f.query_file);
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      queries.push_back(parse_symbols(line, data.network, rep));
    }
  } else {
    queries = sample_windows(data.db, f.sample_length, f.sample, f.seed);
  }

  TemporalConstraint temporal{parse_temporal_kind(f.temporal), f.t_lo, f.t_hi};
  const bool batch = queries.size() > 1;
  std::vector<QueryOutcome> outcomes(queries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      try {
        const Query q{queries[i], f.tau, f.tau_ratio, temporal};
        outcomes[i] = run_one(engine, q, i + 1, batch, f);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(1, f.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  int code = kOk;
  for (const auto& o : outcomes) {
    (o.code == kInfeasible ? std::cerr : std::cout) << o.text;
    code = std::max(code, o.code);
  }
  return code;
}

// ---- bench -----------------------------------------------------------------

struct BenchFlags {
  std::string nodes, edges, db, index;
  ModelFlags model;
  std::string ratios = "0.1,0.2,0.3";
  std::string lengths = "10";
  std::size_t queries = 100;
  std::uint64_t seed = 42;
  bool compare_prefix = false;
};

int cmd_bench(const BenchFlags& f) {
  auto data = load_all(f.nodes, f.edges, f.db, f.index);
  const auto model = f.model.build(data.network, data.db.representation());
  const Engine engine(data.db, data.index, model);
  const Engine prefix(data.db, data.index, model, {SelectionStrategy::kPrefix, {}});

  std::cout << "cost\t|Q|\ttau_ratio\tqueries\tcandidates";
  if (f.compare_prefix) std::cout << "\tprefix_candidates";
  std::cout << "\tmatches\tmincand_ms\tlookup_ms\tverify_ms\tUPR%\tCMR%\tTUR%\n";
  for (auto len_text : split_list(f.lengths)) {
    const auto len = static_cast<std::size_t>(parse_number(len_text, "query length"));
    const auto windows = sample_windows(data.db, len, f.queries, f.seed + len);
    for (auto ratio_text : split_list(f.ratios)) {
      const double ratio = parse_number(ratio_text, "tau ratio");
      double cand = 0, prefix_cand = 0, matches = 0;
      StageTimings t;
      VerifyStats st;
      for (const auto& w : windows) {
        const Query q{w, std::nullopt, ratio, {}};
        const auto r = engine.search(q);
        cand += static_cast<double>(r.candidate_count);
        matches += static_cast<double>(r.matches.size());
        t.mincand_ms += r.timings.mincand_ms;
        t.lookup_ms += r.timings.lookup_ms;
        t.verify_ms += r.timings.verify_ms;
        st += r.stats;
        if (f.compare_prefix) prefix_cand += static_cast<double>(prefix.candidate_count(q));
      }
      const double n = static_cast<double>(windows.size());
      std::printf("%s\t%zu\t%g\t%zu\t%.1f", f.model.cost.c_str(), len, ratio, windows.size(),
                  cand / n);
      if (f.compare_prefix) std::printf("\t%.1f", prefix_cand / n);
      std::printf("\t%.2f\t%.3f\t%.3f\t%.3f\t%.2f\t%.2f\t%.2f\n", matches / n, t.mincand_ms / n,
                  t.lookup_ms / n, t.verify_ms / n, 100 * st.upr(), 100 * st.cmr(),
                  100 * st.tur());
    }
  }
  return kOk;
}

// ---- oracle-check ----------------------------------------------------------

struct OracleFlags {
  std::size_t scenarios = 7;
  std::uint64_t seed = 1;
  std::string cost = "all";
  bool skip_examples = false;
};

int cmd_oracle_check(const OracleFlags& f) {
  bool ok = true;
  if (!f.skip_examples) {
    for (const auto& c : run_worked_examples()) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) std::cout << "  | " << c.detail;
      std::cout << '\n';
      ok &= c.passed;
    }
  }
  std::vector<std::pair<CostKind, Representation>> models;
  if (f.cost == "all") {
    models = {{CostKind::kLev, Representation::kVertex}, {CostKind::kLev, Representation::kEdge},
              {CostKind::kEdr, Representation::kVertex}, {CostKind::kErp, Representation::kVertex},
              {CostKind::kNetEdr, Representation::kVertex},
              {CostKind::kNetErp, Representation::kVertex},
              {CostKind::kSurs, Representation::kEdge}};
  } else {
    const auto kind = parse_cost_kind(f.cost);
    models = {{kind, kind == CostKind::kSurs ? Representation::kEdge : Representation::kVertex}};
  }
  for (std::size_t i = 0; i < f.scenarios; ++i) {
    const auto& [kind, rep] = models[i % models.size()];
    const auto report = run_oracle_equivalence(random_scenario(f.seed + i, kind, rep));
    std::cout << (report.passed() ? "PASS " : "FAIL ") << report.summary() << '\n';
    for (const auto& c : report.failures) std::cout << "  counterexample: " << c << '\n';
    ok &= report.passed();
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kOracleFailure;
}

void network_inputs(CLI::App* cmd, std::string& nodes, std::string& edges) {
  cmd->add_option("--nodes", nodes, "node file: id<TAB>lon<TAB>lat")->required()->check(CLI::ExistingFile);
  cmd->add_option("--edges", edges, "edge file: id<TAB>src<TAB>dst<TAB>weight")->required()->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subtrajectory similarity search under weighted edit distance"};
  app.set_config("--config", "", "INI or TOML file with option values; flags override it");
  app.require_subcommand(1);

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "generate a synthetic network and random-walk trajectories");
  g->add_option("--network", gen.network, "grid | geometric")->capture_default_str();
  g->add_option("--rows", gen.rows)->capture_default_str();
  g->add_option("--cols", gen.cols)->capture_default_str();
  g->add_option("--vertices", gen.vertices, "geometric network size")->capture_default_str();
  g->add_option("--k", gen.k, "geometric nearest-neighbor degree")->capture_default_str();
  g->add_option("--spacing", gen.spacing)->capture_default_str();
  g->add_option("--jitter", gen.jitter)->capture_default_str();
  g->add_option("--count", gen.count, "number of trajectories")->capture_default_str();
  g->add_option("--min-length", gen.min_length)->capture_default_str();
  g->add_option("--max-length", gen.max_length)->capture_default_str();
  g->add_option("--speed", gen.speed, "weight units per second")->capture_default_str();
  g->add_flag("--untimed", gen.untimed, "omit timestamps");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out-dir", gen.out_dir)->capture_default_str();

  IngestFlags ing;
  auto* i = app.add_subcommand("ingest", "validate trajectories against the network and save a db");
  network_inputs(i, ing.nodes, ing.edges);
  i->add_option("--trajectories", ing.trajectories)->required()->check(CLI::ExistingFile);
  i->add_option("--representation", ing.representation, "vertex | edge")->capture_default_str();
  i->add_option("--db", ing.db, "output db file")->required();
  i->add_flag("--allow-rejects", ing.allow_rejects, "exit 0 even if some trajectories were rejected");

  IndexFlags idx;
  auto* b = app.add_subcommand("build-index", "build and save the postings index of a db");
  b->add_option("--db", idx.db)->required()->check(CLI::ExistingFile);
  b->add_option("--index", idx.index, "output index file")->required();
  b->add_option("--order", idx.order, "id | departure")->capture_default_str();

  QueryFlags qf;
  auto* q = app.add_subcommand("query", "run queries; prints traj_id, s, t, wed per match");
  network_inputs(q, qf.nodes, qf.edges);
  q->add_option("--db", qf.db)->required()->check(CLI::ExistingFile);
  q->add_option("--index", qf.index)->required()->check(CLI::ExistingFile);
  qf.model.attach(q);
  q->add_option("--q", qf.query, "comma-separated vertex (or edge) ids");
  q->add_option("--query-file", qf.query_file, "one query per line")->check(CLI::ExistingFile);
  q->add_option("--sample", qf.sample, "sample this many queries from the db");
  q->add_option("--sample-length", qf.sample_length)->capture_default_str();
  q->add_option("--seed", qf.seed)->capture_default_str();
  q->add_option("--tau", qf.tau, "absolute threshold");
  q->add_option("--tau-ratio", qf.tau_ratio, "threshold as a fraction of the summed escape costs");
  q->add_option("--temporal", qf.temporal, "none | contained | overlaps")->capture_default_str();
  q->add_option("--t-lo", qf.t_lo);
  q->add_option("--t-hi", qf.t_hi);
  q->add_option("--format", qf.format, "tsv | jsonl")->capture_default_str();
  q->add_option("--strategy", qf.strategy, "approx | exact | prefix")->capture_default_str();
  q->add_flag("--stats", qf.stats, "also print candidate counts, UPR/CMR/TUR, and timings");
  q->add_flag("--oracle-check", qf.oracle_check, "compare against the exhaustive scan");
  q->add_option("--threads", qf.threads, "worker threads for batches")->capture_default_str();

  BenchFlags bf;
  auto* be = app.add_subcommand("bench", "sweep tau ratios and query lengths over sampled queries");
  network_inputs(be, bf.nodes, bf.edges);
  be->add_option("--db", bf.db)->required()->check(CLI::ExistingFile);
  be->add_option("--index", bf.index)->required()->check(CLI::ExistingFile);
  bf.model.attach(be);
  be->add_option("--ratios", bf.ratios)->capture_default_str();
  be->add_option("--lengths", bf.lengths)->capture_default_str();
  be->add_option("--queries", bf.queries, "queries per row")->capture_default_str();
  be->add_option("--seed", bf.seed)->capture_default_str();
  be->add_flag("--compare-prefix", bf.compare_prefix, "also count candidates of the prefix selection");

  OracleFlags of;
  auto* o = app.add_subcommand("oracle-check", "run worked examples and random equivalence scenarios");
  o->add_option("--scenarios", of.scenarios)->capture_default_str();
  o->add_option("--seed", of.seed)->capture_default_str();
  o->add_option("--cost", of.cost, "all or one cost name")->capture_default_str();
  o->add_flag("--skip-examples", of.skip_examples);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (i->parsed()) return cmd_ingest(ing);
    if (b->parsed()) return cmd_build_index(idx);
    if (q->parsed()) return cmd_query(qf);
    if (be->parsed()) return cmd_bench(bf);
    if (o->parsed()) return cmd_oracle_check(of);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const InfeasibleQuery& e) {
    std::cerr << "infeasible query: " << e.what() << '\n';
    return kInfeasible;
  }
  return kConfigError;
}
