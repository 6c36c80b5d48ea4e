#include "wedsearch/engine.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <unordered_map>

#include "wedsearch/oracle.hpp"

namespace wedsearch {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

std::string_view to_string(TemporalKind k) {
  switch (k) {
    case TemporalKind::kNone: return "none";
    case TemporalKind::kContained: return "contained";
    case TemporalKind::kOverlaps: return "overlaps";
  }
  return "?";
}

TemporalKind parse_temporal_kind(std::string_view s) {
  if (s == "none") return TemporalKind::kNone;
  if (s == "contained") return TemporalKind::kContained;
  if (s == "overlaps") return TemporalKind::kOverlaps;
  throw ConfigError("unknown temporal constraint '" + std::string(s) + "'");
}

std::string_view to_string(SelectionStrategy s) {
  switch (s) {
    case SelectionStrategy::kApprox: return "approx";
    case SelectionStrategy::kExact: return "exact";
    case SelectionStrategy::kPrefix: return "prefix";
  }
  return "?";
}

SelectionStrategy parse_selection_strategy(std::string_view s) {
  if (s == "approx") return SelectionStrategy::kApprox;
  if (s == "exact") return SelectionStrategy::kExact;
  if (s == "prefix") return SelectionStrategy::kPrefix;
  throw ConfigError("unknown selection strategy '" + std::string(s) + "'");
}

bool span_satisfies(const TemporalConstraint& c, const Trajectory& traj,
                    Representation representation, std::size_t s, std::size_t t) {
  if (c.kind == TemporalKind::kNone || !traj.timed()) return true;
  const double ts = traj.timestamps[s];
  const double tt = traj.timestamps[representation == Representation::kEdge ? t + 1 : t];
  if (c.kind == TemporalKind::kContained) return c.lo <= ts && tt <= c.hi;
  return ts <= c.hi && tt >= c.lo;
}

bool trajectory_may_satisfy(const TemporalConstraint& c, const Trajectory& traj) {
  if (c.kind == TemporalKind::kNone || !traj.timed()) return true;
  return traj.timestamps.front() <= c.hi && traj.timestamps.back() >= c.lo;
}

Engine::Engine(const TrajectoryDb& db, const InvertedIndex& index, const CostModel& model,
               EngineOptions options)
    : db_(&db), index_(&index), model_(&model), options_(options) {
  if (db.representation() != index.representation() ||
      db.representation() != model.representation()) {
    throw ConfigError("db, index, and cost model use different representations");
  }
  if (db.alphabet_size() != index.alphabet_size() ||
      db.alphabet_size() != model.alphabet_size()) {
    throw ConfigError("db, index, and cost model use different alphabets");
  }
  if (index.trajectory_count() != db.size()) {
    throw ConfigError("index covers " + std::to_string(index.trajectory_count()) +
                      " trajectories but the db holds " + std::to_string(db.size()));
  }
}

double Engine::resolve_tau(const Query& query) const {
  if (query.symbols.empty()) throw ConfigError("empty query");
  for (Symbol s : query.symbols) model_->check_symbol(s);
  if (query.tau.has_value() == query.tau_ratio.has_value()) {
    throw ConfigError("give exactly one of tau and tau_ratio");
  }
  if (query.temporal.kind != TemporalKind::kNone && !(query.temporal.lo <= query.temporal.hi)) {
    throw ConfigError("temporal interval has lo > hi");
  }
  double escape = 0.0;
  double inserts = 0.0;
  for (Symbol s : query.symbols) {
    escape += model_->escape_cost(s);
    inserts += model_->ins(s);
  }
  double tau = 0.0;
  if (query.tau_ratio) {
    const double r = *query.tau_ratio;
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("tau_ratio must lie in (0, 1]");
    tau = r * escape;
  } else {
    tau = *query.tau;
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
  if (escape < tau) {
    throw InfeasibleQuery("sum of escape costs " + std::to_string(escape) + " is below tau " +
                          std::to_string(tau) + "; lower tau or raise eta");
  }
  if (inserts < tau) {
    throw InfeasibleQuery("total insertion cost of the query " + std::to_string(inserts) +
                          " is below tau " + std::to_string(tau));
  }
  return tau;
}

std::vector<SelectionItem> Engine::selection_items(std::span<const Symbol> q) const {
  std::unordered_map<Symbol, std::pair<double, std::uint64_t>> memo;
  std::vector<SelectionItem> items;
  items.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto it = memo.find(q[i]);
    if (it == memo.end()) {
      std::uint64_t weight = 0;
      for (Symbol b : neighbors(q[i])) weight += db_->frequency(b);
      it = memo.emplace(q[i], std::pair{model_->escape_cost(q[i]), weight}).first;
    }
    items.push_back({q[i], i, it->second.first, it->second.second});
  }
  return items;
}

TauSubsequence Engine::select(const Query& query, double tau) const {
  const auto items = selection_items(query.symbols);
  switch (options_.strategy) {
    case SelectionStrategy::kApprox: return solve_approx(items, tau);
    case SelectionStrategy::kExact: return solve_exact(items, tau);
    case SelectionStrategy::kPrefix: return solve_prefix(items, tau);
  }
  return solve_approx(items, tau);
}

std::vector<Candidate> Engine::generate_candidates(const TauSubsequence& selection) const {
  std::vector<Candidate> out;
  out.reserve(selection.objective);
  for (const auto& chosen : selection.chosen) {
    for (Symbol b : neighbors(chosen.symbol)) {
      for (const auto& posting : index_->lookup(b)) {
        out.push_back({posting.trajectory, posting.position,
                       static_cast<std::uint32_t>(chosen.position)});
      }
    }
  }
  return out;
}

QueryResult Engine::search(const Query& query) const {
  QueryResult result;
  result.tau = resolve_tau(query);

  auto t0 = Clock::now();
  result.selection = select(query, result.tau);
  result.timings.mincand_ms = elapsed_ms(t0);

  t0 = Clock::now();
  std::vector<Candidate> candidates;
  const auto& temporal = query.temporal;
  if (temporal.kind != TemporalKind::kNone &&
      index_->order() == PostingsOrder::kByDeparture) {
    for (const auto& chosen : result.selection.chosen) {
      for (Symbol b : neighbors(chosen.symbol)) {
        result.candidate_count += index_->lookup(b).size();
        for (const auto& posting : index_->lookup_temporal(b, temporal.lo, temporal.hi)) {
          candidates.push_back({posting.trajectory, posting.position,
                                static_cast<std::uint32_t>(chosen.position)});
        }
      }
    }
  } else {
    candidates = generate_candidates(result.selection);
    result.candidate_count = candidates.size();
    if (temporal.kind != TemporalKind::kNone) {
      std::erase_if(candidates, [&](const Candidate& c) {
        return !trajectory_may_satisfy(temporal, db_->get(c.trajectory));
      });
    }
  }
  result.verified_candidates = candidates.size();
  result.timings.lookup_ms = elapsed_ms(t0);

  t0 = Clock::now();
  Verifier verifier(*db_, *model_, query.symbols, result.tau, options_.verifier);
  result.matches = verifier.verify(candidates);
  result.stats = verifier.stats();
  if (temporal.kind != TemporalKind::kNone) {
    std::erase_if(result.matches, [&](const MatchResult& m) {
      return !span_satisfies(temporal, db_->get(m.trajectory), db_->representation(), m.start,
                             m.end);
    });
  }
  result.timings.verify_ms = elapsed_ms(t0);
  return result;
}

std::uint64_t Engine::candidate_count(const Query& query) const {
  const double tau = resolve_tau(query);
  const auto selection = select(query, tau);
  std::uint64_t count = 0;
  for (const auto& chosen : selection.chosen) {
    for (Symbol b : neighbors(chosen.symbol)) count += index_->lookup(b).size();
  }
  return count;
}

QueryResult Engine::plain_sw_scan(const Query& query) const {
  QueryResult result;
  result.tau = resolve_tau(query);
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < db_->size(); ++i) {
    const auto& traj = db_->get(i);
    for (const auto& m : all_matches_oracle(query.symbols, traj.symbols, *model_, result.tau)) {
      if (!span_satisfies(query.temporal, traj, db_->representation(), m.start, m.end)) continue;
      result.matches.push_back({static_cast<std::uint32_t>(i), m.start, m.end, m.value});
    }
  }
  result.timings.verify_ms = elapsed_ms(t0);
  return result;
}

}  // namespace wedsearch
