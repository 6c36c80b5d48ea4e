#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wedsearch/cost_model.hpp"
#include "wedsearch/inverted_index.hpp"
#include "wedsearch/mincand.hpp"
#include "wedsearch/trajectory.hpp"
#include "wedsearch/verifier.hpp"

namespace wedsearch {

enum class TemporalKind : std::uint8_t {
  kNone,
  kContained,  ///< lo <= T_s and T_t <= hi
  kOverlaps,   ///< T_s <= hi and T_t >= lo
};

std::string_view to_string(TemporalKind k);
TemporalKind parse_temporal_kind(std::string_view s);

struct TemporalConstraint {
  TemporalKind kind = TemporalKind::kNone;
  double lo = 0.0;
  double hi = 0.0;
};

/// Whether span P[s..t] (0-based) of `traj` satisfies the constraint. The
/// span's times are the timestamps of its first and last vertex; in edge
/// representation those are vertex indices s and t + 1. Untimed trajectories
/// always satisfy it.
bool span_satisfies(const TemporalConstraint& c, const Trajectory& traj,
                    Representation representation, std::size_t s, std::size_t t);

/// Whether [T_first, T_last] of `traj` meets the constraint interval at all.
bool trajectory_may_satisfy(const TemporalConstraint& c, const Trajectory& traj);

struct Query {
  std::vector<Symbol> symbols;
  /// Exactly one of tau / tau_ratio. A ratio resolves to ratio * c(Q).
  std::optional<double> tau;
  std::optional<double> tau_ratio;
  TemporalConstraint temporal;
};

enum class SelectionStrategy : std::uint8_t { kApprox, kExact, kPrefix };

std::string_view to_string(SelectionStrategy s);
SelectionStrategy parse_selection_strategy(std::string_view s);

struct StageTimings {
  double mincand_ms = 0.0;
  double lookup_ms = 0.0;
  double verify_ms = 0.0;
};

struct QueryResult {
  std::vector<MatchResult> matches;  ///< sorted by (trajectory, start, end)
  double tau = 0.0;
  TauSubsequence selection;
  /// Candidates before temporal filtering; equals selection.objective.
  std::uint64_t candidate_count = 0;
  /// Candidates handed to the verifier.
  std::uint64_t verified_candidates = 0;
  VerifyStats stats;
  StageTimings timings;
};

struct EngineOptions {
  SelectionStrategy strategy = SelectionStrategy::kApprox;
  VerifierOptions verifier;
};

/// Read-only over its inputs; concurrent searches are safe because each
/// search builds private verifier state.
class Engine {
 public:
  /// Throws ConfigError when db, index, and model disagree on
  /// representation or alphabet.
  Engine(const TrajectoryDb& db, const InvertedIndex& index, const CostModel& model,
         EngineOptions options = {});

  const TrajectoryDb& db() const { return *db_; }
  const CostModel& model() const { return *model_; }
  const EngineOptions& options() const { return options_; }

  /// Checks the query and returns the resolved tau. Throws ConfigError for
  /// malformed queries and InfeasibleQuery when c(Q) < tau or the total
  /// insertion cost of Q is below tau.
  double resolve_tau(const Query& query) const;

  /// One item per query position with c(q) and N_q.
  std::vector<SelectionItem> selection_items(std::span<const Symbol> q) const;

  TauSubsequence select(const Query& query, double tau) const;

  /// Every (trajectory, j, i_q) with P_j in B(Q_{i_q}) for (Q_{i_q}) in the
  /// selection, before any temporal filtering.
  std::vector<Candidate> generate_candidates(const TauSubsequence& selection) const;

  QueryResult search(const Query& query) const;
  std::uint64_t candidate_count(const Query& query) const;

  /// Exhaustive scan of every trajectory; the reference answer.
  QueryResult plain_sw_scan(const Query& query) const;

 private:
  std::vector<Symbol> neighbors(Symbol q) const { return model_->neighbors(q); }

  const TrajectoryDb* db_;
  const InvertedIndex* index_;
  const CostModel* model_;
  EngineOptions options_;
};

}  // namespace wedsearch
