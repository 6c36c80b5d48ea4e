#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "wedsearch/trajectory.hpp"
#include "wedsearch/wed.hpp"

namespace wedsearch {

/// Anchor alignment: P_j of trajectory `trajectory` (dense db index) against
/// Q_{i_q}. Positions are 0-based.
struct Candidate {
  std::uint32_t trajectory = 0;
  std::uint32_t position = 0;
  std::uint32_t query_position = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Span P[start..end] (0-based, inclusive) of trajectory `trajectory` with
/// its weighted edit distance to Q.
struct MatchResult {
  std::uint32_t trajectory = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  double value = 0.0;
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Column counters. A column is one prefix length k of one direction of one
/// candidate. `columns_considered` is what an unpruned scan would touch:
/// |P| per candidate. Surviving columns are step_dp_calls + cache_hits.
struct VerifyStats {
  std::uint64_t candidates = 0;
  std::uint64_t candidates_skipped = 0;  ///< anchor cost alone reaches tau
  std::uint64_t columns_considered = 0;
  std::uint64_t columns_pruned_early = 0;
  std::uint64_t step_dp_calls = 0;
  std::uint64_t cache_hits = 0;

  std::uint64_t surviving() const { return step_dp_calls + cache_hits; }
  /// Unpruned position rate: surviving / considered.
  double upr() const;
  /// Cache miss rate: step_dp_calls / surviving.
  double cmr() const;
  /// Total unpruned rate: step_dp_calls / considered (= upr * cmr).
  double tur() const;

  VerifyStats& operator+=(const VerifyStats& o);
};

struct VerifierOptions {
  /// Recompute every cache hit from the boundary column and keep stepping
  /// past early termination; violations throw std::logic_error.
  bool debug_checks = false;
  /// Added to the residual threshold used for early termination. Nonzero
  /// values exist only to prove the test suite notices a broken bound.
  double tau_prime_offset = 0.0;
};

/// Trie of DP columns for one fixed query side. The column of a node at
/// depth k is the DP column of the k-symbol path leading to it; the root
/// holds the boundary column.
class CacheTrie {
 public:
  using Node = std::uint32_t;
  static constexpr Node kRoot = 0;

  explicit CacheTrie(QueryProfile query);

  const QueryProfile& query() const { return query_; }
  std::size_t node_count() const { return lower_bound_.size(); }
  std::span<const double> column(Node x) const;
  double lower_bound(Node x) const { return lower_bound_[x]; }
  double value(Node x) const { return column(x).back(); }

  /// Existing child along `symbol`, if any.
  std::optional<Node> find_child(Node parent, Symbol symbol) const;
  /// New child along `symbol` with its column computed by one DP step.
  Node create_child(Node parent, Symbol symbol);

 private:
  static std::uint64_t key(Node parent, Symbol symbol) {
    return (static_cast<std::uint64_t>(parent) << 32) | symbol;
  }

  QueryProfile query_;
  std::size_t stride_;
  std::vector<double> columns_;
  std::vector<double> lower_bound_;
  std::unordered_map<std::uint64_t, Node> children_;
};

/// E[k] = wed(P^d_{1:k}, Q^d) for k = 0.. until the first k whose column
/// minimum reaches tau_prime (that k is not stored). P^d is `p` read
/// front-to-back, or back-to-front when `reversed`.
std::vector<double> all_prefix_wed(CacheTrie& trie, std::span<const Symbol> p, bool reversed,
                                   double tau_prime, VerifyStats& stats,
                                   const VerifierOptions& options = {});

/// Per-query verification state: tries are created on first use per
/// (direction, i_q) and live until the verifier is destroyed.
class Verifier {
 public:
  Verifier(const TrajectoryDb& db, const CostModel& model, std::span<const Symbol> query,
           double tau, VerifierOptions options = {});

  /// Every span P[j - k_b .. j + k_f] with
  /// sub(Q_{i_q}, P_j) + E^b[k_b] + E^f[k_f] < tau, appended to `out`.
  void verify_candidate(const Candidate& candidate, std::vector<MatchResult>& out);

  /// Deduplicated union over candidates, keeping the smallest value per span,
  /// sorted by (trajectory, start, end).
  std::vector<MatchResult> verify(std::span<const Candidate> candidates);

  const VerifyStats& stats() const { return stats_; }
  std::size_t trie_count() const { return tries_.size(); }

 private:
  CacheTrie& trie(bool backward, std::uint32_t query_position);

  const TrajectoryDb* db_;
  const CostModel* model_;
  std::vector<Symbol> query_;
  QueryProfile profile_;
  double tau_;
  VerifierOptions options_;
  VerifyStats stats_;
  std::map<std::pair<bool, std::uint32_t>, std::unique_ptr<CacheTrie>> tries_;
};

/// Sorts by (trajectory, start, end) and keeps the smallest value per span.
void normalize_matches(std::vector<MatchResult>& matches);

}  // namespace wedsearch
