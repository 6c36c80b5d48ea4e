#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wedsearch/cost_model.hpp"
#include "wedsearch/types.hpp"

namespace wedsearch {

/// Per-query cost lookups. For the network-distance kinds the distance rows
/// of the query symbols are pinned once, so DP cells never touch the shared
/// shortest-path memo.
class QueryProfile {
 public:
  QueryProfile(const CostModel& model, std::span<const Symbol> query);

  std::size_t size() const { return symbols_.size(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  const CostModel& model() const { return *model_; }

  /// ins(Q_j), 0-based j.
  double ins(std::size_t j) const { return ins_[j]; }
  /// sub(Q_j, p), 0-based j.
  double sub(std::size_t j, Symbol p) const {
    if (!rows_.empty()) return symbols_[j] == p ? 0.0 : model_->sub_from_distance((*rows_[j])[p]);
    return model_->sub(symbols_[j], p);
  }
  double del(Symbol p) const { return model_->del(p); }

 private:
  const CostModel* model_;
  std::vector<Symbol> symbols_;
  std::vector<double> ins_;
  std::vector<std::shared_ptr<const std::vector<double>>> rows_;
};

/// One DP column: entry j holds wed(P_{1:k}, Q_{1:j}) for the column's prefix
/// length k.
using DpColumn = std::vector<double>;

/// Column for k = 0: prefix sums of ins(Q_j).
DpColumn boundary_column(const QueryProfile& query);

/// Advances `prev` (prefix length k) by data symbol p to prefix length k + 1.
DpColumn step_dp(const QueryProfile& query, Symbol p, std::span<const double> prev);
/// In-place variant writing into `out` (sized query.size() + 1).
void step_dp_into(const QueryProfile& query, Symbol p, std::span<const double> prev,
                  std::span<double> out);

/// Full matrix, column k = prefix P_{1:k}; computed directly from the
/// recursion without step_dp.
std::vector<DpColumn> wed_matrix(std::span<const Symbol> p, std::span<const Symbol> q,
                                 const CostModel& model);

/// wed(P, Q) by the textbook O(|P||Q|) recursion.
double wed(std::span<const Symbol> p, std::span<const Symbol> q, const CostModel& model);

struct BestMatch {
  std::size_t start = 0;  ///< 0-based, inclusive
  std::size_t end = 0;    ///< 0-based, inclusive
  double value = kInfinity;
  friend bool operator==(const BestMatch&, const BestMatch&) = default;
};

/// Substring P[start..end] minimizing wed(Q, P[start..end]) with a single
/// O(|P||Q|) pass that carries each cell's start index. The substring is
/// never empty. Ties go to the smallest end, then prefer substitution, then
/// deletion of Q_i, then consumption of P_j, then the earlier start.
/// Precondition: |P| >= 1.
BestMatch sw_best_match(std::span<const Symbol> q, std::span<const Symbol> p,
                        const CostModel& model);

}  // namespace wedsearch
