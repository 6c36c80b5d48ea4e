#pragma once

#include <span>
#include <vector>

#include "wedsearch/cost_model.hpp"

namespace wedsearch {

/// A matching span P[start..end] (0-based, inclusive) of one trajectory.
struct SpanMatch {
  std::size_t start = 0;
  std::size_t end = 0;
  double value = 0.0;
  friend bool operator==(const SpanMatch&, const SpanMatch&) = default;
};

/// Every (start, end) with start <= end and wed(P[start..end], Q) < tau, in
/// (start, end) order. One forward DP per start position: O(|P|^2 |Q|).
/// Exhaustive ground truth; it shares no code with the verifier.
std::vector<SpanMatch> all_matches_oracle(std::span<const Symbol> q, std::span<const Symbol> p,
                                          const CostModel& model, double tau);

}  // namespace wedsearch
