#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wedsearch/types.hpp"

namespace wedsearch {

/// One query position offered to the selection: value c(q) and weight
/// N_q = sum of n(b) over b in B(q).
struct SelectionItem {
  Symbol symbol = 0;
  std::size_t position = 0;  ///< 0-based index in Q
  double value = 0.0;
  std::uint64_t weight = 0;
};

struct ChosenSymbol {
  Symbol symbol = 0;
  std::size_t position = 0;
  friend bool operator==(const ChosenSymbol&, const ChosenSymbol&) = default;
};

/// A subsequence Q' with c(Q') >= tau. `chosen` is sorted by position.
struct TauSubsequence {
  std::vector<ChosenSymbol> chosen;
  double total_value = 0.0;
  std::uint64_t objective = 0;
};

/// Primal-dual greedy selection. Each round computes
/// v_q = (N_q - w_q) / min(c(q), tau - c(Q')) over unchosen q, takes the
/// argmin (smallest position on ties), then raises w_q by
/// min(c(q), tau - c(Q')) * v_{q*} for every unchosen q including q*.
/// Items with c(q) = 0 never enter. Throws InfeasibleQuery when the values
/// sum below tau.
TauSubsequence solve_approx(std::span<const SelectionItem> items, double tau);

/// Exhaustive minimizer of the objective; ties go to the lexicographically
/// smallest position set. Throws ConfigError for more than 20 items.
TauSubsequence solve_exact(std::span<const SelectionItem> items, double tau);

/// The first positions of Q, in order, until their values reach tau. A naive
/// baseline for comparisons.
TauSubsequence solve_prefix(std::span<const SelectionItem> items, double tau);

}  // namespace wedsearch
