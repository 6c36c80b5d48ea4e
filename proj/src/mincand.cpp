#include "wedsearch/mincand.hpp"

#include <algorithm>
#include <string>

namespace wedsearch {

namespace {

void check_feasible(std::span<const SelectionItem> items, double tau) {
  double total = 0.0;
  for (const auto& it : items) total += it.value;
  if (total < tau) {
    throw InfeasibleQuery("no tau-subsequence: sum of escape costs " + std::to_string(total) +
                          " is below tau " + std::to_string(tau));
  }
}

TauSubsequence assemble(std::span<const SelectionItem> items, std::vector<std::size_t> picked) {
  std::sort(picked.begin(), picked.end(),
            [&](std::size_t a, std::size_t b) { return items[a].position < items[b].position; });
  TauSubsequence out;
  for (std::size_t k : picked) {
    out.chosen.push_back({items[k].symbol, items[k].position});
    out.total_value += items[k].value;
    out.objective += items[k].weight;
  }
  return out;
}

}  // namespace

TauSubsequence solve_approx(std::span<const SelectionItem> items, double tau) {
  check_feasible(items, tau);
  const std::size_t n = items.size();
  std::vector<double> w(n, 0.0);
  std::vector<bool> open(n);
  for (std::size_t k = 0; k < n; ++k) open[k] = items[k].value > 0.0;
  std::vector<std::size_t> picked;
  double covered = 0.0;
  while (tau > covered) {
    const double residual = tau - covered;
    std::size_t best = n;
    double best_v = kInfinity;
    for (std::size_t k = 0; k < n; ++k) {
      if (!open[k]) continue;
      const double v =
          (static_cast<double>(items[k].weight) - w[k]) / std::min(items[k].value, residual);
      if (best == n || v < best_v ||
          (v == best_v && items[k].position < items[best].position)) {
        best = k;
        best_v = v;
      }
    }
    if (best == n) break;  // unreachable once feasibility holds
    for (std::size_t k = 0; k < n; ++k) {
      if (open[k]) w[k] += std::min(items[k].value, residual) * best_v;
    }
    open[best] = false;
    picked.push_back(best);
    covered += items[best].value;
  }
  return assemble(items, std::move(picked));
}

TauSubsequence solve_exact(std::span<const SelectionItem> items, double tau) {
  if (items.size() > 20) throw ConfigError("solve_exact supports at most 20 items");
  check_feasible(items, tau);
  // Items with zero value never help cover tau.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].value > 0.0) order.push_back(k);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return items[a].position < items[b].position; });
  const std::uint32_t n = static_cast<std::uint32_t>(order.size());
  bool found = false;
  std::uint64_t best_obj = 0;
  std::vector<std::size_t> best_set;
  std::vector<std::size_t> set;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double value = 0.0;
    std::uint64_t obj = 0;
    set.clear();
    for (std::uint32_t k = 0; k < n; ++k) {
      if (mask & (1u << k)) {
        value += items[order[k]].value;
        obj += items[order[k]].weight;
        set.push_back(items[order[k]].position);
      }
    }
    if (value < tau) continue;
    if (!found || obj < best_obj || (obj == best_obj && set < best_set)) {
      found = true;
      best_obj = obj;
      best_set = set;
    }
  }
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (std::binary_search(best_set.begin(), best_set.end(), items[k].position)) {
      picked.push_back(k);
    }
  }
  return assemble(items, std::move(picked));
}

TauSubsequence solve_prefix(std::span<const SelectionItem> items, double tau) {
  check_feasible(items, tau);
  std::vector<std::size_t> picked;
  double covered = 0.0;
  for (std::size_t k = 0; k < items.size() && covered < tau; ++k) {
    if (items[k].value <= 0.0) continue;
    picked.push_back(k);
    covered += items[k].value;
  }
  return assemble(items, std::move(picked));
}

}  // namespace wedsearch
