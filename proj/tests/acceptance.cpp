// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "wedsearch/mincand.hpp"
#include "wedsearch/scenario.hpp"

using namespace wedsearch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

/// Independent subset enumeration: minimum total weight among subsets whose
/// values reach tau.
std::uint64_t brute_force_optimum(const std::vector<SelectionItem>& items, double tau) {
  std::uint64_t best = UINT64_MAX;
  const unsigned n = static_cast<unsigned>(items.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double v = 0;
    std::uint64_t w = 0;
    for (unsigned k = 0; k < n; ++k) {
      if (mask >> k & 1u) {
        v += items[k].value;
        w += items[k].weight;
      }
    }
    if (v >= tau && w < best) best = w;
  }
  return best;
}

void criterion_examples() {
  const auto t0 = Clock::now();
  const auto checks = run_worked_examples();
  const double secs = seconds_since(t0);
  bool ok = !checks.empty();
  for (const auto& c : checks) {
    std::printf("    %-4s %s%s%s\n", c.passed ? "ok" : "BAD", c.name.c_str(),
                c.detail.empty() ? "" : "  | ", c.detail.c_str());
    ok &= c.passed;
  }
  verdict(1, "worked examples", ok && secs < 1.0,
          std::to_string(checks.size()) + " examples in " + std::to_string(secs) + " s");
}

void criterion_mincand() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t ratio_violations = 0;
  std::size_t constant_violations = 0;
  std::size_t exact_disagreements = 0;
  std::size_t infeasible_outputs = 0;
  double worst_ratio = 1.0;
  const int instances = 1200;
  for (int it = 0; it < instances; ++it) {
    std::uniform_int_distribution<std::size_t> len(1, 15);
    const std::size_t n = len(rng);
    const bool constant = it % 3 == 0;
    const bool integral = it % 2 == 0;
    std::uniform_real_distribution<double> real_value(0.05, 5.0);
    std::uniform_int_distribution<int> int_value(1, 6);
    std::uniform_int_distribution<std::uint64_t> weight(0, 60);
    const double c_const = integral ? int_value(rng) : real_value(rng);
    std::vector<SelectionItem> items;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = constant ? c_const : (integral ? int_value(rng) : real_value(rng));
      items.push_back({static_cast<Symbol>(i), i, v, weight(rng)});
      total += v;
    }
    std::uniform_real_distribution<double> frac(0.01, 1.0);
    const double tau = total * frac(rng);
    const auto approx = solve_approx(items, tau);
    const auto exact = solve_exact(items, tau);
    if (approx.total_value < tau || exact.total_value < tau) ++infeasible_outputs;
    if (exact.objective != brute_force_optimum(items, tau)) ++exact_disagreements;
    if (approx.objective > 2 * exact.objective) ++ratio_violations;
    if (exact.objective > 0) {
      worst_ratio = std::max(worst_ratio, static_cast<double>(approx.objective) /
                                              static_cast<double>(exact.objective));
    }
    if (constant) {
      // Minimum cardinality k with k * c >= tau; the optimum takes the k
      // smallest weights.
      std::vector<std::uint64_t> ws;
      for (const auto& x : items) ws.push_back(x.weight);
      std::sort(ws.begin(), ws.end());
      std::size_t k = 0;
      double acc = 0;
      std::uint64_t smallest = 0;
      while (acc < tau) {
        acc += c_const;
        smallest += ws[k++];
      }
      if (approx.objective != exact.objective || approx.objective != smallest ||
          approx.chosen.size() != k) {
        ++constant_violations;
      }
    }
  }
  const double secs = seconds_since(t0);
  verdict(3, "selection guarantees",
          ratio_violations == 0 && constant_violations == 0 && exact_disagreements == 0 &&
              infeasible_outputs == 0 && secs < 60.0,
          std::to_string(instances) + " instances, ratio violations " +
              std::to_string(ratio_violations) + ", constant-cost violations " +
              std::to_string(constant_violations) + ", exact vs brute force " +
              std::to_string(exact_disagreements) + ", worst ratio " + std::to_string(worst_ratio) +
              ", " + std::to_string(secs) + " s");
}

}  // namespace

int main() {
  criterion_examples();

  // Scenario sweep shared by criteria 2 and 4 to 8.
  const std::vector<std::pair<CostKind, Representation>> models{
      {CostKind::kLev, Representation::kVertex}, {CostKind::kLev, Representation::kEdge},
      {CostKind::kEdr, Representation::kVertex}, {CostKind::kErp, Representation::kVertex},
      {CostKind::kNetEdr, Representation::kVertex}, {CostKind::kNetErp, Representation::kVertex},
      {CostKind::kSurs, Representation::kEdge}};
  const int seeds_per_model = 8;
  const auto t0 = Clock::now();
  std::vector<ScenarioReport> reports;
  std::size_t persistence_scenarios = 0;
  for (int s = 0; s < seeds_per_model; ++s) {
    for (const auto& [kind, rep] : models) {
      auto spec = random_scenario(1000 + 37 * static_cast<std::uint64_t>(s) +
                                      static_cast<std::uint64_t>(kind),
                                  kind, rep);
      if (persistence_scenarios < 10) {
        spec.persistence = true;
        ++persistence_scenarios;
      }
      reports.push_back(run_oracle_equivalence(spec));
      const auto& r = reports.back();
      std::printf("    %s %s\n", r.passed() ? "ok " : "BAD", r.summary().c_str());
      for (const auto& f : r.failures) std::printf("      counterexample: %s\n", f.c_str());
      std::fflush(stdout);
    }
  }
  const double sweep_secs = seconds_since(t0);

  ScenarioReport total;
  std::size_t persisted = 0;
  for (const auto& r : reports) {
    total.queries += r.queries;
    total.oracle_matches += r.oracle_matches;
    total.empty_queries += r.empty_queries;
    total.discrepancies += r.discrepancies;
    total.coverage_misses += r.coverage_misses;
    total.count_mismatches += r.count_mismatches;
    total.conservation_violations += r.conservation_violations;
    total.rate_identity_violations += r.rate_identity_violations;
    total.temporal_queries += r.temporal_queries;
    total.temporal_violations += r.temporal_violations;
    total.prefilter_violations += r.prefilter_violations;
    total.monotonicity_violations += r.monotonicity_violations;
    total.persistence_checks += r.persistence_checks;
    total.persistence_mismatches += r.persistence_mismatches;
    if (r.persistence_checks > 0) ++persisted;
    total.stats += r.stats;
    total.stats_ratio_01 += r.stats_ratio_01;
  }

  verdict(2, "search equals exhaustive scan",
          reports.size() >= 50 && total.discrepancies == 0 && total.monotonicity_violations == 0 &&
              sweep_secs < 600.0,
          std::to_string(reports.size()) + " scenarios, " + std::to_string(total.queries) +
              " queries, " + std::to_string(total.oracle_matches) + " reference matches, " +
              std::to_string(total.empty_queries) + " empty-result queries, " +
              std::to_string(total.discrepancies) + " discrepancies, " +
              std::to_string(sweep_secs) + " s");

  criterion_mincand();

  verdict(4, "every match covered by an anchored candidate", total.coverage_misses == 0,
          std::to_string(total.coverage_misses) + " misses over " +
              std::to_string(total.oracle_matches) + " matches");

  const auto& st = total.stats;
  const auto& st01 = total.stats_ratio_01;
  verdict(5, "verifier column economy",
          total.conservation_violations == 0 && total.rate_identity_violations == 0,
          "step_dp " + std::to_string(st.step_dp_calls) + " <= baseline " +
              std::to_string(st.columns_considered) + ", violations " +
              std::to_string(total.conservation_violations) + "/" +
              std::to_string(total.rate_identity_violations) + "; at tau_ratio 0.1: UPR " +
              std::to_string(100 * st01.upr()) + "%, CMR " + std::to_string(100 * st01.cmr()) +
              "%, TUR " + std::to_string(100 * st01.tur()) + "%");

  verdict(6, "temporal constraints",
          total.temporal_queries > 0 && total.temporal_violations == 0 &&
              total.prefilter_violations == 0,
          std::to_string(total.temporal_queries) + " constrained query pairs, " +
              std::to_string(total.temporal_violations) + " mismatches, " +
              std::to_string(total.prefilter_violations) + " pre-filter losses");

  verdict(7, "persistence round-trip",
          persisted >= 10 && total.persistence_mismatches == 0,
          std::to_string(persisted) + " scenarios, " + std::to_string(total.persistence_checks) +
              " comparisons, " + std::to_string(total.persistence_mismatches) + " mismatches");

  verdict(8, "candidate-count identity", total.count_mismatches == 0,
          std::to_string(total.count_mismatches) + " mismatches over " +
              std::to_string(total.queries) + " queries");

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
