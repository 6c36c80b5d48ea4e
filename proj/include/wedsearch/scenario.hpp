#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wedsearch/cost_model.hpp"
#include "wedsearch/verifier.hpp"

namespace wedsearch {

/// One reproduced worked example.
struct ExampleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Small hand-built instances with known answers: Levenshtein and SURS
/// distances, neighbor sets and escape costs of a four-symbol table, the
/// selection objective table and greedy trace, postings layout, anchored
/// decomposition and trie reuse, and the end-to-end result set.
std::vector<ExampleCheck> run_worked_examples();

/// A seeded random workload: grid network, random-walk trajectories, and a
/// sweep of sampled queries over query lengths and tau ratios.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  CostKind kind = CostKind::kLev;
  /// Only consulted for Lev; SURS is always edge-based, the rest vertex-based.
  Representation representation = Representation::kVertex;
  std::size_t grid_rows = 12;
  std::size_t grid_cols = 12;
  std::size_t trajectories = 150;
  std::size_t min_length = 10;
  std::size_t max_length = 60;
  std::vector<std::size_t> query_lengths{5, 10, 20};
  std::vector<double> tau_ratios{0.05, 0.1, 0.2, 0.3};
  /// Also run every query under both interval constraints.
  bool temporal = true;
  /// Also round-trip the db and index through files and compare results.
  bool persistence = false;
  std::filesystem::path scratch_dir;  ///< defaults to the system temp dir
  VerifierOptions verifier;
  std::size_t max_failures_reported = 3;
};

/// Sizes drawn from the seed within the desk-scale bounds (at most 400
/// vertices, 100 to 300 trajectories of 10 to 60 vertices).
ScenarioSpec random_scenario(std::uint64_t seed, CostKind kind,
                             Representation representation = Representation::kVertex);

std::string describe(const ScenarioSpec& spec);

struct ScenarioReport {
  std::string label;
  std::size_t queries = 0;  ///< searches compared against the scan
  std::size_t oracle_matches = 0;
  std::size_t empty_queries = 0;
  std::size_t discrepancies = 0;
  std::size_t coverage_misses = 0;
  std::size_t count_mismatches = 0;
  std::size_t conservation_violations = 0;
  std::size_t rate_identity_violations = 0;
  std::size_t temporal_queries = 0;
  std::size_t temporal_violations = 0;
  std::size_t prefilter_violations = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t persistence_checks = 0;
  std::size_t persistence_mismatches = 0;
  VerifyStats stats;
  VerifyStats stats_ratio_01;  ///< queries at tau_ratio = 0.1 only
  std::vector<std::string> failures;  ///< shrunk counterexamples

  bool passed() const;
  std::string summary() const;
};

/// Compares the indexed search against the exhaustive scan on every query of
/// the sweep and checks candidate coverage, the candidate-count identity,
/// verifier counters, temporal filtering, and threshold monotonicity.
/// Failing queries are shrunk (drop trajectories, truncate them, shorten Q)
/// before being reported.
ScenarioReport run_oracle_equivalence(const ScenarioSpec& spec);

}  // namespace wedsearch
