#include <cmath>
#include <sstream>

#include "wedsearch/engine.hpp"
#include "wedsearch/network.hpp"
#include "wedsearch/oracle.hpp"
#include "wedsearch/scenario.hpp"
#include "wedsearch/wed.hpp"

namespace wedsearch {

namespace {

// Symbols of the four-letter table instance.
constexpr Symbol A = 0, B = 1, C = 2, D = 3;

CostTable four_symbol_table() {
  return {{{0, 5, 3, 6}, {5, 0, 2, 0}, {3, 2, 0, 5}, {6, 0, 5, 0}}, {4, 1, 3, 4}};
}

std::vector<Symbol> letters(std::string_view s) {
  std::vector<Symbol> out;
  for (char ch : s) out.push_back(static_cast<Symbol>(ch - 'A'));
  return out;
}

/// A path network with `n` vertices; only the alphabet size matters to the
/// unit-cost examples.
RoadNetwork path_network(std::size_t n) {
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({static_cast<std::int64_t>(i), static_cast<double>(i), 0.0});
    if (i > 0) {
      edges.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(i - 1),
                       static_cast<std::int64_t>(i), 1.0 + static_cast<double>(i)});
    }
  }
  return RoadNetwork::from_records(nodes, edges);
}

class Checks {
 public:
  void add(std::string name, bool ok, std::string detail) {
    out_.push_back({std::move(name), ok, std::move(detail)});
  }
  std::vector<ExampleCheck> take() { return std::move(out_); }

 private:
  std::vector<ExampleCheck> out_;
};

std::string join(const std::vector<MatchResult>& ms) {
  std::ostringstream s;
  s << '{';
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) s << ", ";
    s << '(' << ms[i].trajectory + 1 << ',' << ms[i].start + 1 << ',' << ms[i].end + 1 << ')';
  }
  s << '}';
  return s.str();
}

std::string join(const TauSubsequence& t) {
  std::ostringstream s;
  s << '{';
  for (std::size_t i = 0; i < t.chosen.size(); ++i) {
    if (i) s << ", ";
    s << '(' << static_cast<char>('A' + t.chosen[i].symbol) << ',' << t.chosen[i].position + 1 << ')';
  }
  s << "} objective " << t.objective;
  return s.str();
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

void levenshtein_examples(Checks& checks) {
  const auto net = path_network(6);
  CostConfig config;
  config.kind = CostKind::kLev;
  const auto lev = CostModel::create(config, net);
  const double v = wed(letters("BCD"), letters("BFD"), lev);
  checks.add("lev wed(BCD, BFD) = 1", near(v, 1.0), "got " + std::to_string(v));

  const auto p = letters("ABCDE");
  const auto q = letters("BFD");
  const auto all = all_matches_oracle(q, p, lev, 2.0);
  bool found = false;
  for (const auto& m : all) found |= m.start == 1 && m.end == 3 && near(m.value, 1.0);
  checks.add("lev P[2..4] = BCD matches BFD at tau 2", found,
             std::to_string(all.size()) + " spans below tau");
  const auto best = sw_best_match(q, p, lev);
  checks.add("lev best substring of ABCDE for BFD is BCD",
             best.start == 1 && best.end == 3 && near(best.value, 1.0),
             "got [" + std::to_string(best.start + 1) + ", " + std::to_string(best.end + 1) + "]");
}

void surs_example(Checks& checks) {
  // Seven edges a..g on a path, with distinct weights.
  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  const double w[] = {1.5, 2.0, 3.25, 0.75, 4.0, 2.5, 1.0};
  for (int i = 0; i <= 7; ++i) nodes.push_back({i, static_cast<double>(i), 0.0});
  for (int i = 0; i < 7; ++i) edges.push_back({i, i, i + 1, w[i]});
  const auto net = RoadNetwork::from_records(nodes, edges);
  CostConfig config;
  config.kind = CostKind::kSurs;
  const auto surs = CostModel::create(config, net);
  const std::vector<Symbol> p{1, 4, 5, 6};     // befg
  const std::vector<Symbol> q{0, 1, 2, 3, 6};  // abcdg
  const double v = wed(p, q, surs);
  const double expect = w[0] + w[2] + w[3] + w[4] + w[5];
  checks.add("surs(befg, abcdg) = w(a)+w(c)+w(d)+w(e)+w(f)", near(v, expect),
             "got " + std::to_string(v) + " want " + std::to_string(expect));
}

void table_examples(Checks& checks) {
  const auto model = CostModel::from_table(four_symbol_table(), 0.0);
  const double expect_c[] = {3, 1, 2, 4};
  bool ok = true;
  std::string got;
  for (Symbol s = 0; s < 4; ++s) {
    ok &= near(model.escape_cost(s), expect_c[s]);
    got += std::to_string(model.escape_cost(s)) + ' ';
  }
  checks.add("escape costs {A:3, B:1, C:2, D:4}", ok, got);
  checks.add("escape cost of A is sub(A, C) = 3", near(model.escape_cost(A), model.sub(A, C)), "");
  const bool nb = model.neighbors(A) == std::vector<Symbol>{A} &&
                  model.neighbors(B) == std::vector<Symbol>{B, D} &&
                  model.neighbors(C) == std::vector<Symbol>{C} &&
                  model.neighbors(D) == std::vector<Symbol>{B, D};
  checks.add("neighbors B(A)={A}, B(B)={B,D}, B(C)={C}, B(D)={B,D}", nb, "");
  const auto q = letters("ABC");
  checks.add("wed(BC, ABC) = del(A) = 4", near(wed(letters("BC"), q, model), 4.0), "");
  checks.add("wed(ABA, ABC) = 3", near(wed(letters("ABA"), q, model), 3.0), "");
  checks.add("wed(ABC, ABC) = 0", near(wed(letters("ABC"), q, model), 0.0), "");
}

std::vector<SelectionItem> table_items(const TrajectoryDb& db, const CostModel& model,
                                       const std::vector<Symbol>& q) {
  std::vector<SelectionItem> items;
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::uint64_t n = 0;
    for (Symbol b : model.neighbors(q[i])) n += db.frequency(b);
    items.push_back({q[i], i, model.escape_cost(q[i]), n});
  }
  return items;
}

void selection_examples(Checks& checks) {
  const auto model = CostModel::from_table(four_symbol_table(), 0.0);
  TrajectoryDb db(Representation::kVertex, 4);
  db.add({1, letters("BCDBCD"), {}});
  db.add({2, letters("DABCBA"), {}});
  db.add({3, letters("ABABAB"), {}});
  const std::uint64_t expect_n[] = {5, 7, 3, 3};
  bool freq_ok = true;
  for (Symbol s = 0; s < 4; ++s) freq_ok &= db.frequency(s) == expect_n[s];
  checks.add("frequencies n(A)=5, n(B)=7, n(C)=3, n(D)=3", freq_ok, "");

  const auto items = table_items(db, model, letters("ABC"));
  // Objective and feasibility of every nonempty subset of ABC, by mask.
  const char* names[] = {"A", "B", "AB", "C", "AC", "BC", "ABC"};
  const bool feasible[] = {true, false, true, false, true, true, true};
  const std::uint64_t objective[] = {5, 10, 15, 3, 8, 13, 18};
  bool table_ok = true;
  std::string got;
  for (unsigned mask = 1; mask < 8; ++mask) {
    double value = 0;
    std::uint64_t obj = 0;
    for (unsigned k = 0; k < 3; ++k) {
      if (mask & (1u << k)) {
        value += items[k].value;
        obj += items[k].weight;
      }
    }
    table_ok &= (value >= 3.0) == feasible[mask - 1];
    if (feasible[mask - 1]) {
      table_ok &= obj == objective[mask - 1];
      got += std::string(names[mask - 1]) + ':' + std::to_string(obj) + ' ';
    }
  }
  checks.add("objective table {A:5, AB:15, AC:8, BC:13, ABC:18}", table_ok, got);
  const auto exact = solve_exact(items, 3.0);
  checks.add("exact optimum Q'={(A,1)} objective 5",
             exact.objective == 5 && exact.chosen == std::vector<ChosenSymbol>{{A, 0}}, join(exact));
  const auto approx = solve_approx(items, 3.0);
  checks.add("greedy on ABC stays within twice the optimum",
             approx.objective <= 2 * exact.objective && approx.total_value >= 3.0, join(approx));

  const std::vector<SelectionItem> abcd{{A, 0, 1, 5}, {B, 1, 2, 2}, {C, 2, 3, 9}, {D, 3, 4, 8}};
  const auto greedy = solve_approx(abcd, 4.0);
  checks.add("greedy on ABCD gives Q'={(B,2),(D,4)} objective 10",
             greedy.objective == 10 && greedy.chosen == std::vector<ChosenSymbol>{{B, 1}, {D, 3}},
             join(greedy));
  const auto best = solve_exact(abcd, 4.0);
  checks.add("exact on ABCD gives Q*={(D,4)} objective 8",
             best.objective == 8 && best.chosen == std::vector<ChosenSymbol>{{D, 3}}, join(best));
}

void index_example(Checks& checks) {
  TrajectoryDb db(Representation::kVertex, 6);
  db.add({1, {2, 3, 5}, {}});
  const auto index = InvertedIndex::build(db);
  const bool ok = index.lookup(2).size() == 1 && index.lookup(2)[0] == Posting{0, 0} &&
                  index.lookup(3).size() == 1 && index.lookup(3)[0] == Posting{0, 1} &&
                  index.lookup(5).size() == 1 && index.lookup(5)[0] == Posting{0, 2} &&
                  index.lookup(1).empty();
  checks.add("postings of v2 v3 v5 hold (1,1), (1,2), (1,3)", ok, "");
}

void verification_examples(Checks& checks) {
  // Alphabet A B C D E X Y mapped to 0..6.
  const auto net = path_network(7);
  CostConfig config;
  config.kind = CostKind::kLev;
  const auto lev = CostModel::create(config, net);
  const std::vector<Symbol> q{0, 1, 2, 3, 4};       // ABCDE
  const std::vector<Symbol> p{0, 1, 2, 3, 5};       // ABCDX
  const std::vector<Symbol> r{0, 1, 2, 3, 6};       // ABCDY
  TrajectoryDb db(Representation::kVertex, 7);
  db.add({1, p, {}});
  db.add({2, r, {}});

  Verifier verifier(db, lev, q, 2.0);
  std::vector<MatchResult> out;
  verifier.verify_candidate({0, 1, 1}, out);
  bool found = false;
  for (const auto& m : out) found |= m.start == 0 && m.end == 3 && near(m.value, 1.0);
  checks.add("anchored at B: sub(B,B) + wed(A,A) + wed(CD,CDE) = 1 for ABCD", found,
             std::to_string(out.size()) + " spans");

  CacheTrie trie(QueryProfile(lev, std::vector<Symbol>{2, 3, 4}));  // CDE
  VerifyStats stats;
  all_prefix_wed(trie, std::vector<Symbol>{2, 3, 5}, false, 2.0, stats);  // CDX
  const auto first = stats;
  all_prefix_wed(trie, std::vector<Symbol>{2, 3, 6}, false, 2.0, stats);  // CDY
  checks.add("second forward pass reuses the C and D columns",
             first.step_dp_calls == 3 && stats.cache_hits == 2 && stats.step_dp_calls == 4,
             "hits " + std::to_string(stats.cache_hits) + ", steps " +
                 std::to_string(stats.step_dp_calls));
}

void end_to_end_example(Checks& checks) {
  const auto model = CostModel::from_table(four_symbol_table(), 0.0);
  TrajectoryDb db(Representation::kVertex, 4);
  db.add({1, letters("BCDBCD"), {}});
  db.add({2, letters("DABCBA"), {}});
  db.add({3, letters("ABABAB"), {}});
  const auto index = InvertedIndex::build(db);
  const Query query{letters("ABC"), 3.0, std::nullopt, {}};

  const Engine exact(db, index, model, {SelectionStrategy::kExact, {}});
  const auto sel = exact.select(query, 3.0);
  const auto cands = exact.generate_candidates(sel);
  const std::vector<Candidate> expect{{1, 1, 0}, {1, 5, 0}, {2, 0, 0}, {2, 2, 0}, {2, 4, 0}};
  checks.add("candidates with Q'=A are (2,2,1), (2,6,1), (3,1,1), (3,3,1), (3,5,1)",
             cands == expect, std::to_string(cands.size()) + " candidates");
  bool pruned = true;
  for (const auto& c : cands) pruned &= c.trajectory != 0;
  checks.add("BCDBCD yields no candidate", pruned, "");
  checks.add("candidate count with Q'=A is 5", exact.candidate_count(query) == 5, "");

  // ABC matches with value 0; ABCB matches too, deleting the trailing B for
  // del(B) = 1 < 3. Both come from the anchor (2,2,1) alone.
  checks.add("wed(ABCB, ABC) = del(B) = 1", near(wed(letters("ABCB"), query.symbols, model), 1.0), "");
  const std::vector<MatchResult> want{{1, 1, 3, 0.0}, {1, 1, 4, 1.0}};
  Verifier verifier(db, model, query.symbols, 3.0);
  std::vector<Candidate> others;
  for (const auto& c : cands) {
    std::vector<MatchResult> one;
    verifier.verify_candidate(c, one);
    if (!one.empty() && !(c == Candidate{1, 1, 0})) others.push_back(c);
  }
  checks.add("only candidate (2,2,1) yields results", others.empty(), "");
  const auto res_exact = exact.search(query);
  checks.add("result set {(2,2,4), (2,2,5)} with the exact selection", res_exact.matches == want,
             join(res_exact.matches));
  const Engine approx(db, index, model);
  const auto res_approx = approx.search(query);
  checks.add("result set {(2,2,4), (2,2,5)} with the greedy selection", res_approx.matches == want,
             join(res_approx.matches));
  const auto scan = approx.plain_sw_scan(query);
  checks.add("exhaustive scan gives {(2,2,4), (2,2,5)}", scan.matches == want, join(scan.matches));
}

}  // namespace

std::vector<ExampleCheck> run_worked_examples() {
  Checks checks;
  levenshtein_examples(checks);
  surs_example(checks);
  table_examples(checks);
  selection_examples(checks);
  index_example(checks);
  verification_examples(checks);
  end_to_end_example(checks);
  return checks.take();
}

}  // namespace wedsearch
