#include "wedsearch/verifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wedsearch {

double VerifyStats::upr() const {
  return columns_considered == 0 ? 0.0
                                 : static_cast<double>(surviving()) /
                                       static_cast<double>(columns_considered);
}

double VerifyStats::cmr() const {
  return surviving() == 0 ? 0.0
                          : static_cast<double>(step_dp_calls) / static_cast<double>(surviving());
}

double VerifyStats::tur() const {
  return columns_considered == 0 ? 0.0
                                 : static_cast<double>(step_dp_calls) /
                                       static_cast<double>(columns_considered);
}

VerifyStats& VerifyStats::operator+=(const VerifyStats& o) {
  candidates += o.candidates;
  candidates_skipped += o.candidates_skipped;
  columns_considered += o.columns_considered;
  columns_pruned_early += o.columns_pruned_early;
  step_dp_calls += o.step_dp_calls;
  cache_hits += o.cache_hits;
  return *this;
}

CacheTrie::CacheTrie(QueryProfile query)
    : query_(std::move(query)), stride_(query_.size() + 1) {
  columns_ = boundary_column(query_);
  lower_bound_.push_back(0.0);  // boundary column starts at 0
}

std::span<const double> CacheTrie::column(Node x) const {
  return std::span<const double>(columns_).subspan(static_cast<std::size_t>(x) * stride_, stride_);
}

std::optional<CacheTrie::Node> CacheTrie::find_child(Node parent, Symbol symbol) const {
  auto it = children_.find(key(parent, symbol));
  if (it == children_.end()) return std::nullopt;
  return it->second;
}

CacheTrie::Node CacheTrie::create_child(Node parent, Symbol symbol) {
  const auto x = static_cast<Node>(lower_bound_.size());
  columns_.resize(columns_.size() + stride_);
  const std::span<double> all(columns_);
  const auto prev = all.subspan(static_cast<std::size_t>(parent) * stride_, stride_);
  const auto out = all.subspan(static_cast<std::size_t>(x) * stride_, stride_);
  step_dp_into(query_, symbol, prev, out);
  lower_bound_.push_back(*std::min_element(out.begin(), out.end()));
  children_.emplace(key(parent, symbol), x);
  return x;
}

namespace {

Symbol symbol_at(std::span<const Symbol> p, bool reversed, std::size_t k) {
  return reversed ? p[p.size() - k] : p[k - 1];
}

void check_cached_column(const CacheTrie& trie, std::span<const Symbol> p, bool reversed,
                         std::size_t k, CacheTrie::Node x) {
  DpColumn col = boundary_column(trie.query());
  for (std::size_t i = 1; i <= k; ++i) col = step_dp(trie.query(), symbol_at(p, reversed, i), col);
  const auto cached = trie.column(x);
  if (!std::equal(col.begin(), col.end(), cached.begin(), cached.end())) {
    throw std::logic_error("cache soundness violated at prefix length " + std::to_string(k));
  }
}

void check_termination(const CacheTrie& trie, std::span<const Symbol> p, bool reversed,
                       std::size_t k, CacheTrie::Node x, double tau_prime) {
  DpColumn col(trie.column(x).begin(), trie.column(x).end());
  for (std::size_t i = k + 1; i <= p.size(); ++i) {
    col = step_dp(trie.query(), symbol_at(p, reversed, i), col);
    if (col.back() < tau_prime) {
      throw std::logic_error("early termination dropped prefix length " + std::to_string(i));
    }
  }
}

}  // namespace

std::vector<double> all_prefix_wed(CacheTrie& trie, std::span<const Symbol> p, bool reversed,
                                   double tau_prime, VerifyStats& stats,
                                   const VerifierOptions& options) {
  std::vector<double> e;
  CacheTrie::Node x = CacheTrie::kRoot;
  e.push_back(trie.value(x));
  for (std::size_t k = 1; k <= p.size(); ++k) {
    const Symbol c = symbol_at(p, reversed, k);
    if (auto child = trie.find_child(x, c)) {
      x = *child;
      ++stats.cache_hits;
      if (options.debug_checks) check_cached_column(trie, p, reversed, k, x);
    } else {
      x = trie.create_child(x, c);
      ++stats.step_dp_calls;
    }
    if (tau_prime <= trie.lower_bound(x)) {
      if (options.debug_checks) check_termination(trie, p, reversed, k, x, tau_prime);
      break;
    }
    e.push_back(trie.value(x));
  }
  return e;
}

Verifier::Verifier(const TrajectoryDb& db, const CostModel& model, std::span<const Symbol> query,
                   double tau, VerifierOptions options)
    : db_(&db),
      model_(&model),
      query_(query.begin(), query.end()),
      profile_(model, query),
      tau_(tau),
      options_(options) {}

CacheTrie& Verifier::trie(bool backward, std::uint32_t query_position) {
  auto& slot = tries_[{backward, query_position}];
  if (!slot) {
    std::vector<Symbol> side;
    if (backward) {
      side.assign(query_.rbegin() + static_cast<std::ptrdiff_t>(query_.size() - query_position),
                  query_.rend());
    } else {
      side.assign(query_.begin() + query_position + 1, query_.end());
    }
    slot = std::make_unique<CacheTrie>(QueryProfile(*model_, side));
  }
  return *slot;
}

void Verifier::verify_candidate(const Candidate& candidate, std::vector<MatchResult>& out) {
  const auto& traj = db_->get(candidate.trajectory);
  const std::span<const Symbol> p = traj.symbols;
  const std::size_t j = candidate.position;
  const std::size_t iq = candidate.query_position;
  if (j >= p.size() || iq >= query_.size()) throw ConfigError("candidate out of range");
  ++stats_.candidates;
  stats_.columns_considered += p.size();

  const double anchor = profile_.sub(iq, p[j]);
  const double tau_prime = tau_ - anchor;
  if (tau_prime <= 0.0) {
    ++stats_.candidates_skipped;
    stats_.columns_pruned_early += p.size();
    return;
  }
  const double cutoff = tau_prime + options_.tau_prime_offset;
  const std::uint64_t before = stats_.surviving();
  const auto eb = all_prefix_wed(trie(true, candidate.query_position), p.first(j), true, cutoff,
                                 stats_, options_);
  const auto ef = all_prefix_wed(trie(false, candidate.query_position), p.subspan(j + 1), false,
                                 cutoff, stats_, options_);
  stats_.columns_pruned_early += p.size() - (stats_.surviving() - before);

  for (std::size_t kb = 0; kb < eb.size(); ++kb) {
    for (std::size_t kf = 0; kf < ef.size(); ++kf) {
      const double v = anchor + eb[kb] + ef[kf];
      if (v < tau_) out.push_back({candidate.trajectory, j - kb, j + kf, v});
    }
  }
}

std::vector<MatchResult> Verifier::verify(std::span<const Candidate> candidates) {
  std::vector<MatchResult> out;
  for (const auto& c : candidates) verify_candidate(c, out);
  normalize_matches(out);
  return out;
}

void normalize_matches(std::vector<MatchResult>& matches) {
  std::sort(matches.begin(), matches.end(), [](const MatchResult& a, const MatchResult& b) {
    if (a.trajectory != b.trajectory) return a.trajectory < b.trajectory;
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return a.value < b.value;
  });
  auto last = std::unique(matches.begin(), matches.end(),
                          [](const MatchResult& a, const MatchResult& b) {
                            return a.trajectory == b.trajectory && a.start == b.start &&
                                   a.end == b.end;
                          });
  matches.erase(last, matches.end());
}

}  // namespace wedsearch
