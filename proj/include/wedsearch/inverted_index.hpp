#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wedsearch/trajectory.hpp"

namespace wedsearch {

/// One occurrence: trajectory index (dense, into the db) and 0-based
/// position.
struct Posting {
  std::uint32_t trajectory = 0;
  std::uint32_t position = 0;
  friend bool operator==(const Posting&, const Posting&) = default;
};

enum class PostingsOrder : std::uint8_t {
  kById = 0,           ///< (trajectory, position)
  kByDeparture = 1,    ///< departure time T_1, then (trajectory, position)
};

/// Per-symbol postings lists. Lists are append-only; in departure order the
/// per-list keys stay nondecreasing. Untimed trajectories use key -infinity.
class InvertedIndex {
 public:
  InvertedIndex() = default;
  InvertedIndex(Representation representation, std::size_t alphabet_size, PostingsOrder order);

  static InvertedIndex build(const TrajectoryDb& db, PostingsOrder order = PostingsOrder::kById);

  /// Appends trajectory `index` of `db`. It must be the next unindexed one.
  void add(const TrajectoryDb& db, std::size_t index);

  Representation representation() const { return representation_; }
  PostingsOrder order() const { return order_; }
  std::size_t alphabet_size() const { return lists_.size(); }
  std::size_t trajectory_count() const { return departure_.size(); }
  std::uint64_t total_postings() const { return total_; }

  /// Exact postings of b; empty for unseen or out-of-range symbols.
  std::span<const Posting> lookup(Symbol b) const;

  /// Postings of b whose trajectory departs no later than t_hi (binary
  /// search on the departure key), with trajectories ending before t_lo
  /// removed. Throws ConfigError unless the index is in departure order.
  std::vector<Posting> lookup_temporal(Symbol b, double t_lo, double t_hi) const;

  std::string serialize() const;
  static InvertedIndex deserialize(std::string_view bytes);

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  Representation representation_ = Representation::kVertex;
  PostingsOrder order_ = PostingsOrder::kById;
  std::vector<std::vector<Posting>> lists_;
  std::vector<double> departure_;  // per trajectory; -inf when untimed
  std::vector<double> arrival_;    // per trajectory; +inf when untimed
  std::uint64_t total_ = 0;
};

void save_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_index(const std::filesystem::path& path);

}  // namespace wedsearch
