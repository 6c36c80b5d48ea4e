#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wedsearch/types.hpp"

namespace wedsearch {

class RoadNetwork;

/// A path over the alphabet plus per-vertex timestamps. In edge
/// representation an n-edge path carries n + 1 timestamps.
struct Trajectory {
  std::int64_t id = 0;
  std::vector<Symbol> symbols;
  std::vector<double> timestamps;  // empty when untimed

  bool timed() const { return !timestamps.empty(); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Closed time span [first, last].
struct TimeSpan {
  double first = 0.0;
  double last = 0.0;
};

/// Raw trajectory as read from the text format: external vertex ids.
struct TrajectoryRecord {
  std::int64_t id = 0;
  std::vector<std::int64_t> vertices;
  std::vector<double> timestamps;  // empty when untimed
  std::size_t line = 0;            // source line, 0 when not from a file
};

struct Rejection {
  std::int64_t trajectory_id = 0;
  std::size_t line = 0;
  std::string reason;
};

/// The in-memory trajectory database with its symbol frequency table n(b).
class TrajectoryDb {
 public:
  TrajectoryDb(Representation representation, std::size_t alphabet_size);

  /// Appends without path-connectivity checks (ingest does those). Throws
  /// ConfigError on out-of-alphabet symbols, timestamp count mismatch,
  /// timestamp regression, or duplicate id.
  void add(Trajectory t);

  std::size_t size() const { return trajectories_.size(); }
  bool empty() const { return trajectories_.empty(); }
  /// Dense access; throws ConfigError when out of range.
  const Trajectory& get(std::size_t index) const;
  std::optional<std::size_t> index_of(std::int64_t id) const;
  std::span<const Trajectory> trajectories() const { return trajectories_; }

  Representation representation() const { return representation_; }
  std::size_t alphabet_size() const { return frequency_.size(); }
  std::uint64_t frequency(Symbol b) const { return b < frequency_.size() ? frequency_[b] : 0; }
  std::span<const std::uint64_t> frequencies() const { return frequency_; }
  std::uint64_t total_symbols() const { return total_symbols_; }

  /// [T_first, T_last] of a timed trajectory.
  std::optional<TimeSpan> time_span(std::size_t index) const;

  /// CRC32 of the serialized form; equal inputs give equal checksums.
  std::uint32_t checksum() const;

  std::string serialize() const;
  static TrajectoryDb deserialize(std::string_view bytes);

  friend bool operator==(const TrajectoryDb&, const TrajectoryDb&) = default;

 private:
  Representation representation_;
  std::vector<Trajectory> trajectories_;
  std::unordered_map<std::int64_t, std::size_t> by_id_;
  std::vector<std::uint64_t> frequency_;
  std::uint64_t total_symbols_ = 0;
};

struct IngestResult {
  TrajectoryDb db;
  std::vector<Rejection> rejected;
};

/// Validates each record against the network (known vertices, connected
/// path, nondecreasing timestamps) and builds the db. Invalid records are
/// reported, not fatal. Edge representation is produced by converting the
/// validated vertex paths.
IngestResult ingest(std::span<const TrajectoryRecord> records, const RoadNetwork& network,
                    Representation representation);

/// Vertex -> edge representation. Length-1 trajectories are dropped and
/// reported; missing edges are reported.
IngestResult to_edge_representation(const TrajectoryDb& db, const RoadNetwork& network);

/// Text format: `traj_id<TAB>v1:t1,v2:t2,...` or `traj_id<TAB>v1,v2,...`.
/// Throws DataError (with line number) on syntax errors.
std::vector<TrajectoryRecord> parse_trajectories(std::istream& in);
std::vector<TrajectoryRecord> load_trajectories(const std::filesystem::path& path);
void write_trajectories(std::ostream& out, std::span<const TrajectoryRecord> records);

void save_db(const TrajectoryDb& db, const std::filesystem::path& path);
TrajectoryDb load_db(const std::filesystem::path& path);

}  // namespace wedsearch
