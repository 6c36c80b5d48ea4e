#include "wedsearch/trajectory.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "binary_io.hpp"
#include "text_util.hpp"
#include "wedsearch/network.hpp"

namespace wedsearch {

namespace {
constexpr std::string_view kDbMagic = "WEDTRJDB";
constexpr std::uint32_t kDbVersion = 1;
}  // namespace

TrajectoryDb::TrajectoryDb(Representation representation, std::size_t alphabet_size)
    : representation_(representation), frequency_(alphabet_size, 0) {}

void TrajectoryDb::add(Trajectory t) {
  if (t.symbols.empty()) throw ConfigError("trajectory " + std::to_string(t.id) + " is empty");
  for (Symbol s : t.symbols) {
    if (s >= frequency_.size()) {
      throw ConfigError("trajectory " + std::to_string(t.id) + " has symbol " + std::to_string(s) +
                        " outside the alphabet");
    }
  }
  if (t.timed()) {
    const auto expected =
        t.symbols.size() + (representation_ == Representation::kEdge ? 1 : 0);
    if (t.timestamps.size() != expected) {
      throw ConfigError("trajectory " + std::to_string(t.id) + " has " +
                        std::to_string(t.timestamps.size()) + " timestamps, expected " +
                        std::to_string(expected));
    }
    for (std::size_t i = 1; i < t.timestamps.size(); ++i) {
      if (t.timestamps[i] < t.timestamps[i - 1]) {
        throw ConfigError("trajectory " + std::to_string(t.id) + " timestamp regression at " +
                          std::to_string(i + 1));
      }
    }
  }
  if (by_id_.contains(t.id)) throw ConfigError("duplicate trajectory id " + std::to_string(t.id));
  by_id_.emplace(t.id, trajectories_.size());
  for (Symbol s : t.symbols) ++frequency_[s];
  total_symbols_ += t.symbols.size();
  trajectories_.push_back(std::move(t));
}

const Trajectory& TrajectoryDb::get(std::size_t index) const {
  if (index >= trajectories_.size()) {
    throw ConfigError("trajectory index " + std::to_string(index) + " out of range");
  }
  return trajectories_[index];
}

std::optional<std::size_t> TrajectoryDb::index_of(std::int64_t id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<TimeSpan> TrajectoryDb::time_span(std::size_t index) const {
  const auto& t = get(index);
  if (!t.timed()) return std::nullopt;
  return TimeSpan{t.timestamps.front(), t.timestamps.back()};
}

std::string TrajectoryDb::serialize() const {
  detail::BinaryWriter meta;
  meta.put<std::uint8_t>(static_cast<std::uint8_t>(representation_));
  meta.put<std::uint64_t>(frequency_.size());
  meta.put<std::uint64_t>(trajectories_.size());
  detail::BinaryWriter body;
  for (const auto& t : trajectories_) {
    body.put<std::int64_t>(t.id);
    body.put_vector(t.symbols);
    body.put_vector(t.timestamps);
  }
  return detail::encode_container(kDbMagic, kDbVersion,
                                  {{1, meta.take()}, {2, body.take()}});
}

TrajectoryDb TrajectoryDb::deserialize(std::string_view bytes) {
  const auto sections = detail::decode_container(bytes, kDbMagic, kDbVersion);
  if (sections.size() != 2 || sections[0].tag != 1 || sections[1].tag != 2) {
    throw DataError("trajectory db: unexpected section layout");
  }
  detail::BinaryReader meta(sections[0].payload);
  const auto rep = meta.get<std::uint8_t>();
  if (rep > 1) throw DataError("trajectory db: bad representation tag");
  const auto alphabet = meta.get<std::uint64_t>();
  const auto count = meta.get<std::uint64_t>();
  TrajectoryDb db(static_cast<Representation>(rep), alphabet);
  detail::BinaryReader body(sections[1].payload);
  try {
    for (std::uint64_t i = 0; i < count; ++i) {
      Trajectory t;
      t.id = body.get<std::int64_t>();
      t.symbols = body.get_vector<Symbol>();
      t.timestamps = body.get_vector<double>();
      db.add(std::move(t));
    }
  } catch (const ConfigError& e) {
    throw DataError(std::string("trajectory db: ") + e.what());
  }
  if (!body.done()) throw DataError("trajectory db: trailing bytes");
  return db;
}

std::uint32_t TrajectoryDb::checksum() const { return detail::crc32_of(serialize()); }

namespace {

/// Resolves and checks one record in vertex form. Returns the reason on
/// failure.
std::optional<std::string> validate_vertex_path(const TrajectoryRecord& rec,
                                                const RoadNetwork& network,
                                                std::vector<VertexId>& path) {
  path.clear();
  if (rec.vertices.empty()) return "empty trajectory";
  for (std::size_t i = 0; i < rec.vertices.size(); ++i) {
    auto v = network.vertex_by_external(rec.vertices[i]);
    if (!v) {
      return "unknown vertex " + std::to_string(rec.vertices[i]) + " at position " +
             std::to_string(i + 1);
    }
    path.push_back(*v);
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!network.find_edge(path[i - 1], path[i])) {
      return "broken path at position " + std::to_string(i + 1) + ": no edge " +
             std::to_string(rec.vertices[i - 1]) + " -> " + std::to_string(rec.vertices[i]);
    }
  }
  if (!rec.timestamps.empty()) {
    if (rec.timestamps.size() != rec.vertices.size()) return "timestamp count mismatch";
    for (std::size_t i = 1; i < rec.timestamps.size(); ++i) {
      if (rec.timestamps[i] < rec.timestamps[i - 1]) {
        return "timestamp regression at position " + std::to_string(i + 1);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> edge_path(std::span<const VertexId> vertices, const RoadNetwork& network,
                                     std::vector<Symbol>& out) {
  out.clear();
  if (vertices.size() < 2) return "length-1 trajectory has no edge representation";
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto e = network.find_edge(vertices[i - 1], vertices[i]);
    if (!e) return "no edge for consecutive pair at position " + std::to_string(i);
    out.push_back(*e);
  }
  return std::nullopt;
}

}  // namespace

IngestResult ingest(std::span<const TrajectoryRecord> records, const RoadNetwork& network,
                    Representation representation) {
  const auto alphabet =
      representation == Representation::kVertex ? network.vertex_count() : network.edge_count();
  IngestResult result{TrajectoryDb(representation, alphabet), {}};
  std::vector<VertexId> path;
  std::vector<Symbol> edges;
  for (const auto& rec : records) {
    auto reason = validate_vertex_path(rec, network, path);
    Trajectory t;
    t.id = rec.id;
    t.timestamps = rec.timestamps;
    if (!reason) {
      if (representation == Representation::kVertex) {
        t.symbols.assign(path.begin(), path.end());
      } else {
        reason = edge_path(path, network, edges);
        t.symbols = edges;
      }
    }
    if (!reason && result.db.index_of(rec.id)) reason = "duplicate trajectory id";
    if (reason) {
      result.rejected.push_back({rec.id, rec.line, *reason});
      continue;
    }
    result.db.add(std::move(t));
  }
  return result;
}

IngestResult to_edge_representation(const TrajectoryDb& db, const RoadNetwork& network) {
  if (db.representation() != Representation::kVertex) {
    throw ConfigError("to_edge_representation expects a vertex-representation db");
  }
  IngestResult result{TrajectoryDb(Representation::kEdge, network.edge_count()), {}};
  std::vector<Symbol> edges;
  for (const auto& t : db.trajectories()) {
    if (auto reason = edge_path(t.symbols, network, edges)) {
      result.rejected.push_back({t.id, 0, *reason});
      continue;
    }
    result.db.add(Trajectory{t.id, edges, t.timestamps});
  }
  return result;
}

std::vector<TrajectoryRecord> parse_trajectories(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skippable(line)) continue;
    const auto fail = [&](const std::string& why) {
      throw DataError("trajectories line " + std::to_string(line_no) + ": " + why);
    };
    const auto fields = detail::split(detail::trim(line), '\t');
    if (fields.size() != 2) fail("expected traj_id<TAB>v1[:t1],v2[:t2],...");
    TrajectoryRecord rec;
    rec.line = line_no;
    const auto id = detail::parse_int(fields[0]);
    if (!id) fail("malformed trajectory id");
    rec.id = *id;
    const auto items = detail::split(fields[1], ',');
    bool any_time = false;
    bool any_untimed = false;
    for (const auto item : items) {
      const auto colon = item.find(':');
      const auto v = detail::parse_int(item.substr(0, colon));
      if (!v) fail("malformed vertex '" + std::string(item) + "'");
      rec.vertices.push_back(*v);
      if (colon == std::string_view::npos) {
        any_untimed = true;
      } else {
        const auto t = detail::parse_double(item.substr(colon + 1));
        if (!t || *t < 0.0) fail("malformed timestamp '" + std::string(item) + "'");
        rec.timestamps.push_back(*t);
        any_time = true;
      }
    }
    if (any_time && any_untimed) fail("timestamps must be given for all vertices or none");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<TrajectoryRecord> load_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_trajectories(in);
}

void write_trajectories(std::ostream& out, std::span<const TrajectoryRecord> records) {
  out << "# traj_id\tv1:t1,v2:t2,...\n";
  for (const auto& r : records) {
    out << r.id << '\t';
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
      if (i) out << ',';
      out << r.vertices[i];
      if (!r.timestamps.empty()) out << ':' << detail::format_double(r.timestamps[i]);
    }
    out << '\n';
  }
}

void save_db(const TrajectoryDb& db, const std::filesystem::path& path) {
  detail::write_file(path, db.serialize());
}

TrajectoryDb load_db(const std::filesystem::path& path) {
  return TrajectoryDb::deserialize(detail::read_file(path));
}

}  // namespace wedsearch
