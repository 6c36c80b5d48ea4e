#include "wedsearch/inverted_index.hpp"

#include <algorithm>

#include "binary_io.hpp"

namespace wedsearch {

namespace {
constexpr std::string_view kIndexMagic = "WEDINDEX";
constexpr std::uint32_t kIndexVersion = 1;
}  // namespace

InvertedIndex::InvertedIndex(Representation representation, std::size_t alphabet_size,
                             PostingsOrder order)
    : representation_(representation), order_(order), lists_(alphabet_size) {}

InvertedIndex InvertedIndex::build(const TrajectoryDb& db, PostingsOrder order) {
  InvertedIndex index(db.representation(), db.alphabet_size(), order);
  if (order == PostingsOrder::kById) {
    for (std::size_t i = 0; i < db.size(); ++i) index.add(db, i);
    return index;
  }
  // Departure order: insert trajectories by (T_1, index), which keeps every
  // list sorted by key without a per-list sort.
  std::vector<std::size_t> perm(db.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  const auto key = [&](std::size_t i) {
    const auto& t = db.get(i);
    return t.timed() ? t.timestamps.front() : -kInfinity;
  };
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  index.departure_.resize(db.size());
  index.arrival_.resize(db.size());
  for (std::size_t i : perm) {
    const auto& t = db.get(i);
    index.departure_[i] = key(i);
    index.arrival_[i] = t.timed() ? t.timestamps.back() : kInfinity;
    for (std::size_t j = 0; j < t.symbols.size(); ++j) {
      index.lists_[t.symbols[j]].push_back(
          {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
    index.total_ += t.symbols.size();
  }
  return index;
}

void InvertedIndex::add(const TrajectoryDb& db, std::size_t index) {
  if (db.representation() != representation_ || db.alphabet_size() != lists_.size()) {
    throw ConfigError("index and trajectory db disagree on representation or alphabet");
  }
  if (index != departure_.size()) {
    throw ConfigError("trajectories must be indexed in db order");
  }
  const auto& t = db.get(index);
  const double dep = t.timed() ? t.timestamps.front() : -kInfinity;
  if (order_ == PostingsOrder::kByDeparture) {
    for (Symbol s : t.symbols) {
      const auto& list = lists_[s];
      if (!list.empty() && departure_[list.back().trajectory] > dep) {
        throw ConfigError("append would break departure order; rebuild the index");
      }
    }
  }
  departure_.push_back(dep);
  arrival_.push_back(t.timed() ? t.timestamps.back() : kInfinity);
  for (std::size_t j = 0; j < t.symbols.size(); ++j) {
    lists_[t.symbols[j]].push_back(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(j)});
  }
  total_ += t.symbols.size();
}

std::span<const Posting> InvertedIndex::lookup(Symbol b) const {
  if (b >= lists_.size()) return {};
  return lists_[b];
}

std::vector<Posting> InvertedIndex::lookup_temporal(Symbol b, double t_lo, double t_hi) const {
  if (order_ != PostingsOrder::kByDeparture) {
    throw ConfigError("lookup_temporal requires an index built in departure order");
  }
  std::vector<Posting> out;
  const auto list = lookup(b);
  const auto end = std::upper_bound(list.begin(), list.end(), t_hi,
                                    [&](double t, const Posting& p) {
                                      return t < departure_[p.trajectory];
                                    });
  for (auto it = list.begin(); it != end; ++it) {
    if (arrival_[it->trajectory] >= t_lo) out.push_back(*it);
  }
  return out;
}

std::string InvertedIndex::serialize() const {
  detail::BinaryWriter meta;
  meta.put<std::uint8_t>(static_cast<std::uint8_t>(representation_));
  meta.put<std::uint8_t>(static_cast<std::uint8_t>(order_));
  meta.put<std::uint64_t>(lists_.size());
  meta.put<std::uint64_t>(total_);
  meta.put_vector(departure_);
  meta.put_vector(arrival_);
  detail::BinaryWriter body;
  for (const auto& list : lists_) body.put_vector(list);
  return detail::encode_container(kIndexMagic, kIndexVersion,
                                  {{1, meta.take()}, {2, body.take()}});
}

InvertedIndex InvertedIndex::deserialize(std::string_view bytes) {
  const auto sections = detail::decode_container(bytes, kIndexMagic, kIndexVersion);
  if (sections.size() != 2 || sections[0].tag != 1 || sections[1].tag != 2) {
    throw DataError("index: unexpected section layout");
  }
  detail::BinaryReader meta(sections[0].payload);
  const auto rep = meta.get<std::uint8_t>();
  const auto order = meta.get<std::uint8_t>();
  if (rep > 1 || order > 1) throw DataError("index: bad header tag");
  const auto alphabet = meta.get<std::uint64_t>();
  InvertedIndex index(static_cast<Representation>(rep), alphabet,
                      static_cast<PostingsOrder>(order));
  index.total_ = meta.get<std::uint64_t>();
  index.departure_ = meta.get_vector<double>();
  index.arrival_ = meta.get_vector<double>();
  if (!meta.done() || index.departure_.size() != index.arrival_.size()) {
    throw DataError("index: corrupt header");
  }
  detail::BinaryReader body(sections[1].payload);
  std::uint64_t count = 0;
  for (auto& list : index.lists_) {
    list = body.get_vector<Posting>();
    for (const auto& p : list) {
      if (p.trajectory >= index.departure_.size()) throw DataError("index: dangling posting");
    }
    count += list.size();
  }
  if (!body.done() || count != index.total_) throw DataError("index: corrupt postings");
  return index;
}

void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
  detail::write_file(path, index.serialize());
}

InvertedIndex load_index(const std::filesystem::path& path) {
  return InvertedIndex::deserialize(detail::read_file(path));
}

}  // namespace wedsearch
