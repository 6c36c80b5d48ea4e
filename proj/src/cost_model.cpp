#include "wedsearch/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wedsearch/network.hpp"

namespace wedsearch {

std::string_view to_string(CostKind k) {
  switch (k) {
    case CostKind::kLev: return "lev";
    case CostKind::kEdr: return "edr";
    case CostKind::kErp: return "erp";
    case CostKind::kNetEdr: return "netedr";
    case CostKind::kNetErp: return "neterp";
    case CostKind::kSurs: return "surs";
    case CostKind::kTable: return "table";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view s) {
  for (auto k : {CostKind::kLev, CostKind::kEdr, CostKind::kErp, CostKind::kNetEdr,
                 CostKind::kNetErp, CostKind::kSurs}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("unknown cost model '" + std::string(s) +
                    "' (expected lev|edr|erp|netedr|neterp|surs)");
}

double default_eta(CostKind kind, const RoadNetwork& network) {
  switch (kind) {
    case CostKind::kErp: return 1e-4 * network.median_nearest_neighbor_distance();
    case CostKind::kNetErp: return network.median_edge_weight();
    default: return 0.0;
  }
}

CostModel CostModel::create(const CostConfig& config, const RoadNetwork& network) {
  if (config.kind == CostKind::kTable) throw ConfigError("table costs come from from_table()");
  CostModel m;
  m.kind_ = config.kind;
  m.network_ = &network;
  m.eta_ = config.eta.value_or(default_eta(config.kind, network));
  if (!(m.eta_ >= 0.0) || !std::isfinite(m.eta_)) throw ConfigError("eta must be finite and >= 0");

  switch (config.kind) {
    case CostKind::kLev:
      m.representation_ = config.lev_representation;
      break;
    case CostKind::kSurs:
      m.representation_ = Representation::kEdge;
      if (m.eta_ > 0.0) {
        throw ConfigError("SURS requires eta = 0: any positive eta admits distant short segments "
                          "as substitution neighbors");
      }
      break;
    default:
      m.representation_ = Representation::kVertex;
      break;
  }
  m.alphabet_size_ = m.representation_ == Representation::kVertex ? network.vertex_count()
                                                                  : network.edge_count();

  if (config.kind == CostKind::kEdr) m.epsilon_ = config.epsilon.value_or(0.001);
  if (config.kind == CostKind::kNetEdr) {
    m.epsilon_ = config.epsilon.value_or(network.median_edge_weight());
  }
  if (!(m.epsilon_ >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (config.kind == CostKind::kErp) m.reference_ = config.erp_reference.value_or(network.barycenter());
  if (config.kind == CostKind::kNetErp) {
    m.neterp_del_ = config.neterp_del.value_or(2.0 * network.median_edge_weight());
    if (!(m.neterp_del_ > 0.0) || !std::isfinite(m.neterp_del_)) {
      throw ConfigError("neterp_del must be finite and > 0");
    }
  }
  return m;
}

CostModel CostModel::from_table(CostTable table, double eta) {
  const auto n = table.del.size();
  if (table.sub.size() != n) throw ConfigError("cost table: sub must be |S| x |S|");
  for (std::size_t a = 0; a < n; ++a) {
    if (table.sub[a].size() != n) throw ConfigError("cost table: sub must be |S| x |S|");
    if (table.sub[a][a] != 0.0) throw ConfigError("cost table: sub(a, a) must be 0");
    if (!(table.del[a] >= 0.0)) throw ConfigError("cost table: del must be >= 0");
    for (std::size_t b = 0; b < n; ++b) {
      if (!(table.sub[a][b] >= 0.0) || table.sub[a][b] != table.sub[b][a]) {
        throw ConfigError("cost table: sub must be nonnegative and symmetric");
      }
    }
  }
  if (!(eta >= 0.0)) throw ConfigError("eta must be >= 0");
  CostModel m;
  m.kind_ = CostKind::kTable;
  m.eta_ = eta;
  m.alphabet_size_ = n;
  m.table_ = std::make_shared<const CostTable>(std::move(table));
  return m;
}

void CostModel::check_symbol(Symbol s) const {
  if (s >= alphabet_size_) {
    throw ConfigError("symbol " + std::to_string(s) + " is not in the " +
                      std::string(to_string(representation_)) + " alphabet of size " +
                      std::to_string(alphabet_size_));
  }
}

double CostModel::edge_weight(Symbol e) const { return network_->edge(e).weight; }

double CostModel::sub_from_distance(double d) const {
  if (kind_ == CostKind::kNetEdr) return d <= epsilon_ ? 0.0 : 1.0;
  return d;
}

double CostModel::del(Symbol a) const {
  switch (kind_) {
    case CostKind::kLev:
    case CostKind::kEdr:
    case CostKind::kNetEdr:
      return 1.0;
    case CostKind::kErp:
      return euclidean(network_->coordinate(a), reference_);
    case CostKind::kNetErp:
      return neterp_del_;
    case CostKind::kSurs:
      return edge_weight(a);
    case CostKind::kTable:
      check_symbol(a);
      return table_->del[a];
  }
  return 0.0;
}

double CostModel::sub(Symbol a, Symbol b) const {
  if (a == kGap && b == kGap) throw ConfigError("sub(gap, gap) is undefined");
  if (a == kGap) return del(b);
  if (b == kGap) return del(a);
  if (a == b) return 0.0;
  switch (kind_) {
    case CostKind::kLev:
      return 1.0;
    case CostKind::kEdr:
      return network_->euclid(a, b) <= epsilon_ ? 0.0 : 1.0;
    case CostKind::kErp:
      return network_->euclid(a, b);
    case CostKind::kNetEdr:
    case CostKind::kNetErp:
      return sub_from_distance(network_->network_distance(a, b));
    case CostKind::kSurs:
      return edge_weight(a) + edge_weight(b);
    case CostKind::kTable:
      check_symbol(a);
      check_symbol(b);
      return table_->sub[a][b];
  }
  return 0.0;
}

namespace {
std::vector<Symbol> all_symbols(std::size_t n) {
  std::vector<Symbol> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Symbol>(i);
  return out;
}
}  // namespace

std::vector<Symbol> CostModel::neighbors(Symbol q) const {
  check_symbol(q);
  switch (kind_) {
    case CostKind::kLev:
      return eta_ < 1.0 ? std::vector<Symbol>{q} : all_symbols(alphabet_size_);
    case CostKind::kEdr:
      if (eta_ >= 1.0) return all_symbols(alphabet_size_);
      return network_->range_query(network_->coordinate(q), epsilon_);
    case CostKind::kErp:
      return network_->range_query(network_->coordinate(q), eta_);
    case CostKind::kNetEdr:
    case CostKind::kNetErp: {
      if (kind_ == CostKind::kNetEdr && eta_ >= 1.0) return all_symbols(alphabet_size_);
      const double radius = kind_ == CostKind::kNetEdr ? epsilon_ : eta_;
      std::vector<Symbol> out;
      for (const auto& [v, d] : network_->network_ball(q, radius)) out.push_back(v);
      return out;
    }
    case CostKind::kSurs: {
      const double wq = edge_weight(q);
      if (wq > eta_) return {q};
      std::vector<Symbol> out;
      for (Symbol b = 0; b < alphabet_size_; ++b) {
        if (b == q || wq + edge_weight(b) <= eta_) out.push_back(b);
      }
      return out;
    }
    case CostKind::kTable: {
      std::vector<Symbol> out;
      for (Symbol b = 0; b < alphabet_size_; ++b) {
        if (table_->sub[q][b] <= eta_) out.push_back(b);
      }
      return out;
    }
  }
  return {q};
}

double CostModel::escape_cost(Symbol q) const {
  check_symbol(q);
  switch (kind_) {
    case CostKind::kLev:
    case CostKind::kEdr:
    case CostKind::kNetEdr:
      // Every excluded symbol and the gap cost exactly 1.
      return 1.0;
    case CostKind::kSurs:
      // sub(q, b) = w(q) + w(b) >= w(q) = del(q).
      return edge_weight(q);
    case CostKind::kErp:
      return std::min(del(q), network_->euclid_nearest_beyond(network_->coordinate(q), eta_));
    case CostKind::kNetErp:
      return std::min(neterp_del_, network_->network_nearest_beyond(q, eta_));
    case CostKind::kTable: {
      double best = table_->del[q];
      for (Symbol b = 0; b < alphabet_size_; ++b) {
        if (table_->sub[q][b] > eta_) best = std::min(best, table_->sub[q][b]);
      }
      return best;
    }
  }
  return 0.0;
}

}  // namespace wedsearch
