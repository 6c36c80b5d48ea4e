#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "wedsearch/types.hpp"

namespace wedsearch {

class RoadNetwork;

enum class CostKind : std::uint8_t {
  kLev,     ///< unit-cost Levenshtein; vertex or edge alphabet
  kEdr,     ///< 0/1 substitution by Euclidean threshold epsilon
  kErp,     ///< Euclidean substitution, gap cost = distance to a reference point
  kNetEdr,  ///< EDR over shortest-path distance
  kNetErp,  ///< shortest-path substitution, constant gap cost
  kSurs,    ///< unshared road length; edge alphabet only
  kTable,   ///< explicit symmetric matrix, for small hand-built alphabets
};

std::string_view to_string(CostKind k);
CostKind parse_cost_kind(std::string_view s);

/// User-facing knobs. Unset values take the per-kind defaults.
struct CostConfig {
  CostKind kind = CostKind::kLev;
  std::optional<double> eta;
  std::optional<double> epsilon;
  std::optional<Coordinate> erp_reference;
  std::optional<double> neterp_del;
  /// Only consulted for Lev; the other kinds fix their alphabet.
  Representation lev_representation = Representation::kVertex;
};

/// Explicit costs for CostKind::kTable: sub is |S| x |S| and symmetric with a
/// zero diagonal; del has |S| entries.
struct CostTable {
  std::vector<std::vector<double>> sub;
  std::vector<double> del;
};

/// One weighted-edit-distance instance: the (sub, ins, del) triple plus the
/// neighbor threshold eta. Holds a pointer to the network, which must outlive
/// the model.
class CostModel {
 public:
  /// Throws ConfigError for invalid parameters (negative eta, SURS with
  /// eta > 0, non-positive NetERP gap cost).
  static CostModel create(const CostConfig& config, const RoadNetwork& network);
  static CostModel from_table(CostTable table, double eta);

  CostKind kind() const { return kind_; }
  double eta() const { return eta_; }
  double epsilon() const { return epsilon_; }
  Coordinate erp_reference() const { return reference_; }
  double neterp_del() const { return neterp_del_; }
  Representation representation() const { return representation_; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  const RoadNetwork* network() const { return network_; }

  /// sub(a, b); either side may be kGap (then it is del/ins of the other).
  double sub(Symbol a, Symbol b) const;
  double del(Symbol a) const;
  double ins(Symbol a) const { return del(a); }

  /// Substitution cost given a precomputed network distance (NetEDR/NetERP).
  double sub_from_distance(double d) const;

  /// B(q) = { b : sub(q, b) <= eta }, ascending. Always contains q.
  std::vector<Symbol> neighbors(Symbol q) const;

  /// c(q) = min over (alphabet + gap) minus B(q) of sub(q, .).
  double escape_cost(Symbol q) const;

  void check_symbol(Symbol s) const;

 private:
  CostModel() = default;
  double edge_weight(Symbol e) const;

  CostKind kind_ = CostKind::kLev;
  double eta_ = 0.0;
  double epsilon_ = 0.0;
  Coordinate reference_{};
  double neterp_del_ = 1.0;
  Representation representation_ = Representation::kVertex;
  std::size_t alphabet_size_ = 0;
  const RoadNetwork* network_ = nullptr;
  std::shared_ptr<const CostTable> table_;
};

/// eta per kind: 0 for the unit-cost kinds and SURS, 1e-4 x median
/// nearest-neighbor distance for ERP, median edge weight for NetERP.
double default_eta(CostKind kind, const RoadNetwork& network);

}  // namespace wedsearch
