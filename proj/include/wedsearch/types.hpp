#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wedsearch {

/// Dense symbol id. Vertex ids in vertex representation, edge ids in edge
/// representation.
using Symbol = std::uint32_t;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// The empty symbol (gap) in substitution-cost lookups.
inline constexpr Symbol kGap = std::numeric_limits<Symbol>::max();

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Representation : std::uint8_t { kVertex = 0, kEdge = 1 };

std::string_view to_string(Representation r);
Representation parse_representation(std::string_view s);

struct Coordinate {
  double lon = 0.0;
  double lat = 0.0;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

// Error taxonomy. The CLI maps each class to its own exit code.

/// Malformed input files, referential-integrity violations, corrupt artifacts.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or API misuse that a caller can fix.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The query cannot be answered as posed (threshold/eta combination leaves no
/// tau-subsequence, or the empty-match assumption is violated).
class InfeasibleQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wedsearch
