#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace curvflow {

/// Index of a vertex in the declared vertex order.
using Vertex = std::size_t;

/// One directed jump rate as it appears in a graph file.
struct Edge {
  std::string from;
  std::string to;
  double rate = 0.0;
};

/// A finite graph given by nonnegative jump rates q(x,y) with zero diagonal.
///
/// Vertices keep the order in which they were declared; that order defines the
/// index of every vertex. Only strictly positive rates are stored. Two
/// vertices are adjacent (x ~ y) when q(x,y) > 0 or q(y,x) > 0, so a
/// one-directional rate still counts as an edge for distances and balls.
///
/// Immutable after construction.
class Graph {
 public:
  struct Arc {
    Vertex to;
    double rate;
  };

  /// Validates and builds the graph. Throws ParseError on duplicate vertices,
  /// duplicate edges, self-loops, unknown endpoints or rates that are not
  /// strictly positive and finite.
  Graph(std::vector<std::string> vertices, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& vertex_ids() const noexcept { return ids_; }
  const std::string& id(Vertex x) const { return ids_.at(x); }

  std::optional<Vertex> find(std::string_view id) const;
  /// Like find() but throws Error for an unknown identifier.
  Vertex index_of(std::string_view id) const;

  /// q(x,y); zero when no rate is stored.
  double rate(Vertex x, Vertex y) const;
  /// Outgoing rates of x, sorted by target index.
  std::span<const Arc> out_arcs(Vertex x) const { return out_[x]; }
  /// Symmetrized neighbours of x (q(x,y) > 0 or q(y,x) > 0), sorted.
  std::span<const Vertex> neighbors(Vertex x) const { return nbrs_[x]; }
  /// Sum of outgoing rates of x.
  double degree(Vertex x) const;

  /// Number of stored (directed, positive) rates.
  std::size_t rate_count() const noexcept { return rate_count_; }
  /// All stored rates, sorted lexicographically by (from id, to id).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Vertex>> nbrs_;
  std::size_t rate_count_ = 0;
};

struct GraphConstants {
  double q_min = 0.0;       ///< smallest stored rate
  double max_degree = 0.0;  ///< D = max_x sum_y q(x,y)
};

/// Throws Error("no edges") on an edgeless graph.
GraphConstants constants(const Graph& g);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS distances from x in the symmetrized adjacency; kUnreachable marks
/// vertices in other components.
std::vector<std::size_t> distances_from(const Graph& g, Vertex x);

/// Combinatorial distance; nullopt means infinity.
std::optional<std::size_t> distance(const Graph& g, Vertex x, Vertex y);

/// B_r(x) = { y : d(x,y) <= r }, sorted by index.
std::vector<Vertex> ball(const Graph& g, Vertex x, std::size_t r);

/// Largest finite distance from x.
std::size_t eccentricity(const Graph& g, Vertex x);

bool is_connected(const Graph& g);

/// Subgraph on `keep` with every rate between kept vertices; vertex order
/// follows `keep`.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

/// Strictly positive weights on the vertices.
class Measure {
 public:
  explicit Measure(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](Vertex x) const { return values_[x]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Why a graph has no reversible measure. `cycle` lists the vertices of a
/// closed walk x0 -> x1 -> ... -> x0 on which the Kolmogorov product of
/// forward rates differs from the product of backward rates; for a
/// one-directional edge it is the pair {x, y} with q(x,y) > 0 = q(y,x).
struct NotReversible {
  enum class Reason { kOneDirectionalEdge, kCycleProduct };
  Reason reason;
  std::vector<Vertex> cycle;
};

using ReversibilityResult = std::variant<Measure, NotReversible>;

/// Recovers the reversible measure (detailed balance q(x,y)m(x) = q(y,x)m(y))
/// normalized to min m = 1. Propagates along a BFS spanning tree and checks
/// every remaining edge to relative tolerance 1e-12.
/// Throws DisconnectedError when the graph is not connected.
ReversibilityResult reversible_measure(const Graph& g);

/// Sum of m over a nonempty vertex set. Throws Error on an empty set.
double measure_volume(const Measure& m, std::span<const Vertex> s);

}  // namespace curvflow
