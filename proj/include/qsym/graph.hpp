#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsym {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  VertexIndex source;
  VertexIndex range;
};

/// Edge given by vertex identifiers, used when building a graph.
struct EdgeSpec {
  std::string id;
  std::string source;
  std::string range;
};

/// Finite directed multigraph with named vertices and edges.
///
/// Vertices and edges keep their construction order; every algorithm in the
/// library refers to them by that position (VertexIndex / EdgeIndex). The
/// object is immutable once built.
class DirectedMultigraph {
 public:
  /// Throws ArgumentError on duplicate ids, unknown endpoints, an empty
  /// vertex list, or ids containing reserved characters.
  DirectedMultigraph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edges);

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  const std::vector<std::string>& vertex_ids() const noexcept { return vertex_ids_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  VertexIndex source(EdgeIndex e) const { return edges_[e].source; }
  VertexIndex range(EdgeIndex e) const { return edges_[e].range; }
  bool is_loop(EdgeIndex e) const { return edges_[e].source == edges_[e].range; }

  /// s^{-1}(v), in edge order.
  std::span<const EdgeIndex> out_edges(VertexIndex v) const { return out_[v]; }
  /// r^{-1}(v), in edge order.
  std::span<const EdgeIndex> in_edges(VertexIndex v) const { return in_[v]; }

  bool is_sink(VertexIndex v) const { return out_[v].empty(); }
  bool has_in_edges(VertexIndex v) const { return !in_[v].empty(); }

  bool operator==(const DirectedMultigraph& other) const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
};

/// A path e1...ek with r(e_i) = s(e_{i+1}). The empty path sits at `start`.
struct Path {
  VertexIndex start = 0;
  std::vector<EdgeIndex> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
  auto operator<=>(const Path&) const = default;
};

bool is_valid_path(const DirectedMultigraph& g, const Path& p);
VertexIndex path_range(const DirectedMultigraph& g, const Path& p);
/// Edge ids joined by spaces; "(v)" for an empty path at v.
std::string format_path(const DirectedMultigraph& g, const Path& p);

/// n x n matrix of edge multiplicities under an explicit vertex ordering.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  AdjacencyMatrix(std::vector<std::string> order, std::vector<unsigned> entries);
  /// Square matrix with vertices named "1".."n".
  static AdjacencyMatrix from_rows(const std::vector<std::vector<unsigned>>& rows);

  std::size_t size() const noexcept { return order_.size(); }
  unsigned operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
  const std::vector<std::string>& order() const noexcept { return order_; }
  const std::vector<unsigned>& entries() const noexcept { return entries_; }
  unsigned total() const;

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::vector<std::string> order_;
  std::vector<unsigned> entries_;
};

std::string format_matrix(const AdjacencyMatrix& m);

// --- connectivity -----------------------------------------------------------

/// Every vertex is the source or range of some edge.
bool is_connected(const DirectedMultigraph& g);
/// Connected in the usual undirected sense; informational only.
bool is_weakly_connected(const DirectedMultigraph& g);

// --- matrices ---------------------------------------------------------------

/// `order` must be a permutation of the vertex indices.
AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g, std::span<const VertexIndex> order);
AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g);  // natural order

/// Upper triangular, superdiagonal all 1, every entry in {0,1}.
bool matrix_is_canonical(const AdjacencyMatrix& m);

/// m(i,j) parallel edges from vertex i to vertex j. Edge ids follow e_{ij},
/// with a `_k` suffix when the multiplicity exceeds one.
DirectedMultigraph graph_from_matrix(const AdjacencyMatrix& m);

// --- property (R) -----------------------------------------------------------

/// Simple cycles of length >= 2 (loops never count), one representative per
/// rotation class, starting at the cycle's smallest vertex index. Parallel
/// edges give distinct cycles. Stops after `limit` cycles.
std::vector<Path> cycles_geq2(const DirectedMultigraph& g, std::size_t limit = static_cast<std::size_t>(-1));

/// Hamiltonian path of |V|-1 edges, found by exhaustive backtracking over
/// vertex orderings.
std::optional<Path> spanning_path(const DirectedMultigraph& g);

/// No cycles at all, loops included.
bool is_acyclic(const DirectedMultigraph& g);

enum class Condition { R1, R2, R3 };
std::string_view to_string(Condition c);

struct PropertyRReport {
  bool holds = false;
  std::vector<Condition> violated;
  std::optional<Path> cycle_witness;                                // R1
  std::optional<std::pair<EdgeIndex, EdgeIndex>> parallel_witness;  // R3
  std::optional<Path> spanning_path;                                // absent => R2 fails
  std::optional<std::vector<VertexIndex>> ordering;                 // when holds
  bool weakly_connected = true;

  bool violates(Condition c) const;
};

/// Throws PreconditionError when `g` is not connected.
PropertyRReport check_property_R(const DirectedMultigraph& g);

/// The ordering induced by the spanning path when property (R) holds.
std::optional<std::vector<VertexIndex>> canonical_ordering(const DirectedMultigraph& g);

/// Lowest-index pair of distinct edges sharing source and range, if any.
std::optional<std::pair<EdgeIndex, EdgeIndex>> find_parallel_pair(const DirectedMultigraph& g);

// --- text formats -----------------------------------------------------------

/// Edge-list format:
///   # comment
///   vertices: 3            (ids 1..3)   or   vertices: a,b,c
///   e1: 1 -> 2             (id optional; unlabeled edges get e<k>, k = position)
/// Throws ParseError with the offending line number.
DirectedMultigraph parse_graph(std::string_view text);
std::string format_graph(const DirectedMultigraph& g);
std::string emit_dot(const DirectedMultigraph& g, std::string_view name = "G");

}  // namespace qsym
