#include "qsym/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qsym/error.hpp"

namespace qsym {

namespace {

bool valid_token(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':' || c == ',' ||
           c == '#' || c == '>' || c == '"';
  });
}

}  // namespace

DirectedMultigraph::DirectedMultigraph(std::vector<std::string> vertex_ids,
                                       std::vector<EdgeSpec> edges)
    : vertex_ids_(std::move(vertex_ids)) {
  if (vertex_ids_.empty()) throw ArgumentError("graph needs at least one vertex");

  std::unordered_map<std::string, VertexIndex> vertex_lookup;
  for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
    if (!valid_token(vertex_ids_[v]))
      throw ArgumentError("invalid vertex id '" + vertex_ids_[v] + "'");
    if (!vertex_lookup.emplace(vertex_ids_[v], v).second)
      throw ArgumentError("duplicate vertex id '" + vertex_ids_[v] + "'");
  }

  out_.resize(vertex_ids_.size());
  in_.resize(vertex_ids_.size());
  std::unordered_set<std::string> seen_edges;
  edges_.reserve(edges.size());
  for (auto& spec : edges) {
    if (!valid_token(spec.id)) throw ArgumentError("invalid edge id '" + spec.id + "'");
    if (!seen_edges.insert(spec.id).second)
      throw ArgumentError("duplicate edge id '" + spec.id + "'");
    auto s = vertex_lookup.find(spec.source);
    auto r = vertex_lookup.find(spec.range);
    if (s == vertex_lookup.end())
      throw ArgumentError("edge '" + spec.id + "' has undeclared source '" + spec.source + "'");
    if (r == vertex_lookup.end())
      throw ArgumentError("edge '" + spec.id + "' has undeclared range '" + spec.range + "'");
    const EdgeIndex e = edges_.size();
    edges_.push_back(Edge{std::move(spec.id), s->second, r->second});
    out_[s->second].push_back(e);
    in_[r->second].push_back(e);
  }
}

std::optional<VertexIndex> DirectedMultigraph::find_vertex(std::string_view id) const {
  auto it = std::find(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end()) return std::nullopt;
  return static_cast<VertexIndex>(it - vertex_ids_.begin());
}

std::optional<EdgeIndex> DirectedMultigraph::find_edge(std::string_view id) const {
  auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
  if (it == edges_.end()) return std::nullopt;
  return static_cast<EdgeIndex>(it - edges_.begin());
}

bool DirectedMultigraph::operator==(const DirectedMultigraph& other) const {
  if (vertex_ids_ != other.vertex_ids_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& a = edges_[i];
    const auto& b = other.edges_[i];
    if (a.id != b.id || a.source != b.source || a.range != b.range) return false;
  }
  return true;
}

// --- paths ------------------------------------------------------------------

bool is_valid_path(const DirectedMultigraph& g, const Path& p) {
  if (p.start >= g.vertex_count()) return false;
  VertexIndex at = p.start;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count() || g.source(e) != at) return false;
    at = g.range(e);
  }
  return true;
}

VertexIndex path_range(const DirectedMultigraph& g, const Path& p) {
  return p.edges.empty() ? p.start : g.range(p.edges.back());
}

std::string format_path(const DirectedMultigraph& g, const Path& p) {
  if (p.edges.empty()) return "(" + g.vertex_id(p.start) + ")";
  std::string out;
  for (EdgeIndex e : p.edges) {
    if (!out.empty()) out += ' ';
    out += g.edge(e).id;
  }
  return out;
}

// --- adjacency matrices -----------------------------------------------------

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::string> order, std::vector<unsigned> entries)
    : order_(std::move(order)), entries_(std::move(entries)) {
  if (entries_.size() != order_.size() * order_.size())
    throw ArgumentError("adjacency matrix must be square");
}

AdjacencyMatrix AdjacencyMatrix::from_rows(const std::vector<std::vector<unsigned>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::string> order(n);
  std::vector<unsigned> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = std::to_string(i + 1);
    if (rows[i].size() != n) throw ArgumentError("adjacency matrix must be square");
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return AdjacencyMatrix(std::move(order), std::move(entries));
}

unsigned AdjacencyMatrix::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

std::string format_matrix(const AdjacencyMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g, std::span<const VertexIndex> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw ArgumentError("ordering must list every vertex exactly once");
  std::vector<std::size_t> position(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || position[order[i]] != n)
      throw ArgumentError("ordering must list every vertex exactly once");
    position[order[i]] = i;
  }
  std::vector<unsigned> entries(n * n, 0);
  for (const Edge& e : g.edges()) ++entries[position[e.source] * n + position[e.range]];
  std::vector<std::string> ids;
  ids.reserve(n);
  for (VertexIndex v : order) ids.push_back(g.vertex_id(v));
  return AdjacencyMatrix(std::move(ids), std::move(entries));
}

AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g) {
  std::vector<VertexIndex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), VertexIndex{0});
  return adjacency_matrix(g, order);
}

bool matrix_is_canonical(const AdjacencyMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned a = m(i, j);
      if (a > 1) return false;
      if (i > j && a != 0) return false;
      if (j == i + 1 && a != 1) return false;
    }
  }
  return true;
}

DirectedMultigraph graph_from_matrix(const AdjacencyMatrix& m) {
  const std::size_t n = m.size();
  const bool wide = n > 9;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned count = m(i, j);
      std::string base = "e" + std::to_string(i + 1) + (wide ? "_" : "") + std::to_string(j + 1);
      for (unsigned k = 1; k <= count; ++k) {
        std::string id = count == 1 ? base : base + "_" + std::to_string(k);
        edges.push_back(EdgeSpec{std::move(id), m.order()[i], m.order()[j]});
      }
    }
  }
  return DirectedMultigraph(m.order(), std::move(edges));
}

// --- connectivity -----------------------------------------------------------

bool is_connected(const DirectedMultigraph& g) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (g.out_edges(v).empty() && g.in_edges(v).empty()) return false;
  return true;
}

bool is_weakly_connected(const DirectedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<VertexIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    auto visit = [&](VertexIndex w) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    };
    for (EdgeIndex e : g.out_edges(v)) visit(g.range(e));
    for (EdgeIndex e : g.in_edges(v)) visit(g.source(e));
  }
  return reached == n;
}

// --- cycles and spanning paths -----------------------------------------------

std::vector<Path> cycles_geq2(const DirectedMultigraph& g, std::size_t limit) {
  std::vector<Path> cycles;
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_path(n, false);
  std::vector<EdgeIndex> edges;

  // Depth-first extension from `start`, visiting only vertices with a larger
  // index so each cycle is reported once, rooted at its smallest vertex.
  auto extend = [&](auto&& self, VertexIndex start, VertexIndex at) -> void {
    for (EdgeIndex e : g.out_edges(at)) {
      if (cycles.size() >= limit) return;
      if (g.is_loop(e)) continue;
      const VertexIndex next = g.range(e);
      if (next == start) {
        edges.push_back(e);
        cycles.push_back(Path{start, edges});
        edges.pop_back();
      } else if (next > start && !on_path[next]) {
        on_path[next] = true;
        edges.push_back(e);
        self(self, start, next);
        edges.pop_back();
        on_path[next] = false;
      }
    }
  };

  for (VertexIndex s = 0; s < n && cycles.size() < limit; ++s) {
    on_path[s] = true;
    extend(extend, s, s);
    on_path[s] = false;
  }
  return cycles;
}

bool is_acyclic(const DirectedMultigraph& g) {
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (g.is_loop(e)) return false;
  return cycles_geq2(g, 1).empty();
}

std::optional<Path> spanning_path(const DirectedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> used(n, false);
  Path path;

  auto extend = [&](auto&& self, VertexIndex at, std::size_t visited) -> bool {
    if (visited == n) return true;
    for (EdgeIndex e : g.out_edges(at)) {
      const VertexIndex next = g.range(e);
      if (used[next]) continue;
      used[next] = true;
      path.edges.push_back(e);
      if (self(self, next, visited + 1)) return true;
      path.edges.pop_back();
      used[next] = false;
    }
    return false;
  };

  for (VertexIndex start = 0; start < n; ++start) {
    path = Path{start, {}};
    used.assign(n, false);
    used[start] = true;
    if (extend(extend, start, 1)) return path;
  }
  return std::nullopt;
}

std::optional<std::pair<EdgeIndex, EdgeIndex>> find_parallel_pair(const DirectedMultigraph& g) {
  for (EdgeIndex a = 0; a < g.edge_count(); ++a)
    for (EdgeIndex b = a + 1; b < g.edge_count(); ++b)
      if (g.source(a) == g.source(b) && g.range(a) == g.range(b)) return std::pair{a, b};
  return std::nullopt;
}

// --- property (R) -----------------------------------------------------------

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::R1: return "R1";
    case Condition::R2: return "R2";
    case Condition::R3: return "R3";
  }
  return "?";
}

bool PropertyRReport::violates(Condition c) const {
  return std::find(violated.begin(), violated.end(), c) != violated.end();
}

namespace {

std::vector<VertexIndex> ordering_from_path(const DirectedMultigraph& g, const Path& p) {
  std::vector<VertexIndex> order{p.start};
  for (EdgeIndex e : p.edges) order.push_back(g.range(e));
  return order;
}

}  // namespace

PropertyRReport check_property_R(const DirectedMultigraph& g) {
  if (!is_connected(g)) throw PreconditionError("property (R) requires a connected graph");

  PropertyRReport report;
  report.weakly_connected = is_weakly_connected(g);

  if (auto cycles = cycles_geq2(g, 1); !cycles.empty()) {
    report.violated.push_back(Condition::R1);
    report.cycle_witness = std::move(cycles.front());
  }
  report.spanning_path = spanning_path(g);
  if (!report.spanning_path) report.violated.push_back(Condition::R2);
  if (auto pair = find_parallel_pair(g)) {
    report.violated.push_back(Condition::R3);
    report.parallel_witness = *pair;
  }

  report.holds = report.violated.empty();
  if (report.holds) report.ordering = ordering_from_path(g, *report.spanning_path);
  return report;
}

std::optional<std::vector<VertexIndex>> canonical_ordering(const DirectedMultigraph& g) {
  if (!is_connected(g)) return std::nullopt;
  auto report = check_property_R(g);
  return report.ordering;
}

}  // namespace qsym
