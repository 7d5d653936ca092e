#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qsym/cstar.hpp"
#include "qsym/families.hpp"
#include "qsym/graph.hpp"

namespace qsym::testing {

inline DirectedMultigraph rows(const std::vector<std::vector<unsigned>>& r) {
  return graph_from_matrix(AdjacencyMatrix::from_rows(r));
}

/// One instance of every named family.
inline std::vector<FamilySpec> family_fixtures() {
  return {make_family("P", {3}),  make_family("T"),      make_family("L_odd", {3}),
          make_family("L_bar", {3}), make_family("M", {2}), make_family("K2"),
          make_family("L11"),     make_family("Gamma0"), make_family("P23"),
          make_family("L2prime"), make_family("L3sup2")};
}

/// Every n x n matrix with entries in [0, max_entry], in lexicographic order.
template <class F>
void for_each_matrix(std::size_t n, unsigned max_entry, F&& f) {
  std::vector<unsigned> cells(n * n, 0);
  while (true) {
    std::vector<std::vector<unsigned>> r(n, std::vector<unsigned>(n));
    for (std::size_t i = 0; i < n * n; ++i) r[i / n][i % n] = cells[i];
    f(r);
    std::size_t k = 0;
    while (k < cells.size() && cells[k] == max_entry) cells[k++] = 0;
    if (k == cells.size()) return;
    ++cells[k];
  }
}

inline DirectedMultigraph random_graph(std::mt19937& rng, std::size_t max_vertices, unsigned max_entry,
                                       double density = 0.4) {
  std::uniform_int_distribution<std::size_t> nd(1, max_vertices);
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<unsigned> mult(1, max_entry);
  const std::size_t n = nd(rng);
  std::vector<std::vector<unsigned>> r(n, std::vector<unsigned>(n, 0));
  for (auto& row : r)
    for (auto& x : row)
      if (edge(rng)) x = mult(rng);
  return rows(r);
}

/// Brute-force: some vertex ordering makes the adjacency matrix canonical.
inline bool exists_canonical_ordering(const DirectedMultigraph& g) {
  std::vector<VertexIndex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (matrix_is_canonical(adjacency_matrix(g, order))) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Graphs match up to a vertex bijection preserving edge multiplicities.
inline bool isomorphic(const DirectedMultigraph& a, const DirectedMultigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const auto target = adjacency_matrix(b).entries();
  std::vector<VertexIndex> order(a.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (adjacency_matrix(a, order).entries() == target) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

/// Uniform atoms p.v, S.e, S*.e; length in [1, max_len].
inline GeneratorWord random_word(std::mt19937& rng, const DirectedMultigraph& g, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, g.vertex_count() + 2 * g.edge_count() - 1);
  GeneratorWord w;
  for (std::size_t i = len(rng); i > 0; --i) {
    std::size_t k = pick(rng);
    if (k < g.vertex_count()) {
      w.push_back({Atom::Kind::Projection, k});
    } else {
      k -= g.vertex_count();
      w.push_back({k % 2 ? Atom::Kind::Adjoint : Atom::Kind::Isometry, k / 2});
    }
  }
  return w;
}

}  // namespace qsym::testing
