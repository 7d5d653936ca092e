#include <doctest.h>

#include <set>

#include "qsym/error.hpp"
#include "qsym/graph.hpp"
#include "support.hpp"

using namespace qsym;
using qsym::testing::rows;

namespace {

std::vector<std::string> edge_ids(const DirectedMultigraph& g, const Path& p) {
  std::vector<std::string> out;
  for (EdgeIndex e : p.edges) out.push_back(g.edge(e).id);
  return out;
}

std::vector<std::string> vertex_names(const DirectedMultigraph& g, const std::vector<VertexIndex>& order) {
  std::vector<std::string> out;
  for (VertexIndex v : order) out.push_back(g.vertex_id(v));
  return out;
}

// Simple cycles of length >= 2 counted by brute force over edge sequences;
// each cycle shows up once per rotation.
std::size_t brute_force_cycle_count(const DirectedMultigraph& g) {
  std::size_t hits = 0;
  std::vector<EdgeIndex> seq;
  auto rec = [&](auto&& self, std::size_t len) -> void {
    if (seq.size() == len) {
      if (g.range(seq.back()) != g.source(seq.front())) return;
      std::set<VertexIndex> seen;
      for (EdgeIndex e : seq) seen.insert(g.source(e));
      if (seen.size() == len) ++hits;
      return;
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (!seq.empty() && g.source(e) != g.range(seq.back())) continue;
      seq.push_back(e);
      self(self, len);
      seq.pop_back();
    }
  };
  std::size_t total = 0;
  for (std::size_t len = 2; len <= g.vertex_count(); ++len) {
    hits = 0;
    rec(rec, len);
    total += hits / len;
  }
  return total;
}

}  // namespace

TEST_CASE("parse_graph reads the edge-list format") {
  auto g = parse_graph("vertices: 2\ne1: 1 -> 2\n");
  CHECK(g.vertex_count() == 2);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edge(0).id == "e1");
  CHECK(g.vertex_id(g.source(0)) == "1");
  CHECK(g.vertex_id(g.range(0)) == "2");

  auto t = parse_graph("# Toeplitz\nvertices: 2\ne11: 1 -> 1\ne12: 1 -> 2\n");
  CHECK(adjacency_matrix(t) == AdjacencyMatrix::from_rows({{1, 1}, {0, 0}}));

  auto lone = parse_graph("vertices: 1");
  CHECK(lone.vertex_count() == 1);
  CHECK(lone.edge_count() == 0);

  auto named = parse_graph("vertices: a,b\n a -> b\nb->a");
  CHECK(named.edge(0).id == "e1");
  CHECK(named.edge(1).id == "e2");
  CHECK(named.vertex_id(named.range(1)) == "a");
}

TEST_CASE("parse_graph reports the offending line") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("vertices: 2\ne1: 1 -> 2\ne1: 2 -> 1\n") == 3);
  CHECK(line_of("vertices: 2\n\ne1: 1 -> 3\n") == 3);
  CHECK(line_of("e1: 1 -> 2\n") == 1);
  CHECK(line_of("vertices: 2\nnonsense\n") == 2);
  CHECK(line_of("vertices: 2\nvertices: 3\n") == 2);
  CHECK(line_of("vertices: 2\ne1: 1 -> 2 3\n") == 2);
  CHECK(line_of("# nothing\n") == 1);
  CHECK_THROWS_AS(parse_graph("vertices: a,a"), ParseError);
}

TEST_CASE("format_graph round trips") {
  auto g = make_family("L3sup2").graph;
  auto h = parse_graph(format_graph(g));
  CHECK(h == g);
}

TEST_CASE("is_connected follows the every-vertex-on-an-edge definition") {
  CHECK(is_connected(make_family("P", {3}).graph));
  CHECK_FALSE(is_connected(parse_graph("vertices: 1")));
  auto p23 = make_family("P23").graph;
  CHECK(is_connected(p23));
  CHECK_FALSE(is_weakly_connected(p23));
  CHECK(is_connected(parse_graph("vertices: 1\nl: 1 -> 1")));
}

TEST_CASE("adjacency_matrix under explicit orderings") {
  auto t = make_family("T").graph;
  std::vector<VertexIndex> id{0, 1};
  CHECK(adjacency_matrix(t, id) == AdjacencyMatrix::from_rows({{1, 1}, {0, 0}}));
  CHECK(adjacency_matrix(make_family("K2").graph, id) == AdjacencyMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(adjacency_matrix(make_family("L11").graph) == AdjacencyMatrix::from_rows({{1, 0}, {0, 1}}));

  std::vector<VertexIndex> swapped{1, 0};
  auto m = adjacency_matrix(t, swapped);
  CHECK(m.entries() == std::vector<unsigned>{0, 0, 1, 1});
  CHECK(m.order() == std::vector<std::string>{"2", "1"});
  CHECK(m.total() == t.edge_count());

  std::vector<VertexIndex> bad{0, 0};
  CHECK_THROWS_AS(adjacency_matrix(t, bad), ArgumentError);
  std::vector<VertexIndex> short_order{0};
  CHECK_THROWS_AS(adjacency_matrix(t, short_order), ArgumentError);
}

TEST_CASE("cycles_geq2 examples") {
  CHECK(cycles_geq2(make_family("P", {3}).graph).empty());
  auto k2 = make_family("K2").graph;
  auto c = cycles_geq2(k2);
  REQUIRE(c.size() == 1);
  CHECK(edge_ids(k2, c[0]) == std::vector<std::string>{"e12", "e21"});

  auto g0 = make_family("Gamma0").graph;
  auto c0 = cycles_geq2(g0);
  REQUIRE(c0.size() == 1);
  CHECK(edge_ids(g0, c0[0]) == std::vector<std::string>{"e23", "e32"});

  CHECK(cycles_geq2(make_family("L_bar", {4}).graph).empty());
  CHECK(cycles_geq2(rows({{0, 2}, {1, 0}})).size() == 2);
}

TEST_CASE("spanning_path examples") {
  auto p4 = make_family("P", {4}).graph;
  auto p = spanning_path(p4);
  REQUIRE(p);
  CHECK(edge_ids(p4, *p) == std::vector<std::string>{"e12", "e23", "e34"});

  CHECK_FALSE(spanning_path(make_family("L11").graph));

  auto m4 = make_family("M", {4}).graph;
  auto pm = spanning_path(m4);
  REQUIRE(pm);
  CHECK(edge_ids(m4, *pm) == std::vector<std::string>{"e12", "e23", "e34", "e45"});
}

TEST_CASE("check_property_R examples") {
  auto l9 = check_property_R(make_family("L_odd", {5}).graph);
  CHECK(l9.holds);
  CHECK(l9.violated.empty());

  auto k2 = check_property_R(make_family("K2").graph);
  CHECK_FALSE(k2.holds);
  CHECK(k2.violated == std::vector<Condition>{Condition::R1});
  CHECK(k2.cycle_witness);

  auto l3 = check_property_R(make_family("L3sup2").graph);
  CHECK(l3.violated == std::vector<Condition>{Condition::R3});
  REQUIRE(l3.parallel_witness);

  auto l11 = check_property_R(make_family("L11").graph);
  CHECK(l11.violated == std::vector<Condition>{Condition::R2});

  CHECK_THROWS_AS(check_property_R(parse_graph("vertices: 2\ne: 1 -> 1")), PreconditionError);
}

TEST_CASE("canonical_ordering examples") {
  auto t = make_family("T").graph;
  auto o = canonical_ordering(t);
  REQUIRE(o);
  CHECK(vertex_names(t, *o) == std::vector<std::string>{"1", "2"});

  auto relabeled = parse_graph("vertices: 1,2,3\na: 3 -> 1\nb: 1 -> 2\n");
  auto r = canonical_ordering(relabeled);
  REQUIRE(r);
  CHECK(vertex_names(relabeled, *r) == std::vector<std::string>{"3", "1", "2"});

  CHECK_FALSE(canonical_ordering(make_family("Gamma0").graph));
}

TEST_CASE("matrix_is_canonical examples") {
  CHECK(matrix_is_canonical(AdjacencyMatrix::from_rows({{1, 1}, {0, 0}})));
  CHECK_FALSE(matrix_is_canonical(AdjacencyMatrix::from_rows({{0, 1}, {1, 0}})));
  CHECK(matrix_is_canonical(AdjacencyMatrix::from_rows({{0}})));
  CHECK(matrix_is_canonical(AdjacencyMatrix::from_rows({{1}})));
  CHECK_FALSE(matrix_is_canonical(AdjacencyMatrix::from_rows({{1, 2}, {0, 0}})));
  CHECK_FALSE(matrix_is_canonical(AdjacencyMatrix::from_rows({{0, 0}, {0, 0}})));
}

TEST_CASE("graph_from_matrix examples") {
  auto l11 = rows({{1, 0}, {0, 1}});
  CHECK(l11 == make_family("L11").graph);

  auto double_edge = rows({{0, 2}, {0, 0}});
  REQUIRE(double_edge.edge_count() == 2);
  CHECK(double_edge.edge(0).id == "e12_1");
  CHECK(double_edge.edge(1).id == "e12_2");
  CHECK(find_parallel_pair(double_edge) == std::pair<EdgeIndex, EdgeIndex>{0, 1});

  auto g0 = rows({{0, 1, 0}, {0, 0, 1}, {0, 1, 0}});
  CHECK(g0 == make_family("Gamma0").graph);
}

TEST_CASE("property: matrix round trip is an isomorphism") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto g = qsym::testing::random_graph(rng, 5, 2);
    std::vector<VertexIndex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto back = graph_from_matrix(adjacency_matrix(g, order));
    CHECK(qsym::testing::isomorphic(g, back));
  }
}

TEST_CASE("property: property (R) iff some ordering is canonical") {
  std::size_t checked = 0;
  auto run = [&](const std::vector<std::vector<unsigned>>& r) {
    auto g = rows(r);
    if (!is_connected(g)) return;
    ++checked;
    auto rep = check_property_R(g);
    const bool brute = qsym::testing::exists_canonical_ordering(g);
    if (rep.holds != brute) FAIL_CHECK("mismatch on " << format_matrix(adjacency_matrix(g)));
    if (rep.ordering) CHECK(matrix_is_canonical(adjacency_matrix(g, *rep.ordering)));
  };
  for (std::size_t n = 1; n <= 3; ++n) qsym::testing::for_each_matrix(n, 2, run);
  qsym::testing::for_each_matrix(4, 1, run);
  CHECK(checked > 60000);
}

TEST_CASE("property: cycles_geq2 agrees with brute force") {
  std::mt19937 rng(11);
  for (int i = 0; i < 400; ++i) {
    auto g = qsym::testing::random_graph(rng, 4, 2, 0.45);
    auto cycles = cycles_geq2(g);
    CHECK(cycles.size() == brute_force_cycle_count(g));
    for (const Path& c : cycles) {
      CHECK(c.length() >= 2);
      CHECK(is_valid_path(g, c));
      CHECK(path_range(g, c) == c.start);
    }
  }
}
