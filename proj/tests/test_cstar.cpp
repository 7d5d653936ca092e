#include <doctest.h>

#include <map>

#include "qsym/cstar.hpp"
#include "support.hpp"

using namespace qsym;
using qsym::testing::random_word;
using qsym::testing::rows;

namespace {

EdgeIndex edge(const DirectedMultigraph& g, const char* id) { return g.find_edge(id).value(); }
VertexIndex vertex(const DirectedMultigraph& g, const char* id) { return g.find_vertex(id).value(); }

LinComb random_element(std::mt19937& rng, const DirectedMultigraph& g) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> terms(1, 3);
  LinComb t(g);
  for (int i = terms(rng); i > 0; --i)
    t += Rational(coeff(rng), 2) * evaluate_word(random_word(rng, g, 3), g);
  return t;
}

// All paths of the graph ending at v, empty path included.
std::vector<Path> paths_ending_at(const DirectedMultigraph& g, VertexIndex v) {
  std::vector<Path> out{Path{v, {}}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Path p = out[i];
    for (EdgeIndex e : g.in_edges(p.start)) {
      Path q{g.source(e), {e}};
      q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
      out.push_back(q);
    }
  }
  return out;
}

std::size_t sink_monomial_count(const DirectedMultigraph& g) {
  std::size_t n = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) {
      const auto k = paths_ending_at(g, v).size();
      n += k * k;
    }
  return n;
}

// Rank over Q of the span of all products of generators, in sink coordinates.
std::size_t span_rank(const DirectedMultigraph& g) {
  std::vector<std::map<PathMonomial, Rational>> basis;  // echelon rows keyed by pivot order
  std::vector<PathMonomial> pivots;

  auto reduce = [&](std::map<PathMonomial, Rational> v) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto it = v.find(pivots[i]);
      if (it == v.end()) continue;
      const Rational factor = it->second / basis[i].at(pivots[i]);
      for (const auto& [k, c] : basis[i]) {
        auto& slot = v[k];
        slot -= factor * c;
        if (slot == 0) v.erase(k);
      }
    }
    return v;
  };
  auto insert = [&](const LinComb& t) {
    const LinComb s = expand_to_sinks(t);
    auto v = reduce(std::map<PathMonomial, Rational>(s.terms().begin(), s.terms().end()));
    if (v.empty()) return false;
    pivots.push_back(v.begin()->first);
    basis.push_back(std::move(v));
    return true;
  };

  std::vector<LinComb> gens;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) gens.push_back(projection(g, v));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    gens.push_back(isometry(g, e));
    gens.push_back(adjoint(g, e));
  }
  std::vector<LinComb> frontier;
  for (const auto& x : gens)
    if (insert(x)) frontier.push_back(x);
  while (!frontier.empty()) {
    std::vector<LinComb> next;
    for (const auto& w : frontier)
      for (const auto& x : gens) {
        LinComb p = multiply(w, x);
        if (insert(p)) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return basis.size();
}

}  // namespace

TEST_CASE("star") {
  auto p3 = make_family("P", {3}).graph;
  const auto e12 = edge(p3, "e12");
  CHECK(star(isometry(p3, e12)) == adjoint(p3, e12));
  CHECK(star(projection(p3, 1)) == projection(p3, 1));

  std::mt19937 rng(3);
  for (const auto& f : qsym::testing::family_fixtures())
    for (int i = 0; i < 20; ++i) {
      auto t = random_element(rng, f.graph);
      CHECK(star(star(t)) == t);
    }
}

TEST_CASE("multiply examples") {
  auto t = make_family("T").graph;
  const auto e11 = edge(t, "e11"), e12 = edge(t, "e12");
  CHECK(multiply(adjoint(t, e11), isometry(t, e11)) == projection(t, vertex(t, "1")));
  CHECK(multiply(adjoint(t, e12), isometry(t, e12)) == projection(t, vertex(t, "2")));
  CHECK(multiply(adjoint(t, e11), isometry(t, e12)).is_zero());
  CHECK(multiply(isometry(t, e12), isometry(t, e11)).is_zero());
  CHECK(multiply(isometry(t, e12), projection(t, 1)) == isometry(t, e12));
  CHECK(multiply(isometry(t, e12), projection(t, 0)).is_zero());
}

TEST_CASE("p_s(e) S_e = S_e by both reduction routes") {
  for (const auto& f : qsym::testing::family_fixtures()) {
    const auto& g = f.graph;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const VertexIndex v = g.source(e);
      CHECK(multiply(projection(g, v), isometry(g, e)) == isometry(g, e));
      LinComb expanded(g);
      for (EdgeIndex h : g.out_edges(v)) expanded += multiply(isometry(g, h), adjoint(g, h));
      CHECK(multiply(expanded, isometry(g, e)) == isometry(g, e));
    }
  }
}

TEST_CASE("cross-graph operands are rejected") {
  auto a = make_family("P", {2}).graph;
  auto b = make_family("P", {2}).graph;
  CHECK_THROWS_AS(multiply(isometry(a, 0), isometry(b, 0)), ArgumentError);
  CHECK_THROWS_AS(isometry(a, 0) + isometry(b, 0), ArgumentError);
  CHECK(multiply(LinComb{}, isometry(a, 0)).is_zero());
}

TEST_CASE("parse_word") {
  auto t = make_family("T").graph;
  auto w = parse_word("p.1  S.e11 S*.e12", t);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Atom{Atom::Kind::Projection, 0});
  CHECK(w[2] == Atom{Atom::Kind::Adjoint, edge(t, "e12")});
  CHECK(format_word(t, w) == "p.1 S.e11 S*.e12");
  CHECK_THROWS_AS(parse_word("S.e99", t), ArgumentError);
  CHECK_THROWS_AS(parse_word("p.7", t), ArgumentError);
  CHECK_THROWS_AS(parse_word("Q.e11", t), ArgumentError);
  CHECK_THROWS_AS(parse_word("   ", t), ArgumentError);
}

TEST_CASE("normal_form examples") {
  auto p3 = make_family("P", {3}).graph;
  auto nf = normal_form(parse_word("S.e12 S*.e12", p3), p3);
  CHECK(nf == LinComb(p3, PathMonomial{Path{0, {edge(p3, "e12")}}, Path{0, {edge(p3, "e12")}}}));
  CHECK(format_lincomb(nf) == "S.e12 S*.e12");

  auto p2 = make_family("P", {2}).graph;
  CHECK(format_lincomb(normal_form(parse_word("p.1", p2), p2)) == "S.e12 S*.e12");
  CHECK(format_lincomb(normal_form(parse_word("p.2", p2), p2)) == "p.2");

  auto t = make_family("T").graph;
  CHECK(normal_form(parse_word("S*.e11 S.e12", t), t).is_zero());
  CHECK(format_lincomb(normal_form(parse_word("S*.e11 S.e11", t), t)) == "p.1");
}

TEST_CASE("normal_form on a cyclic graph respects the path cap") {
  auto t = make_family("T").graph;
  GeneratorWord w(9, Atom{Atom::Kind::Isometry, edge(t, "e11")});
  try {
    normal_form(w, t);
    FAIL("expected truncation");
  } catch (const TruncationError& e) {
    CHECK(e.partial().max_path_length() == 9);
  }
  CHECK(normal_form(w, t, NormalFormOptions{9}).max_path_length() == 9);
  w.pop_back();
  CHECK(normal_form(w, t).max_path_length() == 8);
}

TEST_CASE("equivalent uses relation (ii)") {
  auto t = make_family("T").graph;
  const auto e11 = edge(t, "e11"), e12 = edge(t, "e12");
  LinComb sum = multiply(isometry(t, e11), adjoint(t, e11)) + multiply(isometry(t, e12), adjoint(t, e12));
  CHECK(equivalent(projection(t, 0), sum));
  CHECK_FALSE(projection(t, 0) == sum);
  CHECK_FALSE(equivalent(projection(t, 0), multiply(isometry(t, e11), adjoint(t, e11))));
  CHECK(equivalent(unit(t), unit(t)));
  CHECK(equivalent(isometry(t, e11),
                   multiply(isometry(t, e11), multiply(isometry(t, e11), adjoint(t, e11))) +
                       multiply(isometry(t, e11), multiply(isometry(t, e12), adjoint(t, e12)))));
}

TEST_CASE("dimension") {
  for (int n = 2; n <= 6; ++n) CHECK(dimension(make_family("P", {n}).graph) == std::uint64_t(n * n));
  auto p23 = make_family("P23").graph;
  CHECK(dimension(p23) == 13);
  CHECK(sink_monomial_count(p23) == 13);
  CHECK(dimension(make_family("P", {2}).graph) == 4);
  CHECK_THROWS_AS(dimension(parse_graph("vertices: 1")), ArgumentError);
  CHECK_THROWS_AS(dimension(make_family("T").graph), ArgumentError);
  CHECK_THROWS_AS(dimension(make_family("K2").graph), ArgumentError);
}

TEST_CASE("property: dimension equals the rank of the generated span") {
  std::size_t checked = 0;
  // Every acyclic graph is isomorphic to one with a strictly upper triangular matrix.
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::size_t cells = n * (n - 1) / 2;
    std::vector<unsigned> c(cells, 0);
    while (true) {
      std::vector<std::vector<unsigned>> r(n, std::vector<unsigned>(n, 0));
      unsigned total = 0;
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += r[i][j] = c[k++];
      auto g = rows(r);
      if (total <= 5 && is_connected(g)) {
        ++checked;
        const auto d = dimension(g);
        CHECK(d == sink_monomial_count(g));
        CHECK(d == span_rank(g));
      }
      std::size_t i = 0;
      while (i < cells && c[i] == 2) c[i++] = 0;
      if (i == cells) break;
      ++c[i];
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("tau") {
  auto p3 = make_family("P", {3}).graph;
  auto m3 = make_family("M", {1}).graph;  // loop at 1, edges 1->2
  const auto e12 = edge(p3, "e12");
  CHECK(tau(multiply(isometry(p3, e12), adjoint(p3, e12))) == 1);
  const auto a = edge(m3, "e11"), b = edge(m3, "e12");
  CHECK(tau(multiply(isometry(m3, a), adjoint(m3, b))) == 0);
  CHECK(tau(Rational(3) * multiply(isometry(m3, a), adjoint(m3, a)) - multiply(isometry(m3, a), adjoint(m3, b))) ==
        3);
  CHECK(tau(projection(p3, 2)) == 1);
  CHECK(tau(projection(m3, 0)) == 2);
  CHECK_THROWS_AS(tau(isometry(p3, e12)), DomainError);
  CHECK_THROWS_AS(tau(normal_form(parse_word("S.e12 S.e23 S*.e23", p3), p3)), DomainError);
  CHECK(tau(Rational(1, 2) * multiply(isometry(m3, a), adjoint(m3, a))) > 0);
}

TEST_CASE("f_matrix") {
  auto p2 = make_family("P", {2}).graph;
  CHECK(f_matrix(p2) == std::vector<std::vector<Rational>>{{Rational(1)}});

  auto t = make_family("T").graph;
  auto f = f_matrix(t);
  CHECK(f[edge(t, "e11")][edge(t, "e11")] == 2);
  CHECK(f[edge(t, "e12")][edge(t, "e12")] == 1);
  CHECK(f[0][1] == 0);
  CHECK(f[1][0] == 0);

  for (const auto& fam : qsym::testing::family_fixtures()) {
    auto F = f_matrix(fam.graph);
    for (std::size_t i = 0; i < F.size(); ++i)
      for (std::size_t j = 0; j < F.size(); ++j) {
        if (i == j) {
          CHECK(F[i][j] > 0);
        } else {
          CHECK(F[i][j] == 0);
        }
      }
  }
}

TEST_CASE("verify_ck_relations") {
  for (const auto& f : qsym::testing::family_fixtures()) {
    auto rep = verify_ck_relations(f.graph);
    CAPTURE(f.name);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());
    CHECK(rep.checks > 0);
  }
  auto lbar = make_family("L_bar", {2}).graph;
  for (EdgeIndex e = 0; e < lbar.edge_count(); ++e)
    CHECK(multiply(unit(lbar), isometry(lbar, e)) == isometry(lbar, e));

  auto m3 = make_family("M", {3}).graph;
  for (EdgeIndex e = 0; e < m3.edge_count(); ++e)
    for (EdgeIndex f = 0; f < m3.edge_count(); ++f)
      CHECK(multiply(isometry(m3, e), adjoint(m3, f)).is_zero() == (m3.range(e) != m3.range(f)));
}

TEST_CASE("property: left and right folds agree") {
  std::mt19937 rng(2024);
  for (const auto& f : qsym::testing::family_fixtures())
    for (int i = 0; i < 200; ++i) {
      auto w = random_word(rng, f.graph, 6);
      const auto left = evaluate_word(w, f.graph, FoldOrder::LeftToRight);
      const auto right = evaluate_word(w, f.graph, FoldOrder::RightToLeft);
      if (!(left == right)) FAIL_CHECK(f.name << ": " << format_word(f.graph, w));
    }
}

TEST_CASE("property: star is an anti-homomorphism") {
  std::mt19937 rng(99);
  for (const auto& f : qsym::testing::family_fixtures())
    for (int i = 0; i < 50; ++i) {
      auto a = random_element(rng, f.graph);
      auto b = random_element(rng, f.graph);
      CHECK(star(multiply(a, b)) == multiply(star(b), star(a)));
    }
}

TEST_CASE("property: equivalence agrees with sink expansion on acyclic graphs") {
  std::mt19937 rng(5);
  auto p23 = make_family("P23").graph;
  auto p4 = make_family("P", {4}).graph;
  for (const DirectedMultigraph* g : {&p23, &p4})
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(rng, *g);
      auto b = i % 3 == 0 ? expand_to_sinks(a) : random_element(rng, *g);
      CHECK(equivalent(a, b) == (expand_to_sinks(a) == expand_to_sinks(b)));
    }
}
