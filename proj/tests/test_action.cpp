#include <doctest.h>

#include "qsym/action.hpp"
#include "mutation.hpp"
#include "support.hpp"

using namespace qsym;
using qsym::testing::rows;

namespace {

const CoeffAlgebra k1{1, 3};
const CoeffAlgebra k2{2, 3};

CoeffWord z(CoeffAlgebra a, std::size_t slot, std::size_t i, bool adj = false) {
  return CoeffWord::letter(a, slot, i, adj);
}

CoeffWord random_coeff(std::mt19937& rng, CoeffAlgebra a) {
  std::uniform_int_distribution<std::size_t> slot(0, a.slots - 1);
  std::uniform_int_distribution<int> letter(-static_cast<int>(a.letters), static_cast<int>(a.letters));
  std::uniform_int_distribution<int> len(0, 4), terms(1, 3), coeff(-2, 2);
  CoeffWord w(a);
  for (int t = terms(rng); t > 0; --t) {
    CoeffMonomial m{slot(rng), {}};
    for (int i = len(rng); i > 0; --i) {
      int l = letter(rng);
      if (l != 0) m.word.push_back(l);
    }
    w.add(m, coeff(rng));
  }
  return w;
}

bool all_cross_terms_vanish(const ActionReport& r) {
  for (const auto& c : r.cross_terms)
    if (!c.product.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("coeff_multiply examples") {
  CHECK(coeff_multiply(z(k2, 0, 1), z(k2, 1, 2)).is_zero());
  const CoeffAlgebra single{1, 1};
  CHECK(coeff_multiply(z(single, 0, 1), z(single, 0, 1, true)) == CoeffWord::one(single));
  CHECK(coeff_multiply(z(single, 0, 1, true), z(single, 0, 1)) == CoeffWord::one(single));
  CHECK(coeff_multiply(z(k2, 0, 1), z(k2, 0, 1, true)) == CoeffWord::slot_unit(k2, 0));
  CHECK(format_coeff(CoeffWord::slot_unit(k2, 0)) == "(1, 0)");
  CHECK(format_coeff(z(k2, 1, 2)) == "(0, z2)");
  CHECK(format_coeff(z(k1, 0, 3, true)) == "z3*");
  CHECK(format_coeff(CoeffWord::zero(k1)) == "0");

  CHECK_THROWS_AS(coeff_multiply(z(k1, 0, 1), z(k2, 0, 1)), ArgumentError);
  CHECK_THROWS_AS(coeff_multiply(z(k1, 0, 1), z(CoeffAlgebra{1, 4}, 0, 1)), ArgumentError);
  CHECK_THROWS_AS(z(k1, 1, 1), ArgumentError);
  CHECK_THROWS_AS(z(k1, 0, 4), ArgumentError);
}

TEST_CASE("reduce_word") {
  CHECK(reduce_word({1, 2, -2, -1, 3}) == std::vector<Letter>{3});
  CHECK(reduce_word({-1, 1}).empty());
  CHECK(reduce_word({1, 1, -2}) == std::vector<Letter>{1, 1, -2});
}

TEST_CASE("property: coefficient algebra is associative and star compatible") {
  std::mt19937 rng(17);
  for (CoeffAlgebra a : {k1, k2})
    for (int i = 0; i < 300; ++i) {
      auto x = random_coeff(rng, a), y = random_coeff(rng, a), w = random_coeff(rng, a);
      CHECK(coeff_multiply(coeff_multiply(x, y), w) == coeff_multiply(x, coeff_multiply(y, w)));
      CHECK(coeff_star(coeff_multiply(x, y)) == coeff_multiply(coeff_star(y), coeff_star(x)));
      CHECK(coeff_star(coeff_star(x)) == x);
      CHECK(coeff_multiply(CoeffWord::one(a), x) == x);
      CHECK(coeff_multiply(x, CoeffWord::one(a)) == x);
    }
}

TEST_CASE("diagonal_action") {
  auto p2 = make_family("P", {2}).graph;
  auto d = diagonal_action(p2);
  CHECK(d.algebra == CoeffAlgebra{1, 1});
  CHECK(format_action(p2, d) == "alpha(S.e12) = S.e12 ⊗ z1\n");

  auto t = make_family("T").graph;
  auto dt = diagonal_action(t);
  CHECK(dt.algebra.letters == 2);
  CHECK(dt.images[1].size() == 1);
  CHECK(dt.images[1][0].edge == 1);
  auto rep = verify_action(t, dt);
  CHECK(rep.ok);
  CHECK_FALSE(rep.failure);
  CHECK(rep.cross_terms.empty());
}

TEST_CASE("diagonal action verifies on every fixture") {
  for (const auto& f : qsym::testing::family_fixtures()) {
    CAPTURE(f.name);
    auto rep = verify_action(f.graph, diagonal_action(f.graph));
    CHECK(rep.ok);
  }
  for (const char* name : {"L_odd", "M", "L_bar"}) {
    auto big = make_family(name, {4}).graph;
    CHECK(big.edge_count() <= 14);
    CHECK(verify_action(big, diagonal_action(big)).ok);
  }
}

TEST_CASE("doubling_action on L2prime matches the printed formulas") {
  auto g = make_family("L2prime").graph;
  const auto e1 = g.find_edge("e12_1").value(), e2 = g.find_edge("e12_2").value();
  auto a = doubling_action(g, e1, e2);
  CHECK(format_action(g, a) ==
        "alpha(S.e11) = S.e11 ⊗ (z1, z1)\n"
        "alpha(S.e12_1) = S.e12_1 ⊗ (z2, 0) + S.e12_2 ⊗ (0, z3)\n"
        "alpha(S.e12_2) = S.e12_2 ⊗ (z3, 0) + S.e12_1 ⊗ (0, z2)\n");
  auto rep = verify_action(g, a);
  CHECK(rep.ok);
  CHECK(rep.cross_terms.size() == 4);
  CHECK(all_cross_terms_vanish(rep));
}

TEST_CASE("doubling_action on L3sup2 and errors") {
  auto g = make_family("L3sup2").graph;
  const auto pair = find_parallel_pair(g).value();
  auto a = doubling_action(g, pair.first, pair.second);
  const auto loop = g.find_edge("e22").value();
  CHECK(a.images[loop].size() == 1);
  CHECK(a.images[loop][0].coeff == z(a.algebra, 0, loop + 1) + z(a.algebra, 1, loop + 1));
  auto rep = verify_action(g, a);
  CHECK(rep.ok);
  CHECK(all_cross_terms_vanish(rep));

  auto p2 = make_family("P", {2}).graph;
  CHECK_THROWS_AS(doubling_action(p2, 0, 0), ArgumentError);
  CHECK_THROWS_AS(doubling_action(g, 0, 1), ArgumentError);

  auto plain = rows({{0, 2}, {0, 0}});
  CHECK(verify_action(plain, doubling_action(plain, 0, 1)).ok);
}

TEST_CASE("corrupting a doubling coefficient is reported") {
  auto g = make_family("L2prime").graph;
  const auto e1 = g.find_edge("e12_1").value(), e2 = g.find_edge("e12_2").value();
  auto a = doubling_action(g, e1, e2);
  // alpha(S_e1) = S_e1 ⊗ (z1,0) + S_e2 ⊗ (z2,0) instead of (0,z2)
  a.images[e1][1].coeff = z(a.algebra, 0, e2 + 1);
  auto rep = verify_action(g, a);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.failure);
  CHECK(*rep.failure == "(i) e12_2");
  bool found_detail = false;
  for (const auto& c : rep.checks)
    if (!c.ok) found_detail = found_detail || !c.detail.empty();
  CHECK(found_detail);
}

TEST_CASE("verify_action rejects malformed specs") {
  auto t = make_family("T").graph;
  auto a = diagonal_action(t);
  a.images.pop_back();
  CHECK_THROWS_AS(verify_action(t, a), ArgumentError);
  auto b = diagonal_action(t);
  b.images[0][0].edge = 7;
  CHECK_THROWS_AS(verify_action(t, b), ArgumentError);
  auto c = diagonal_action(t);
  c.images[0][0].coeff = z(k2, 0, 1);
  CHECK_THROWS_AS(verify_action(t, c), ArgumentError);
}

TEST_CASE("property: every single-coefficient mutation is detected") {
  std::size_t sites = 0;
  for (const auto& f : qsym::testing::family_fixtures()) {
    std::vector<ActionSpec> actions{diagonal_action(f.graph)};
    if (auto pair = find_parallel_pair(f.graph)) actions.push_back(doubling_action(f.graph, pair->first, pair->second));
    for (const auto& a : actions) {
      REQUIRE(verify_action(f.graph, a).ok);
      for (const auto& site : qsym::testing::mutation_sites(a)) {
        ActionSpec m = a;
        qsym::testing::mutate(m, site.edge, site.term, site.kind);
        ++sites;
        if (verify_action(f.graph, m).ok)
          FAIL_CHECK(f.name << " " << a.name << ": undetected mutation at edge " << site.edge);
      }
    }
  }
  CHECK(sites > 50);
}
