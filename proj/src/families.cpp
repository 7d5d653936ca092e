#include "qsym/families.hpp"

#include <algorithm>
#include <functional>

#include "qsym/error.hpp"

namespace qsym {

namespace {

using Rows = std::vector<std::vector<unsigned>>;

Rows square(std::size_t n, const std::function<unsigned(std::size_t, std::size_t)>& entry) {
  Rows rows(n, std::vector<unsigned>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = entry(i, j);
  return rows;
}

DirectedMultigraph from_rows(const Rows& rows) {
  return graph_from_matrix(AdjacencyMatrix::from_rows(rows));
}

struct Entry {
  FamilyInfo info;
  int min_param;
  std::function<FamilySpec(int)> build;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> r;
    auto fixed = [](std::string name, Rows rows, VerdictKind v, std::string label, std::string cite) {
      return [=](int) {
        return FamilySpec{name, {}, from_rows(rows), v, label, cite};
      };
    };

    r.push_back({{"P", 1, "Example 1", "simple directed path on n vertices"}, 2, [](int n) {
                   auto rows = square(n, [](auto i, auto j) { return j == i + 1 ? 1u : 0u; });
                   return FamilySpec{"P", {n}, from_rows(rows), VerdictKind::Rigid,
                                     "M_" + std::to_string(n) + "(ℂ)", "Example 1"};
                 }});
    r.push_back({{"T", 0, "Example 2", "loop at 1 plus edge 1->2"}, 0,
                 fixed("T", {{1, 1}, {0, 0}}, VerdictKind::Rigid, "Toeplitz algebra", "Example 2")});
    r.push_back({{"L_odd", 1, "Example 3", "upper triangular all-ones on n vertices"}, 1, [](int n) {
                   auto rows = square(n, [](auto i, auto j) { return i <= j ? 1u : 0u; });
                   return FamilySpec{"L_odd", {n}, from_rows(rows), VerdictKind::Rigid,
                                     "odd quantum sphere C(S_q^" + std::to_string(2 * n - 1) + ")",
                                     "Example 3"};
                 }});
    r.push_back({{"L_bar", 1, "Example 4", "Jordan block: loops plus superdiagonal on n vertices"}, 1,
                 [](int n) {
                   auto rows = square(n, [](auto i, auto j) { return (j == i || j == i + 1) ? 1u : 0u; });
                   std::string label =
                       n == 2 ? "C(SU_q(2))" : "C(S_q^" + std::to_string(2 * n - 1) + ")";
                   return FamilySpec{"L_bar", {n}, from_rows(rows), VerdictKind::Rigid, label, "Example 4"};
                 }});
    r.push_back({{"M", 1, "Example 5", "(n+1) vertices, upper triangular ones, no loop at the last"}, 1,
                 [](int n) {
                   const std::size_t size = static_cast<std::size_t>(n) + 1;
                   auto rows = square(size, [size](auto i, auto j) {
                     if (i > j) return 0u;
                     if (i == size - 1 && j == size - 1) return 0u;
                     return 1u;
                   });
                   return FamilySpec{"M", {n}, from_rows(rows), VerdictKind::Rigid,
                                     "even dimensional quantum ball C(B_q^" + std::to_string(2 * n) + ")",
                                     "Example 5"};
                 }});
    r.push_back({{"K2", 0, "counterexample (1)", "complete graph on two vertices (2-cycle)"}, 0,
                 fixed("K2", {{0, 1}, {1, 0}}, VerdictKind::KnownLarger, "M_2(C(S^1))", "counterexample (1)")});
    r.push_back({{"L11", 0, "counterexample (2)", "two disjoint loops"}, 0,
                 fixed("L11", {{1, 0}, {0, 1}}, VerdictKind::KnownLarger, "C(S^1) ⊕ C(S^1)", "counterexample (2)")});
    r.push_back({{"Gamma0", 0, "Remark (A)", "edge 1->2 into a 2-cycle between 2 and 3"}, 0,
                 fixed("Gamma0", {{0, 1, 0}, {0, 0, 1}, {0, 1, 0}}, VerdictKind::Rigid,
                       "graph C*-algebra of Γ₀", "Remark (A)")});
    r.push_back({{"P23", 0, "Remark (B)", "disjoint union of P_2 and P_3"}, 0,
                 fixed("P23",
                       {{0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 0, 0}},
                       VerdictKind::Rigid, "M_2(ℂ) ⊕ M_3(ℂ)", "Remark (B)")});
    r.push_back({{"L2prime", 0, "counterexample (3)", "loop at 1 plus a double edge 1=>2"}, 0,
                 fixed("L2prime", {{1, 2}, {0, 0}}, VerdictKind::NotRigidParallelEdges,
                       "even quantum real projective space C(RP_q^2)", "counterexample (3)")});
    r.push_back({{"L3sup2", 0, "counterexample (3)", "loops at both vertices plus a double edge 1=>2"}, 0,
                 fixed("L3sup2", {{1, 2}, {0, 1}}, VerdictKind::NotRigidParallelEdges,
                       "C(SO_q(3)) ≅ C(RP_q^3)", "counterexample (3)")});
    return r;
  }();
  return entries;
}

}  // namespace

FamilySpec make_family(const std::string& name, const std::vector<int>& params) {
  const auto& entries = registry();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const Entry& e) { return e.info.name == name; });
  if (it == entries.end()) throw ArgumentError("unknown family '" + name + "'");
  if (static_cast<int>(params.size()) != it->info.arity)
    throw ArgumentError("family '" + name + "' takes " + std::to_string(it->info.arity) +
                        " parameter(s)");
  if (it->info.arity == 0) return it->build(0);

  const int n = params.front();
  if (n < it->min_param)
    throw ArgumentError("family '" + name + "' needs n >= " + std::to_string(it->min_param));
  if (n > 12) throw ArgumentError("family '" + name + "' is limited to n <= 12");
  return it->build(n);
}

std::vector<FamilyInfo> list_families() {
  std::vector<FamilyInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

}  // namespace qsym
