#include "qsym/census.hpp"

#include <numeric>
#include <optional>

#include "qsym/certifier.hpp"
#include "qsym/error.hpp"

namespace qsym {

std::uint64_t CensusSlice::count() const {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < vertices * vertices; ++i) c *= max_multiplicity + 1;
  return c;
}

AdjacencyMatrix CensusSlice::matrix(std::uint64_t index) const {
  std::vector<std::vector<unsigned>> rows(vertices, std::vector<unsigned>(vertices, 0));
  for (std::size_t i = 0; i < vertices * vertices; ++i) {
    rows[i / vertices][i % vertices] = static_cast<unsigned>(index % (max_multiplicity + 1));
    index /= max_multiplicity + 1;
  }
  return AdjacencyMatrix::from_rows(rows);
}

std::vector<CensusSlice> default_census() { return {{1, 2}, {2, 2}, {3, 2}, {4, 1}}; }

bool canonical_ordering_exists(const DirectedMultigraph& g) {
  std::vector<VertexIndex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (matrix_is_canonical(adjacency_matrix(g, order))) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

namespace {

struct OrderingRecord {
  bool connected = false;
  bool holds = false;
  bool violates[3] = {false, false, false};
  bool mismatch = false;
};

OrderingRecord ordering_one(const CensusSlice& slice, std::uint64_t index) {
  OrderingRecord r;
  const auto g = graph_from_matrix(slice.matrix(index));
  if (!is_connected(g)) return r;
  r.connected = true;
  const auto rep = check_property_R(g);
  r.holds = rep.holds;
  for (int c = 0; c < 3; ++c) r.violates[c] = rep.violates(static_cast<Condition>(c));
  r.mismatch = rep.holds != canonical_ordering_exists(g);
  return r;
}

void add(OrderingCensusSummary& s, const CensusSlice& slice, std::uint64_t index, const OrderingRecord& r) {
  ++s.matrices;
  if (!r.connected) return;
  ++s.connected;
  s.holds_r += r.holds;
  for (int c = 0; c < 3; ++c) s.violates[c] += r.violates[c];
  if (r.mismatch) s.mismatches.push_back(slice.matrix(index));
}

struct SaturationRecord {
  bool graph = false;
  VerdictKind verdict = VerdictKind::Inconclusive;
  std::size_t changes = 0;
  bool over_bound = false;
  bool replay_failed = false;
  std::optional<std::string> fault;
};

SaturationRecord saturation_one(const CensusSlice& slice, std::uint64_t index) {
  SaturationRecord r;
  const auto matrix = slice.matrix(index);
  const auto g = graph_from_matrix(matrix);
  if (!is_connected(g)) return r;
  r.graph = true;
  try {
    const auto v = certify(g);
    r.verdict = v.kind;
    // certify skips saturation when a parallel pair settles the verdict
    const auto sat = v.saturation ? *v.saturation : saturate(g);
    const std::size_t m = g.edge_count();
    r.changes = sat.state_changes;
    r.over_bound = sat.state_changes > m * m + m;
    r.replay_failed = !replay(g, sat.derivation, sat.state).ok;
  } catch (const SoundnessFault& e) {
    r.fault = format_matrix(matrix) + ": " + e.what();
  }
  return r;
}

void add(SaturationCensusSummary& s, const SaturationRecord& r) {
  if (!r.graph) return;
  ++s.graphs;
  if (r.fault) {
    s.faults.push_back(*r.fault);
    return;
  }
  ++s.verdicts[static_cast<int>(r.verdict)];
  s.max_changes = std::max(s.max_changes, r.changes);
  s.bound_violations += r.over_bound;
  s.replay_failures += r.replay_failed;
}

}  // namespace

OrderingCensusSummary ordering_census_serial(const std::vector<CensusSlice>& slices) {
  OrderingCensusSummary s;
  for (const auto& slice : slices)
    for (std::uint64_t i = 0; i < slice.count(); ++i) add(s, slice, i, ordering_one(slice, i));
  return s;
}

OrderingCensusSummary ordering_census_parallel(const std::vector<CensusSlice>& slices) {
  OrderingCensusSummary s;
  for (const auto& slice : slices) {
    const auto n = static_cast<std::int64_t>(slice.count());
    std::vector<OrderingRecord> records(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) records[i] = ordering_one(slice, static_cast<std::uint64_t>(i));
    for (std::int64_t i = 0; i < n; ++i) add(s, slice, static_cast<std::uint64_t>(i), records[i]);
  }
  return s;
}

SaturationCensusSummary saturation_census_serial(const std::vector<CensusSlice>& slices) {
  SaturationCensusSummary s;
  for (const auto& slice : slices)
    for (std::uint64_t i = 0; i < slice.count(); ++i) add(s, saturation_one(slice, i));
  return s;
}

SaturationCensusSummary saturation_census_parallel(const std::vector<CensusSlice>& slices) {
  SaturationCensusSummary s;
  for (const auto& slice : slices) {
    const auto n = static_cast<std::int64_t>(slice.count());
    std::vector<SaturationRecord> records(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) records[i] = saturation_one(slice, static_cast<std::uint64_t>(i));
    for (const auto& r : records) add(s, r);
  }
  return s;
}

}  // namespace qsym
