#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsym/graph.hpp"
#include "qsym/verdict.hpp"

namespace qsym {

/// All n x n adjacency matrices with entries in [0, max_multiplicity], indexed
/// lexicographically (cell (0,0) is the least significant digit).
struct CensusSlice {
  std::size_t vertices;
  unsigned max_multiplicity;

  std::uint64_t count() const;
  AdjacencyMatrix matrix(std::uint64_t index) const;
};

/// <= 3 vertices with multiplicity <= 2, plus simple 4-vertex graphs.
std::vector<CensusSlice> default_census();

/// Brute force over vertex permutations.
bool canonical_ordering_exists(const DirectedMultigraph& g);

struct OrderingCensusSummary {
  std::size_t matrices = 0;
  std::size_t connected = 0;
  std::size_t holds_r = 0;
  std::size_t violates[3] = {0, 0, 0};  // R1, R2, R3
  std::vector<AdjacencyMatrix> mismatches;

  bool operator==(const OrderingCensusSummary&) const = default;
};

/// check_property_R(g) agrees with canonical_ordering_exists(g) on every connected census graph.
OrderingCensusSummary ordering_census_serial(const std::vector<CensusSlice>& slices);
OrderingCensusSummary ordering_census_parallel(const std::vector<CensusSlice>& slices);

struct SaturationCensusSummary {
  std::size_t graphs = 0;
  std::size_t verdicts[4] = {0, 0, 0, 0};  // indexed by VerdictKind
  std::size_t max_changes = 0;
  std::size_t bound_violations = 0;  // state changes above |E|^2 + |E|
  std::size_t replay_failures = 0;
  std::vector<std::string> faults;   // soundness faults, one line each

  bool operator==(const SaturationCensusSummary&) const = default;
};

/// certify (and so saturate) every connected census graph.
SaturationCensusSummary saturation_census_serial(const std::vector<CensusSlice>& slices);
SaturationCensusSummary saturation_census_parallel(const std::vector<CensusSlice>& slices);

}  // namespace qsym
