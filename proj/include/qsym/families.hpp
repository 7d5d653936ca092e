#pragma once

#include <string>
#include <vector>

#include "qsym/graph.hpp"
#include "qsym/verdict.hpp"

namespace qsym {

/// A named graph family instance with the classification it is known to have.
struct FamilySpec {
  std::string name;
  std::vector<int> parameters;
  DirectedMultigraph graph;
  VerdictKind expected_verdict;
  std::string algebra_label;
  std::string citation;
};

struct FamilyInfo {
  std::string name;
  int arity;
  std::string citation;
  std::string description;
};

/// Names: P, T, L_odd, L_bar, M, K2, L11, Gamma0, P23, L2prime, L3sup2.
/// Throws ArgumentError for an unknown name or invalid parameters.
FamilySpec make_family(const std::string& name, const std::vector<int>& params = {});

std::vector<FamilyInfo> list_families();

}  // namespace qsym
