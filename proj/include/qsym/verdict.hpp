#pragma once

#include <string_view>

namespace qsym {

enum class VerdictKind { Rigid, NotRigidParallelEdges, KnownLarger, Inconclusive };

constexpr std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Rigid: return "RIGID";
    case VerdictKind::NotRigidParallelEdges: return "NOT_RIGID_PARALLEL_EDGES";
    case VerdictKind::KnownLarger: return "KNOWN_LARGER";
    case VerdictKind::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

}  // namespace qsym
