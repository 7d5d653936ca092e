#pragma once

#include <vector>

#include "qsym/action.hpp"

namespace qsym::testing {

enum class Mutation { Scale, Zero, SlotFlip };

/// Change one coefficient c_{fe} of an action. Returns false when the mutation
/// would leave the coefficient unchanged (slot flip of a symmetric entry).
inline bool mutate(ActionSpec& a, EdgeIndex e, std::size_t term, Mutation kind) {
  CoeffWord& c = a.images.at(e).at(term).coeff;
  CoeffWord next(c.algebra());
  switch (kind) {
    case Mutation::Scale: next = Rational(2) * c; break;
    case Mutation::Zero: break;
    case Mutation::SlotFlip:
      if (c.algebra().slots != 2) return false;
      for (const auto& [m, coeff] : c.terms()) next.add({1 - m.slot, m.word}, coeff);
      break;
  }
  if (next == c) return false;
  c = next;
  return true;
}

struct MutationSite {
  EdgeIndex edge;
  std::size_t term;
  Mutation kind;
};

inline std::vector<MutationSite> mutation_sites(const ActionSpec& a) {
  std::vector<MutationSite> out;
  for (EdgeIndex e = 0; e < a.images.size(); ++e)
    for (std::size_t t = 0; t < a.images[e].size(); ++t)
      for (Mutation k : {Mutation::Scale, Mutation::Zero, Mutation::SlotFlip}) {
        ActionSpec copy = a;
        if (mutate(copy, e, t, k)) out.push_back({e, t, k});
      }
  return out;
}

}  // namespace qsym::testing
