#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsym/cstar.hpp"

namespace qsym {

/// Shape of a coefficient algebra: a direct sum of `slots` copies of the free
/// product of `letters` unitaries z_1..z_letters.
struct CoeffAlgebra {
  std::size_t slots = 1;
  std::size_t letters = 0;

  bool operator==(const CoeffAlgebra&) const = default;
};

/// z_i is encoded as +i, z_i^* as -i (i >= 1).
using Letter = int;

/// A reduced word placed in one direct-sum slot.
struct CoeffMonomial {
  std::size_t slot = 0;
  std::vector<Letter> word;

  auto operator<=>(const CoeffMonomial&) const = default;
};

/// Rational combination of slot words; the element type of the coefficient algebra.
class CoeffWord {
 public:
  using Terms = std::map<CoeffMonomial, Rational>;

  explicit CoeffWord(CoeffAlgebra algebra = {}) : algebra_(algebra) {}

  static CoeffWord zero(CoeffAlgebra a) { return CoeffWord(a); }
  /// The unit: the empty word in every slot.
  static CoeffWord one(CoeffAlgebra a);
  /// z_i (or z_i^*) in one slot; i is 1-based.
  static CoeffWord letter(CoeffAlgebra a, std::size_t slot, std::size_t i, bool adjoint = false);
  /// The empty word in one slot (the slot's unit).
  static CoeffWord slot_unit(CoeffAlgebra a, std::size_t slot);

  const CoeffAlgebra& algebra() const noexcept { return algebra_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c times the reduction of `m`.
  void add(CoeffMonomial m, const Rational& c);
  CoeffWord& operator+=(const CoeffWord& other);
  CoeffWord& operator-=(const CoeffWord& other);
  CoeffWord& operator*=(const Rational& c);
  friend CoeffWord operator+(CoeffWord a, const CoeffWord& b) { return a += b; }
  friend CoeffWord operator-(CoeffWord a, const CoeffWord& b) { return a -= b; }
  friend CoeffWord operator*(const Rational& c, CoeffWord a) { return a *= c; }

  bool operator==(const CoeffWord& other) const {
    return algebra_ == other.algebra_ && terms_ == other.terms_;
  }

 private:
  CoeffAlgebra algebra_;
  Terms terms_;
};

/// Cancel adjacent z z^* and z^* z pairs.
std::vector<Letter> reduce_word(std::vector<Letter> word);

/// Slot-wise concatenation with unitarity reduction; distinct slots multiply
/// to zero. Throws ArgumentError when the algebras differ.
CoeffWord coeff_multiply(const CoeffWord& a, const CoeffWord& b);
CoeffWord coeff_star(const CoeffWord& a);
/// "z1 z2*" for one slot, "(z1, 0)" style tuples for several.
std::string format_coeff(const CoeffWord& a);

// --- actions ----------------------------------------------------------------

/// One summand S_f ⊗ c of alpha(S_e).
struct ActionTerm {
  EdgeIndex edge;
  CoeffWord coeff;
};

/// alpha(S_e) = sum over images[e] of S_f ⊗ c_{fe}.
struct ActionSpec {
  std::string name;
  CoeffAlgebra algebra;
  std::vector<std::vector<ActionTerm>> images;
};

/// k = 1, alpha(S_e) = S_e ⊗ z_e with one letter per edge.
ActionSpec diagonal_action(const DirectedMultigraph& g);

/// k = 2 doubling on a parallel pair:
///   alpha(S_e1) = S_e1 ⊗ (z1,0) + S_e2 ⊗ (0,z2)
///   alpha(S_e2) = S_e2 ⊗ (z2,0) + S_e1 ⊗ (0,z1)
///   alpha(S_k)  = S_k ⊗ (z_k,z_k) for every other edge.
/// Letter numbers are 1-based edge positions. Throws ArgumentError unless
/// e1 != e2 share source and range.
ActionSpec doubling_action(const DirectedMultigraph& g, EdgeIndex e1, EdgeIndex e2);

std::string format_action(const DirectedMultigraph& g, const ActionSpec& a);

/// Elements of C*(Γ) ⊗ coefficient algebra, as combinations of
/// (path monomial, slot word) pairs.
class Tensor {
 public:
  using Key = std::pair<PathMonomial, CoeffMonomial>;
  using Terms = std::map<Key, Rational>;

  Tensor(const DirectedMultigraph& g, CoeffAlgebra a) : graph_(&g), algebra_(a) {}

  const DirectedMultigraph& graph() const noexcept { return *graph_; }
  const CoeffAlgebra& algebra() const noexcept { return algebra_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const PathMonomial& m, const CoeffWord& c, const Rational& scale = 1);
  void add(const Key& k, const Rational& c);
  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);

  std::size_t co_depth() const;

 private:
  const DirectedMultigraph* graph_;
  CoeffAlgebra algebra_;
  Terms terms_;
};

Tensor tensor_multiply(const Tensor& a, const Tensor& b);
Tensor tensor_star(const Tensor& t);
/// Equality modulo relation (ii) in the left factor.
bool tensor_equivalent(const Tensor& a, const Tensor& b);
std::string format_tensor(const Tensor& t);

/// alpha(S_e) as a tensor.
Tensor action_image(const DirectedMultigraph& g, const ActionSpec& a, EdgeIndex e);

struct RelationCheck {
  std::string relation;  // "(i) e", "(ii) v", "choice v", "unit"
  bool ok = true;
  std::string detail;
};

/// Coefficient product c_{fe}^* c_{f'e} multiplying S_f^* S_{f'} in alpha(S_e)^* alpha(S_e).
struct CrossTerm {
  EdgeIndex image_of;
  EdgeIndex left;
  EdgeIndex right;
  CoeffWord product;
};

struct ActionReport {
  bool ok = true;
  std::vector<RelationCheck> checks;
  std::vector<CrossTerm> cross_terms;
  /// First failing relation, if any.
  std::optional<std::string> failure;
};

/// Transports relations (i) and (ii) through alpha and checks them in the
/// tensor algebra, together with sum_v alpha(p_v) = 1 ⊗ 1. Throws
/// ArgumentError if the spec references missing edges or mixes algebras.
ActionReport verify_action(const DirectedMultigraph& g, const ActionSpec& a);

}  // namespace qsym
