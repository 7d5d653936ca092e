#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsym/error.hpp"
#include "qsym/graph.hpp"

namespace qsym {

/// Exact arbitrary precision rational.
using Rational = boost::multiprecision::cpp_rational;

std::string format_rational(const Rational& q);

/// S_gamma S_mu^* with r(gamma) = r(mu). The vertex projection p_v is the pair
/// of empty paths at v.
struct PathMonomial {
  Path gamma;
  Path mu;

  auto operator<=>(const PathMonomial&) const = default;
};

PathMonomial make_projection(VertexIndex v);
PathMonomial make_isometry(const DirectedMultigraph& g, EdgeIndex e);
PathMonomial make_adjoint(const DirectedMultigraph& g, EdgeIndex e);
VertexIndex monomial_vertex(const DirectedMultigraph& g, const PathMonomial& m);
bool is_valid_monomial(const DirectedMultigraph& g, const PathMonomial& m);
std::string format_monomial(const DirectedMultigraph& g, const PathMonomial& m);

/// Product of two monomials in the spanning set:
///   (S_a S_b^*)(S_c S_d^*) = S_{a c'} S_d^*   if c = b c'
///                          = S_a S_{d b'}^*   if b = c b'
///                          = 0                otherwise.
std::optional<PathMonomial> multiply_monomials(const DirectedMultigraph& g, const PathMonomial& x,
                                               const PathMonomial& y);

/// Replace a monomial whose common range v emits edges by
/// sum_{s(f)=v} S_{gamma f} S_{mu f}^*. Returns the monomial itself at a sink.
std::vector<PathMonomial> expand_once(const DirectedMultigraph& g, const PathMonomial& m);

/// Finite rational combination of path monomials over one graph.
///
/// The combination remembers the graph it was built over (by address); the
/// graph must outlive it. A default constructed value is the zero element and
/// combines with any graph.
class LinComb {
 public:
  using Terms = std::map<PathMonomial, Rational>;

  LinComb() = default;
  explicit LinComb(const DirectedMultigraph& g) : graph_(&g) {}
  LinComb(const DirectedMultigraph& g, const PathMonomial& m, Rational c = 1);

  const DirectedMultigraph* graph() const noexcept { return graph_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const PathMonomial& m) const;

  void add(const PathMonomial& m, const Rational& c);
  LinComb& operator+=(const LinComb& other);
  LinComb& operator-=(const LinComb& other);
  LinComb& operator*=(const Rational& c);

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }

  /// Exact equality of representations in the spanning set (no relation (ii)).
  bool operator==(const LinComb& other) const { return terms_ == other.terms_; }

  /// Longest co-path |mu| among the terms.
  std::size_t co_depth() const;
  std::size_t max_path_length() const;

 private:
  void adopt(const LinComb& other);

  const DirectedMultigraph* graph_ = nullptr;
  Terms terms_;
};

std::string format_lincomb(const LinComb& t);

LinComb projection(const DirectedMultigraph& g, VertexIndex v);
LinComb isometry(const DirectedMultigraph& g, EdgeIndex e);
LinComb adjoint(const DirectedMultigraph& g, EdgeIndex e);
/// sum_v p_v
LinComb unit(const DirectedMultigraph& g);

LinComb star(const LinComb& t);
/// Throws ArgumentError if the operands belong to different graphs.
LinComb multiply(const LinComb& a, const LinComb& b);

/// Expand until every term has |mu| >= depth or ends at a sink. Terms of this
/// shape are linearly independent, so two combinations are equal in C*(Γ)
/// exactly when their expansions to a common depth coincide.
LinComb expand_to_depth(const LinComb& t, std::size_t depth);
/// Expand every term to a sink. Requires an acyclic graph.
LinComb expand_to_sinks(const LinComb& t);
/// Equality in C*(Γ), i.e. modulo p_v = sum_{s(f)=v} S_f S_f^*.
bool equivalent(const LinComb& a, const LinComb& b);

// --- generator words --------------------------------------------------------

struct Atom {
  enum class Kind { Projection, Isometry, Adjoint };
  Kind kind;
  std::size_t index;  // vertex for projections, edge otherwise

  bool operator==(const Atom&) const = default;
};

using GeneratorWord = std::vector<Atom>;

/// Whitespace separated atoms `p.<vertex>`, `S.<edge>`, `S*.<edge>`.
GeneratorWord parse_word(std::string_view text, const DirectedMultigraph& g);
std::string format_word(const DirectedMultigraph& g, const GeneratorWord& w);
LinComb atom_value(const DirectedMultigraph& g, const Atom& a);

enum class FoldOrder { LeftToRight, RightToLeft };

/// Product of the atoms in the spanning set, without relation (ii).
LinComb evaluate_word(const GeneratorWord& w, const DirectedMultigraph& g,
                      FoldOrder order = FoldOrder::LeftToRight);

struct NormalFormOptions {
  std::size_t path_length_cap = 8;
};

/// Raised when a partial normal form on a cyclic graph exceeds the path cap.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, LinComb partial)
      : Error(what), partial_(std::move(partial)) {}
  const LinComb& partial() const noexcept { return partial_; }

 private:
  LinComb partial_;
};

/// On acyclic graphs: the unique expansion in the sink basis. Otherwise the
/// reduced spanning-set form, refusing paths longer than the cap.
LinComb normal_form(const GeneratorWord& w, const DirectedMultigraph& g,
                    const NormalFormOptions& options = {});

/// sum over sinks v of (number of paths ending at v)^2. Throws ArgumentError
/// on graphs with a loop or a longer cycle.
std::uint64_t dimension(const DirectedMultigraph& g);

/// tau(S_e S_f^*) = delta_{ef}, tau(p_u) = 1 for sinks u. Throws DomainError
/// for any other monomial.
Rational tau(const LinComb& t);

/// (F)_{ef} = tau(S_e^* S_f), expanding p_{r(e)} once when r(e) emits edges.
std::vector<std::vector<Rational>> f_matrix(const DirectedMultigraph& g);

struct CkReport {
  bool ok = true;
  std::size_t checks = 0;
  std::vector<std::string> failures;
};

/// Symbolic self-test of the Cuntz-Krieger relations and their consequences.
CkReport verify_ck_relations(const DirectedMultigraph& g);

}  // namespace qsym
