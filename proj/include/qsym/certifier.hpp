#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsym/action.hpp"
#include "qsym/graph.hpp"
#include "qsym/verdict.hpp"

namespace qsym {

/// ZERO(e,f), e != f, records q_{ef} = 0 where alpha(S_e) = sum_f S_f ⊗ q_{fe}.
/// ONE(e) records Q_{ee} = q_{ee}^* q_{ee} = 1.
struct Flag {
  enum class Kind { Zero, One };
  Kind kind;
  EdgeIndex e;
  EdgeIndex f;  // equals e for ONE

  static Flag zero(EdgeIndex e, EdgeIndex f) { return {Kind::Zero, e, f}; }
  static Flag one(EdgeIndex e) { return {Kind::One, e, e}; }
  auto operator<=>(const Flag&) const = default;
};

std::string format_flag(const DirectedMultigraph& g, const Flag& f);

/// Monotone knowledge about the coefficient matrix: off-diagonal cells are
/// UNKNOWN or ZERO, diagonal cells UNKNOWN or ONE.
class FlagMatrix {
 public:
  FlagMatrix() = default;
  explicit FlagMatrix(std::size_t edges) : m_(edges), cells_(edges * edges, 0) {}

  std::size_t size() const noexcept { return m_; }
  bool zero(EdgeIndex e, EdgeIndex f) const { return e != f && cells_[e * m_ + f]; }
  bool one(EdgeIndex e) const { return cells_[e * m_ + e]; }
  bool known(const Flag& fl) const { return fl.kind == Flag::Kind::One ? one(fl.e) : zero(fl.e, fl.f); }
  /// Returns true if the flag was new.
  bool set(const Flag& fl);

  std::size_t known_count() const;
  bool all_off_diagonal_zero() const;
  std::vector<std::pair<EdgeIndex, EdgeIndex>> unknown_pairs() const;

  bool operator==(const FlagMatrix&) const = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Throws PreconditionError when `g` is not connected.
FlagMatrix init_state(const DirectedMultigraph& g);

/// For each vertex, In(h) (nullopt = Out: p_v represented by sum_{s(f)=v} S_f S_f^*).
using Selector = std::vector<std::optional<EdgeIndex>>;

struct SelectorEnumeration {
  std::vector<Selector> selectors;
  std::optional<VertexIndex> out_vertex;
  bool truncated = false;
  std::vector<std::string> notes;
};

constexpr std::size_t kDefaultSelectorCap = 100000;

/// Canonical-path selector first, then single-vertex variations of it, then
/// the rest of the product of In choices; at most `cap` selectors.
SelectorEnumeration enumerate_selectors(const DirectedMultigraph& g, std::size_t cap = kDefaultSelectorCap);

enum class Rule { L1, L2, L3Forward, L3Backward, Antipode, Unitarity, Balance, Partition };
std::string_view to_string(Rule r);
std::string_view rule_citation(Rule r);

/// Parameters of one rule firing. Unused fields stay empty.
struct RuleInstance {
  Rule rule;
  EdgeIndex a = 0;  // l1/l2/l3: h; antipode/balance: e; unitarity: e
  EdgeIndex b = 0;  // l1/l2/l3: e; antipode/balance: f
  VertexIndex vertex = 0;  // balance: w; partition: u
  std::optional<EdgeIndex> out_edge;  // partition: k in s^{-1}(u) when O = {o} and u emits edges
  Selector selector;  // partition only
};

std::string format_instance(const DirectedMultigraph& g, const RuleInstance& r);

struct RuleResult {
  bool applicable = false;
  std::string reason;  // why not applicable
  std::vector<Flag> consumed;
  std::vector<Flag> produced;  // new flags only
  std::vector<std::string> notes;
};

RuleResult rule_l1(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e);
RuleResult rule_l2(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e);
/// Throws PreconditionError when e is not a loop.
RuleResult rule_l3(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e, bool forward);
RuleResult rule_antipode(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex e, EdgeIndex f);
RuleResult rule_unitarity(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex e);
RuleResult rule_balance(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex e, EdgeIndex f, VertexIndex w);
/// Partition of unity sum_v alpha(p_v) = 1 ⊗ 1 read off at p_u (or at
/// S_k^* ... S_k for k in s^{-1}(u) when an Out vertex exists and u emits edges).
/// Throws SoundnessFault if every summand is known to vanish.
RuleResult rule_partition(const DirectedMultigraph& g, const FlagMatrix& s, const Selector& sel, VertexIndex u,
                          std::optional<EdgeIndex> k = std::nullopt);

RuleResult apply_rule(const DirectedMultigraph& g, const FlagMatrix& s, const RuleInstance& r);

struct Step {
  RuleInstance instance;
  std::vector<Flag> consumed;
  std::vector<Flag> produced;
  std::string citation;
};

struct Derivation {
  std::vector<Step> steps;
  std::vector<std::string> notes;
  std::set<std::string> rules_used() const;
};

struct SaturateOptions {
  bool antipode = true;
  std::size_t selector_cap = kDefaultSelectorCap;

  /// Defaults, with QSYM_SELECTOR_CAP taken from the environment when set.
  static SaturateOptions from_environment();
};

struct SaturationResult {
  FlagMatrix state;
  Derivation derivation;
  std::size_t passes = 0;
  std::size_t state_changes = 0;
  bool selectors_truncated = false;
};

SaturationResult saturate(const DirectedMultigraph& g, const SaturateOptions& options = {});

struct ReplayResult {
  bool ok = true;
  std::size_t failed_step = 0;
  std::string error;
};

/// Re-run every step from the all-UNKNOWN state: each rule must be applicable
/// with the recorded parameters, consume only known flags, produce the
/// recorded flags, and the final state must equal `expected`.
ReplayResult replay(const DirectedMultigraph& g, const Derivation& d, const FlagMatrix& expected);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<SaturationResult> saturation;
  std::optional<ActionSpec> action;
  std::optional<ActionReport> action_report;
  std::vector<std::pair<EdgeIndex, EdgeIndex>> residual_pairs;
  std::vector<std::string> citations;
};

/// Throws PreconditionError when `g` is not connected.
Verdict certify(const DirectedMultigraph& g, const SaturateOptions& options = {});

/// {verdict, rules_used, steps[], residual_pairs[], citations[]}, plus
/// action details for NOT_RIGID_PARALLEL_EDGES.
nlohmann::ordered_json certificate_json(const DirectedMultigraph& g, const Verdict& v, bool include_steps = true);

}  // namespace qsym
