#include "qsym/certifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "qsym/error.hpp"

namespace qsym {

namespace {

const std::string& id(const DirectedMultigraph& g, EdgeIndex e) { return g.edge(e).id; }

RuleResult not_applicable(std::string why) {
  RuleResult r;
  r.reason = std::move(why);
  return r;
}

void produce(RuleResult& r, const FlagMatrix& s, const Flag& f) {
  if (!s.known(f) && std::find(r.produced.begin(), r.produced.end(), f) == r.produced.end())
    r.produced.push_back(f);
}

}  // namespace

std::string format_flag(const DirectedMultigraph& g, const Flag& f) {
  if (f.kind == Flag::Kind::One) return "ONE(" + id(g, f.e) + ")";
  return "ZERO(" + id(g, f.e) + "," + id(g, f.f) + ")";
}

// --- FlagMatrix -------------------------------------------------------------

bool FlagMatrix::set(const Flag& fl) {
  if (fl.kind == Flag::Kind::Zero && fl.e == fl.f) throw std::logic_error("ZERO flag on a diagonal cell");
  auto& cell = cells_.at(fl.e * m_ + fl.f);
  if (cell) return false;
  cell = 1;
  return true;
}

std::size_t FlagMatrix::known_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

bool FlagMatrix::all_off_diagonal_zero() const {
  for (EdgeIndex e = 0; e < m_; ++e)
    for (EdgeIndex f = 0; f < m_; ++f)
      if (e != f && !zero(e, f)) return false;
  return true;
}

std::vector<std::pair<EdgeIndex, EdgeIndex>> FlagMatrix::unknown_pairs() const {
  std::vector<std::pair<EdgeIndex, EdgeIndex>> out;
  for (EdgeIndex e = 0; e < m_; ++e)
    for (EdgeIndex f = 0; f < m_; ++f)
      if (e != f && !zero(e, f)) out.emplace_back(e, f);
  return out;
}

FlagMatrix init_state(const DirectedMultigraph& g) {
  if (!is_connected(g)) throw PreconditionError("the certifier requires a connected graph");
  return FlagMatrix(g.edge_count());
}

// --- selectors --------------------------------------------------------------

SelectorEnumeration enumerate_selectors(const DirectedMultigraph& g, std::size_t cap) {
  SelectorEnumeration out;
  const std::size_t n = g.vertex_count();
  std::vector<VertexIndex> sources;
  for (VertexIndex v = 0; v < n; ++v)
    if (!g.has_in_edges(v)) sources.push_back(v);
  if (sources.size() >= 2) {
    out.notes.push_back("partition: " + std::to_string(sources.size()) +
                        " vertices without in-edges, no selectors enumerated");
    return out;
  }
  if (!sources.empty()) out.out_vertex = sources.front();
  if (cap == 0) {
    out.truncated = true;
    return out;
  }

  Selector base(n);
  for (VertexIndex v = 0; v < n; ++v)
    if (g.has_in_edges(v)) base[v] = g.in_edges(v).front();
  if (auto path = spanning_path(g)) {
    for (EdgeIndex e : path->edges) base[g.range(e)] = e;
    for (EdgeIndex e : g.in_edges(path->start))
      if (g.is_loop(e)) {
        base[path->start] = e;
        break;
      }
  }

  std::set<Selector> seen;
  auto emit = [&](const Selector& s) {
    if (out.selectors.size() >= cap) {
      out.truncated = true;
      return false;
    }
    if (seen.insert(s).second) out.selectors.push_back(s);
    return true;
  };

  if (!emit(base)) return out;
  for (VertexIndex v = 0; v < n; ++v)
    for (EdgeIndex h : g.in_edges(v)) {
      if (base[v] == h) continue;
      Selector s = base;
      s[v] = h;
      if (!emit(s)) return out;
    }

  std::vector<std::size_t> digit(n, 0);
  while (true) {
    Selector s(n);
    for (VertexIndex v = 0; v < n; ++v)
      if (g.has_in_edges(v)) s[v] = g.in_edges(v)[digit[v]];
    if (!seen.count(s) && !emit(s)) break;
    VertexIndex v = 0;
    for (; v < n; ++v) {
      if (!g.has_in_edges(v)) continue;
      if (++digit[v] < g.in_edges(v).size()) break;
      digit[v] = 0;
    }
    if (v == n) break;
  }
  if (out.truncated)
    out.notes.push_back("partition: selector enumeration truncated at " + std::to_string(cap));
  return out;
}

// --- rules ------------------------------------------------------------------

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::L1: return "l1";
    case Rule::L2: return "l2";
    case Rule::L3Forward: return "l3-forward";
    case Rule::L3Backward: return "l3-backward";
    case Rule::Antipode: return "antipode";
    case Rule::Unitarity: return "unitarity";
    case Rule::Balance: return "balance";
    case Rule::Partition: return "partition";
  }
  return "?";
}

std::string_view rule_citation(Rule r) {
  switch (r) {
    case Rule::L1: return "Lemma l1: q_{ef}=0 for all f such that s(f)=r(h)";
    case Rule::L2: return "Lemma l2: q_{eh}=0";
    case Rule::L3Forward:
    case Rule::L3Backward: return "Lemma l3: q_{ef}=0 for all f in s^{-1}(r(h)) <=> q_{eh}=0";
    case Rule::Antipode: return "Remark (A): applying antipode kappa both sides";
    case Rule::Unitarity: return "Facts 2-3: Q_{gg}=1 <=> Q_{gk}=0 for all k != g";
    case Rule::Balance: return "Remark (A): S_e^*S_e = S_f^*S_f when r(e)=r(f), compared at p_w";
    case Rule::Partition: return "Props. P1/P2: sum_v alpha(p_v) = 1, p_u linearly independent";
  }
  return "";
}

RuleResult rule_l1(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e) {
  if (g.out_edges(g.range(h)).empty()) return not_applicable("s^-1(r(h)) is empty");
  RuleResult r;
  for (EdgeIndex x : g.in_edges(g.source(e))) {
    if (x == h) return not_applicable("h itself enters s(e)");
    if (!s.zero(x, h)) return not_applicable("ZERO(" + id(g, x) + "," + id(g, h) + ") unknown");
    r.consumed.push_back(Flag::zero(x, h));
  }
  r.applicable = true;
  for (EdgeIndex f : g.out_edges(g.range(h))) produce(r, s, Flag::zero(e, f));
  return r;
}

RuleResult rule_l2(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e) {
  if (g.out_edges(g.range(h)).empty()) return not_applicable("s^-1(r(h)) is empty");
  if (!g.is_sink(g.range(e))) return not_applicable("r(e) emits edges");
  RuleResult r;
  r.applicable = true;
  for (EdgeIndex x : g.in_edges(g.range(e)))
    if (x != h) produce(r, s, Flag::zero(x, h));
  return r;
}

RuleResult rule_l3(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex h, EdgeIndex e, bool forward) {
  if (!g.is_loop(e)) throw PreconditionError("rule l3 needs a loop, " + id(g, e) + " is not one");
  if (h == e) return not_applicable("h = e");
  const auto targets = g.out_edges(g.range(h));
  if (targets.empty()) return not_applicable("s^-1(r(h)) is empty");
  RuleResult r;
  for (EdgeIndex x : g.in_edges(g.source(e))) {
    if (x == e) continue;
    if (x == h) return not_applicable("h itself enters s(e)");
    if (!s.zero(x, h)) return not_applicable("ZERO(" + id(g, x) + "," + id(g, h) + ") unknown");
    r.consumed.push_back(Flag::zero(x, h));
  }
  if (forward) {
    if (!s.zero(e, h)) return not_applicable("ZERO(e,h) unknown");
    r.consumed.push_back(Flag::zero(e, h));
    r.applicable = true;
    for (EdgeIndex f : targets) produce(r, s, Flag::zero(e, f));
  } else {
    for (EdgeIndex f : targets) {
      if (!s.zero(e, f)) return not_applicable("ZERO(e," + id(g, f) + ") unknown");
      r.consumed.push_back(Flag::zero(e, f));
    }
    r.applicable = true;
    produce(r, s, Flag::zero(e, h));
  }
  return r;
}

RuleResult rule_antipode(const DirectedMultigraph&, const FlagMatrix& s, EdgeIndex e, EdgeIndex f) {
  if (e == f || !s.zero(e, f)) return not_applicable("ZERO(e,f) unknown");
  RuleResult r;
  r.applicable = true;
  r.consumed.push_back(Flag::zero(e, f));
  produce(r, s, Flag::zero(f, e));
  return r;
}

RuleResult rule_unitarity(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex e) {
  RuleResult r;
  if (s.one(e)) {
    r.applicable = true;
    r.consumed.push_back(Flag::one(e));
    for (EdgeIndex k = 0; k < g.edge_count(); ++k)
      if (k != e) produce(r, s, Flag::zero(e, k));
    return r;
  }
  for (EdgeIndex k = 0; k < g.edge_count(); ++k) {
    if (k == e) continue;
    if (!s.zero(e, k)) return not_applicable("row " + id(g, e) + " has an unknown off-diagonal entry");
    r.consumed.push_back(Flag::zero(e, k));
  }
  r.applicable = true;
  produce(r, s, Flag::one(e));
  return r;
}

RuleResult rule_balance(const DirectedMultigraph& g, const FlagMatrix& s, EdgeIndex e, EdgeIndex f, VertexIndex w) {
  if (e == f || g.range(e) != g.range(f)) return not_applicable("needs distinct edges with a common range");
  if (!g.has_in_edges(w)) return not_applicable("w has no in-edges");
  const auto terms = g.in_edges(w);

  // sum_{r(x)=w} Q_{x,e} = sum_{r(x)=w} Q_{x,f}; every Q is positive.
  auto side_zero = [&](EdgeIndex col) {
    for (EdgeIndex x : terms)
      if (!s.zero(x, col)) return false;
    return true;
  };
  RuleResult r;
  auto transfer = [&](EdgeIndex from, EdgeIndex to) {
    if (!side_zero(from)) return;
    r.applicable = true;
    for (EdgeIndex x : terms) r.consumed.push_back(Flag::zero(x, from));
    // the side of `to` contains no diagonal term here: Q_{to,to} would sit on the side of `from` too
    for (EdgeIndex x : terms) produce(r, s, Flag::zero(x, to));
  };
  transfer(e, f);
  transfer(f, e);
  if (!r.applicable) r.reason = "neither side is known to vanish";
  return r;
}

namespace {

struct Summand {
  bool extra;  // q_{kf} q_{kf}^* from the Out vertex instead of Q_{x,y}
  EdgeIndex x;
  EdgeIndex y;
};

std::string summand_name(const DirectedMultigraph& g, const Summand& t) {
  return (t.extra ? "q_{" + id(g, t.x) + "," + id(g, t.y) + "}q^*" : "Q_{" + id(g, t.x) + "," + id(g, t.y) + "}");
}

}  // namespace

RuleResult rule_partition(const DirectedMultigraph& g, const FlagMatrix& s, const Selector& sel, VertexIndex u,
                          std::optional<EdgeIndex> k) {
  const std::size_t n = g.vertex_count();
  if (sel.size() != n) return not_applicable("selector size mismatch");
  std::optional<VertexIndex> o;
  for (VertexIndex v = 0; v < n; ++v) {
    if (!sel[v]) {
      if (o || g.has_in_edges(v) || g.is_sink(v)) return not_applicable("invalid Out choice");
      o = v;
    } else if (*sel[v] >= g.edge_count() || g.range(*sel[v]) != v) {
      return not_applicable("selector edge does not enter its vertex");
    }
  }
  if (u >= n) return not_applicable("vertex out of range");
  if (o == u) return not_applicable("u is the Out vertex");
  const bool split = o && !g.is_sink(u);
  if (split != k.has_value()) return not_applicable(split ? "needs k in s^-1(u)" : "k only with an Out vertex");
  if (k && g.source(*k) != u) return not_applicable("k does not leave u");

  std::vector<Summand> terms;
  for (EdgeIndex x : g.in_edges(u))
    for (VertexIndex v = 0; v < n; ++v)
      if (sel[v]) terms.push_back({false, x, *sel[v]});
  if (k)
    for (EdgeIndex f : g.out_edges(*o)) terms.push_back({true, *k, f});

  RuleResult r;
  r.applicable = true;
  std::vector<Summand> live;
  for (const auto& t : terms) {
    if (t.x != t.y && s.zero(t.x, t.y)) {
      r.consumed.push_back(Flag::zero(t.x, t.y));
    } else {
      live.push_back(t);
    }
  }
  if (live.empty())
    throw SoundnessFault("partition at vertex " + g.vertex_id(u) + ": every summand is known to vanish");

  // A single survivor equals 1.
  if (live.size() == 1) {
    const auto& t = live.front();
    if (!t.extra && t.x == t.y) {
      produce(r, s, Flag::one(t.x));
    } else {
      r.notes.push_back("forced unitary: " + summand_name(g, t) + " = 1 at vertex " + g.vertex_id(u));
    }
  }

  // A diagonal survivor known to be 1 forces the other (positive) survivors to vanish.
  for (const auto& t : live) {
    if (t.extra || t.x != t.y || !s.one(t.x)) continue;
    r.consumed.push_back(Flag::one(t.x));
    for (const auto& other : live) {
      if (&other == &t) continue;
      if (!other.extra && other.x == other.y) {
        if (s.one(other.x))
          throw SoundnessFault("partition at vertex " + g.vertex_id(u) + ": two diagonal summands equal 1");
        r.notes.push_back("partition: " + summand_name(g, other) + " = 0 is not representable");
        continue;
      }
      produce(r, s, Flag::zero(other.x, other.y));
    }
    break;
  }

  // All survivors in one row x: the rest of that row vanishes (row sums are 1).
  const bool one_row = std::all_of(live.begin(), live.end(), [&](const Summand& t) {
    return !t.extra && t.x == live.front().x;
  });
  if (one_row) {
    const EdgeIndex x = live.front().x;
    std::vector<bool> in_set(g.edge_count(), false);
    for (const auto& t : live) in_set[t.y] = true;
    if (!in_set[x] && s.one(x))
      throw SoundnessFault("partition at vertex " + g.vertex_id(u) + ": row " + id(g, x) + " would exceed 1");
    for (EdgeIndex y = 0; y < g.edge_count(); ++y)
      if (y != x && !in_set[y]) produce(r, s, Flag::zero(x, y));
  }
  return r;
}

RuleResult apply_rule(const DirectedMultigraph& g, const FlagMatrix& s, const RuleInstance& r) {
  switch (r.rule) {
    case Rule::L1: return rule_l1(g, s, r.a, r.b);
    case Rule::L2: return rule_l2(g, s, r.a, r.b);
    case Rule::L3Forward: return rule_l3(g, s, r.a, r.b, true);
    case Rule::L3Backward: return rule_l3(g, s, r.a, r.b, false);
    case Rule::Antipode: return rule_antipode(g, s, r.a, r.b);
    case Rule::Unitarity: return rule_unitarity(g, s, r.a);
    case Rule::Balance: return rule_balance(g, s, r.a, r.b, r.vertex);
    case Rule::Partition: return rule_partition(g, s, r.selector, r.vertex, r.out_edge);
  }
  return {};
}

std::string format_instance(const DirectedMultigraph& g, const RuleInstance& r) {
  std::string name(to_string(r.rule));
  switch (r.rule) {
    case Rule::L1:
    case Rule::L2:
    case Rule::L3Forward:
    case Rule::L3Backward: return name + "(h=" + id(g, r.a) + ", e=" + id(g, r.b) + ")";
    case Rule::Antipode: return name + "(e=" + id(g, r.a) + ", f=" + id(g, r.b) + ")";
    case Rule::Unitarity: return name + "(e=" + id(g, r.a) + ")";
    case Rule::Balance:
      return name + "(e=" + id(g, r.a) + ", f=" + id(g, r.b) + ", w=" + g.vertex_id(r.vertex) + ")";
    case Rule::Partition: {
      std::string out = name + "(u=" + g.vertex_id(r.vertex);
      if (r.out_edge) out += ", k=" + id(g, *r.out_edge);
      out += ", sel=[";
      for (VertexIndex v = 0; v < r.selector.size(); ++v) {
        if (v) out += ", ";
        out += g.vertex_id(v) + ":" + (r.selector[v] ? id(g, *r.selector[v]) : std::string("Out"));
      }
      return out + "])";
    }
  }
  return name;
}

// --- saturation -------------------------------------------------------------

std::set<std::string> Derivation::rules_used() const {
  std::set<std::string> out;
  for (const auto& s : steps) out.emplace(to_string(s.instance.rule));
  return out;
}

SaturateOptions SaturateOptions::from_environment() {
  SaturateOptions o;
  if (const char* cap = std::getenv("QSYM_SELECTOR_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0') throw ArgumentError("QSYM_SELECTOR_CAP must be a non-negative integer");
    o.selector_cap = static_cast<std::size_t>(v);
  }
  return o;
}

SaturationResult saturate(const DirectedMultigraph& g, const SaturateOptions& options) {
  SaturationResult res;
  res.state = init_state(g);
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();

  const auto selectors = enumerate_selectors(g, options.selector_cap);
  res.selectors_truncated = selectors.truncated;
  std::set<std::string> seen_notes;
  auto note = [&](const std::string& text) {
    if (seen_notes.insert(text).second) res.derivation.notes.push_back(text);
  };
  for (const auto& text : selectors.notes) note(text);

  bool changed = false;
  auto fire = [&](RuleInstance inst) {
    RuleResult r = apply_rule(g, res.state, inst);
    for (const auto& text : r.notes) note(text);
    if (!r.applicable || r.produced.empty()) return;
    for (const Flag& f : r.produced) res.state.set(f);
    res.state_changes += r.produced.size();
    std::string citation(rule_citation(inst.rule));
    res.derivation.steps.push_back({std::move(inst), std::move(r.consumed), std::move(r.produced), citation});
    changed = true;
  };

  std::vector<EdgeIndex> loops;
  for (EdgeIndex e = 0; e < m; ++e)
    if (g.is_loop(e)) loops.push_back(e);

  do {
    changed = false;
    ++res.passes;
    for (EdgeIndex h = 0; h < m; ++h)
      for (EdgeIndex e = 0; e < m; ++e) fire({Rule::L1, h, e});
    for (EdgeIndex h = 0; h < m; ++h)
      for (EdgeIndex e = 0; e < m; ++e) fire({Rule::L2, h, e});
    for (EdgeIndex h = 0; h < m; ++h)
      for (EdgeIndex e : loops) {
        fire({Rule::L3Forward, h, e});
        fire({Rule::L3Backward, h, e});
      }
    if (options.antipode)
      for (EdgeIndex e = 0; e < m; ++e)
        for (EdgeIndex f = 0; f < m; ++f)
          if (e != f) fire({Rule::Antipode, e, f});
    for (EdgeIndex e = 0; e < m; ++e) fire({Rule::Unitarity, e});
    for (EdgeIndex e = 0; e < m; ++e)
      for (EdgeIndex f = e + 1; f < m; ++f)
        if (g.range(e) == g.range(f))
          for (VertexIndex w = 0; w < n; ++w)
            if (g.has_in_edges(w)) fire({Rule::Balance, e, f, w});
    for (const Selector& sel : selectors.selectors)
      for (VertexIndex u = 0; u < n; ++u) {
        if (!sel[u]) continue;
        if (selectors.out_vertex && !g.is_sink(u)) {
          for (EdgeIndex k : g.out_edges(u)) fire({Rule::Partition, 0, 0, u, k, sel});
        } else {
          fire({Rule::Partition, 0, 0, u, std::nullopt, sel});
        }
      }
  } while (changed);
  return res;
}

ReplayResult replay(const DirectedMultigraph& g, const Derivation& d, const FlagMatrix& expected) {
  ReplayResult out;
  FlagMatrix state;
  try {
    state = init_state(g);
  } catch (const Error& e) {
    return {false, 0, e.what()};
  }
  auto sorted = [](std::vector<Flag> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& step = d.steps[i];
    auto fail = [&](std::string why) {
      return ReplayResult{false, i, "step " + std::to_string(i) + " " + format_instance(g, step.instance) + ": " + why};
    };
    RuleResult r;
    try {
      r = apply_rule(g, state, step.instance);
    } catch (const Error& e) {
      return fail(e.what());
    }
    if (!r.applicable) return fail("not applicable: " + r.reason);
    for (const Flag& f : step.consumed)
      if (!state.known(f)) return fail("consumes unknown " + format_flag(g, f));
    if (sorted(r.produced) != sorted(step.produced)) return fail("produces different flags");
    for (const Flag& f : r.produced) state.set(f);
  }
  if (!(state == expected)) return {false, d.steps.size(), "final state differs"};
  return out;
}

// --- certify ----------------------------------------------------------------

Verdict certify(const DirectedMultigraph& g, const SaturateOptions& options) {
  if (!is_connected(g)) throw PreconditionError("the certifier requires a connected graph");
  Verdict v;

  if (auto pair = find_parallel_pair(g)) {
    ActionSpec a = doubling_action(g, pair->first, pair->second);
    ActionReport rep = verify_action(g, a);
    if (!rep.ok) throw SoundnessFault("doubling action failed verification at " + rep.failure.value_or("?"));
    v.kind = VerdictKind::NotRigidParallelEdges;
    v.action = std::move(a);
    v.action_report = std::move(rep);
    v.citations = {"universal object $Q_{\\tau}^{Lin} \\ncong$ the free product of |E| circles",
                   "$\\alpha(S_{e_1}) = S_{e_1} \\otimes (z_{1},0)+S_{e_2} \\otimes (0,z_{2})$"};
    return v;
  }

  v.saturation = saturate(g, options);
  const auto& sat = *v.saturation;
  if (sat.state.all_off_diagonal_zero()) {
    for (const auto& note : sat.derivation.notes)
      if (note.starts_with("forced unitary"))
        throw SoundnessFault("off-diagonal summand forced to 1 but all off-diagonals vanish: " + note);
    v.kind = VerdictKind::Rigid;
    v.citations = {"$Q_{\\tau}^{Lin} \\cong$ free product of |E| copies of C(S^1)"};
    return v;
  }

  const auto entries = adjacency_matrix(g).entries();
  if (entries == std::vector<unsigned>{0, 1, 1, 0}) {
    v.kind = VerdictKind::KnownLarger;
    v.citations = {"$\\mathcal{D}_{\\varphi}(C(S^1)* C(S^1))$"};
  } else if (entries == std::vector<unsigned>{1, 0, 0, 1}) {
    v.kind = VerdictKind::KnownLarger;
    v.citations = {"isomorphic to $H_{2}^{\\infty+}$"};
  } else {
    v.kind = VerdictKind::Inconclusive;
  }
  v.residual_pairs = sat.state.unknown_pairs();
  return v;
}

nlohmann::ordered_json certificate_json(const DirectedMultigraph& g, const Verdict& v, bool include_steps) {
  nlohmann::ordered_json j;
  j["verdict"] = std::string(to_string(v.kind));
  j["rules_used"] = nlohmann::ordered_json::array();
  j["steps"] = nlohmann::ordered_json::array();
  if (v.saturation) {
    for (const auto& r : v.saturation->derivation.rules_used()) j["rules_used"].push_back(r);
    if (include_steps)
      for (const auto& s : v.saturation->derivation.steps) {
        nlohmann::ordered_json step;
        step["rule"] = std::string(to_string(s.instance.rule));
        step["params"] = format_instance(g, s.instance);
        step["consumed"] = nlohmann::ordered_json::array();
        for (const auto& f : s.consumed) step["consumed"].push_back(format_flag(g, f));
        step["produced"] = nlohmann::ordered_json::array();
        for (const auto& f : s.produced) step["produced"].push_back(format_flag(g, f));
        step["citation"] = s.citation;
        j["steps"].push_back(std::move(step));
      }
  }
  j["residual_pairs"] = nlohmann::ordered_json::array();
  for (const auto& [e, f] : v.residual_pairs) j["residual_pairs"].push_back({id(g, e), id(g, f)});
  j["citations"] = v.citations;
  if (v.saturation) {
    j["notes"] = v.saturation->derivation.notes;
    j["state_changes"] = v.saturation->state_changes;
    j["passes"] = v.saturation->passes;
  }
  if (v.action) {
    nlohmann::ordered_json a;
    a["name"] = v.action->name;
    a["images"] = nlohmann::ordered_json::array();
    for (EdgeIndex e = 0; e < v.action->images.size(); ++e) {
      nlohmann::ordered_json img;
      img["edge"] = id(g, e);
      img["terms"] = nlohmann::ordered_json::array();
      for (const auto& t : v.action->images[e])
        img["terms"].push_back({{"edge", id(g, t.edge)}, {"coeff", format_coeff(t.coeff)}});
      a["images"].push_back(std::move(img));
    }
    if (v.action_report) {
      a["verified"] = v.action_report->ok;
      a["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : v.action_report->checks) a["checks"].push_back({{"relation", c.relation}, {"ok", c.ok}});
      std::size_t vanishing = 0;
      for (const auto& c : v.action_report->cross_terms) vanishing += c.product.is_zero();
      a["cross_terms"] = v.action_report->cross_terms.size();
      a["cross_terms_vanishing"] = vanishing;
    }
    j["action"] = std::move(a);
  }
  return j;
}

}  // namespace qsym
