#include "qsym/cstar.hpp"

#include <algorithm>
#include <sstream>

namespace qsym {

std::string format_rational(const Rational& q) {
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + den.str();
}

// --- monomials --------------------------------------------------------------

PathMonomial make_projection(VertexIndex v) { return {Path{v, {}}, Path{v, {}}}; }

PathMonomial make_isometry(const DirectedMultigraph& g, EdgeIndex e) {
  return {Path{g.source(e), {e}}, Path{g.range(e), {}}};
}

PathMonomial make_adjoint(const DirectedMultigraph& g, EdgeIndex e) {
  return {Path{g.range(e), {}}, Path{g.source(e), {e}}};
}

VertexIndex monomial_vertex(const DirectedMultigraph& g, const PathMonomial& m) {
  return path_range(g, m.gamma);
}

bool is_valid_monomial(const DirectedMultigraph& g, const PathMonomial& m) {
  return is_valid_path(g, m.gamma) && is_valid_path(g, m.mu) &&
         path_range(g, m.gamma) == path_range(g, m.mu);
}

std::string format_monomial(const DirectedMultigraph& g, const PathMonomial& m) {
  if (m.gamma.empty() && m.mu.empty()) return "p." + g.vertex_id(m.gamma.start);
  std::string out;
  for (EdgeIndex e : m.gamma.edges) {
    if (!out.empty()) out += ' ';
    out += "S." + g.edge(e).id;
  }
  for (auto it = m.mu.edges.rbegin(); it != m.mu.edges.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += "S*." + g.edge(*it).id;
  }
  return out;
}

namespace {

// Anchored prefix test: an empty path at v is a prefix of exactly the paths
// starting at v.
bool is_prefix(const Path& p, const Path& q) {
  if (p.start != q.start || p.length() > q.length()) return false;
  return std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

Path concat(const Path& p, const Path& q, std::size_t skip) {
  Path out = p;
  out.edges.insert(out.edges.end(), q.edges.begin() + static_cast<std::ptrdiff_t>(skip), q.edges.end());
  return out;
}

}  // namespace

std::optional<PathMonomial> multiply_monomials(const DirectedMultigraph&, const PathMonomial& x,
                                               const PathMonomial& y) {
  if (is_prefix(x.mu, y.gamma)) return PathMonomial{concat(x.gamma, y.gamma, x.mu.length()), y.mu};
  if (is_prefix(y.gamma, x.mu)) return PathMonomial{x.gamma, concat(y.mu, x.mu, y.gamma.length())};
  return std::nullopt;
}

std::vector<PathMonomial> expand_once(const DirectedMultigraph& g, const PathMonomial& m) {
  const VertexIndex v = monomial_vertex(g, m);
  if (g.is_sink(v)) return {m};
  std::vector<PathMonomial> out;
  for (EdgeIndex f : g.out_edges(v)) {
    PathMonomial n = m;
    n.gamma.edges.push_back(f);
    n.mu.edges.push_back(f);
    out.push_back(std::move(n));
  }
  return out;
}

// --- LinComb ----------------------------------------------------------------

LinComb::LinComb(const DirectedMultigraph& g, const PathMonomial& m, Rational c) : graph_(&g) {
  add(m, c);
}

Rational LinComb::coefficient(const PathMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LinComb::add(const PathMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void LinComb::adopt(const LinComb& other) {
  if (other.graph_ == nullptr) return;
  if (graph_ == nullptr) {
    graph_ = other.graph_;
  } else if (graph_ != other.graph_) {
    throw ArgumentError("operands belong to different graphs");
  }
}

LinComb& LinComb::operator+=(const LinComb& other) {
  adopt(other);
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& other) {
  adopt(other);
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

LinComb& LinComb::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::size_t LinComb::co_depth() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.mu.length());
  return d;
}

std::size_t LinComb::max_path_length() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max({d, m.gamma.length(), m.mu.length()});
  return d;
}

std::string format_lincomb(const LinComb& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t.terms()) {
    Rational mag = c;
    if (c < 0) {
      os << (first ? "-" : " - ");
      mag = -c;
    } else if (!first) {
      os << " + ";
    }
    if (mag != 1) os << format_rational(mag) << ' ';
    os << format_monomial(*t.graph(), m);
    first = false;
  }
  return os.str();
}

LinComb projection(const DirectedMultigraph& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw ArgumentError("vertex index out of range");
  return LinComb(g, make_projection(v));
}

LinComb isometry(const DirectedMultigraph& g, EdgeIndex e) {
  if (e >= g.edge_count()) throw ArgumentError("edge index out of range");
  return LinComb(g, make_isometry(g, e));
}

LinComb adjoint(const DirectedMultigraph& g, EdgeIndex e) {
  if (e >= g.edge_count()) throw ArgumentError("edge index out of range");
  return LinComb(g, make_adjoint(g, e));
}

LinComb unit(const DirectedMultigraph& g) {
  LinComb out(g);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) out.add(make_projection(v), 1);
  return out;
}

LinComb star(const LinComb& t) {
  if (t.graph() == nullptr) return {};
  LinComb out(*t.graph());
  for (const auto& [m, c] : t.terms()) out.add(PathMonomial{m.mu, m.gamma}, c);
  return out;
}

LinComb multiply(const LinComb& a, const LinComb& b) {
  if (a.graph() && b.graph() && a.graph() != b.graph())
    throw ArgumentError("operands belong to different graphs");
  const DirectedMultigraph* g = a.graph() ? a.graph() : b.graph();
  if (g == nullptr) return {};
  LinComb out(*g);
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms())
      if (auto m = multiply_monomials(*g, x, y)) out.add(*m, cx * cy);
  return out;
}

LinComb expand_to_depth(const LinComb& t, std::size_t depth) {
  if (t.graph() == nullptr) return {};
  const DirectedMultigraph& g = *t.graph();
  LinComb out(g);
  std::vector<std::pair<PathMonomial, Rational>> work(t.terms().begin(), t.terms().end());
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    if (m.mu.length() >= depth || g.is_sink(monomial_vertex(g, m))) {
      out.add(m, c);
      continue;
    }
    for (auto& n : expand_once(g, m)) work.emplace_back(std::move(n), c);
  }
  return out;
}

LinComb expand_to_sinks(const LinComb& t) {
  if (t.graph() == nullptr) return {};
  if (!is_acyclic(*t.graph())) throw ArgumentError("sink expansion needs an acyclic graph");
  // Every path has length < |V| on an acyclic graph.
  return expand_to_depth(t, t.graph()->vertex_count() + t.max_path_length());
}

bool equivalent(const LinComb& a, const LinComb& b) {
  const LinComb diff = a - b;
  return expand_to_depth(diff, std::max(a.co_depth(), b.co_depth())).is_zero();
}

// --- words ------------------------------------------------------------------

GeneratorWord parse_word(std::string_view text, const DirectedMultigraph& g) {
  GeneratorWord w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    const auto dot = tok.find('.');
    if (dot == std::string::npos) throw ArgumentError("bad atom '" + tok + "' (expected p.v, S.e or S*.e)");
    const std::string head = tok.substr(0, dot);
    const std::string name = tok.substr(dot + 1);
    if (head == "p") {
      auto v = g.find_vertex(name);
      if (!v) throw ArgumentError("unknown vertex '" + name + "'");
      w.push_back({Atom::Kind::Projection, *v});
    } else if (head == "S" || head == "S*") {
      auto e = g.find_edge(name);
      if (!e) throw ArgumentError("unknown edge '" + name + "'");
      w.push_back({head == "S" ? Atom::Kind::Isometry : Atom::Kind::Adjoint, *e});
    } else {
      throw ArgumentError("bad atom '" + tok + "' (expected p.v, S.e or S*.e)");
    }
  }
  if (w.empty()) throw ArgumentError("empty generator word");
  return w;
}

std::string format_word(const DirectedMultigraph& g, const GeneratorWord& w) {
  std::string out;
  for (const Atom& a : w) {
    if (!out.empty()) out += ' ';
    switch (a.kind) {
      case Atom::Kind::Projection: out += "p." + g.vertex_id(a.index); break;
      case Atom::Kind::Isometry: out += "S." + g.edge(a.index).id; break;
      case Atom::Kind::Adjoint: out += "S*." + g.edge(a.index).id; break;
    }
  }
  return out;
}

LinComb atom_value(const DirectedMultigraph& g, const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Projection: return projection(g, a.index);
    case Atom::Kind::Isometry: return isometry(g, a.index);
    case Atom::Kind::Adjoint: return adjoint(g, a.index);
  }
  return {};
}

LinComb evaluate_word(const GeneratorWord& w, const DirectedMultigraph& g, FoldOrder order) {
  if (w.empty()) return unit(g);
  if (order == FoldOrder::LeftToRight) {
    LinComb acc = atom_value(g, w.front());
    for (std::size_t i = 1; i < w.size(); ++i) acc = multiply(acc, atom_value(g, w[i]));
    return acc;
  }
  LinComb acc = atom_value(g, w.back());
  for (std::size_t i = w.size() - 1; i-- > 0;) acc = multiply(atom_value(g, w[i]), acc);
  return acc;
}

LinComb normal_form(const GeneratorWord& w, const DirectedMultigraph& g, const NormalFormOptions& options) {
  const bool acyclic = is_acyclic(g);
  LinComb acc = atom_value(g, w.front());
  for (std::size_t i = 1; i < w.size(); ++i) {
    acc = multiply(acc, atom_value(g, w[i]));
    if (!acyclic && acc.max_path_length() > options.path_length_cap)
      throw TruncationError("path length exceeds cap " + std::to_string(options.path_length_cap) +
                                " after " + std::to_string(i + 1) + " atoms",
                            acc);
  }
  if (!acyclic) return acc;

  // Bare projections at vertices that emit edges are rewritten with relation (ii).
  LinComb out(g);
  for (const auto& [m, c] : acc.terms()) {
    const bool bare = m.gamma.empty() && m.mu.empty();
    if (bare && !g.is_sink(m.gamma.start)) {
      for (const auto& n : expand_once(g, m)) out.add(n, c);
    } else {
      out.add(m, c);
    }
  }
  return out;
}

std::uint64_t dimension(const DirectedMultigraph& g) {
  if (!is_acyclic(g)) throw ArgumentError("dimension is only defined for acyclic graphs");
  if (!is_connected(g)) throw ArgumentError("dimension needs a connected graph (every vertex on an edge)");

  // paths ending at v, the empty one included
  std::vector<std::uint64_t> count(g.vertex_count(), 0);
  std::vector<bool> done(g.vertex_count(), false);
  auto paths_into = [&](auto&& self, VertexIndex v) -> std::uint64_t {
    if (done[v]) return count[v];
    std::uint64_t n = 1;
    for (EdgeIndex e : g.in_edges(v)) n += self(self, g.source(e));
    done[v] = true;
    return count[v] = n;
  };
  std::uint64_t dim = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v)) {
      const auto n = paths_into(paths_into, v);
      dim += n * n;
    }
  return dim;
}

Rational tau(const LinComb& t) {
  Rational sum = 0;
  for (const auto& [m, c] : t.terms()) {
    if (m.gamma.empty() && m.mu.empty()) {
      // tau(p_u) = 1 on sinks; elsewhere p_v = sum_{s(f)=v} S_f S_f^* gives out-degree.
      const auto out = t.graph()->out_edges(m.gamma.start).size();
      sum += c * Rational(static_cast<long long>(out == 0 ? 1 : out));
    } else if (m.gamma.length() == 1 && m.mu.length() == 1) {
      if (m.gamma.edges[0] == m.mu.edges[0]) sum += c;
    } else {
      throw DomainError("tau is undefined on " + format_monomial(*t.graph(), m));
    }
  }
  return sum;
}

std::vector<std::vector<Rational>> f_matrix(const DirectedMultigraph& g) {
  const std::size_t m = g.edge_count();
  std::vector<std::vector<Rational>> f(m, std::vector<Rational>(m, Rational(0)));
  for (EdgeIndex e = 0; e < m; ++e)
    for (EdgeIndex h = 0; h < m; ++h) {
      LinComb prod = multiply(adjoint(g, e), isometry(g, h));
      LinComb expanded(g);
      for (const auto& [mono, c] : prod.terms())
        for (const auto& n : expand_once(g, mono)) expanded.add(n, c);
      f[e][h] = tau(expanded);
    }
  return f;
}

CkReport verify_ck_relations(const DirectedMultigraph& g) {
  CkReport rep;
  auto check = [&](bool ok, const std::string& what) {
    ++rep.checks;
    if (!ok) {
      rep.ok = false;
      rep.failures.push_back(what);
    }
  };
  const std::size_t nv = g.vertex_count();
  const std::size_t ne = g.edge_count();
  const LinComb one = unit(g);

  for (EdgeIndex e = 0; e < ne; ++e) {
    const std::string id = g.edge(e).id;
    check((multiply(adjoint(g, e), isometry(g, e)) - projection(g, g.range(e))).is_zero(),
          "(i) S*_" + id + " S_" + id + " = p_" + g.vertex_id(g.range(e)));
    const LinComb s = isometry(g, e);
    check(multiply(multiply(s, adjoint(g, e)), s) == s, "partial isometry S_" + id);
  }

  for (VertexIndex v = 0; v < nv; ++v) {
    const LinComb p = projection(g, v);
    check(multiply(p, p) == p && star(p) == p, "p_" + g.vertex_id(v) + " is a projection");
    for (VertexIndex w = v + 1; w < nv; ++w)
      check(multiply(p, projection(g, w)).is_zero(),
            "p_" + g.vertex_id(v) + " p_" + g.vertex_id(w) + " = 0");
    if (g.is_sink(v)) continue;
    LinComb sum(g);
    for (EdgeIndex f : g.out_edges(v)) sum += multiply(isometry(g, f), adjoint(g, f));
    check(equivalent(p, sum), "(ii) p_" + g.vertex_id(v) + " = sum S_f S*_f");
  }

  std::vector<LinComb> generators;
  for (VertexIndex v = 0; v < nv; ++v) generators.push_back(projection(g, v));
  for (EdgeIndex e = 0; e < ne; ++e) {
    generators.push_back(isometry(g, e));
    generators.push_back(adjoint(g, e));
  }
  for (const LinComb& x : generators)
    check(multiply(one, x) == x && multiply(x, one) == x,
          "unit acts trivially on " + format_lincomb(x));

  for (EdgeIndex e = 0; e < ne; ++e)
    for (EdgeIndex f = 0; f < ne; ++f) {
      const std::string pair = g.edge(e).id + "," + g.edge(f).id;
      if (e != f) check(multiply(adjoint(g, e), isometry(g, f)).is_zero(), "S*_e S_f = 0 for " + pair);
      check(multiply(isometry(g, e), isometry(g, f)).is_zero() != (g.range(e) == g.source(f)),
            "S_e S_f != 0 iff r(e) = s(f) for " + pair);
      check(multiply(isometry(g, e), adjoint(g, f)).is_zero() != (g.range(e) == g.range(f)),
            "S_e S*_f != 0 iff r(e) = r(f) for " + pair);
    }
  return rep;
}

}  // namespace qsym
