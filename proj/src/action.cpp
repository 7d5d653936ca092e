#include "qsym/action.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qsym {

// --- coefficient algebra ----------------------------------------------------

std::vector<Letter> reduce_word(std::vector<Letter> word) {
  std::vector<Letter> out;
  out.reserve(word.size());
  for (Letter l : word) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

CoeffWord CoeffWord::one(CoeffAlgebra a) {
  CoeffWord w(a);
  for (std::size_t s = 0; s < a.slots; ++s) w.add({s, {}}, 1);
  return w;
}

CoeffWord CoeffWord::letter(CoeffAlgebra a, std::size_t slot, std::size_t i, bool adjoint) {
  if (slot >= a.slots) throw ArgumentError("slot " + std::to_string(slot) + " out of range");
  if (i == 0 || i > a.letters) throw ArgumentError("letter z" + std::to_string(i) + " out of range");
  CoeffWord w(a);
  const Letter l = static_cast<Letter>(i);
  w.add({slot, {adjoint ? -l : l}}, 1);
  return w;
}

CoeffWord CoeffWord::slot_unit(CoeffAlgebra a, std::size_t slot) {
  if (slot >= a.slots) throw ArgumentError("slot " + std::to_string(slot) + " out of range");
  CoeffWord w(a);
  w.add({slot, {}}, 1);
  return w;
}

void CoeffWord::add(CoeffMonomial m, const Rational& c) {
  if (c == 0) return;
  m.word = reduce_word(std::move(m.word));
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CoeffWord& CoeffWord::operator+=(const CoeffWord& other) {
  if (!(algebra_ == other.algebra_)) throw ArgumentError("coefficients from different algebras");
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

CoeffWord& CoeffWord::operator-=(const CoeffWord& other) {
  if (!(algebra_ == other.algebra_)) throw ArgumentError("coefficients from different algebras");
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

CoeffWord& CoeffWord::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

namespace {

std::optional<CoeffMonomial> multiply_words(const CoeffMonomial& x, const CoeffMonomial& y) {
  if (x.slot != y.slot) return std::nullopt;
  CoeffMonomial out{x.slot, x.word};
  out.word.insert(out.word.end(), y.word.begin(), y.word.end());
  out.word = reduce_word(std::move(out.word));
  return out;
}

CoeffMonomial star_word(const CoeffMonomial& m) {
  CoeffMonomial out{m.slot, {}};
  for (auto it = m.word.rbegin(); it != m.word.rend(); ++it) out.word.push_back(-*it);
  return out;
}

std::string format_letters(const std::vector<Letter>& word) {
  if (word.empty()) return "1";
  std::string out;
  for (Letter l : word) {
    if (!out.empty()) out += ' ';
    out += "z" + std::to_string(l > 0 ? l : -l);
    if (l < 0) out += '*';
  }
  return out;
}

std::string format_sum(const std::vector<std::pair<std::string, Rational>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [text, c] : terms) {
    Rational mag = c;
    if (c < 0) {
      out += first ? "-" : " - ";
      mag = -c;
    } else if (!first) {
      out += " + ";
    }
    if (mag != 1) out += format_rational(mag) + " ";
    out += text;
    first = false;
  }
  return out;
}

}  // namespace

CoeffWord coeff_multiply(const CoeffWord& a, const CoeffWord& b) {
  if (!(a.algebra() == b.algebra())) throw ArgumentError("coefficients from different algebras");
  CoeffWord out(a.algebra());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms())
      if (auto m = multiply_words(x, y)) out.add(std::move(*m), cx * cy);
  return out;
}

CoeffWord coeff_star(const CoeffWord& a) {
  CoeffWord out(a.algebra());
  for (const auto& [m, c] : a.terms()) out.add(star_word(m), c);
  return out;
}

std::string format_coeff(const CoeffWord& a) {
  std::vector<std::string> slots;
  for (std::size_t s = 0; s < std::max<std::size_t>(a.algebra().slots, 1); ++s) {
    std::vector<std::pair<std::string, Rational>> terms;
    for (const auto& [m, c] : a.terms())
      if (m.slot == s) terms.emplace_back(format_letters(m.word), c);
    slots.push_back(format_sum(terms));
  }
  if (slots.size() == 1) return slots.front();
  std::string out = "(";
  for (std::size_t i = 0; i < slots.size(); ++i) out += (i ? ", " : "") + slots[i];
  return out + ")";
}

// --- actions ----------------------------------------------------------------

ActionSpec diagonal_action(const DirectedMultigraph& g) {
  ActionSpec a{"diagonal", {1, g.edge_count()}, {}};
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    a.images.push_back({{e, CoeffWord::letter(a.algebra, 0, e + 1)}});
  return a;
}

ActionSpec doubling_action(const DirectedMultigraph& g, EdgeIndex e1, EdgeIndex e2) {
  if (e1 >= g.edge_count() || e2 >= g.edge_count()) throw ArgumentError("edge index out of range");
  if (e1 == e2 || g.source(e1) != g.source(e2) || g.range(e1) != g.range(e2))
    throw ArgumentError("doubling needs two distinct parallel edges, got " + g.edge(e1).id + " and " +
                        g.edge(e2).id);
  ActionSpec a{"doubling " + g.edge(e1).id + " " + g.edge(e2).id, {2, g.edge_count()}, {}};
  auto z = [&](std::size_t slot, EdgeIndex e) { return CoeffWord::letter(a.algebra, slot, e + 1); };
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (e == e1) {
      a.images.push_back({{e1, z(0, e1)}, {e2, z(1, e2)}});
    } else if (e == e2) {
      a.images.push_back({{e2, z(0, e2)}, {e1, z(1, e1)}});
    } else {
      a.images.push_back({{e, z(0, e) + z(1, e)}});
    }
  }
  return a;
}

std::string format_action(const DirectedMultigraph& g, const ActionSpec& a) {
  std::ostringstream os;
  for (EdgeIndex e = 0; e < a.images.size(); ++e) {
    os << "alpha(S." << g.edge(e).id << ") =";
    bool first = true;
    for (const auto& t : a.images[e]) {
      os << (first ? " " : " + ") << "S." << g.edge(t.edge).id << " ⊗ " << format_coeff(t.coeff);
      first = false;
    }
    if (first) os << " 0";
    os << '\n';
  }
  return os.str();
}

// --- tensors ----------------------------------------------------------------

void Tensor::add(const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Tensor::add(const PathMonomial& m, const CoeffWord& c, const Rational& scale) {
  if (!(c.algebra() == algebra_)) throw ArgumentError("coefficients from different algebras");
  for (const auto& [w, coeff] : c.terms()) add(Key{m, w}, coeff * scale);
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (graph_ != other.graph_ || !(algebra_ == other.algebra_))
    throw ArgumentError("tensor operands differ in graph or coefficient algebra");
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (graph_ != other.graph_ || !(algebra_ == other.algebra_))
    throw ArgumentError("tensor operands differ in graph or coefficient algebra");
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

std::size_t Tensor::co_depth() const {
  std::size_t d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first.mu.length());
  return d;
}

Tensor tensor_multiply(const Tensor& a, const Tensor& b) {
  if (&a.graph() != &b.graph() || !(a.algebra() == b.algebra()))
    throw ArgumentError("tensor operands differ in graph or coefficient algebra");
  Tensor out(a.graph(), a.algebra());
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      auto w = multiply_words(x.second, y.second);
      if (!w) continue;
      auto m = multiply_monomials(a.graph(), x.first, y.first);
      if (!m) continue;
      out.add(Tensor::Key{std::move(*m), std::move(*w)}, cx * cy);
    }
  return out;
}

Tensor tensor_star(const Tensor& t) {
  Tensor out(t.graph(), t.algebra());
  for (const auto& [k, c] : t.terms())
    out.add(Tensor::Key{PathMonomial{k.first.mu, k.first.gamma}, star_word(k.second)}, c);
  return out;
}

bool tensor_equivalent(const Tensor& a, const Tensor& b) {
  Tensor diff = a;
  diff -= b;
  const std::size_t depth = std::max(a.co_depth(), b.co_depth());
  Tensor expanded(a.graph(), a.algebra());
  for (const auto& [k, c] : diff.terms()) {
    const LinComb e = expand_to_depth(LinComb(a.graph(), k.first), depth);
    for (const auto& [m, cm] : e.terms()) expanded.add(Tensor::Key{m, k.second}, c * cm);
  }
  return expanded.is_zero();
}

std::string format_tensor(const Tensor& t) {
  std::vector<std::pair<std::string, Rational>> terms;
  for (const auto& [k, c] : t.terms()) {
    CoeffWord w(t.algebra());
    w.add(k.second, 1);
    terms.emplace_back(format_monomial(t.graph(), k.first) + " ⊗ " + format_coeff(w), c);
  }
  return format_sum(terms);
}

Tensor action_image(const DirectedMultigraph& g, const ActionSpec& a, EdgeIndex e) {
  Tensor t(g, a.algebra);
  for (const auto& term : a.images.at(e)) t.add(make_isometry(g, term.edge), term.coeff);
  return t;
}

ActionReport verify_action(const DirectedMultigraph& g, const ActionSpec& a) {
  if (a.images.size() != g.edge_count())
    throw ArgumentError("action lists " + std::to_string(a.images.size()) + " images for " +
                        std::to_string(g.edge_count()) + " edges");
  for (const auto& image : a.images)
    for (const auto& term : image) {
      if (term.edge >= g.edge_count()) throw ArgumentError("action references a missing edge");
      if (!(term.coeff.algebra() == a.algebra)) throw ArgumentError("action mixes coefficient algebras");
    }

  ActionReport rep;
  auto record = [&](std::string relation, const Tensor& lhs, const Tensor& rhs) {
    RelationCheck c{std::move(relation), tensor_equivalent(lhs, rhs), {}};
    if (!c.ok) {
      c.detail = "lhs = " + format_tensor(lhs) + "; rhs = " + format_tensor(rhs);
      if (rep.ok) rep.failure = c.relation;
      rep.ok = false;
    }
    rep.checks.push_back(std::move(c));
  };

  const std::size_t ne = g.edge_count();
  std::vector<Tensor> s, s_star;
  for (EdgeIndex e = 0; e < ne; ++e) {
    s.push_back(action_image(g, a, e));
    s_star.push_back(tensor_star(s.back()));
  }
  auto range_sum = [&](VertexIndex v) {
    Tensor sum(g, a.algebra);
    for (EdgeIndex f : g.out_edges(v)) sum += tensor_multiply(s[f], s_star[f]);
    return sum;
  };

  std::vector<Tensor> p;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.has_in_edges(v)) {
      const EdgeIndex h = g.in_edges(v).front();
      p.push_back(tensor_multiply(s_star[h], s[h]));
    } else if (!g.is_sink(v)) {
      p.push_back(range_sum(v));
    } else {
      throw std::logic_error("isolated vertex reached in verify_action");
    }
  }

  for (EdgeIndex e = 0; e < ne; ++e)
    record("(i) " + g.edge(e).id, tensor_multiply(s_star[e], s[e]), p[g.range(e)]);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) record("(ii) " + g.vertex_id(v), p[v], range_sum(v));

  Tensor total(g, a.algebra), one(g, a.algebra);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    total += p[v];
    one.add(make_projection(v), CoeffWord::one(a.algebra));
  }
  record("unit", total, one);

  for (EdgeIndex e = 0; e < ne; ++e) {
    const auto& image = a.images[e];
    for (const auto& x : image)
      for (const auto& y : image)
        if (x.edge != y.edge)
          rep.cross_terms.push_back({e, x.edge, y.edge, coeff_multiply(coeff_star(x.coeff), y.coeff)});
  }
  return rep;
}

}  // namespace qsym
