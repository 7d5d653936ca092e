#include <cctype>
#include <charconv>
#include <sstream>

#include "qsym/error.hpp"
#include "qsym/graph.hpp"

namespace qsym {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> parse_vertex_list(std::string_view rest, std::size_t line) {
  rest = trim(rest);
  if (rest.empty()) throw ParseError(line, "empty vertex declaration");

  std::size_t count = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), count);
  if (ec == std::errc{} && ptr == rest.data() + rest.size()) {
    if (count == 0) throw ParseError(line, "graph needs at least one vertex");
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= count; ++i) ids.push_back(std::to_string(i));
    return ids;
  }

  std::vector<std::string> ids;
  while (true) {
    const auto comma = rest.find(',');
    auto token = trim(rest.substr(0, comma));
    if (token.empty()) throw ParseError(line, "empty vertex id in list");
    ids.emplace_back(token);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return ids;
}

}  // namespace

DirectedMultigraph parse_graph(std::string_view text) {
  std::optional<std::vector<std::string>> vertices;
  std::vector<EdgeSpec> edges;

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos || trim(line.substr(0, colon)) != "vertices")
        throw ParseError(line_no, "expected 'vertices: ...' or an edge '<id>: <src> -> <rng>'");
      if (vertices) throw ParseError(line_no, "duplicate vertex declaration");
      if (!edges.empty()) throw ParseError(line_no, "vertex declaration must precede edges");
      vertices = parse_vertex_list(line.substr(colon + 1), line_no);
      continue;
    }

    if (!vertices) throw ParseError(line_no, "edge before vertex declaration");

    std::string_view head = line.substr(0, arrow);
    const std::string_view range = trim(line.substr(arrow + 2));
    std::string id;
    if (const auto colon = head.find(':'); colon != std::string_view::npos) {
      id = std::string(trim(head.substr(0, colon)));
      if (id.empty()) throw ParseError(line_no, "empty edge id");
      head = head.substr(colon + 1);
    } else {
      id = "e" + std::to_string(edges.size() + 1);
    }
    const std::string_view source = trim(head);
    if (source.empty() || range.empty()) throw ParseError(line_no, "edge needs a source and a range");
    if (range.find_first_of(" \t") != std::string_view::npos)
      throw ParseError(line_no, "unexpected text after range vertex");

    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i].id == id) throw ParseError(line_no, "duplicate edge id '" + id + "'");
    auto declared = [&](std::string_view v) {
      for (const auto& x : *vertices)
        if (x == v) return true;
      return false;
    };
    if (!declared(source)) throw ParseError(line_no, "undeclared vertex '" + std::string(source) + "'");
    if (!declared(range)) throw ParseError(line_no, "undeclared vertex '" + std::string(range) + "'");

    edges.push_back(EdgeSpec{std::move(id), std::string(source), std::string(range)});
  }

  if (!vertices) throw ParseError(line_no, "missing 'vertices:' declaration");
  try {
    return DirectedMultigraph(std::move(*vertices), std::move(edges));
  } catch (const ArgumentError& e) {
    // Remaining failures are id validation problems.
    throw ParseError(0, e.what());
  }
}

std::string format_graph(const DirectedMultigraph& g) {
  std::ostringstream os;
  os << "vertices: ";
  for (std::size_t i = 0; i < g.vertex_count(); ++i) os << (i ? "," : "") << g.vertex_id(i);
  os << '\n';
  for (const Edge& e : g.edges())
    os << e.id << ": " << g.vertex_id(e.source) << " -> " << g.vertex_id(e.range) << '\n';
  return os.str();
}

std::string emit_dot(const DirectedMultigraph& g, std::string_view name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (const auto& v : g.vertex_ids()) os << "  \"" << v << "\";\n";
  for (const Edge& e : g.edges())
    os << "  \"" << g.vertex_id(e.source) << "\" -> \"" << g.vertex_id(e.range)
       << "\" [label=\"" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace qsym
