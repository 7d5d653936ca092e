#include "qsym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "qsym/action.hpp"
#include "qsym/census.hpp"
#include "qsym/certifier.hpp"
#include "qsym/cstar.hpp"
#include "qsym/error.hpp"
#include "qsym/families.hpp"
#include "qsym/graph.hpp"

namespace qsym {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

class FileError : public Error {
 public:
  using Error::Error;
};

std::string hex_digest(std::string_view bytes) {
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? std::string(sep) : "") + xs[i];
  return out;
}

Json path_json(const DirectedMultigraph& g, const Path& p) {
  Json edges = Json::array();
  for (EdgeIndex e : p.edges) edges.push_back(g.edge(e).id);
  return {{"start", g.vertex_id(p.start)}, {"edges", edges}};
}

Json matrix_json(const AdjacencyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return {{"order", m.order()}, {"rows", rows}};
}

std::vector<std::string> vertex_names(const DirectedMultigraph& g, const std::vector<VertexIndex>& order) {
  std::vector<std::string> out;
  for (VertexIndex v : order) out.push_back(g.vertex_id(v));
  return out;
}

/// Payload plus the human-readable rendering of one command.
struct Outcome {
  Json result;
  std::string text;
  Json derivation;  // null unless requested
  int code = 0;
};

// --- commands ----------------------------------------------------------------

Outcome cmd_check_r(const DirectedMultigraph& g) {
  const auto rep = check_property_R(g);
  Outcome o;
  std::vector<std::string> violated;
  for (Condition c : rep.violated) violated.emplace_back(to_string(c));
  o.result["holds"] = rep.holds;
  o.result["violated"] = violated;
  o.result["weakly_connected"] = rep.weakly_connected;
  o.result["cycle_witness"] = rep.cycle_witness ? path_json(g, *rep.cycle_witness) : Json();
  o.result["parallel_witness"] =
      rep.parallel_witness
          ? Json::array({g.edge(rep.parallel_witness->first).id, g.edge(rep.parallel_witness->second).id})
          : Json();
  o.result["spanning_path"] = rep.spanning_path ? path_json(g, *rep.spanning_path) : Json();
  o.result["ordering"] = rep.ordering ? Json(vertex_names(g, *rep.ordering)) : Json();

  std::ostringstream t;
  t << "property (R): " << (rep.holds ? "holds" : "fails") << "\n";
  if (!violated.empty()) t << "violated: " << join(violated, ", ") << "\n";
  if (rep.cycle_witness) t << "cycle: " << format_path(g, *rep.cycle_witness) << "\n";
  if (rep.parallel_witness)
    t << "parallel edges: " << g.edge(rep.parallel_witness->first).id << " "
      << g.edge(rep.parallel_witness->second).id << "\n";
  if (rep.spanning_path) t << "spanning path: " << format_path(g, *rep.spanning_path) << "\n";
  if (rep.ordering) t << "ordering: " << join(vertex_names(g, *rep.ordering), " ") << "\n";
  if (!rep.weakly_connected) t << "note: not weakly connected\n";
  o.text = t.str();
  return o;
}

Outcome cmd_order(const DirectedMultigraph& g) {
  Outcome o;
  const auto order = canonical_ordering(g);
  if (!order) {
    o.result["ordering"] = nullptr;
    o.result["matrix"] = nullptr;
    o.text = "no canonical ordering: property (R) fails\n";
    return o;
  }
  const auto m = adjacency_matrix(g, *order);
  o.result["ordering"] = vertex_names(g, *order);
  o.result["matrix"] = matrix_json(m);
  o.text = "ordering: " + join(vertex_names(g, *order), " ") + "\n" + format_matrix(m);
  if (!o.text.ends_with('\n')) o.text += '\n';
  return o;
}

std::string certificate_text(const DirectedMultigraph& g, const Verdict& v, bool trace) {
  std::ostringstream t;
  t << "verdict: " << to_string(v.kind) << "\n";
  if (v.saturation) {
    const auto& d = v.saturation->derivation;
    const auto rules = d.rules_used();
    t << "rules used: " << join({rules.begin(), rules.end()}, ", ") << "\n";
    t << "steps: " << d.steps.size() << ", state changes: " << v.saturation->state_changes << "\n";
    if (trace)
      for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        std::vector<std::string> in, out;
        for (const auto& f : s.consumed) in.push_back(format_flag(g, f));
        for (const auto& f : s.produced) out.push_back(format_flag(g, f));
        t << "  [" << i << "] " << format_instance(g, s.instance) << ": {" << join(in, ", ") << "} => {"
          << join(out, ", ") << "}\n";
      }
    for (const auto& n : d.notes) t << "note: " << n << "\n";
  }
  if (v.action) t << format_action(g, *v.action) << "action verified: " << (v.action_report->ok ? "yes" : "no") << "\n";
  if (!v.residual_pairs.empty()) {
    std::vector<std::string> pairs;
    for (const auto& [e, f] : v.residual_pairs) pairs.push_back("(" + g.edge(e).id + "," + g.edge(f).id + ")");
    t << "residual: " << join(pairs, " ") << "\n";
  }
  for (const auto& c : v.citations) t << "citation: " << c << "\n";
  return t.str();
}

Outcome cmd_certify(const DirectedMultigraph& g, const SaturateOptions& options, bool trace) {
  const Verdict v = certify(g, options);
  Outcome o;
  o.result = certificate_json(g, v, false);
  o.result.erase("steps");
  if (trace) o.derivation = certificate_json(g, v, true)["steps"];
  o.text = certificate_text(g, v, trace);
  return o;
}

bool same_shape(const DirectedMultigraph& a, const DirectedMultigraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const auto target = adjacency_matrix(b).entries();
  if (adjacency_matrix(a).entries() == target) return true;
  if (a.vertex_count() > 8) return false;
  std::vector<VertexIndex> order(a.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  do {
    if (adjacency_matrix(a, order).entries() == target) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

std::optional<FamilySpec> match_family(const DirectedMultigraph& g) {
  for (const auto& info : list_families()) {
    if (info.arity == 0) {
      auto f = make_family(info.name);
      if (same_shape(g, f.graph)) return f;
      continue;
    }
    for (int n = 1; n <= 12; ++n) {
      std::optional<FamilySpec> f;
      try {
        f = make_family(info.name, {n});
      } catch (const ArgumentError&) {
        continue;
      }
      if (f->graph.vertex_count() > g.vertex_count()) break;
      if (same_shape(g, f->graph)) return f;
    }
  }
  return std::nullopt;
}

Outcome cmd_classify(const DirectedMultigraph& g, const SaturateOptions& options, bool trace) {
  Outcome o = cmd_certify(g, options, trace);
  const auto rep = check_property_R(g);
  std::vector<std::string> violated;
  for (Condition c : rep.violated) violated.emplace_back(to_string(c));
  o.result["property_r"] = {{"holds", rep.holds}, {"violated", violated}};
  std::ostringstream t;
  t << "property (R): " << (rep.holds ? "holds" : "fails (" + join(violated, ", ") + ")") << "\n";
  if (auto f = match_family(g)) {
    Json fam{{"name", f->name}, {"parameters", f->parameters}, {"algebra_label", f->algebra_label},
             {"expected_verdict", std::string(to_string(f->expected_verdict))}, {"citation", f->citation}};
    o.result["family"] = fam;
    std::string params;
    for (int p : f->parameters) params += (params.empty() ? "" : ",") + std::to_string(p);
    t << "family: " << f->name << (params.empty() ? "" : "(" + params + ")") << ", C*-algebra " << f->algebra_label
      << "\n";
  } else {
    o.result["family"] = nullptr;
  }
  o.text += t.str();
  return o;
}

Outcome cmd_nf(const DirectedMultigraph& g, const std::string& word, std::size_t cap) {
  const auto w = parse_word(word, g);
  NormalFormOptions opt;
  opt.path_length_cap = cap;
  Outcome o;
  const auto nf = normal_form(w, g, opt);
  o.result["word"] = format_word(g, w);
  o.result["normal_form"] = format_lincomb(nf);
  o.result["terms"] = nf.terms().size();
  o.text = format_lincomb(nf) + "\n";
  return o;
}

Outcome cmd_dim(const DirectedMultigraph& g) {
  Outcome o;
  const auto d = dimension(g);
  o.result["dimension"] = d;
  o.text = std::to_string(d) + "\n";
  return o;
}

Outcome cmd_family(const std::string& name, const std::vector<int>& params) {
  const auto f = make_family(name, params);
  Outcome o;
  o.result["name"] = f.name;
  o.result["parameters"] = f.parameters;
  o.result["graph"] = format_graph(f.graph);
  o.result["matrix"] = matrix_json(adjacency_matrix(f.graph));
  o.result["expected_verdict"] = std::string(to_string(f.expected_verdict));
  o.result["algebra_label"] = f.algebra_label;
  o.result["citation"] = f.citation;
  std::ostringstream t;
  t << "# family " << f.name;
  for (int p : f.parameters) t << " " << p;
  t << "\n# expected " << to_string(f.expected_verdict) << ", C*-algebra " << f.algebra_label << "\n"
    << format_graph(f.graph);
  o.text = t.str();
  if (!o.text.ends_with('\n')) o.text += '\n';
  return o;
}

Outcome cmd_verify_action(const DirectedMultigraph& g, const std::vector<std::string>& doubling) {
  ActionSpec a;
  if (doubling.empty()) {
    a = diagonal_action(g);
  } else {
    auto lookup = [&](const std::string& id) {
      if (auto e = g.find_edge(id)) return *e;
      throw ArgumentError("unknown edge '" + id + "'");
    };
    a = doubling_action(g, lookup(doubling.at(0)), lookup(doubling.at(1)));
  }
  const auto rep = verify_action(g, a);
  Outcome o;
  o.result["action"] = a.name;
  o.result["ok"] = rep.ok;
  o.result["failure"] = rep.failure ? Json(*rep.failure) : Json();
  o.result["checks"] = Json::array();
  std::ostringstream t;
  t << format_action(g, a);
  for (const auto& c : rep.checks) {
    o.result["checks"].push_back({{"relation", c.relation}, {"ok", c.ok}, {"detail", c.detail}});
    t << (c.ok ? "ok    " : "FAIL  ") << c.relation << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  }
  o.result["cross_terms"] = Json::array();
  for (const auto& c : rep.cross_terms) {
    o.result["cross_terms"].push_back({{"image_of", g.edge(c.image_of).id},
                                       {"left", g.edge(c.left).id},
                                       {"right", g.edge(c.right).id},
                                       {"product", format_coeff(c.product)}});
    t << "cross term in alpha(S." << g.edge(c.image_of).id << ")*alpha(S." << g.edge(c.image_of).id << ") at S."
      << g.edge(c.left).id << "* S." << g.edge(c.right).id << ": " << format_coeff(c.product) << "\n";
  }
  t << (rep.ok ? "verified\n" : "FAILED at " + rep.failure.value_or("?") + "\n");
  o.text = t.str();
  o.code = rep.ok ? 0 : 1;
  return o;
}

Outcome cmd_emit_dot(const DirectedMultigraph& g) {
  Outcome o;
  o.text = emit_dot(g);
  o.result["dot"] = o.text;
  return o;
}

Outcome cmd_selfcheck(bool serial, bool saturation) {
  const auto slices = default_census();
  const auto p = serial ? ordering_census_serial(slices) : ordering_census_parallel(slices);
  Outcome o;
  Json prop{{"matrices", p.matrices},
            {"connected", p.connected},
            {"holds_r", p.holds_r},
            {"violates", {{"R1", p.violates[0]}, {"R2", p.violates[1]}, {"R3", p.violates[2]}}},
            {"mismatches", Json::array()}};
  std::ostringstream t;
  t << "ordering census: " << p.matrices << " matrices, " << p.connected << " connected, " << p.holds_r
    << " with (R); R1 fails " << p.violates[0] << ", R2 fails " << p.violates[1] << ", R3 fails " << p.violates[2]
    << "\n";
  for (const auto& m : p.mismatches) {
    prop["mismatches"].push_back(matrix_json(m));
    t << "MISMATCH\n" << format_matrix(m) << "\n";
  }
  t << "mismatches: " << p.mismatches.size() << "\n";
  o.result["ordering"] = prop;
  bool ok = p.mismatches.empty();

  if (saturation) {
    const auto s = serial ? saturation_census_serial(slices) : saturation_census_parallel(slices);
    Json verdicts;
    for (int k = 0; k < 4; ++k) verdicts[std::string(to_string(static_cast<VerdictKind>(k)))] = s.verdicts[k];
    o.result["saturation"] = {{"graphs", s.graphs},           {"verdicts", verdicts},
                              {"max_changes", s.max_changes}, {"bound_violations", s.bound_violations},
                              {"replay_failures", s.replay_failures}, {"faults", s.faults}};
    t << "saturation census: " << s.graphs << " graphs, max state changes " << s.max_changes
      << ", bound violations " << s.bound_violations << ", replay failures " << s.replay_failures << ", faults "
      << s.faults.size() << "\n";
    for (const auto& [name, count] : verdicts.items()) t << "  " << name << ": " << count << "\n";
    for (const auto& f : s.faults) t << "FAULT " << f << "\n";
    ok = ok && s.faults.empty() && s.bound_violations == 0 && s.replay_failures == 0;
  }
  o.text = t.str();
  o.code = ok ? 0 : 1;
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph C*-algebra quantum symmetry toolkit", "qsym"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Print a JSON report");

  std::string file, word, family_name;
  std::vector<int> family_params;
  std::vector<std::string> doubling;
  bool diagonal = false, trace = false, no_antipode = false, serial = false, with_saturation = false;
  std::optional<std::size_t> selector_cap;
  std::size_t nf_cap = NormalFormOptions{}.path_length_cap;

  auto graph_command = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("graph", file, "Graph file")->required();
    return sub;
  };
  auto* check_r = graph_command("check-r", "Check property (R)");
  auto* order = graph_command("order", "Canonical vertex ordering and reordered matrix");
  auto* cert = graph_command("certify", "Decide rigidity with a replayable certificate");
  auto* classify = graph_command("classify", "certify plus property (R) and family recognition");
  for (auto* sub : {cert, classify}) {
    sub->add_flag("--trace", trace, "Include every rule firing");
    sub->add_flag("--no-antipode", no_antipode, "Disable the antipode rule");
    sub->add_option("--selector-cap", selector_cap, "Partition selector cap (overrides QSYM_SELECTOR_CAP)");
  }
  auto* nf = graph_command("nf", "Normal form of a generator word");
  nf->add_option("word", word, "Atoms p.v, S.e, S*.e separated by spaces")->required();
  nf->add_option("--cap", nf_cap, "Path length cap on cyclic graphs");
  auto* dim = graph_command("dim", "Dimension of C*(G) for an acyclic graph");
  auto* family = app.add_subcommand("family", "Emit a named family graph");
  family->add_option("name", family_name, "P, T, L_odd, L_bar, M, K2, L11, Gamma0, P23, L2prime, L3sup2")->required();
  family->add_option("params", family_params, "Family parameter");
  auto* verify = graph_command("verify-action", "Verify the diagonal or doubling action");
  auto* dbl = verify->add_option("--doubling", doubling, "Parallel pair e1 e2")->expected(2);
  auto* diag = verify->add_flag("--diagonal", diagonal, "Diagonal action");
  dbl->excludes(diag);
  auto* dot = graph_command("emit-dot", "Graphviz rendering");
  auto* selfcheck = app.add_subcommand("selfcheck", "Property (R) versus canonical orderings over all small graphs");
  selfcheck->add_flag("--serial", serial, "Use the serial kernels");
  selfcheck->add_flag("--saturation", with_saturation, "Also run the saturation census");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  if (sub == verify && doubling.empty() && !diagonal) {
    err << "verify-action needs --doubling e1 e2 or --diagonal\nRun with --help for more information.\n";
    return 2;
  }
  const auto start = std::chrono::steady_clock::now();
  std::string digest_source = join(args, "\x1f");
  Outcome o;
  std::optional<DirectedMultigraph> g;  // outlives the handlers below: LinComb keeps a pointer to it
  try {
    if (sub->get_option_no_throw("graph")) {
      const std::string text = read_file(file);
      digest_source = text;
      g = parse_graph(text);
    }
    SaturateOptions options = SaturateOptions::from_environment();
    options.antipode = !no_antipode;
    if (selector_cap) options.selector_cap = *selector_cap;

    if (sub == check_r) o = cmd_check_r(*g);
    else if (sub == order) o = cmd_order(*g);
    else if (sub == cert) o = cmd_certify(*g, options, trace);
    else if (sub == classify) o = cmd_classify(*g, options, trace);
    else if (sub == nf) o = cmd_nf(*g, word, nf_cap);
    else if (sub == dim) o = cmd_dim(*g);
    else if (sub == family) o = cmd_family(family_name, family_params);
    else if (sub == verify) o = cmd_verify_action(*g, doubling);
    else if (sub == dot) o = cmd_emit_dot(*g);
    else if (sub == selfcheck) o = cmd_selfcheck(serial, with_saturation);
  } catch (const ParseError& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return 1;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\npartial: " << format_lincomb(e.partial()) << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (json) {
    Json report;
    report["command"] = sub->get_name();
    report["arguments"] = args;
    report["input_digest"] = hex_digest(digest_source);
    report["result"] = o.result;
    report["derivation"] = o.derivation;
    report["timing_ms"] = ms;
    out << report.dump(2) << "\n";
  } else {
    out << o.text;
  }
  return o.code;
}

}  // namespace qsym
