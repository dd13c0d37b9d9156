#include "cli.hpp"

#include "report.hpp"

#include <hrg/canonical.hpp>
#include <hrg/dsl.hpp>
#include <hrg/exhaustive_sets.hpp>
#include <hrg/operator.hpp>
#include <hrg/periodicity.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace hrg {

namespace {

using report::json;

struct Outcome {
  json body;
  int code = 0;
};

// Input problems that are not parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  unsigned bound = 6;
  unsigned depth = 16;
  unsigned iterates = 20;
  std::string mode = "all-n";
  std::string exhaustive_file;
  std::string file;
  // per command
  std::string degree, vertex, mu, nu, F;
  std::vector<std::string> paths, candidates;
  bool row_finite = false, semibranching = false, canonical = false;
};

bool is_bs(const std::string& file) { return std::filesystem::path(file).extension() == ".bs"; }

KGraph load_graph(const std::string& file) {
  return is_bs(file) ? parse_bs_file(file).graph : parse_graph_file(file);
}

IntervalBranchingSystem load_bs(const std::string& file) {
  if (!is_bs(file)) throw UsageError(file + ": expected a branching-system (.bs) file");
  return parse_bs_file(file);
}

std::vector<ExhaustiveSet> extra_sets(const Options& o, const KGraph& g) {
  if (o.exhaustive_file.empty()) return {};
  return parse_exhaustive_text(read_file(o.exhaustive_file), g, o.exhaustive_file);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad " + what + " '" + s + "'");
}

json names(const KGraph& g, const std::vector<Path>& ps) {
  json out = json::array();
  for (auto& p : ps) out.push_back(g.path_name(p));
  return out;
}

Outcome cmd_validate(const Options& o) {
  KGraph g = load_graph(o.file);
  auto r = validate_kgraph(g);
  return {report::validation(g, r), r.valid ? 0 : 1};
}

Outcome cmd_paths(const Options& o) {
  KGraph g = load_graph(o.file);
  std::vector<unsigned> c;
  for (auto& part : split(o.degree, ',')) {
    long v = parse_long(part, "degree entry");
    if (v < 0) throw UsageError("negative degree entry '" + part + "'");
    c.push_back(static_cast<unsigned>(v));
  }
  if (c.size() != static_cast<std::size_t>(g.rank()))
    throw UsageError("degree '" + o.degree + "' does not have " + std::to_string(g.rank()) + " entries");
  Degree d(c);
  json paths = json::object();
  std::size_t count = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!o.vertex.empty() && g.vertex_name(v) != o.vertex) continue;
    auto ps = enumerate_paths(g, v, d);
    count += ps.size();
    paths[g.vertex_name(v)] = names(g, ps);
  }
  if (!o.vertex.empty() && !g.find_vertex(o.vertex)) throw UsageError("unknown vertex '" + o.vertex + "'");
  return {{{"degree", d.to_string()}, {"count", count}, {"paths", paths}}, 0};
}

Outcome cmd_lmin(const Options& o) {
  KGraph g = load_graph(o.file);
  Path mu = g.parse_path(o.mu), nu = g.parse_path(o.nu);
  json pairs = json::array();
  for (auto& [a, b] : lambda_min(g, mu, nu)) pairs.push_back({g.path_name(a), g.path_name(b)});
  return {{{"mu", g.path_name(mu)}, {"nu", g.path_name(nu)}, {"pairs", pairs}}, 0};
}

Outcome cmd_exhaustive(const Options& o) {
  KGraph g = load_graph(o.file);
  auto v = g.find_vertex(o.vertex);
  if (!v) throw UsageError("unknown vertex '" + o.vertex + "'");
  if (o.paths.empty()) {
    json sets = json::array();
    for (auto& s : minimal_exhaustive_edge_sets(g, *v)) {
      json edges = json::array();
      for (EdgeId e : s) edges.push_back(g.edge(e).name);
      sets.push_back(edges);
    }
    json body = {{"vertex", o.vertex}, {"minimal_sets", sets}};
    if (g.edges_into(*v).size() > kMaxEnumeratedEdges)
      body["warning"] = "more than " + std::to_string(kMaxEnumeratedEdges) + " edges at the vertex; not enumerated";
    return {body, 0};
  }
  std::vector<Path> E;
  for (auto& p : o.paths) E.push_back(g.parse_path(p));
  auto r = is_exhaustive(g, *v, E);
  json body = {{"vertex", o.vertex}, {"set", names(g, E)}, {"exhaustive", r.exhaustive}};
  if (r.witness) body["witness"] = g.path_name(*r.witness);
  return {body, r.exhaustive ? 0 : 1};
}

Outcome cmd_canonical_bs(const Options& o) {
  KGraph g = load_graph(o.file);
  auto cbs = canonical_bs(g, o.depth);
  CanonicalModel m(cbs);
  json domains = json::object(), ranges = json::object();
  for (VertexId v = 0; v < g.num_vertices(); ++v) domains[g.vertex_name(v)] = m.domain(v).to_string(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e) ranges[g.edge(e).name] = m.range(e).to_string(g);
  auto r = check_axioms(cbs, AxiomMode::FinitelyAligned);
  return {{{"depth", o.depth}, {"domains", domains}, {"ranges", ranges}, {"axioms", report::axioms(r)},
           {"passed", r.passed()}},
          r.passed() ? 0 : 1};
}

Outcome cmd_check_bs(const Options& o) {
  if (o.row_finite && o.semibranching) throw UsageError("--row-finite and --semibranching are exclusive");
  if (!is_bs(o.file)) {
    KGraph g = load_graph(o.file);
    auto r = check_axioms(canonical_bs(g, o.depth), o.row_finite ? AxiomMode::RowFinite : AxiomMode::FinitelyAligned);
    json body = report::axioms(r);
    body["system"] = "canonical";
    return {body, r.passed() ? 0 : 1};
  }
  auto bs = load_bs(o.file);
  for (auto& s : extra_sets(o, bs.graph)) bs.exhaustive.push_back(s);
  if (o.semibranching) {
    auto sb = to_semibranching(bs);
    auto r = check_semibranching(sb);
    bool round_trip = systems_equal(from_semibranching(sb), bs);
    json body = report::axioms(r);
    body["system"] = "interval";
    body["round_trip"] = round_trip;
    body["passed"] = r.passed() && round_trip;
    return {body, r.passed() && round_trip ? 0 : 1};
  }
  auto r = check_axioms(bs, o.row_finite ? AxiomMode::RowFinite : AxiomMode::FinitelyAligned);
  json body = report::axioms(r);
  body["system"] = "interval";
  return {body, r.passed() ? 0 : 1};
}

Outcome cmd_ck_verify(const Options& o) {
  if (is_bs(o.file) && !o.canonical) {
    auto bs = load_bs(o.file);
    auto declared = bs.exhaustive;
    for (auto& s : extra_sets(o, bs.graph)) declared.push_back(s);
    auto axioms = check_axioms(bs, AxiomMode::FinitelyAligned);
    auto r = verify_ck(build_generators_unchecked(bs), declared);
    json body = report::ck(r);
    body["system"] = "interval";
    body["axioms_passed"] = axioms.passed();
    return {body, r.passed() ? 0 : 1};
  }
  KGraph g = load_graph(o.file);
  auto cbs = canonical_bs(g, o.depth);
  auto r = verify_ck(build_generators(cbs), extra_sets(o, g));
  json body = report::ck(r);
  body["system"] = "canonical";
  body["depth"] = o.depth;
  return {body, r.passed() ? 0 : 1};
}

Outcome not_applicable(const NotApplicable& e) {
  return {{{"verdict", "not-applicable"}, {"periodic", false}, {"reason", e.what()}}, 1};
}

Outcome cmd_periodicity(const Options& o) {
  KGraph g = load_graph(o.file);
  try {
    auto r = detect_periodicity(g, o.bound);
    return {report::periodicity(g, r), 0};
  } catch (const NotApplicable& e) {
    return not_applicable(e);
  }
}

Outcome cmd_faithfulness(const Options& o) {
  auto bs = load_bs(o.file);
  PeriodicityResult pr;
  try {
    pr = detect_periodicity(bs.graph, o.bound);
  } catch (const NotApplicable& e) {
    return not_applicable(e);
  }
  if (!pr.periodic)
    return {{{"verdict", "aperiodic-up-to-bound"}, {"periodic", false}, {"bound", o.bound}, {"passed", false}}, 1};

  FaithfulnessRequest req;
  req.mode = o.mode == "bounded" ? FaithfulnessMode::Bounded : FaithfulnessMode::AllN;
  if (req.mode == FaithfulnessMode::Bounded) {
    for (auto& part : split(o.F, ',')) {
      long n = parse_long(part, "entry of F");
      if (n == 0) throw UsageError("F must not contain 0");
      req.F.push_back(n);
    }
    if (req.F.empty())
      for (long n = 1; n <= static_cast<long>(o.iterates); ++n) {
        req.F.push_back(n);
        req.F.push_back(-n);
      }
  }
  for (auto& c : o.candidates) {
    Box b = parse_box(c);
    if (b.dim() != bs.dim) throw UsageError("candidate '" + c + "' has the wrong dimension");
    req.candidates.push_back(b);
  }
  try {
    auto r = check_faithfulness(bs, pr, req);
    json body = report::faithfulness(bs, r, o.iterates);
    body["periodicity"] = report::periodicity(bs.graph, pr);
    body["mode"] = o.mode;
    return {body, body["passed"].get<bool>() ? 0 : 1};
  } catch (const FaithfulnessError& e) {
    return {{{"passed", false}, {"mode", o.mode}, {"error", e.what()}}, 1};
  }
}

Outcome cmd_w_unitary(const Options& o) {
  try {
    WUnitaryReport r;
    json body;
    if (is_bs(o.file)) {
      auto bs = load_bs(o.file);
      auto pr = detect_periodicity(bs.graph, o.bound);
      r = verify_w_unitary(bs, pr);
      body = report::unitary(r);
      body["periodicity"] = report::periodicity(bs.graph, pr);
      body["system"] = "interval";
    } else {
      KGraph g = load_graph(o.file);
      auto pr = detect_periodicity(g, o.bound);
      r = verify_w_unitary(canonical_bs(g, o.depth), pr);
      body = report::unitary(r);
      body["periodicity"] = report::periodicity(g, pr);
      body["system"] = "canonical";
    }
    return {body, r.unitary ? 0 : 1};
  } catch (const NotApplicable& e) {
    return not_applicable(e);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-rank graphs, branching systems and their representations", "hrg"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print a JSON report");
  app.add_option("--bound", o.bound, "Periodicity search bound")->check(CLI::Range(1u, 64u));
  app.add_option("--depth", o.depth, "Cylinder refinement depth cap")->check(CLI::Range(1u, 64u));
  app.add_option("--mode", o.mode, "Faithfulness certificate kind")->check(CLI::IsMember({"bounded", "all-n"}));
  app.add_option("--exhaustive", o.exhaustive_file, "Extra exhaustive sets, one 'v: e1 e2' per line")
      ->check(CLI::ExistingFile);

  auto file = [&](CLI::App* sub) { sub->add_option("FILE", o.file, "Graph (.kg) or system (.bs)")->required(); };

  auto* validate = app.add_subcommand("validate", "Check factorization rules");
  file(validate);
  auto* paths = app.add_subcommand("paths", "Enumerate paths of one degree");
  file(paths);
  paths->add_option("--degree", o.degree, "Degree, e.g. 1,0")->required();
  paths->add_option("--vertex", o.vertex, "Only paths with this range");
  auto* lmin = app.add_subcommand("lmin", "Minimal common extensions");
  file(lmin);
  lmin->add_option("MU", o.mu)->required();
  lmin->add_option("NU", o.nu)->required();
  auto* exhaustive = app.add_subcommand("exhaustive", "Test a set, or list minimal exhaustive edge sets");
  file(exhaustive);
  exhaustive->add_option("VERTEX", o.vertex)->required();
  exhaustive->add_option("PATHS", o.paths);
  auto* canonical = app.add_subcommand("canonical-bs", "Boundary-path branching system");
  file(canonical);
  auto* check_bs = app.add_subcommand("check-bs", "Branching-system conditions (1)-(7)");
  file(check_bs);
  check_bs->add_flag("--row-finite", o.row_finite, "Use the row-finite definition");
  check_bs->add_flag("--semibranching", o.semibranching, "Check the partial semibranching system");
  auto* ck = app.add_subcommand("ck-verify", "Cuntz-Krieger relations for the induced operators");
  file(ck);
  ck->add_flag("--canonical", o.canonical, "Use the boundary-path system of the graph");
  auto* periodicity = app.add_subcommand("periodicity", "Periodicity of a single-vertex 2-graph");
  file(periodicity);
  auto* faith = app.add_subcommand("faithfulness", "Faithfulness certificate for a periodic system");
  file(faith);
  faith->add_option("--F", o.F, "Bounded mode: comma-separated nonzero n");
  faith->add_option("--candidate", o.candidates, "Box tried before the generated ones");
  faith->add_option("--iterates", o.iterates, "Confirm disjointness for 1 <= |n| <= N")->check(CLI::Range(1u, 200u));
  auto* w = app.add_subcommand("w-unitary", "W*W = WW* = S_v");
  file(w);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Outcome r;
  try {
    if (name == "validate") r = cmd_validate(o);
    else if (name == "paths") r = cmd_paths(o);
    else if (name == "lmin") r = cmd_lmin(o);
    else if (name == "exhaustive") r = cmd_exhaustive(o);
    else if (name == "canonical-bs") r = cmd_canonical_bs(o);
    else if (name == "check-bs") r = cmd_check_bs(o);
    else if (name == "ck-verify") r = cmd_ck_verify(o);
    else if (name == "periodicity") r = cmd_periodicity(o);
    else if (name == "faithfulness") r = cmd_faithfulness(o);
    else r = cmd_w_unitary(o);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    // A graph that cannot be built fails the factorization conditions.
    r = {{{"passed", false}, {"error", e.what()}}, 1};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PathError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ModeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.json) {
    r.body["schema"] = 1;
    r.body["command"] = name;
    r.body["file"] = o.file;
    out << r.body.dump(2) << "\n";
  } else {
    out << name << " " << o.file << "\n" << report::text(r.body);
  }
  return r.code;
}

}  // namespace hrg
