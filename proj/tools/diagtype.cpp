#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "diagtype/abfp.hpp"

using nlohmann::json;
using namespace diagtype;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string field = "f2";
  int max_degree = -1;
  int skeleton = 2;
  std::string coeff = "f2";
  std::string mem_budget;
  int threads = 0;
  std::string format;
  bool quiet = false;
};

bool g_quiet = false;

void progress(const std::string& msg) {
  if (!g_quiet) std::cerr << "diagtype: " << msg << '\n';
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

// Accepts plain bytes or a K/M/G suffix (powers of 1024).
std::size_t parse_bytes(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw InputError("bad memory budget '" + text + "'");
  }
  std::string suffix = text.substr(pos);
  unsigned shift = 0;
  if (suffix == "K" || suffix == "k") shift = 10;
  else if (suffix == "M" || suffix == "m") shift = 20;
  else if (suffix == "G" || suffix == "g") shift = 30;
  else if (!suffix.empty()) throw InputError("bad memory budget suffix '" + suffix + "'");
  if (v == 0) throw InputError("memory budget must be positive");
  return static_cast<std::size_t>(v) << shift;
}

struct LoadedGraph {
  Graph graph;
  std::string source;
  std::string content;
};

LoadedGraph load_graph(const std::string& arg) {
  LoadedGraph out;
  out.source = arg;
  try {
    if (arg == "-") {
      out.content.assign(std::istreambuf_iterator<char>(std::cin), {});
      out.graph = parse_graph(out.content);
      return out;
    }
    std::ifstream in(arg);
    if (in) {
      out.content.assign(std::istreambuf_iterator<char>(in), {});
      out.graph = parse_graph(out.content);
      return out;
    }
    out.content = arg;
    out.graph = named_graph(arg);
  } catch (const std::exception& e) {
    throw InputError("cannot read graph '" + arg + "': " + e.what());
  }
  return out;
}

void require_connected(const Graph& g) {
  if (!g.connected()) throw InputError("graph is disconnected; run each component separately");
}

json config_json(const RunConfig& c, const linalg::RankOptions& rank) {
  return {{"field", c.field},
          {"max_degree", c.max_degree},
          {"skeleton", c.skeleton},
          {"coeff", c.coeff},
          {"mem_budget", rank.memory_budget_bytes},
          {"threads", c.threads},
          {"seed", rank.seed}};
}

void stamp(json& j, const RunConfig& c, const linalg::RankOptions& rank, const LoadedGraph& in) {
  j["config"] = config_json(c, rank);
  j["input"] = {{"source", in.source}, {"hash", "fnv1a64:" + hex64(fnv1a(in.content))}};
}

Field parse_field(const std::string& f) {
  if (f == "q") return Field::Q;
  if (f == "f2") return Field::GF2;
  throw InputError("unknown field '" + f + "'");
}

Coefficients parse_coeff(const std::string& c) {
  if (c == "z") return Coefficients::Z;
  if (c == "q") return Coefficients::Q;
  if (c == "f2") return Coefficients::GF2;
  throw InputError("unknown coefficients '" + c + "'");
}

void emit(const json& j, const std::string& format) {
  if (format == "text") {
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

int cmd_recognize(const RunConfig& c, const linalg::RankOptions& rank, const std::string& input) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  json j;
  j["graph"] = json::parse(to_json(in.graph));
  const auto r = recognize_indifference(in.graph);
  if (const auto* cert = std::get_if<IndifferenceCertificate>(&r)) {
    j["indifference"] = true;
    j["ordering"] = cert->ordering;
    j["h"] = cert->h;
  } else {
    const auto& w = std::get<ForbiddenWitness>(r);
    j["indifference"] = false;
    j["witness"] = {{"kind", kind_name(w)}, {"vertices", w.vertices}};
  }
  stamp(j, c, rank, in);
  emit(j, c.format);
  return 0;
}

FormalityOptions formality_options(const RunConfig& c, const linalg::RankOptions& rank) {
  FormalityOptions o;
  o.gkm.rank = rank;
  o.homology.rank = rank;
  o.homology.smith.threads = c.threads;
  o.skeleton_rank = c.skeleton;
  return o;
}

int cmd_formality(const RunConfig& c, const linalg::RankOptions& rank, const std::string& input) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  progress("formality on " + std::to_string(in.graph.n()) + " vertices, " + std::to_string(in.graph.edge_count()) + " edges");
  const auto report = formality_report(in.graph, formality_options(c, rank));
  for (const auto& line : report.log) progress(line);
  auto j = json::parse(report_to_json(in.graph, report));
  j["verified"] = verify_report(in.graph, report);
  stamp(j, c, rank, in);
  if (c.format == "text") {
    std::cout << "verdict: " << j["verdict"].get<std::string>() << '\n';
    if (j.contains("evidence")) {
      std::cout << "evidence: " << j["evidence"]["kind"].get<std::string>() << " on "
                << j["evidence"]["witness_kind"].get<std::string>() << ' ' << j["evidence"]["witness_vertices"].dump()
                << '\n'
                << "numbers: " << j["evidence"]["numbers"].dump() << '\n';
    }
    if (report.B) std::cout << "B(t) = " << report.B->to_string() << '\n';
    if (report.A) std::cout << "A(t) = " << report.A->to_string() << '\n';
  } else {
    emit(j, c.format);
  }
  return report.verdict == Verdict::Undetermined ? kExitBudget : 0;
}

int cmd_batch(const RunConfig& c, int max_n) {
  if (max_n < 1 || max_n > 8) throw InputError("batch-hessenberg supports 1 <= n <= 8");
  const std::string format = c.format.empty() ? "csv" : c.format;
  json rows = json::array();
  if (format == "csv") std::cout << "n,h,edges,B,A\n";
  for (int n = 1; n <= max_n; ++n) {
    progress("n = " + std::to_string(n));
    for (const auto& h : hessenberg_classes(n)) {
      const auto g = hessenberg_to_graph(h);
      const auto b = betti_polynomial_hessenberg(h);
      const auto a = compute_A(g);
      if (format == "csv") {
        std::cout << n << ",\"" << format_hessenberg(h) << "\"," << g.edge_count() << ",\"" << b.to_string() << "\",\""
                  << a.to_string() << "\"\n";
      } else {
        rows.push_back({{"n", n}, {"h", h}, {"edges", g.edge_count()}, {"B", b.to_longs()}, {"A", a.to_longs()}});
      }
    }
  }
  if (format != "csv") emit(json{{"graphs", rows}}, format == "text" ? "json" : format);
  return 0;
}

int cmd_clusterperm(const RunConfig& c, const linalg::RankOptions& rank, const std::string& input, const std::string& which) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  const auto coeff = parse_coeff(c.coeff);
  GradedPoset poset;
  if (which == "cl") {
    progress("building cluster permutohedron");
    poset = cluster_permutohedron(in.graph).poset;
  } else if (which == "gr") {
    progress("building graphicahedron");
    poset = graphicahedron(in.graph).poset;
  } else {
    throw InputError("unknown poset '" + which + "'");
  }
  json j;
  j["graph"] = json::parse(to_json(in.graph));
  j["poset"] = which;
  j["elements"] = poset.size();
  std::vector<std::size_t> per_rank;
  for (int r = 0; r <= poset.max_rank(); ++r) per_rank.push_back(poset.count_at_rank(r));
  j["elements_by_rank"] = per_rank;
  if (c.skeleton >= 0) {
    const auto sk = skeleton(poset, c.skeleton);
    progress("order complex of the rank-" + std::to_string(c.skeleton) + " skeleton (" + std::to_string(sk.poset.size()) +
             " elements)");
    const auto oc = order_complex(sk.poset);
    std::vector<std::size_t> faces;
    for (int d = 0; d <= oc.dimension(); ++d) faces.push_back(oc.face_count(d));
    HomologyOptions ho;
    ho.rank = rank;
    ho.smith.threads = c.threads;
    json h;
    h["skeleton"] = c.skeleton;
    h["faces"] = faces;
    h["coeff"] = coefficient_name(coeff);
    h["reduced"] = true;
    if (coeff == Coefficients::Z) {
      json groups = json::array();
      for (const auto& g : integral_homology(oc, ho)) {
        std::vector<std::string> torsion;
        for (const auto& t : g.torsion) torsion.push_back(t.get_str());
        groups.push_back({{"rank", g.rank}, {"torsion", torsion}});
      }
      h["groups"] = groups;
    } else {
      h["betti"] = reduced_betti(oc, coeff, ho);
    }
    h["euler"] = oc.euler_characteristic() - 1;
    j["homology"] = h;
  }
  stamp(j, c, rank, in);
  emit(j, c.format);
  return 0;
}

int cmd_gkm(const RunConfig& c, const linalg::RankOptions& rank, const std::string& input, bool total) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  GkmOptions o;
  o.rank = rank;
  const auto field = parse_field(c.field);
  json j;
  if (total) {
    progress("GKM total Betti number up to degree ceil(|E|/2)");
    const auto t = gkm_total_betti(in.graph, field, o);
    j = json::parse(gkm_report_json(t.report));
    j["determined"] = t.determined;
    if (t.determined) j["total"] = t.total;
    if (!t.reason.empty()) j["reason"] = t.reason;
  } else {
    const int deg = c.max_degree >= 0 ? c.max_degree : 2;
    progress("GKM kernels up to degree " + std::to_string(deg));
    j = json::parse(gkm_report_json(gkm_betti_report(in.graph, field, deg, o)));
  }
  j["graph"] = json::parse(to_json(in.graph));
  stamp(j, c, rank, in);
  emit(j, c.format);
  return total && !j["determined"].get<bool>() ? kExitBudget : 0;
}

int cmd_adi(const RunConfig& c, const linalg::RankOptions& rank, const std::string& input) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  const auto r = adi(in.graph);
  json added = json::array();
  for (const auto& [a, b] : r.added) added.push_back({a, b});
  json j{{"graph", json::parse(to_json(in.graph))}, {"adi", r.count}, {"added_edges", added}};
  if (const auto gi = girth(in.graph)) j["girth"] = *gi;
  stamp(j, c, rank, in);
  emit(j, c.format);
  return 0;
}

int cmd_export_dot(const RunConfig& c, const std::string& input, const std::string& what) {
  const auto in = load_graph(input);
  require_connected(in.graph);
  if (what == "gkm") {
    std::cout << gkm_to_dot(build_gkm_graph(in.graph));
  } else if (what == "cl" || what == "gr") {
    auto poset = what == "cl" ? cluster_permutohedron(in.graph).poset : graphicahedron(in.graph).poset;
    if (c.skeleton >= 0) poset = skeleton(poset, c.skeleton).poset;
    if (c.format == "json") {
      std::cout << poset_to_json(poset) << '\n';
    } else {
      std::cout << poset_to_dot(poset, what);
    }
  } else {
    throw InputError("unknown export target '" + what + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonalizability type of sparsity patterns: recognition, cluster permutohedra, GKM and ABFP tests"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--mem-budget", cfg.mem_budget, "Memory budget in bytes, K/M/G suffix allowed (env DIAGTYPE_MEM_BUDGET)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text", "dot", "csv"}));
  app.add_flag("--quiet", cfg.quiet, "No progress on stderr");

  std::string input;
  auto* rec = app.add_subcommand("recognize", "Indifference certificate or forbidden induced subgraph");
  rec->add_option("graph", input, "Graph file (JSON or text), '-' for stdin, or a name like net, cycle(5)")->required();

  auto* form = app.add_subcommand("formality", "Equivariant formality verdict with evidence");
  form->add_option("graph", input)->required();
  form->add_option("--skeleton", cfg.skeleton, "Skeleton rank for the homology test")->check(CLI::PositiveNumber);

  int max_n = 5;
  auto* batch = app.add_subcommand("batch-hessenberg", "B and A for all connected indifference graphs up to n vertices");
  batch->add_option("--max-n", max_n, "Largest vertex count")->check(CLI::Range(1, 8));

  std::string poset_kind = "cl";
  auto* cp = app.add_subcommand("clusterperm", "Cluster permutohedron or graphicahedron with skeleton homology");
  cp->add_option("graph", input)->required();
  cp->add_option("--poset", poset_kind, "cl or gr")->check(CLI::IsMember({"cl", "gr"}));
  cp->add_option("--skeleton", cfg.skeleton, "Skeleton rank; -1 skips homology");
  cp->add_option("--coeff", cfg.coeff, "Coefficients")->check(CLI::IsMember({"z", "q", "f2"}));

  bool total = false;
  auto* gk = app.add_subcommand("gkm", "GKM kernel dimensions and ordinary Betti numbers");
  gk->add_option("graph", input)->required();
  gk->add_option("--field", cfg.field, "q or f2")->check(CLI::IsMember({"q", "f2"}));
  gk->add_option("--max-degree", cfg.max_degree, "Largest degree i of L_i")->check(CLI::NonNegativeNumber);
  gk->add_flag("--total", total, "Run through half the dimension and complete by duality");

  auto* ad = app.add_subcommand("adi", "Fewest added edges giving an indifference graph");
  ad->add_option("graph", input)->required();

  std::string what = "cl";
  auto* dot = app.add_subcommand("export-dot", "Graphviz export of a poset or the GKM graph");
  dot->add_option("graph", input)->required();
  dot->add_option("--what", what, "cl, gr or gkm")->check(CLI::IsMember({"cl", "gr", "gkm"}));
  dot->add_option("--skeleton", cfg.skeleton, "Restrict posets to ranks <= R; -1 keeps all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  g_quiet = cfg.quiet;

  try {
    linalg::RankOptions rank;
    std::string budget = cfg.mem_budget;
    if (budget.empty()) {
      if (const char* env = std::getenv("DIAGTYPE_MEM_BUDGET")) budget = env;
    }
    if (!budget.empty()) rank.memory_budget_bytes = parse_bytes(budget);
    rank.threads = cfg.threads;
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    if (rec->parsed()) return cmd_recognize(cfg, rank, input);
    if (form->parsed()) return cmd_formality(cfg, rank, input);
    if (batch->parsed()) return cmd_batch(cfg, max_n);
    if (cp->parsed()) return cmd_clusterperm(cfg, rank, input, poset_kind);
    if (gk->parsed()) return cmd_gkm(cfg, rank, input, total);
    if (ad->parsed()) return cmd_adi(cfg, rank, input);
    if (dot->parsed()) return cmd_export_dot(cfg, input, what);
  } catch (const InputError& e) {
    std::cerr << "diagtype: " << e.what() << '\n';
    return kExitInput;
  } catch (const ComputationError& e) {
    std::cerr << "diagtype: out of budget: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "diagtype: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
