// sfc: sample scale-free degree sequences, realize them, and measure clustering.
//
// Exit codes: 0 success, 1 domain error (name printed on stderr), 2 usage error.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "sfc/clustering.hpp"
#include "sfc/constructors.hpp"
#include "sfc/error.hpp"
#include "sfc/experiments.hpp"
#include "sfc/graph_io.hpp"
#include "sfc/realizability.hpp"

namespace {

using namespace sfc;

struct DistributionFlags {
  double gamma = 0.0;
  std::string L = "const:1";
  Degree min_degree = 1;
};

void add_distribution_flags(CLI::App* cmd, DistributionFlags& flags, bool gamma_required) {
  auto* g = cmd->add_option("--gamma", flags.gamma, "tail index gamma (> 1)");
  if (gamma_required) g->required();
  cmd->add_option("--L", flags.L, "slowly varying part: const:<c> | log:<c>,<p>[,<shift>] | table:<path>")
      ->capture_default_str();
  cmd->add_option("--min-degree", flags.min_degree, "smallest degree with positive mass")
      ->capture_default_str();
}

DegreeDistribution distribution_from(const DistributionFlags& flags) {
  return make_distribution(flags.gamma, parse_slowly_varying(flags.L), flags.min_degree);
}

int cmd_sample(const DistributionFlags& dist_flags, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  const auto dist = distribution_from(dist_flags);
  if (!dist.in_construction_range()) {
    std::cerr << "warning: gamma >= 2 lies outside the construction range\n";
  }
  const auto seq = sample_degrees(dist, n, seed);
  save_degrees(seq, out_path);
  fmt::print("n={} sum={} xi_max={}\n", seq.size(), seq.sum(), max_degree(seq.degrees));
  return 0;
}

int cmd_check(const std::string& degrees_path, std::optional<std::size_t> clique_size) {
  const auto seq = load_degrees(degrees_path);
  const auto sorted = sorted_non_increasing(seq.degrees);
  const auto verdict = clique_size ? clique_collapsed_feasibility(sorted, *clique_size)
                                   : erdos_gallai(sorted);
  if (verdict.graphical) {
    std::cout << "graphical\n";
  } else if (verdict.violated_k) {
    std::cout << "not-graphical k=" << *verdict.violated_k << "\n";
  } else {
    std::cout << "not-graphical parity\n";
  }
  return 0;
}

struct ConstructFlags {
  std::string degrees;
  std::string method = "havel-hakimi";
  DistributionFlags dist;
  double eps = kDefaultEps;
  double delta = kDefaultDelta;
  std::uint64_t seed = 0;
  bool randomize_remainder = false;
  std::string out;
};

int cmd_construct(const ConstructFlags& f, CLI::App* cmd) {
  auto seq = load_degrees(f.degrees);
  seq.seed = f.seed;
  const bool have_gamma = cmd->count("--gamma") > 0;

  if (f.method == "havel-hakimi") {
    const auto g = havel_hakimi(seq.degrees);
    save_graph(g, f.out);
    fmt::print("method=havel-hakimi n={} m={}\n", g.num_vertices(), g.num_edges());
    return 0;
  }
  if (f.method == "clique") {
    if (!have_gamma) throw CLI::RequiredError("--gamma (clique method)");
    const auto plan = plan_clique_construction(seq, f.dist.gamma, f.delta);
    const auto built = build_max_clustering_simple(seq, plan);
    save_graph(built.graph, f.out);
    fmt::print("method=clique n={} m={} threshold={:.6g} clique={} repairs={}\n",
               built.graph.num_vertices(), built.graph.num_edges(), plan.threshold,
               plan.clique_vertices.size(), built.repairs);
    return 0;
  }
  if (f.method == "multigraph") {
    if (!have_gamma) throw CLI::RequiredError("--gamma (multigraph method)");
    const auto dist = distribution_from(f.dist);
    MultigraphOptions options;
    options.eps = f.eps;
    options.randomize_remainder = f.randomize_remainder;
    options.seed = f.seed;
    const auto built = build_constant_clustering_multigraph(seq, dist, options);
    save_graph(built.graph, f.out);
    fmt::print("method=multigraph n={} pairs={} edges={} x0={} clique={} escape_edges={}\n",
               built.graph.num_vertices(), built.graph.num_pairs(), built.graph.num_edges(),
               built.certificate.x0, built.clique_vertices.size(), built.escape_edges);
    return 0;
  }
  if (f.method == "baseline-multigraph" || f.method == "baseline-erased") {
    const bool erased = f.method == "baseline-erased";
    const auto built = build_stub_matching_baseline(
        seq, f.seed, erased ? BaselineMode::ErasedSimple : BaselineMode::MultigraphNoLoops);
    if (erased) {
      save_graph(built.graph.support(), f.out);
    } else {
      save_graph(built.graph, f.out);
    }
    fmt::print("method={} n={} pairs={} redraws={} erased_loops={} erased_multi={}\n", f.method,
               built.graph.num_vertices(), built.graph.num_pairs(), built.redraws,
               built.erased_loops, built.erased_multi);
    return 0;
  }
  throw CLI::ValidationError("--method", "unknown method '" + f.method + "'");
}

int cmd_clustering(const std::string& graph_path, const std::vector<std::string>& weighted) {
  std::vector<TripletValueDef> defs;
  for (const auto& name : weighted) {
    const auto def = parse_triplet_def(name);
    if (!def) throw CLI::ValidationError("--weighted", "unknown definition '" + name + "'");
    defs.push_back(*def);
  }
  const auto any = load_graph(graph_path);
  const MultiGraph multi = std::holds_alternative<MultiGraph>(any)
                               ? std::get<MultiGraph>(any)
                               : MultiGraph::from_simple(std::get<SimpleGraph>(any));
  const SimpleGraph simple = std::holds_alternative<SimpleGraph>(any)
                                 ? std::get<SimpleGraph>(any)
                                 : multi.support();
  const auto report = clustering_report(simple);
  std::string header = "n,m,triangles,wedges,c1,c2";
  std::string row = fmt::format("{},{},{},{},{:.10g},{:.10g}", report.n, report.m,
                                report.triangles, report.wedges, report.global,
                                report.average_local);
  for (const auto def : defs) {
    header += fmt::format(",c1w_{}", to_string(def));
    row += fmt::format(",{:.10g}", weighted_global_clustering(multi, def));
  }
  std::cout << header << "\n" << row << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   std::optional<std::size_t> threads) {
  auto config = load_config(config_path);
  if (threads) config.threads = *threads;
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + out_path);
  write_result_csv_header(out);
  const auto result = run_experiment(config, [&](const ExperimentRow& row) {
    write_result_csv_row(out, row);
    out.flush();
  });
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + out_path);

  const std::string report_path = out_path + ".report.csv";
  std::ofstream report(report_path);
  if (!report) throw Error(ErrorCode::IoError, "cannot write " + report_path);
  write_compare_report(report, result, config);

  std::size_t ok = 0;
  for (const auto& row : result.rows) ok += row.ok() ? 1 : 0;
  fmt::print("rows={} ok={} failed={} report={}\n", result.rows.size(), ok,
             result.rows.size() - ok, report_path);
  return 0;
}

int cmd_predict(double gamma) {
  const auto p = predicted_values(gamma);
  fmt::print("c1_exponent={:.6f}\ntriangle_exponent={:.6f}\nwedge_exponent={:.6f}\n"
             "ximax_exponent={:.6f}\nmultigraph_constant={:.6f}\n",
             p.c1_exponent, p.triangle_exponent, p.wedge_exponent, p.ximax_exponent,
             p.multigraph_constant);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-free degree sequences, extremal constructions and clustering"};
  app.require_subcommand(1);

  DistributionFlags sample_dist;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "sample an i.i.d. degree sequence");
  add_distribution_flags(sample, sample_dist, true);
  sample->add_option("--n", sample_n, "number of vertices")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "RNG seed")->required();
  sample->add_option("--out", sample_out, "degree file to write")->required();

  std::string check_degrees;
  std::optional<std::size_t> check_clique;
  auto* check = app.add_subcommand("check", "Erdos-Gallai or clique-collapsed feasibility");
  check->add_option("--degrees", check_degrees, "degree file")->required();
  check->add_option("--clique-size", check_clique, "test a clique on the top k vertices");

  ConstructFlags realize_flags;
  ConstructFlags construct_flags;
  std::vector<std::pair<CLI::App*, ConstructFlags*>> builders;
  for (const auto& [name, flags] :
       {std::pair{"realize", &realize_flags}, std::pair{"construct", &construct_flags}}) {
    auto* cmd = app.add_subcommand(name, "build a graph from a degree file");
    cmd->add_option("--degrees", flags->degrees, "degree file")->required();
    cmd->add_option("--method", flags->method,
                    "havel-hakimi | clique | multigraph | baseline-multigraph | baseline-erased")
        ->capture_default_str();
    add_distribution_flags(cmd, flags->dist, false);
    cmd->add_option("--eps", flags->eps, "x0 window slack (multigraph)")->capture_default_str();
    cmd->add_option("--delta", flags->delta, "threshold exponent slack (clique)")
        ->capture_default_str();
    cmd->add_option("--seed", flags->seed, "RNG seed for randomized steps")->capture_default_str();
    cmd->add_flag("--randomize-remainder", flags->randomize_remainder,
                  "random stub matching outside the multigraph clique");
    cmd->add_option("--out", flags->out, "edge-list file to write")->required();
    builders.emplace_back(cmd, flags);
  }

  std::string clustering_graph;
  std::vector<std::string> clustering_weighted;
  auto* clustering = app.add_subcommand("clustering", "triangles, wedges and clustering");
  clustering->add_option("--graph", clustering_graph, "edge-list file")->required();
  clustering->add_option("--weighted", clustering_weighted,
                         "weighted C1 definitions: arithmetic,geometric,minimum,maximum,product")
      ->delimiter(',');

  std::string experiment_config, experiment_out;
  std::optional<std::size_t> experiment_threads;
  auto* experiment = app.add_subcommand("experiment", "run a (gamma, n, seed) sweep");
  experiment->add_option("--config", experiment_config, "config file")->required();
  experiment->add_option("--out", experiment_out, "result CSV (report goes to <out>.report.csv)")
      ->required();
  experiment->add_option("--threads", experiment_threads, "override the config's thread count");

  double predict_gamma = 0.0;
  auto* predict = app.add_subcommand("predict", "predicted exponents and constants");
  predict->add_option("--gamma", predict_gamma, "tail index in (1, 2)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) return cmd_sample(sample_dist, sample_n, sample_seed, sample_out);
    if (*check) return cmd_check(check_degrees, check_clique);
    for (const auto& [cmd, flags] : builders) {
      if (*cmd) return cmd_construct(*flags, cmd);
    }
    if (*clustering) return cmd_clustering(clustering_graph, clustering_weighted);
    if (*experiment) return cmd_experiment(experiment_config, experiment_out, experiment_threads);
    if (*predict) return cmd_predict(predict_gamma);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}
