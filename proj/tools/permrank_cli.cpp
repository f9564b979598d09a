// Command-line front end: simulate, sweep, diagnose, slope, topology.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "permrank/diagnostics.hpp"
#include "permrank/graph.hpp"
#include "permrank/harness.hpp"

using namespace permrank;

namespace {

struct SpecFlags {
  std::string graph = "two_cliques";
  std::size_t n = 0;
  std::string n_list;
  std::string model = "ns";
  double lambda = 0.4;
  std::string estimator = "asp";
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string mode = "bernoulli";
  double alpha = 1.0;
  double p = 0.5;
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--graph", f.graph, "graph family");
  cmd->add_option("--n", f.n, "single vertex count");
  cmd->add_option("--n-list", f.n_list, "comma-separated vertex counts");
  cmd->add_option("--model", f.model, "ns|sst");
  cmd->add_option("--lambda", f.lambda, "noisy sorting lambda");
  cmd->add_option("--estimator", f.estimator, "asp|bap|bap1");
  cmd->add_option("--trials", f.trials, "trials per n");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--mode", f.mode, "bernoulli|expectation");
  cmd->add_option("--alpha", f.alpha, "regular_bipartite exponent");
  cmd->add_option("--p", f.p, "erdos_renyi edge probability");
}

ExperimentSpec spec_from_flags(const SpecFlags& f) {
  ExperimentSpec spec;
  spec.family = parse_family(f.graph);
  if (!f.n_list.empty()) {
    spec.n_values = parse_n_list(f.n_list);
  } else if (f.n > 0) {
    spec.n_values = {f.n};
  }
  spec.model = parse_model(f.model);
  spec.lambda = f.lambda;
  spec.estimator = parse_estimator(f.estimator);
  spec.trials = f.trials;
  spec.master_seed = f.seed;
  spec.mode = parse_mode(f.mode);
  spec.params.alpha = f.alpha;
  spec.params.p = f.p;
  spec.validate();
  return spec;
}

Graph graph_from_flags(const SpecFlags& f) {
  ExperimentSpec spec = spec_from_flags(SpecFlags{f.graph, f.n, "", "ns", 0.4, "asp", 1,
                                                  f.seed, "bernoulli", f.alpha, f.p});
  return build_graph(spec, f.n);
}

void print_means(std::ostream& out, const std::vector<TrialRecord>& records) {
  std::map<std::size_t, std::pair<double, std::size_t>> by_n;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    auto& cell = by_n[r.n];
    cell.first += *r.frob_err;
    ++cell.second;
  }
  for (const auto& [n, cell] : by_n) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "n=%zu mean_frob_err=%.6g (%zu trials)\n", n,
                  cell.first / static_cast<double>(cell.second), cell.second);
    out << buf;
  }
}

int emit_sweep(const ExperimentSpec& spec, unsigned threads, const std::string& out_path,
               bool timing) {
  const auto records = run_sweep(spec, threads);
  if (out_path.empty() || out_path == "-") {
    write_csv(std::cout, records, timing);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    write_csv(out, records, timing);
  }
  print_means(std::cerr, records);
  const auto footer = failure_summary(records);
  std::cerr << footer;
  return footer.empty() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation-based pairwise comparison estimation on fixed topologies"};
  app.require_subcommand(1);

  SpecFlags sim;
  std::string sim_out;
  unsigned sim_threads = 1;
  bool sim_timing = false;
  auto* simulate = app.add_subcommand("simulate", "run one experiment spec given by flags");
  add_spec_flags(simulate, sim);
  simulate->add_option("--out", sim_out, "CSV output path (default stdout)");
  simulate->add_option("--threads", sim_threads, "worker threads");
  simulate->add_flag("--timing", sim_timing, "fill the runtime_ms column");

  std::string config_path;
  std::string sweep_out;
  unsigned sweep_threads = 0;
  bool sweep_timing = false;
  auto* sweep = app.add_subcommand("sweep", "run an experiment described by a config file");
  sweep->add_option("--config", config_path, "key = value config file")->required();
  sweep->add_option("--out", sweep_out, "CSV output path (overrides config)");
  sweep->add_option("--threads", sweep_threads, "worker threads (overrides config)");
  sweep->add_flag("--timing", sweep_timing, "fill the runtime_ms column");

  SpecFlags diag;
  bool diag_json = false;
  auto* diagnose = app.add_subcommand("diagnose", "worst-case lower-bound report for a graph");
  diagnose->add_option("--graph", diag.graph, "graph family")->required();
  diagnose->add_option("--n", diag.n, "vertex count")->required();
  diagnose->add_option("--alpha", diag.alpha, "regular_bipartite exponent");
  diagnose->add_option("--p", diag.p, "erdos_renyi edge probability");
  diagnose->add_option("--seed", diag.seed, "seed for random families");
  diagnose->add_flag("--json", diag_json, "emit JSON instead of key = value");

  std::string slope_input;
  std::string slope_group = "graph,estimator,model";
  auto* slope = app.add_subcommand("slope", "fit log-log error slopes from a sweep CSV");
  slope->add_option("--input", slope_input, "sweep CSV")->required();
  slope->add_option("--group", slope_group, "grouping fields");

  SpecFlags topo;
  std::string topo_out;
  auto* topology = app.add_subcommand("topology", "write a graph as an edge list");
  topology->add_option("--graph", topo.graph, "graph family")->required();
  topology->add_option("--n", topo.n, "vertex count")->required();
  topology->add_option("--alpha", topo.alpha, "regular_bipartite exponent");
  topology->add_option("--p", topo.p, "erdos_renyi edge probability");
  topology->add_option("--seed", topo.seed, "seed for random families");
  topology->add_option("--out", topo_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      return emit_sweep(spec_from_flags(sim), sim_threads, sim_out, sim_timing);
    }
    if (*sweep) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
      auto config = parse_config(in);
      std::string out_path = sweep_out;
      unsigned threads = sweep_threads;
      for (const auto& [key, value] : config.extra) {
        if (key == "out") {
          if (out_path.empty()) out_path = value;
        } else if (key == "threads") {
          if (threads == 0) threads = static_cast<unsigned>(std::stoul(value));
        } else {
          throw std::invalid_argument("unknown config key '" + key + "'");
        }
      }
      config.spec.validate();
      return emit_sweep(config.spec, threads == 0 ? 1 : threads, out_path, sweep_timing);
    }
    if (*diagnose) {
      const Graph g = graph_from_flags(diag);
      const auto report = minimax_lower_bound(g, parse_family(diag.graph));
      std::cout << (diag_json ? to_json(report) + "\n" : to_key_value(report));
      return 0;
    }
    if (*slope) {
      std::ifstream in(slope_input);
      if (!in) throw std::runtime_error("cannot open '" + slope_input + "'");
      const auto records = read_csv(in);
      std::vector<std::string> group;
      std::stringstream fields(slope_group);
      for (std::string field; std::getline(fields, field, ',');) group.push_back(field);
      std::cout << "group,slope,intercept,r2,status\n";
      for (const auto& fit : fit_slope(records, group)) {
        std::string name;
        for (const auto& part : fit.group) name += (name.empty() ? "" : "/") + part;
        char buf[160];
        if (fit.exact) {
          std::snprintf(buf, sizeof buf, "%s,,,,exact\n", name.c_str());
        } else {
          std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,fit\n", name.c_str(), fit.slope,
                        fit.intercept, fit.r_squared);
        }
        std::cout << buf;
      }
      return 0;
    }
    if (*topology) {
      const Graph g = graph_from_flags(topo);
      if (topo_out.empty() || topo_out == "-") {
        write_edge_list(std::cout, g);
      } else {
        std::ofstream out(topo_out);
        if (!out) throw std::runtime_error("cannot open '" + topo_out + "' for writing");
        write_edge_list(out, g);
      }
      if (!g.has_isolated_vertex()) {
        std::cerr << "degree_functional = " << degree_functional(g) << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
