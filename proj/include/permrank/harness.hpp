#pragma once
// Monte Carlo experiment harness: trial execution, parallel sweeps, CSV
// records and log-log slope fits.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permrank/graph.hpp"
#include "permrank/observation.hpp"

namespace permrank {

enum class ModelKind { noisy_sorting, sst_bands };
enum class EstimatorKind { asp, bap_two_sample, bap_one_sample };

std::string_view to_string(ModelKind model);
std::string_view to_string(EstimatorKind estimator);
std::string_view to_string(ObservationMode mode);
ModelKind parse_model(std::string_view name);          // "ns" | "sst"
EstimatorKind parse_estimator(std::string_view name);  // "asp" | "bap" | "bap1"
ObservationMode parse_mode(std::string_view name);     // "bernoulli" | "expectation"

struct ExperimentSpec {
  Family family = Family::two_cliques;
  TopologyParams params;
  std::vector<std::size_t> n_values;
  ModelKind model = ModelKind::noisy_sorting;
  double lambda = 0.4;  // noisy sorting only
  EstimatorKind estimator = EstimatorKind::asp;
  std::size_t trials = 10;
  std::uint64_t master_seed = 1;
  ObservationMode mode = ObservationMode::bernoulli;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  // Family name, with the parameter appended for parameterized families
  // (e.g. "regular_bipartite:0.5").
  std::string graph_label() const;
};

struct TrialRecord {
  std::string graph;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  std::string model;
  std::optional<double> frob_err;  // absent for a failed trial
  std::optional<std::uint64_t> kt;
  std::optional<double> lambda_hat;
  double deg_functional = 0.0;
  double runtime_ms = 0.0;
  std::string failure;  // empty on success

  bool ok() const noexcept { return failure.empty(); }
};

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t trial_index);

// Graph shared by every trial at size n (erdos_renyi draws it from a stream
// keyed by master seed and n).
Graph build_graph(const ExperimentSpec& spec, std::size_t n);

// Estimator failures are captured in the record, not thrown.
TrialRecord run_trial(const ExperimentSpec& spec, std::size_t n, std::size_t trial_index);
TrialRecord run_trial(const ExperimentSpec& spec, const Graph& g, std::size_t trial_index);

// Every (n, trial) pair, ordered by (n, trial) whatever the thread count.
std::vector<TrialRecord> run_sweep(const ExperimentSpec& spec, unsigned threads = 1);

// Header: graph,n,trial,seed,estimator,model,frob_err,kt,lambda_hat,
// deg_functional,runtime_ms. runtime_ms is left empty unless
// `include_runtime`, so repeated runs produce identical bytes.
void write_csv(std::ostream& out, std::span<const TrialRecord> records,
               bool include_runtime = false);
// Rows with an empty frob_err are read back as failed trials.
std::vector<TrialRecord> read_csv(std::istream& in);

// One line per failed trial; empty when all succeeded.
std::string failure_summary(std::span<const TrialRecord> records);

struct SlopeFit {
  std::vector<std::string> group;  // values of the grouping fields
  std::vector<std::pair<std::size_t, double>> mean_error;  // (n, mean) by n
  bool exact = false;  // some mean error is zero; no fit
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// OLS of log(mean error) on log(n) per group. Valid group fields: graph,
// estimator, model. Failed trials are skipped. Throws std::invalid_argument
// for a group with fewer than two distinct n.
std::vector<SlopeFit> fit_slope(std::span<const TrialRecord> records,
                                std::span<const std::string> group_key);
std::vector<SlopeFit> fit_slope(std::span<const TrialRecord> records);

// Flat "key = value" config; '#' starts a comment. Keys: graph, n, n_list,
// model, lambda, estimator, trials, seed, mode, alpha, p. Unknown keys are
// returned in `extra` for the caller (e.g. out, threads).
struct ConfigFile {
  ExperimentSpec spec;
  std::map<std::string, std::string> extra;
};
ConfigFile parse_config(std::istream& in);
// Applies one key to a spec; returns false for keys it does not know.
bool apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);
std::vector<std::size_t> parse_n_list(std::string_view text);

}  // namespace permrank
