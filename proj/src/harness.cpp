#include "permrank/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "permrank/comparison.hpp"
#include "permrank/estimators.hpp"
#include "permrank/permutation.hpp"

namespace permrank {

namespace {

// Stream tags inside one trial.
enum Stream : std::uint64_t {
  kTruth = 1,
  kAssignFirst = 2,
  kObserveFirst = 3,
  kAssignSecond = 4,
  kObserveSecond = 5,
  kGraph = 0x6772617068,
};

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

// Shortest text that reads back to the same double.
std::string format_double(double value) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
  return std::string(buf, end);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("bad number for " + key + ": '" + value + "'");
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (!value.empty() && value.front() != '-') out = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw std::invalid_argument("bad integer for " + key + ": '" + value + "'");
  }
  return out;
}

ComparisonMatrix ground_truth(const ExperimentSpec& spec, std::size_t n, Rng& rng) {
  if (spec.model == ModelKind::noisy_sorting) {
    return make_noisy_sorting(Permutation::identity(n), spec.lambda);
  }
  return sample_sst_bands(n, rng);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

constexpr std::string_view kCsvHeader =
    "graph,n,trial,seed,estimator,model,frob_err,kt,lambda_hat,deg_functional,runtime_ms";

}  // namespace

std::string_view to_string(ModelKind model) {
  return model == ModelKind::noisy_sorting ? "ns" : "sst";
}

std::string_view to_string(EstimatorKind estimator) {
  switch (estimator) {
    case EstimatorKind::asp:
      return "asp";
    case EstimatorKind::bap_two_sample:
      return "bap";
    case EstimatorKind::bap_one_sample:
      return "bap1";
  }
  return "unknown";
}

std::string_view to_string(ObservationMode mode) {
  return mode == ObservationMode::bernoulli ? "bernoulli" : "expectation";
}

ModelKind parse_model(std::string_view name) {
  if (name == "ns") return ModelKind::noisy_sorting;
  if (name == "sst") return ModelKind::sst_bands;
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (ns|sst)");
}

EstimatorKind parse_estimator(std::string_view name) {
  if (name == "asp") return EstimatorKind::asp;
  if (name == "bap") return EstimatorKind::bap_two_sample;
  if (name == "bap1") return EstimatorKind::bap_one_sample;
  throw std::invalid_argument("unknown estimator '" + std::string(name) + "' (asp|bap|bap1)");
}

ObservationMode parse_mode(std::string_view name) {
  if (name == "bernoulli") return ObservationMode::bernoulli;
  if (name == "expectation") return ObservationMode::expectation;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (bernoulli|expectation)");
}

void ExperimentSpec::validate() const {
  if (n_values.empty()) throw std::invalid_argument("experiment needs at least one n");
  for (std::size_t k = 1; k < n_values.size(); ++k) {
    if (n_values[k] <= n_values[k - 1]) {
      throw std::invalid_argument("n values must be strictly increasing");
    }
  }
  if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
  if (model == ModelKind::noisy_sorting && !(lambda >= 0.0 && lambda <= 0.5)) {
    throw std::invalid_argument("lambda must lie in [0, 1/2]");
  }
  if (family == Family::regular_bipartite && !(params.alpha > 0.0 && params.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (family == Family::erdos_renyi && !(params.p > 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1]");
  }
}

std::string ExperimentSpec::graph_label() const {
  std::string label(to_string(family));
  if (family == Family::regular_bipartite) label += ":" + format_double(params.alpha);
  if (family == Family::erdos_renyi) label += ":" + format_double(params.p);
  return label;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, std::size_t trial_index) {
  return derive_seed(master_seed, n, trial_index);
}

Graph build_graph(const ExperimentSpec& spec, std::size_t n) {
  Rng rng(derive_seed(spec.master_seed, n, kGraph));
  return make_topology(spec.family, n, spec.params, &rng);
}

TrialRecord run_trial(const ExperimentSpec& spec, std::size_t n, std::size_t trial_index) {
  TrialRecord record;
  try {
    const Graph g = build_graph(spec, n);
    return run_trial(spec, g, trial_index);
  } catch (const std::exception& e) {
    record.graph = spec.graph_label();
    record.n = n;
    record.trial = trial_index;
    record.seed = trial_seed(spec.master_seed, n, trial_index);
    record.estimator = to_string(spec.estimator);
    record.model = to_string(spec.model);
    record.deg_functional = std::nan("");
    record.failure = e.what();
    return record;
  }
}

TrialRecord run_trial(const ExperimentSpec& spec, const Graph& g, std::size_t trial_index) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.size();
  TrialRecord record;
  record.graph = spec.graph_label();
  record.n = n;
  record.trial = trial_index;
  record.seed = trial_seed(spec.master_seed, n, trial_index);
  record.estimator = to_string(spec.estimator);
  record.model = to_string(spec.model);
  record.deg_functional = std::nan("");

  try {
    record.deg_functional = degree_functional(g);
    Rng truth_rng(derive_seed(record.seed, kTruth));
    Rng assign_first(derive_seed(record.seed, kAssignFirst));
    Rng observe_first(derive_seed(record.seed, kObserveFirst));
    const auto truth = ground_truth(spec, n, truth_rng);
    const auto identity = Permutation::identity(n);

    const auto first = observe(truth, g, assign_random(g, assign_first), spec.mode, &observe_first);
    switch (spec.estimator) {
      case EstimatorKind::asp: {
        const auto result = asp_estimate(first);
        record.frob_err = frobenius_error(result.m_hat, truth);
        record.kt = kt_distance(identity, result.pi_hat);
        record.lambda_hat = result.lambda_hat;
        break;
      }
      case EstimatorKind::bap_two_sample: {
        Rng assign_second(derive_seed(record.seed, kAssignSecond));
        Rng observe_second(derive_seed(record.seed, kObserveSecond));
        const auto second =
            observe(truth, g, assign_random(g, assign_second), spec.mode, &observe_second);
        const auto result = bap_estimate(first, second, g);
        record.frob_err = frobenius_error(result.m_hat, truth);
        record.kt = kt_distance(identity, result.pi_hat);
        break;
      }
      case EstimatorKind::bap_one_sample: {
        const auto result = bap_estimate_single(first, g);
        record.frob_err = frobenius_error(result.m_hat, truth);
        record.kt = kt_distance(identity, result.pi_hat);
        break;
      }
    }
  } catch (const std::exception& e) {
    record.frob_err.reset();
    record.kt.reset();
    record.lambda_hat.reset();
    record.failure = e.what();
  }
  record.runtime_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return record;
}

std::vector<TrialRecord> run_sweep(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  std::vector<std::optional<Graph>> graphs;
  std::vector<std::string> graph_errors;
  for (std::size_t n : spec.n_values) {
    try {
      graphs.emplace_back(build_graph(spec, n));
      graph_errors.emplace_back();
    } catch (const std::exception& e) {
      graphs.emplace_back();
      graph_errors.emplace_back(e.what());
    }
  }

  const std::size_t total = spec.n_values.size() * spec.trials;
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t which = job / spec.trials;
      const std::size_t trial = job % spec.trials;
      if (graphs[which]) {
        records[job] = run_trial(spec, *graphs[which], trial);
      } else {
        const std::size_t n = spec.n_values[which];
        TrialRecord failed;
        failed.graph = spec.graph_label();
        failed.n = n;
        failed.trial = trial;
        failed.seed = trial_seed(spec.master_seed, n, trial);
        failed.estimator = to_string(spec.estimator);
        failed.model = to_string(spec.model);
        failed.deg_functional = std::nan("");
        failed.failure = graph_errors[which];
        records[job] = std::move(failed);
      }
    }
  };

  const unsigned count = std::max(1u, threads);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& thread : pool) thread.join();
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records, bool include_runtime) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.graph << ',' << r.n << ',' << r.trial << ',' << r.seed << ',' << r.estimator
        << ',' << r.model << ',' << (r.frob_err ? format_double(*r.frob_err) : "") << ','
        << (r.kt ? std::to_string(*r.kt) : "") << ','
        << (r.lambda_hat ? format_double(*r.lambda_hat) : "") << ','
        << (std::isfinite(r.deg_functional) ? format_double(r.deg_functional) : "") << ','
        << (include_runtime ? format_double(r.runtime_ms) : "") << '\n';
  }
}

std::vector<TrialRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header '" + line + "'");
  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": expected 11 fields");
    }
    TrialRecord r;
    r.graph = f[0];
    r.n = parse_unsigned("n", f[1]);
    r.trial = parse_unsigned("trial", f[2]);
    r.seed = parse_unsigned("seed", f[3]);
    r.estimator = f[4];
    r.model = f[5];
    if (!f[6].empty()) {
      r.frob_err = parse_double("frob_err", f[6]);
    } else {
      r.failure = "failed";
    }
    if (!f[7].empty()) r.kt = parse_unsigned("kt", f[7]);
    if (!f[8].empty()) r.lambda_hat = parse_double("lambda_hat", f[8]);
    r.deg_functional = f[9].empty() ? std::nan("") : parse_double("deg_functional", f[9]);
    r.runtime_ms = f[10].empty() ? 0.0 : parse_double("runtime_ms", f[10]);
    records.push_back(std::move(r));
  }
  return records;
}

std::string failure_summary(std::span<const TrialRecord> records) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.ok()) continue;
    ++failed;
    out << "# failed: graph=" << r.graph << " n=" << r.n << " trial=" << r.trial << ": "
        << r.failure << '\n';
  }
  if (failed == 0) return {};
  return out.str() + "# " + std::to_string(failed) + " of " + std::to_string(records.size()) +
         " trials failed\n";
}

std::vector<SlopeFit> fit_slope(std::span<const TrialRecord> records,
                                std::span<const std::string> group_key) {
  for (const auto& field : group_key) {
    if (field != "graph" && field != "estimator" && field != "model") {
      throw std::invalid_argument("fit_slope: unknown group field '" + field + "'");
    }
  }
  auto key_of = [&](const TrialRecord& r) {
    std::vector<std::string> key;
    for (const auto& field : group_key) {
      key.push_back(field == "graph" ? r.graph : field == "estimator" ? r.estimator : r.model);
    }
    return key;
  };

  std::map<std::vector<std::string>, std::map<std::size_t, std::pair<double, std::size_t>>> sums;
  for (const auto& r : records) {
    if (!r.ok() || !r.frob_err) continue;
    auto& cell = sums[key_of(r)][r.n];
    cell.first += *r.frob_err;
    ++cell.second;
  }

  std::vector<SlopeFit> fits;
  for (const auto& [key, by_n] : sums) {
    SlopeFit fit;
    fit.group = key;
    for (const auto& [n, cell] : by_n) {
      fit.mean_error.emplace_back(n, cell.first / static_cast<double>(cell.second));
    }
    if (fit.mean_error.size() < 2) {
      std::string name;
      for (const auto& part : key) name += (name.empty() ? "" : "/") + part;
      throw std::invalid_argument("fit_slope: group '" + name + "' has fewer than 2 distinct n");
    }
    fit.exact = std::any_of(fit.mean_error.begin(), fit.mean_error.end(),
                            [](const auto& point) { return point.second <= 0.0; });
    if (!fit.exact) {
      const double count = static_cast<double>(fit.mean_error.size());
      double mean_x = 0.0;
      double mean_y = 0.0;
      for (const auto& [n, err] : fit.mean_error) {
        mean_x += std::log(static_cast<double>(n));
        mean_y += std::log(err);
      }
      mean_x /= count;
      mean_y /= count;
      double sxx = 0.0;
      double sxy = 0.0;
      double syy = 0.0;
      for (const auto& [n, err] : fit.mean_error) {
        const double dx = std::log(static_cast<double>(n)) - mean_x;
        const double dy = std::log(err) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
      }
      fit.slope = sxy / sxx;
      fit.intercept = mean_y - fit.slope * mean_x;
      const double residual = syy - fit.slope * sxy;
      fit.r_squared = syy > 0.0 ? 1.0 - std::max(residual, 0.0) / syy : 1.0;
    }
    fits.push_back(std::move(fit));
  }
  return fits;
}

std::vector<SlopeFit> fit_slope(std::span<const TrialRecord> records) {
  static const std::vector<std::string> kDefault{"graph", "estimator", "model"};
  return fit_slope(records, kDefault);
}

std::vector<std::size_t> parse_n_list(std::string_view text) {
  std::vector<std::size_t> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = trim(text.substr(pos, comma - pos));
    if (item.empty()) {
      throw std::invalid_argument("n_list has an empty entry: '" + std::string(text) + "'");
    }
    values.push_back(parse_unsigned("n_list", item));
    pos = comma + 1;
  }
  return values;
}

bool apply_setting(ExperimentSpec& spec, const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "graph") {
    spec.family = parse_family(value);
  } else if (key == "n") {
    spec.n_values = {parse_unsigned(key, value)};
  } else if (key == "n_list") {
    spec.n_values = parse_n_list(value);
  } else if (key == "model") {
    spec.model = parse_model(value);
  } else if (key == "lambda") {
    spec.lambda = parse_double(key, value);
  } else if (key == "estimator") {
    spec.estimator = parse_estimator(value);
  } else if (key == "trials") {
    spec.trials = parse_unsigned(key, value);
  } else if (key == "seed") {
    spec.master_seed = parse_unsigned(key, value);
  } else if (key == "mode") {
    spec.mode = parse_mode(value);
  } else if (key == "alpha") {
    spec.params.alpha = parse_double(key, value);
  } else if (key == "p") {
    spec.params.p = parse_double(key, value);
  } else {
    return false;
  }
  return true;
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    }
    if (!apply_setting(config.spec, key, value)) config.extra[key] = value;
  }
  return config;
}

}  // namespace permrank
