#include "permrank/estimators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "permrank/isotonic.hpp"

namespace permrank {

Permutation asp_sort(std::span<const double> tau_hat) {
  std::vector<std::size_t> order(tau_hat.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tau_hat[a] > tau_hat[b];
  });
  std::vector<std::size_t> ranks(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r;
  return Permutation(std::move(ranks));
}

std::vector<ObservedPair> inversion_set(const ObservationSample& s, const Permutation& pi) {
  if (pi.size() != s.size()) throw std::invalid_argument("inversion_set: size mismatch");
  std::vector<ObservedPair> inverted;
  for (const auto& p : s.pairs())
    if (pi[p.i] > pi[p.j]) inverted.push_back(p);
  return inverted;
}

double asp_lambda_mle(const ObservationSample& s, const Permutation& pi) {
  if (pi.size() != s.size()) throw std::invalid_argument("asp_lambda_mle: size mismatch");
  if (s.pairs().empty()) throw std::domain_error("asp_lambda_mle: empty sample");
  double agree = 0.0;
  for (const auto& p : s.pairs()) agree += pi[p.i] < pi[p.j] ? p.y : 1.0 - p.y;
  const double raw = agree / static_cast<double>(s.pairs().size()) - 0.5;
  return std::clamp(raw, 0.0, 0.5);
}

AspResult asp_estimate(const ObservationSample& s) {
  const auto tau_hat = empirical_scores(s);
  Permutation pi_hat = asp_sort(tau_hat);
  const double lambda_hat = asp_lambda_mle(s, pi_hat);
  ComparisonMatrix m_hat = make_noisy_sorting(pi_hat, lambda_hat);
  return {std::move(pi_hat), lambda_hat, std::move(m_hat)};
}

BlockPartition::BlockPartition(std::size_t n, std::vector<std::vector<std::size_t>> groups,
                               double threshold)
    : groups_(std::move(groups)), group_of_(n, n), threshold_(threshold) {
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& members = groups_[g];
    if (members.empty()) throw std::invalid_argument("block partition has an empty group");
    std::sort(members.begin(), members.end());
    for (std::size_t index : members) {
      if (index >= n || group_of_[index] != n) {
        throw std::invalid_argument("block partition: index " + std::to_string(index) +
                                    " out of range or in two groups");
      }
      group_of_[index] = g;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (group_of_[i] == n) {
      throw std::invalid_argument("block partition misses index " + std::to_string(i));
    }
  }
}

BlockPartition block_partition(std::span<const double> v, double t, double upper) {
  if (!(t > 0.0 && t < upper)) {
    throw std::invalid_argument("block_partition: threshold must lie in (0, upper)");
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(v[j] >= 0.0 && v[j] <= upper)) {
      throw std::invalid_argument("block_partition: entry " + std::to_string(j) +
                                  " outside [0, " + std::to_string(upper) + "]");
    }
  }
  // bounds[i] = floor(i t); interval i (1-based) is [bounds[i-1], bounds[i]).
  std::vector<double> bounds{0.0};
  while (bounds.back() < upper) {
    bounds.push_back(std::floor(static_cast<double>(bounds.size()) * t));
  }
  const std::size_t intervals = bounds.size() - 1;
  std::vector<std::vector<std::size_t>> by_interval(intervals);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto above = std::upper_bound(bounds.begin(), bounds.end(), v[j]);
    std::size_t interval = static_cast<std::size_t>(above - bounds.begin());
    interval = std::min(interval, intervals);  // v == upper == bounds.back()
    by_interval[interval - 1].push_back(j);
  }
  std::erase_if(by_interval, [](const auto& group) { return group.empty(); });
  return BlockPartition(v.size(), std::move(by_interval), t);
}

SquareMatrix block_average(const ObservationSample& s, const BlockPartition& c) {
  if (c.size() != s.size()) throw std::invalid_argument("block_average: size mismatch");
  const std::size_t k = c.group_count();
  SquareMatrix sum(k, 0.0);
  SquareMatrix count(k, 0.0);
  for (const auto& p : s.pairs()) {
    const std::size_t a = c.group_of(p.i);
    const std::size_t b = c.group_of(p.j);
    sum(a, b) += p.y;
    count(a, b) += 1.0;
    sum(b, a) += 1.0 - p.y;
    count(b, a) += 1.0;
  }
  SquareMatrix out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t a = c.group_of(i);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const std::size_t b = c.group_of(j);
      out(i, j) = count(a, b) > 0.0 ? sum(a, b) / count(a, b) : 0.5;
    }
  }
  return out;
}

SquareMatrix row_block_average(const SquareMatrix& x, const BlockPartition& c) {
  if (c.size() != x.size()) throw std::invalid_argument("row_block_average: size mismatch");
  SquareMatrix out(x.size());
  for (const auto& group : c.groups()) {
    std::vector<double> mean(x.size(), 0.0);
    for (std::size_t i : group)
      for (std::size_t j = 0; j < x.size(); ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= static_cast<double>(group.size());
    for (std::size_t i : group) std::copy(mean.begin(), mean.end(), out.row(i).begin());
  }
  return out;
}

namespace {

BlockPartition single_block(std::size_t n, double t) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return BlockPartition(n, {std::move(all)}, t);
}

BapResult bap_impl(const ObservationSample& first, const ObservationSample& averaged,
                   const Graph& g, const BapOptions& options) {
  const std::size_t n = first.size();
  if (g.size() != n || averaged.size() != n) {
    throw std::invalid_argument("bap_estimate: samples and graph differ in size");
  }
  if (g.has_isolated_vertex()) {
    throw std::domain_error("bap_estimate: graph has an isolated vertex");
  }

  // Blocking step: row sums of the degree-rescaled first sample.
  const auto counts = first.observation_counts();
  std::vector<double> row_sums(n, 0.0);
  for (const auto& p : first.pairs()) {
    row_sums[p.i] += p.y;
    row_sums[p.j] += 1.0 - p.y;
  }
  const double scale = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    assert(counts[i] > 0);
    row_sums[i] = std::clamp(scale / static_cast<double>(counts[i]) * row_sums[i], 0.0, scale);
  }
  double t = 0.0;
  for (std::size_t d : g.degrees()) t += 1.0 / std::sqrt(static_cast<double>(d));
  BlockPartition blocks = t < scale ? block_partition(row_sums, t, scale) : single_block(n, t);
  Permutation pi_hat = asp_sort(empirical_scores(first));

  // Averaging step.
  const SquareMatrix blocked = block_average(averaged, blocks);

  // Projection onto pi_hat(C_BISO).
  auto projection = project_biso(to_rank_order(blocked, pi_hat), options.projection_tol,
                                 options.projection_max_iter);
  ComparisonMatrix m_hat(from_rank_order(projection.matrix.entries(), pi_hat));
  return {std::move(m_hat), std::move(pi_hat), std::move(blocks), projection.converged};
}

}  // namespace

BapResult bap_estimate(const ObservationSample& first, const ObservationSample& second,
                       const Graph& g, const BapOptions& options) {
  return bap_impl(first, second, g, options);
}

BapResult bap_estimate_single(const ObservationSample& sample, const Graph& g,
                              const BapOptions& options) {
  return bap_impl(sample, sample, g, options);
}

}  // namespace permrank
