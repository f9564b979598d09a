#pragma once
// Average-Sort-Project (noisy sorting) and Block-Average-Project (SST)
// estimators, with their building blocks.

#include <cstddef>
#include <span>
#include <vector>

#include "permrank/comparison.hpp"
#include "permrank/graph.hpp"
#include "permrank/observation.hpp"
#include "permrank/permutation.hpp"

namespace permrank {

// ---------------------------------------------------------------------------
// Average-Sort-Project
// ---------------------------------------------------------------------------

struct AspResult {
  Permutation pi_hat;
  double lambda_hat = 0.0;
  ComparisonMatrix m_hat;  // == make_noisy_sorting(pi_hat, lambda_hat)
};

// Ranks items by decreasing score; equal scores go to the smaller index first.
Permutation asp_sort(std::span<const double> tau_hat);

// Observed pairs (i, j), i < j, that `pi` ranks in the opposite order.
std::vector<ObservedPair> inversion_set(const ObservationSample& s, const Permutation& pi);

// Maximum-likelihood noisy sorting parameter given the ordering `pi`,
// clamped to [0, 1/2]. Throws std::domain_error on an empty sample.
double asp_lambda_mle(const ObservationSample& s, const Permutation& pi);

AspResult asp_estimate(const ObservationSample& s);

// ---------------------------------------------------------------------------
// Block-Average-Project
// ---------------------------------------------------------------------------

/// Ordered partition of {0, ..., n-1}. Groups are non-empty, disjoint, cover
/// every index and each is sorted ascending.
class BlockPartition {
 public:
  BlockPartition(std::size_t n, std::vector<std::vector<std::size_t>> groups,
                 double threshold);

  std::size_t size() const noexcept { return group_of_.size(); }
  std::size_t group_count() const noexcept { return groups_.size(); }
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  std::size_t group_of(std::size_t index) const { return group_of_.at(index); }
  double threshold() const noexcept { return threshold_; }

 private:
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::size_t> group_of_;
  double threshold_;
};

// Groups index j by the interval [floor((i-1)t), floor(i t)) containing v_j,
// i = 1, 2, ...; values equal to `upper` join the last interval. Empty
// intervals are dropped. Requires entries in [0, upper] and t in (0, upper).
BlockPartition block_partition(std::span<const double> v, double t, double upper);

// Mean of the observed entries (both orientations) in every block S x T of
// the partition; blocks without observations are set to 1/2.
SquareMatrix block_average(const ObservationSample& s, const BlockPartition& c);

// Replaces each row by the mean of the rows in its group.
SquareMatrix row_block_average(const SquareMatrix& x, const BlockPartition& c);

struct BapOptions {
  double projection_tol = 1e-8;
  std::size_t projection_max_iter = 10000;
};

struct BapResult {
  ComparisonMatrix m_hat;
  Permutation pi_hat;
  BlockPartition blocks;
  bool converged = false;
};

// Two-sample estimator: blocking and ordering from `first`, block averages
// from `second`.
BapResult bap_estimate(const ObservationSample& first, const ObservationSample& second,
                       const Graph& g, const BapOptions& options = {});

// Single-sample variant: the block averages reuse `sample`.
BapResult bap_estimate_single(const ObservationSample& sample, const Graph& g,
                              const BapOptions& options = {});

}  // namespace permrank
