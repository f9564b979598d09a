#pragma once
// Observation of a comparison matrix through a comparison graph.
//
// Item i sits at vertex sigma(i); the pair (i, j) is observed iff
// (sigma(i), sigma(j)) is an edge. The worst-case design is sigma = id.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "permrank/comparison.hpp"
#include "permrank/graph.hpp"
#include "permrank/permutation.hpp"
#include "permrank/random.hpp"

namespace permrank {

struct ObservedPair {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double y = 0.0;     // outcome for "i beats j"; the reverse is 1 - y

  bool operator==(const ObservedPair&) const = default;
};

class ObservationSample {
 public:
  // Pairs must satisfy i < j < n, appear once, and carry y in [0, 1]; they
  // are stored sorted by (i, j).
  ObservationSample(std::size_t n, std::vector<ObservedPair> pairs, Permutation assignment);

  std::size_t size() const noexcept { return n_; }
  const std::vector<ObservedPair>& pairs() const noexcept { return pairs_; }
  const Permutation& assignment() const noexcept { return assignment_; }
  // Number of observed pairs involving each item.
  std::vector<std::size_t> observation_counts() const;

 private:
  std::size_t n_;
  std::vector<ObservedPair> pairs_;
  Permutation assignment_;
};

enum class ObservationMode {
  bernoulli,    // y ~ Ber(M_ij)
  expectation,  // y = M_ij exactly
};

// Uniform item-to-vertex assignment by Fisher-Yates.
Permutation assign_random(const Graph& g, Rng& rng);

// Bernoulli mode needs `rng`; outcomes are drawn in (i, j) order.
ObservationSample observe(const ComparisonMatrix& m, const Graph& g,
                          const Permutation& sigma, ObservationMode mode,
                          Rng* rng = nullptr);

// Fraction of observed comparisons won by each item. Throws
// std::domain_error naming the first item that was never observed.
std::vector<double> empirical_scores(const ObservationSample& s);

// "n k", then k lines "i j y", then the assignment as a rank line.
void write_sample(std::ostream& out, const ObservationSample& s);
ObservationSample read_sample(std::istream& in);

}  // namespace permrank
