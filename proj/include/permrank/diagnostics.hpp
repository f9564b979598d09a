#pragma once
// Worst-case inestimability diagnostics: independence number, biclique
// number of the complement graph, and matrix pairs that agree on every edge.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permrank/comparison.hpp"
#include "permrank/graph.hpp"
#include "permrank/permutation.hpp"

namespace permrank {

// Thrown when an exact search would exceed its vertex budget.
class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kIndependentSetBudget = 32;
inline constexpr std::size_t kBicliqueBudget = 20;

struct IndependentSet {
  std::size_t size = 0;
  std::vector<std::size_t> vertices;  // sorted
};

// Disjoint left/right vertex sets with no graph edge between them.
struct Biclique {
  std::size_t product = 0;  // |left| * |right|
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
};

// Exact; the witness is the lexicographically smallest maximum set.
IndependentSet max_independent_set(const Graph& g);

// Exact maximum |V1||V2| over disjoint V1, V2 with no edges across, i.e. the
// biclique number of the complement graph.
Biclique max_biclique_complement(const Graph& g);

// Closed forms for families where the exact searches are unnecessary. Empty
// for families without one.
std::optional<IndependentSet> closed_form_independent_set(Family family, std::size_t n);
std::optional<Biclique> closed_form_biclique_complement(Family family, std::size_t n);

enum class AdversaryMode { independent_set, biclique };

struct AdversarialPair {
  Permutation pi_first;
  Permutation pi_second;
  double lambda = 0.25;
  ComparisonMatrix first;   // make_noisy_sorting(pi_first, lambda)
  ComparisonMatrix second;  // make_noisy_sorting(pi_second, lambda)
};

/// Two noisy sorting matrices that coincide on every edge of `g` (items sit
/// on vertices with sigma = id) yet differ by 8 lambda^2 KT(pi, pi') in
/// squared Frobenius norm.
///
/// independent_set: the set's items take the top ranks, forward in one
/// matrix and reversed in the other, so KT = a(a-1)/2.
/// biclique: the left block precedes the right block in one matrix and
/// follows it in the other, so KT = |left| * |right|.
///
/// Throws std::domain_error when the witness is too small (fewer than two
/// independent vertices, or an empty biclique side) and std::invalid_argument
/// when it is not a witness for `g`.
AdversarialPair adversarial_pair(const Graph& g, const IndependentSet& witness,
                                 double lambda = 0.25);
AdversarialPair adversarial_pair(const Graph& g, const Biclique& witness,
                                 double lambda = 0.25);
// Uses the exact searches to find the witness.
AdversarialPair adversarial_pair(const Graph& g, AdversaryMode mode, double lambda = 0.25);

struct DiagnosticsReport {
  std::size_t n = 0;
  std::size_t alpha = 0;
  std::size_t beta_complement = 0;
  double minimax_lb = 0.0;  // max(alpha(alpha-1), beta) / (4 n^2)
  std::optional<double> degree_functional;  // absent with isolated vertices
  IndependentSet independent_set;
  Biclique biclique;
  bool exact = true;  // false when a closed form replaced a search
};

// Exact searches only; budget errors propagate.
DiagnosticsReport minimax_lower_bound(const Graph& g);
// Falls back to the family's closed forms when `g` exceeds a search budget.
DiagnosticsReport minimax_lower_bound(const Graph& g, Family family);

std::string to_key_value(const DiagnosticsReport& report);
std::string to_json(const DiagnosticsReport& report);

}  // namespace permrank
