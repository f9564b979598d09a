#include "permrank/observation.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace permrank {

ObservationSample::ObservationSample(std::size_t n, std::vector<ObservedPair> pairs,
                                     Permutation assignment)
    : n_(n), pairs_(std::move(pairs)), assignment_(std::move(assignment)) {
  if (assignment_.size() != n_) {
    throw std::invalid_argument("observation assignment has length " +
                                std::to_string(assignment_.size()) + ", expected " +
                                std::to_string(n_));
  }
  for (const auto& p : pairs_) {
    if (!(p.i < p.j && p.j < n_)) {
      throw std::invalid_argument("observed pair (" + std::to_string(p.i) + ", " +
                                  std::to_string(p.j) + ") must satisfy i < j < n");
    }
    if (!(p.y >= 0.0 && p.y <= 1.0)) {
      throw std::invalid_argument("observed value outside [0,1] for pair (" +
                                  std::to_string(p.i) + ", " + std::to_string(p.j) + ")");
    }
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const ObservedPair& a, const ObservedPair& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < pairs_.size(); ++k) {
    if (pairs_[k].i == pairs_[k - 1].i && pairs_[k].j == pairs_[k - 1].j) {
      throw std::invalid_argument("pair (" + std::to_string(pairs_[k].i) + ", " +
                                  std::to_string(pairs_[k].j) + ") observed twice");
    }
  }
}

std::vector<std::size_t> ObservationSample::observation_counts() const {
  std::vector<std::size_t> counts(n_, 0);
  for (const auto& p : pairs_) {
    ++counts[p.i];
    ++counts[p.j];
  }
  return counts;
}

Permutation assign_random(const Graph& g, Rng& rng) {
  std::vector<std::size_t> vertex(g.size());
  for (std::size_t i = 0; i < vertex.size(); ++i) vertex[i] = i;
  for (std::size_t i = vertex.size(); i > 1; --i) {
    std::swap(vertex[i - 1], vertex[uniform_index(rng, i)]);
  }
  return Permutation(std::move(vertex));
}

ObservationSample observe(const ComparisonMatrix& m, const Graph& g,
                          const Permutation& sigma, ObservationMode mode, Rng* rng) {
  if (m.size() != g.size() || sigma.size() != g.size()) {
    throw std::invalid_argument("observe: matrix, graph and assignment sizes differ (" +
                                std::to_string(m.size()) + ", " + std::to_string(g.size()) +
                                ", " + std::to_string(sigma.size()) + ")");
  }
  if (mode == ObservationMode::bernoulli && rng == nullptr) {
    throw std::invalid_argument("observe: bernoulli mode needs a random generator");
  }
  const auto item_at = sigma.items_by_rank();
  std::vector<ObservedPair> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    const std::size_t a = item_at[u];
    const std::size_t b = item_at[v];
    pairs.push_back({std::min(a, b), std::max(a, b), 0.0});
  }
  std::sort(pairs.begin(), pairs.end(), [](const ObservedPair& x, const ObservedPair& y) {
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  for (auto& p : pairs) {
    const double prob = m(p.i, p.j);
    if (mode == ObservationMode::expectation) {
      p.y = prob;
    } else {
      p.y = uniform01(*rng) < prob ? 1.0 : 0.0;
    }
  }
  return ObservationSample(g.size(), std::move(pairs), sigma);
}

std::vector<double> empirical_scores(const ObservationSample& s) {
  std::vector<double> wins(s.size(), 0.0);
  std::vector<std::size_t> counts(s.size(), 0);
  for (const auto& p : s.pairs()) {
    wins[p.i] += p.y;
    wins[p.j] += 1.0 - p.y;
    ++counts[p.i];
    ++counts[p.j];
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (counts[i] == 0) {
      throw std::domain_error("item " + std::to_string(i) + " has no observed comparisons");
    }
    wins[i] /= static_cast<double>(counts[i]);
  }
  return wins;
}

void write_sample(std::ostream& out, const ObservationSample& s) {
  out << s.size() << ' ' << s.pairs().size() << '\n';
  char buf[32];
  for (const auto& p : s.pairs()) {
    std::snprintf(buf, sizeof buf, "%.17g", p.y);
    out << p.i << ' ' << p.j << ' ' << buf << '\n';
  }
  write_permutation(out, s.assignment());
}

ObservationSample read_sample(std::istream& in) {
  std::size_t n = 0;
  std::size_t k = 0;
  if (!(in >> n >> k)) throw std::invalid_argument("sample: missing 'n k' header");
  std::vector<ObservedPair> pairs(k);
  for (std::size_t t = 0; t < k; ++t) {
    if (!(in >> pairs[t].i >> pairs[t].j >> pairs[t].y)) {
      throw std::invalid_argument("sample: expected " + std::to_string(k) +
                                  " pairs, read " + std::to_string(t));
    }
  }
  in >> std::ws;
  Permutation sigma = read_permutation(in);
  return ObservationSample(n, std::move(pairs), std::move(sigma));
}

}  // namespace permrank
