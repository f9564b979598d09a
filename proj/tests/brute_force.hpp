#pragma once
// Exhaustive subset searches for small graphs, used as test oracles.

#include <cstdint>
#include <vector>

#include "permrank/graph.hpp"

namespace permrank::oracle {

inline bool independent(const Graph& g, std::uint32_t mask) {
  for (const auto& e : g.edges())
    if ((mask >> e.first & 1u) && (mask >> e.second & 1u)) return false;
  return true;
}

// Size of the largest independent set, over all 2^n subsets.
inline std::size_t alpha_brute_force(const Graph& g) {
  std::size_t best = 0;
  const std::uint32_t end = 1u << g.size();
  for (std::uint32_t mask = 0; mask < end; ++mask) {
    if (independent(g, mask)) best = std::max<std::size_t>(best, __builtin_popcount(mask));
  }
  return best;
}

// Largest |L||R| over disjoint L, R with no edge between them, trying every
// labelling of the vertices as left / right / unused (3^n of them).
inline std::size_t beta_complement_three_way(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> side(n, 0);
  std::size_t best = 0;
  while (true) {
    bool ok = true;
    for (const auto& e : g.edges()) {
      if (side[e.first] && side[e.second] && side[e.first] != side[e.second]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::size_t left = 0;
      std::size_t right = 0;
      for (int s : side) {
        left += s == 1;
        right += s == 2;
      }
      best = std::max(best, left * right);
    }
    std::size_t k = 0;
    while (k < n && side[k] == 2) side[k++] = 0;
    if (k == n) break;
    ++side[k];
  }
  return best;
}

// Same quantity for larger n: for a fixed left set the best right set is
// every vertex outside it with no neighbour in it.
inline std::size_t beta_complement_subsets(const Graph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  const std::uint32_t end = 1u << n;
  for (std::uint32_t left = 1; left < end; ++left) {
    std::size_t right = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (left >> v & 1u) continue;
      bool free = true;
      for (std::size_t u : g.neighbors(v)) free = free && !(left >> u & 1u);
      right += free;
    }
    best = std::max<std::size_t>(best, __builtin_popcount(left) * right);
  }
  return best;
}

}  // namespace permrank::oracle
