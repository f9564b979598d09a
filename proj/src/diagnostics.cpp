#include "permrank/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "json.hpp"

namespace permrank {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.size(), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

// Independence number of the subgraph induced by `live`.
std::size_t independence_number(const std::vector<Mask>& adj, Mask live) {
  if (live == 0) return 0;
  std::size_t min_v = 0;
  std::size_t max_v = 0;
  int min_deg = 65;
  int max_deg = -1;
  for (Mask rest = live; rest != 0; rest &= rest - 1) {
    const auto v = static_cast<std::size_t>(std::countr_zero(rest));
    const int deg = std::popcount(adj[v] & live);
    if (deg < min_deg) {
      min_deg = deg;
      min_v = v;
    }
    if (deg > max_deg) {
      max_deg = deg;
      max_v = v;
    }
  }
  // A vertex of degree <= 1 belongs to some maximum independent set.
  if (min_deg <= 1) {
    return 1 + independence_number(adj, live & ~(adj[min_v] | (Mask{1} << min_v)));
  }
  const Mask bit = Mask{1} << max_v;
  return std::max(independence_number(adj, live & ~bit),
                  1 + independence_number(adj, live & ~(adj[max_v] | bit)));
}

std::vector<std::size_t> range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t v = first; v < last; ++v) out.push_back(v);
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

// Shortest text that reads back to the same double.
std::string format_double(double value) {
  char buf[32];
  const auto end = std::to_chars(buf, buf + sizeof buf, value).ptr;
  return std::string(buf, end);
}

void require_vertices(const Graph& g, const std::vector<std::size_t>& vertices,
                      std::vector<bool>& used) {
  for (std::size_t v : vertices) {
    if (v >= g.size() || used[v]) {
      throw std::invalid_argument("witness vertex " + std::to_string(v) +
                                  " out of range or repeated");
    }
    used[v] = true;
  }
}

std::vector<std::size_t> ranks_with_prefix(std::size_t n,
                                           const std::vector<std::size_t>& prefix) {
  std::vector<std::size_t> ranks(n, n);
  std::size_t next = 0;
  for (std::size_t v : prefix) ranks[v] = next++;
  for (std::size_t v = 0; v < n; ++v)
    if (ranks[v] == n) ranks[v] = next++;
  return ranks;
}

AdversarialPair make_pair(std::vector<std::size_t> first, std::vector<std::size_t> second,
                          double lambda) {
  Permutation pi(std::move(first));
  Permutation pi_prime(std::move(second));
  auto m = make_noisy_sorting(pi, lambda);
  auto m_prime = make_noisy_sorting(pi_prime, lambda);
  return {std::move(pi), std::move(pi_prime), lambda, std::move(m), std::move(m_prime)};
}

}  // namespace

IndependentSet max_independent_set(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kIndependentSetBudget) {
    throw SearchBudgetExceeded("exact independent set search limited to " +
                               std::to_string(kIndependentSetBudget) + " vertices, got " +
                               std::to_string(n));
  }
  const auto adj = adjacency_masks(g);
  Mask live = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  const std::size_t alpha = independence_number(adj, live);

  // Smallest vertex first whenever it still admits a maximum set.
  IndependentSet best{alpha, {}};
  for (std::size_t v = 0; v < n && best.vertices.size() < alpha; ++v) {
    const Mask bit = Mask{1} << v;
    if ((live & bit) == 0) continue;
    const Mask after = live & ~(adj[v] | bit);
    if (1 + independence_number(adj, after) + best.vertices.size() == alpha) {
      best.vertices.push_back(v);
      live = after;
    } else {
      live &= ~bit;
    }
  }
  return best;
}

Biclique max_biclique_complement(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kBicliqueBudget) {
    throw SearchBudgetExceeded("exact biclique search limited to " +
                               std::to_string(kBicliqueBudget) + " vertices, got " +
                               std::to_string(n));
  }
  const auto adj = adjacency_masks(g);
  const Mask all = (Mask{1} << n) - 1;
  // For each left set, the best right side is every vertex outside it with no
  // edge into it.
  std::vector<Mask> reach(std::size_t{1} << n, 0);
  Mask best_left = 0;
  Mask best_right = 0;
  std::size_t best = 0;
  for (Mask left = 1; left <= all; ++left) {
    const Mask lowest = left & (~left + 1);
    reach[left] = reach[left & (left - 1)] | adj[std::countr_zero(lowest)];
    const Mask right = all & ~(left | reach[left]);
    const auto product = static_cast<std::size_t>(std::popcount(left)) *
                         static_cast<std::size_t>(std::popcount(right));
    if (product > best) {
      best = product;
      best_left = left;
      best_right = right;
    }
  }
  Biclique out{best, {}, {}};
  for (std::size_t v = 0; v < n; ++v) {
    if (best_left >> v & 1) out.left.push_back(v);
    if (best_right >> v & 1) out.right.push_back(v);
  }
  return out;
}

std::optional<IndependentSet> closed_form_independent_set(Family family, std::size_t n) {
  switch (family) {
    case Family::complete:
      return IndependentSet{1, {0}};
    case Family::two_cliques:
      return IndependentSet{2, {0, n / 2}};
    case Family::star:
      if (n == 2) return IndependentSet{1, {0}};
      return IndependentSet{n - 1, range(1, n)};
    case Family::path:
    case Family::cycle: {
      const std::size_t count = family == Family::path ? (n + 1) / 2 : n / 2;
      IndependentSet set{count, {}};
      for (std::size_t k = 0; k < count; ++k) set.vertices.push_back(2 * k);
      return set;
    }
    default:
      return std::nullopt;
  }
}

std::optional<Biclique> closed_form_biclique_complement(Family family, std::size_t n) {
  switch (family) {
    case Family::complete:
      return Biclique{};
    case Family::two_cliques:
      return Biclique{(n / 2) * (n / 2), range(0, n / 2), range(n / 2, n)};
    case Family::star: {
      // Leaves 1..n-1 split as evenly as possible.
      const std::size_t k = (n - 1) / 2;
      if (k == 0) return Biclique{};
      return Biclique{k * (n - 1 - k), range(1, k + 1), range(k + 1, n)};
    }
    case Family::path: {
      // One separating vertex between two runs.
      const std::size_t k = (n - 1) / 2;
      if (k == 0) return Biclique{};
      return Biclique{k * (n - 1 - k), range(0, k), range(k + 1, n)};
    }
    case Family::cycle: {
      // Two separating vertices, k and n-1.
      const std::size_t k = (n - 2) / 2;
      if (k == 0) return Biclique{};
      return Biclique{k * (n - 2 - k), range(0, k), range(k + 1, n - 1)};
    }
    default:
      return std::nullopt;
  }
}

AdversarialPair adversarial_pair(const Graph& g, const IndependentSet& witness,
                                 double lambda) {
  if (witness.vertices.size() < 2) {
    throw std::domain_error("adversarial pair needs an independent set of size >= 2");
  }
  std::vector<bool> used(g.size(), false);
  require_vertices(g, witness.vertices, used);
  for (std::size_t a = 0; a < witness.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < witness.vertices.size(); ++b)
      if (g.has_edge(witness.vertices[a], witness.vertices[b]))
        throw std::invalid_argument("independent set witness contains an edge");

  auto forward = witness.vertices;
  std::sort(forward.begin(), forward.end());
  auto backward = forward;
  std::reverse(backward.begin(), backward.end());
  return make_pair(ranks_with_prefix(g.size(), forward),
                   ranks_with_prefix(g.size(), backward), lambda);
}

AdversarialPair adversarial_pair(const Graph& g, const Biclique& witness, double lambda) {
  if (witness.left.empty() || witness.right.empty()) {
    throw std::domain_error("adversarial pair needs a biclique with two non-empty sides");
  }
  std::vector<bool> used(g.size(), false);
  require_vertices(g, witness.left, used);
  require_vertices(g, witness.right, used);
  for (std::size_t u : witness.left)
    for (std::size_t v : witness.right)
      if (g.has_edge(u, v)) throw std::invalid_argument("biclique witness crosses an edge");

  auto left = witness.left;
  auto right = witness.right;
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::vector<std::size_t> left_first = left;
  left_first.insert(left_first.end(), right.begin(), right.end());
  std::vector<std::size_t> right_first = right;
  right_first.insert(right_first.end(), left.begin(), left.end());
  return make_pair(ranks_with_prefix(g.size(), left_first),
                   ranks_with_prefix(g.size(), right_first), lambda);
}

AdversarialPair adversarial_pair(const Graph& g, AdversaryMode mode, double lambda) {
  if (mode == AdversaryMode::independent_set) {
    return adversarial_pair(g, max_independent_set(g), lambda);
  }
  const auto witness = max_biclique_complement(g);
  if (witness.product == 0) {
    throw std::domain_error("complement graph has no biclique (beta = 0)");
  }
  return adversarial_pair(g, witness, lambda);
}

namespace {

DiagnosticsReport assemble(const Graph& g, IndependentSet set, Biclique biclique, bool exact) {
  DiagnosticsReport report;
  report.n = g.size();
  report.alpha = set.size;
  report.beta_complement = biclique.product;
  const double n = static_cast<double>(g.size());
  const double alpha_term = static_cast<double>(set.size) * (static_cast<double>(set.size) - 1.0);
  report.minimax_lb =
      std::max(alpha_term, static_cast<double>(biclique.product)) / (4.0 * n * n);
  if (!g.has_isolated_vertex()) report.degree_functional = degree_functional(g);
  report.independent_set = std::move(set);
  report.biclique = std::move(biclique);
  report.exact = exact;
  return report;
}

}  // namespace

DiagnosticsReport minimax_lower_bound(const Graph& g) {
  return assemble(g, max_independent_set(g), max_biclique_complement(g), true);
}

DiagnosticsReport minimax_lower_bound(const Graph& g, Family family) {
  bool exact = true;
  IndependentSet set;
  if (g.size() <= kIndependentSetBudget) {
    set = max_independent_set(g);
  } else if (auto closed = closed_form_independent_set(family, g.size())) {
    set = std::move(*closed);
    exact = false;
  } else {
    throw SearchBudgetExceeded("no closed-form independence number for " +
                               std::string(to_string(family)) + " with n = " +
                               std::to_string(g.size()));
  }
  Biclique biclique;
  if (g.size() <= kBicliqueBudget) {
    biclique = max_biclique_complement(g);
  } else if (auto closed = closed_form_biclique_complement(family, g.size())) {
    biclique = std::move(*closed);
    exact = false;
  } else {
    throw SearchBudgetExceeded("no closed-form complement biclique number for " +
                               std::string(to_string(family)) + " with n = " +
                               std::to_string(g.size()));
  }
  return assemble(g, std::move(set), std::move(biclique), exact);
}

std::string to_key_value(const DiagnosticsReport& report) {
  std::ostringstream out;
  out << "n = " << report.n << '\n'
      << "alpha = " << report.alpha << '\n'
      << "beta_complement = " << report.beta_complement << '\n'
      << "minimax_lb = " << format_double(report.minimax_lb) << '\n'
      << "degree_functional = "
      << (report.degree_functional ? format_double(*report.degree_functional) : "") << '\n'
      << "independent_set = " << join(report.independent_set.vertices) << '\n'
      << "biclique_left = " << join(report.biclique.left) << '\n'
      << "biclique_right = " << join(report.biclique.right) << '\n'
      << "exact = " << (report.exact ? "true" : "false") << '\n';
  return out.str();
}

std::string to_json(const DiagnosticsReport& report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["alpha"] = report.alpha;
  j["beta_complement"] = report.beta_complement;
  j["minimax_lb"] = report.minimax_lb;
  j["degree_functional"] =
      report.degree_functional ? nlohmann::json(*report.degree_functional) : nlohmann::json();
  j["independent_set"] = report.independent_set.vertices;
  j["biclique_left"] = report.biclique.left;
  j["biclique_right"] = report.biclique.right;
  j["exact"] = report.exact;
  return j.dump(2);
}

}  // namespace permrank
