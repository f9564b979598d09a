#include "permrank/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace permrank {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), degrees_(n, 0), adjacency_(n) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) {
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + ", " + std::to_string(v) +
                                  ") with n = " + std::to_string(n_));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->first) +
                                ", " + std::to_string(dup->second) + ")");
  }
  for (const auto& [u, v] : edges_) {
    ++degrees_[u];
    ++degrees_[v];
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_ || u == v) return false;
  const auto& row = adjacency_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

bool Graph::has_isolated_vertex() const noexcept {
  return std::find(degrees_.begin(), degrees_.end(), 0u) != degrees_.end();
}

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::complete, "complete"},
    {Family::two_cliques, "two_cliques"},
    {Family::clique_plus_path, "clique_plus_path"},
    {Family::power_law, "power_law"},
    {Family::regular_bipartite, "regular_bipartite"},
    {Family::star, "star"},
    {Family::path, "path"},
    {Family::cycle, "cycle"},
    {Family::erdos_renyi, "erdos_renyi"},
}};

void add_clique(std::vector<Edge>& edges, std::size_t first, std::size_t last) {
  for (std::size_t u = first; u < last; ++u)
    for (std::size_t v = u + 1; v < last; ++v) edges.emplace_back(u, v);
}

void require_even(Family family, std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument(std::string(to_string(family)) +
                                " needs an even vertex count >= 4, got " +
                                std::to_string(n));
  }
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& [f, known] : kFamilyNames)
    if (known == name) return f;
  throw std::invalid_argument("unknown graph family '" + std::string(name) + "'");
}

std::size_t regular_bipartite_degree(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("regular_bipartite alpha must lie in (0, 1]");
  }
  const std::size_t half = n / 2;
  // Small slack so exact powers such as 16^0.5 are not floored to 3.
  const auto d = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(half), alpha) + 1e-9));
  return std::clamp<std::size_t>(d, 1, half);
}

Graph make_topology(Family family, std::size_t n, const TopologyParams& params,
                    Rng* rng) {
  if (n < 2) {
    throw std::invalid_argument("topology needs at least 2 vertices");
  }
  std::vector<Edge> edges;
  switch (family) {
    case Family::complete:
      add_clique(edges, 0, n);
      break;
    case Family::two_cliques:
      require_even(family, n);
      add_clique(edges, 0, n / 2);
      add_clique(edges, n / 2, n);
      break;
    case Family::clique_plus_path: {
      require_even(family, n);
      const std::size_t half = n / 2;
      add_clique(edges, 0, half);
      // The path hangs off the last clique vertex.
      for (std::size_t v = half; v < n; ++v) edges.emplace_back(v - 1, v);
      break;
    }
    case Family::power_law: {
      // d_i = i for i < n plus one vertex of degree floor(n/2): the
      // antiregular sequence, the only graphical one this close to d_i = i.
      std::vector<std::size_t> degrees(n);
      for (std::size_t i = 0; i + 1 < n; ++i) degrees[i] = i + 1;
      degrees[n - 1] = n / 2;
      return havel_hakimi(degrees);
    }
    case Family::regular_bipartite: {
      require_even(family, n);
      const std::size_t half = n / 2;
      const std::size_t d = regular_bipartite_degree(n, params.alpha);
      for (std::size_t i = 0; i < half; ++i)
        for (std::size_t k = 0; k < d; ++k)
          edges.emplace_back(i, half + (i + k) % half);
      break;
    }
    case Family::star:
      for (std::size_t v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case Family::path:
      for (std::size_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      break;
    case Family::cycle:
      if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
      for (std::size_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
      edges.emplace_back(0, n - 1);
      break;
    case Family::erdos_renyi:
      if (!(params.p > 0.0 && params.p <= 1.0)) {
        throw std::invalid_argument("erdos_renyi p must lie in (0, 1]");
      }
      if (rng == nullptr) {
        throw std::invalid_argument("erdos_renyi needs a random generator");
      }
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (uniform01(*rng) < params.p) edges.emplace_back(u, v);
      break;
  }
  return Graph(n, std::move(edges));
}

Graph havel_hakimi(const std::vector<std::size_t>& degree_sequence) {
  const std::size_t n = degree_sequence.size();
  std::size_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t d = degree_sequence[v];
    if (d < 1 || d > n - 1) {
      throw std::invalid_argument("degree " + std::to_string(d) + " at vertex " +
                                  std::to_string(v) + " outside [1, n-1]");
    }
    total += d;
  }
  if (total % 2 != 0) {
    throw std::invalid_argument("degree sequence has odd sum " +
                                std::to_string(total));
  }

  std::vector<std::size_t> remaining = degree_sequence;
  std::vector<std::size_t> order(n);
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  for (std::size_t step = 1;; ++step) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return remaining[a] > remaining[b];
    });
    const std::size_t hub = order.front();
    const std::size_t need = remaining[hub];
    if (need == 0) break;
    remaining[hub] = 0;
    std::size_t available = 0;
    for (std::size_t k = 1; k < n && remaining[order[k]] > 0; ++k) ++available;
    if (available < need) {
      std::ostringstream msg;
      msg << "havel-hakimi step " << step << ": vertex " << hub << " needs "
          << need << " neighbors but only " << available
          << " vertices have remaining degree";
      throw InfeasibleSequence(msg.str());
    }
    for (std::size_t k = 1; k <= need; ++k) {
      --remaining[order[k]];
      edges.emplace_back(hub, order[k]);
    }
  }
  return Graph(n, std::move(edges));
}

double degree_functional(const Graph& g) {
  double sum = 0.0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const std::size_t d = g.degree(v);
    if (d == 0) {
      throw std::domain_error("degree functional undefined: vertex " +
                              std::to_string(v) + " is isolated");
    }
    sum += 1.0 / std::sqrt(static_cast<double>(d));
  }
  return sum / static_cast<double>(g.size());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("edge list: missing 'n m' header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t u = 0;
    std::size_t v = 0;
    if (!(in >> u >> v)) {
      throw std::invalid_argument("edge list: expected " + std::to_string(m) +
                                  " edges, read " + std::to_string(k));
    }
    if (u >= v) {
      throw std::invalid_argument("edge list: line " + std::to_string(k + 2) +
                                  " must satisfy u < v");
    }
    edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

}  // namespace permrank
