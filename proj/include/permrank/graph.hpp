#pragma once
// Comparison topologies: the fixed graphs on which pairwise comparisons are
// observed, plus the generators for the graph families used in experiments.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permrank/random.hpp"

namespace permrank {

using Edge = std::pair<std::size_t, std::size_t>;

// Thrown when a degree sequence cannot be realized by a simple graph.
class InfeasibleSequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected simple graph on vertices 0..n-1.
///
/// Edges are stored as a sorted list of (u, v) with u < v. The adjacency
/// index is built at construction, so a Graph is immutable and can be shared
/// between threads.
class Graph {
 public:
  // Validates simplicity: no loops, no duplicates, endpoints in range.
  // Edges may be given in either orientation.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
  std::size_t degree(std::size_t v) const { return degrees_.at(v); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  bool has_edge(std::size_t u, std::size_t v) const;
  bool has_isolated_vertex() const noexcept;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degrees_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

enum class Family {
  complete,
  two_cliques,
  clique_plus_path,
  power_law,
  regular_bipartite,
  star,
  path,
  cycle,
  erdos_renyi,
};

std::string_view to_string(Family family);
// Throws std::invalid_argument on an unknown name.
Family parse_family(std::string_view name);

struct TopologyParams {
  double alpha = 1.0;  // regular_bipartite exponent, in (0, 1]
  double p = 0.5;      // erdos_renyi edge probability, in (0, 1]
};

// Builds one member of a graph family. `rng` is only read by erdos_renyi.
//
// two_cliques, clique_plus_path and regular_bipartite need even n >= 4.
// power_law realizes degrees 1, 2, ..., n-1 on vertices 0..n-2 and n/2
// (rounded down) on vertex n-1.
Graph make_topology(Family family, std::size_t n,
                    const TopologyParams& params = {}, Rng* rng = nullptr);

// Degree of every vertex in the regular bipartite family.
std::size_t regular_bipartite_degree(std::size_t n, double alpha);

// Havel-Hakimi realization. Vertices are processed largest remaining degree
// first, ties to the smaller index; InfeasibleSequence names the failing step.
Graph havel_hakimi(const std::vector<std::size_t>& degree_sequence);

// (1/n) * sum_v 1/sqrt(d_v). Throws std::domain_error on an isolated vertex.
double degree_functional(const Graph& g);

// Edge-list text: "n m" then m lines "u v" with u < v, 0-based.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace permrank
