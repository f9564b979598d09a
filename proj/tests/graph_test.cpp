#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "permrank/graph.hpp"

using namespace permrank;

namespace {

void check_simple(const Graph& g) {
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < g.size(); ++v) degree_sum += g.degree(v);
  CHECK(degree_sum == 2 * g.edge_count());
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto [u, v] = g.edges()[k];
    CHECK(u < v);
    if (k > 0) CHECK(g.edges()[k - 1] < g.edges()[k]);
  }
}

bool two_colorable_by_halves(const Graph& g) {
  const std::size_t half = g.size() / 2;
  for (const auto& [u, v] : g.edges())
    if ((u < half) == (v < half)) return false;
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("family examples") {
  SUBCASE("two cliques") {
    const auto g = make_topology(Family::two_cliques, 10);
    CHECK(g.edge_count() == 20);
    for (auto d : g.degrees()) CHECK(d == 4);
    CHECK_FALSE(g.has_edge(0, 5));
    CHECK(g.has_edge(5, 9));
  }
  SUBCASE("complete") {
    const auto g = make_topology(Family::complete, 3);
    CHECK(g.degrees() == std::vector<std::size_t>{2, 2, 2});
  }
  SUBCASE("regular bipartite alpha=1 is K_{4,4}") {
    const auto g = make_topology(Family::regular_bipartite, 8, {.alpha = 1.0});
    CHECK(g.edge_count() == 16);
    for (auto d : g.degrees()) CHECK(d == 4);
    CHECK(two_colorable_by_halves(g));
  }
  SUBCASE("star") {
    const auto g = make_topology(Family::star, 5);
    CHECK(g.degrees() == std::vector<std::size_t>{4, 1, 1, 1, 1});
  }
  SUBCASE("clique plus path hangs off the last clique vertex") {
    const auto g = make_topology(Family::clique_plus_path, 8);
    CHECK(g.edge_count() == 6 + 4);
    CHECK(g.degree(3) == 4);
    CHECK(g.has_edge(3, 4));
    CHECK(g.degree(7) == 1);
    for (std::size_t v = 4; v < 7; ++v) CHECK(g.degree(v) == 2);
  }
  SUBCASE("path and cycle") {
    CHECK(make_topology(Family::path, 6).edge_count() == 5);
    const auto c = make_topology(Family::cycle, 6);
    for (auto d : c.degrees()) CHECK(d == 2);
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(make_topology(Family::two_cliques, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_topology(Family::regular_bipartite, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_topology(Family::clique_plus_path, 9), std::invalid_argument);
  CHECK_THROWS_AS(make_topology(Family::erdos_renyi, 10, {.p = 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(make_topology(Family::regular_bipartite, 8, {.alpha = 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("hypercube"), std::invalid_argument);
}

TEST_CASE("havel-hakimi") {
  CHECK(havel_hakimi({1, 1}).edges() == std::vector<Edge>{{0, 1}});
  CHECK(havel_hakimi({2, 2, 2}).edge_count() == 3);
  const auto k4 = havel_hakimi({3, 3, 3, 3});
  CHECK(k4 == make_topology(Family::complete, 4));

  CHECK_THROWS_AS(havel_hakimi({3, 3, 1, 1}), InfeasibleSequence);
  try {
    havel_hakimi({3, 3, 1, 1});
  } catch (const InfeasibleSequence& e) {
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
  CHECK_THROWS_AS(havel_hakimi({1, 1, 1}), std::invalid_argument);  // odd sum
  CHECK_THROWS_AS(havel_hakimi({0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(havel_hakimi({3, 1, 1}), std::invalid_argument);  // > n-1
}

TEST_CASE("power law realizes the antiregular sequence") {
  for (std::size_t n : {4u, 5u, 10u, 64u, 257u, 1024u}) {
    const auto g = make_topology(Family::power_law, n);
    std::vector<std::size_t> expected(n);
    for (std::size_t i = 0; i + 1 < n; ++i) expected[i] = i + 1;
    expected[n - 1] = n / 2;
    CHECK(g.degrees() == expected);
    check_simple(g);
  }
  // The literal sequence with a capped top degree is not graphical: two
  // vertices adjacent to everyone leave no room for a degree-1 vertex.
  CHECK_THROWS_AS(havel_hakimi({1, 2, 3, 4, 4}), InfeasibleSequence);
}

TEST_CASE("generated graphs are simple and their degree sequences round-trip") {
  Rng rng(7);
  const std::vector<std::pair<Family, std::size_t>> cases{
      {Family::complete, 9},          {Family::two_cliques, 12},
      {Family::clique_plus_path, 12}, {Family::power_law, 40},
      {Family::regular_bipartite, 20}, {Family::star, 9},
      {Family::path, 9},              {Family::cycle, 9},
      {Family::erdos_renyi, 30}};
  for (const auto& [family, n] : cases) {
    CAPTURE(to_string(family));
    const auto g = make_topology(family, n, {.alpha = 0.6, .p = 0.4}, &rng);
    check_simple(g);
    if (!g.has_isolated_vertex()) {
      CHECK(havel_hakimi(g.degrees()).degrees() == g.degrees());
    }
  }
}

TEST_CASE("regular bipartite degrees") {
  for (std::size_t n : {8u, 16u, 64u, 200u, 1024u}) {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
      const auto g = make_topology(Family::regular_bipartite, n, {.alpha = alpha});
      const auto d = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::floor(std::pow(n / 2.0, alpha) + 1e-9)));
      for (auto deg : g.degrees()) CHECK(deg == d);
      CHECK(two_colorable_by_halves(g));
    }
  }
  CHECK(regular_bipartite_degree(32, 0.5) == 4);
  CHECK(regular_bipartite_degree(1024, 0.5) == 22);
}

TEST_CASE("degree functional") {
  CHECK(degree_functional(make_topology(Family::two_cliques, 10)) == doctest::Approx(0.5));
  CHECK(degree_functional(make_topology(Family::complete, 5)) == doctest::Approx(0.5));
  CHECK(degree_functional(make_topology(Family::star, 5)) == doctest::Approx(0.9));
  CHECK_THROWS_AS(degree_functional(Graph(3, {{0, 1}})), std::domain_error);

  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = make_topology(Family::erdos_renyi, 40, {.p = 0.5}, &rng);
    if (g.has_isolated_vertex()) continue;
    std::vector<double> degree(g.size(), 0.0);
    for (const auto& [u, v] : g.edges()) {
      degree[u] += 1.0;
      degree[v] += 1.0;
    }
    double sum = 0.0;
    for (double d : degree) sum += 1.0 / std::sqrt(d);
    CHECK(std::abs(degree_functional(g) - sum / 40.0) < 1e-12);
    CHECK(degree_functional(g) > 0.0);
    CHECK(degree_functional(g) <= 1.0);
  }
}

TEST_CASE("edge list text round trip") {
  const auto g = make_topology(Family::clique_plus_path, 10);
  std::stringstream buf;
  write_edge_list(buf, g);
  CHECK(buf.str().rfind("10 15\n", 0) == 0);
  CHECK(read_edge_list(buf) == g);

  std::istringstream reversed("3 1\n2 1\n");
  CHECK_THROWS_AS(read_edge_list(reversed), std::invalid_argument);
  std::istringstream truncated("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(truncated), std::invalid_argument);
}

TEST_SUITE_END();
