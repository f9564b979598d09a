#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "permrank/isotonic.hpp"
#include "qp_oracle.hpp"

using namespace permrank;

namespace {

// Max-min characterization of weighted isotonic regression:
// f_i = max_{j<=i} min_{k>=i} mean_w(values[j..k]).
std::vector<double> isotonic_minimax(const std::vector<double>& v, const std::vector<double>& w) {
  const std::size_t n = v.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = -1e300;
    for (std::size_t j = 0; j <= i; ++j) {
      double worst = 1e300;
      for (std::size_t k = i; k < n; ++k) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t t = j; t <= k; ++t) {
          num += w[t] * v[t];
          den += w[t];
        }
        worst = std::min(worst, num / den);
      }
      best = std::max(best, worst);
    }
    f[i] = best;
  }
  return f;
}

SquareMatrix random_matrix(std::size_t n, Rng& rng, double lo, double hi) {
  SquareMatrix m(n);
  for (double& v : m.values()) v = uniform_real(rng, lo, hi);
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("isotonic");

TEST_CASE("pav examples") {
  const std::vector<double> ones3{1, 1, 1};
  const std::vector<double> sorted{1, 2, 3};
  CHECK(pav_isotonic(sorted, ones3, Monotone::nondecreasing) == sorted);

  const std::vector<double> pair{3, 1};
  const std::vector<double> ones2{1, 1};
  CHECK(pav_isotonic(pair, ones2, Monotone::nondecreasing) == std::vector<double>{2, 2});

  const std::vector<double> three{5, 3, 8};
  CHECK(pav_isotonic(three, ones3, Monotone::nondecreasing) == std::vector<double>{4, 4, 8});
  CHECK(pav_isotonic(sorted, ones3, Monotone::nonincreasing) == std::vector<double>{2, 2, 2});

  const std::vector<double> weighted{3, 1};
  const std::vector<double> w{3, 1};
  CHECK(pav_isotonic(weighted, w, Monotone::nondecreasing) == std::vector<double>{2.5, 2.5});

  CHECK_THROWS_AS(pav_isotonic(sorted, ones2, Monotone::nondecreasing), std::invalid_argument);
  const std::vector<double> zero_weight{1, 0, 1};
  CHECK_THROWS_AS(pav_isotonic(sorted, zero_weight, Monotone::nondecreasing),
                  std::invalid_argument);
}

TEST_CASE("pav matches the max-min formula") {
  Rng rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + uniform_index(rng, 12);
    std::vector<double> v(n);
    std::vector<double> w(n);
    for (auto& x : v) x = uniform_real(rng, -3.0, 3.0);
    for (auto& x : w) x = uniform_real(rng, 0.1, 4.0);
    const auto fitted = pav_isotonic(v, w, Monotone::nondecreasing);
    const auto expected = isotonic_minimax(v, w);
    for (std::size_t i = 0; i < n; ++i) CHECK(fitted[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(std::is_sorted(fitted.begin(), fitted.end()));
    CHECK(pav_isotonic(fitted, w, Monotone::nondecreasing) == fitted);

    std::vector<double> negated(n);
    std::transform(v.begin(), v.end(), negated.begin(), [](double x) { return -x; });
    const auto down = pav_isotonic(negated, w, Monotone::nonincreasing);
    for (std::size_t i = 0; i < n; ++i) CHECK(down[i] == doctest::Approx(-fitted[i]));
  }
}

TEST_CASE("projection of biso input is the input") {
  Rng rng(3);
  const auto m = sample_sst_bands(15, rng);
  const auto p = project_biso(m.entries());
  CHECK(p.converged);
  CHECK(std::sqrt(squared_distance(p.matrix.entries(), m.entries())) < 1e-8);
}

TEST_CASE("constant matrix projects to all one half") {
  const auto p = project_biso(SquareMatrix(6, 0.6));
  CHECK(p.converged);
  for (double v : p.matrix.entries().values()) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("projection output, idempotence and nonexpansiveness") {
  Rng rng(55);
  const double tol = 1e-8;
  for (int rep = 0; rep < 25; ++rep) {
    const auto x = random_matrix(20, rng, -0.2, 1.2);
    const auto y = random_matrix(20, rng, -0.2, 1.2);
    const auto px = project_biso(x, tol);
    const auto py = project_biso(y, tol);
    REQUIRE(px.converged);
    REQUIRE(py.converged);
    const auto check = is_biso(px.matrix, 1e-8);
    CHECK_MESSAGE(check.ok, check.violation);
    const auto ppx = project_biso(px.matrix.entries(), tol);
    CHECK(std::sqrt(squared_distance(ppx.matrix.entries(), px.matrix.entries())) <= 10 * tol);
    CHECK(std::sqrt(squared_distance(px.matrix.entries(), py.matrix.entries())) <=
          std::sqrt(squared_distance(x, y)) + 10 * tol);
  }
}

TEST_CASE("projection matches the quadratic-program oracle") {
  Rng rng(77);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 5);
    const auto x = random_matrix(n, rng, -0.3, 1.3);
    const auto p = project_biso(x, 1e-10, 100000);
    const auto q = oracle::project_biso_qp(x);
    CAPTURE(n);
    REQUIRE(p.converged);
    for (std::size_t k = 0; k < x.values().size(); ++k)
      CHECK(std::abs(p.matrix.entries().values()[k] - q.values()[k]) < 1e-5);
  }
}

TEST_CASE("block-constant inputs are solved on the reduced grid") {
  // Expand a random 4x4 cell matrix into blocks of sizes 1, 3, 2, 4.
  Rng rng(19);
  const std::vector<std::size_t> sizes{1, 3, 2, 4};
  std::vector<std::size_t> cell;
  for (std::size_t a = 0; a < sizes.size(); ++a) cell.insert(cell.end(), sizes[a], a);
  const std::size_t n = cell.size();
  SquareMatrix cells(4);
  for (double& v : cells.values()) v = uniform_real(rng, 0.0, 1.0);
  SquareMatrix x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = cells(cell[i], cell[j]);

  const auto fast = project_biso(x, 1e-10, 100000);
  // Perturbing one entry by a negligible amount defeats the run detection.
  SquareMatrix nudged = x;
  nudged(0, 0) += 1e-15;
  const auto slow = project_biso(nudged, 1e-10, 100000);
  REQUIRE(fast.converged);
  REQUIRE(slow.converged);
  CHECK(std::sqrt(squared_distance(fast.matrix.entries(), slow.matrix.entries())) < 1e-6);
}

TEST_CASE("non-convergence is reported") {
  Rng rng(8);
  const auto x = random_matrix(10, rng, 0.0, 1.0);
  const auto p = project_biso(x, 1e-14, 1);
  CHECK_FALSE(p.converged);
  CHECK(p.iterations == 1);
  CHECK(is_biso(p.matrix.entries(), 1.0).ok);  // still a valid comparison matrix
  CHECK_THROWS_AS(project_biso(x, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
