#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "permrank/comparison.hpp"

using namespace permrank;

TEST_SUITE_BEGIN("comparison");

TEST_CASE("noisy sorting entries") {
  const auto m = make_noisy_sorting(Permutation::identity(3), 0.4);
  const double expected[3][3] = {{.5, .9, .9}, {.1, .5, .9}, {.1, .1, .5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == doctest::Approx(expected[i][j]));

  Rng rng(5);
  const auto flat = make_noisy_sorting(oracle::random_permutation(6, rng), 0.0);
  for (double v : flat.entries().values()) CHECK(v == 0.5);

  CHECK_THROWS_AS(make_noisy_sorting(Permutation::identity(3), 0.6), std::invalid_argument);
  CHECK_THROWS_AS(make_noisy_sorting(Permutation::identity(3), -0.1), std::invalid_argument);
}

TEST_CASE("squared distance between noisy sorting matrices is 8 lambda^2 KT") {
  Rng rng(21);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 40);
    const double lambda = uniform_real(rng, 0.0, 0.5);
    const auto p = oracle::random_permutation(n, rng);
    const auto q = oracle::random_permutation(n, rng);
    const double lhs = squared_distance(make_noisy_sorting(p, lambda).entries(),
                                        make_noisy_sorting(q, lambda).entries());
    const double rhs = 8.0 * lambda * lambda * static_cast<double>(kt_distance(p, q));
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("comparison matrix invariants are enforced") {
  SquareMatrix bad(2, 0.5);
  bad(0, 1) = 0.7;
  CHECK_THROWS_AS(ComparisonMatrix{bad}, std::invalid_argument);
  SquareMatrix out_of_range(2, 0.5);
  out_of_range(0, 1) = 1.2;
  out_of_range(1, 0) = -0.2;
  CHECK_THROWS_AS(ComparisonMatrix{out_of_range}, std::invalid_argument);
}

TEST_CASE("sst band sampler") {
  Rng rng(8);
  for (std::size_t n : {2u, 3u, 10u, 64u}) {
    const auto m = sample_sst_bands(n, rng);
    const auto check = is_biso(m, 1e-12);
    CHECK_MESSAGE(check.ok, check.violation);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(m(i, i + 1) >= 0.5);
      CHECK(m(i, i + 1) <= 1.0);
    }
  }
  Rng a(99);
  Rng b(99);
  CHECK(sample_sst_bands(40, a) == sample_sst_bands(40, b));
  Rng c(1);
  const auto two = sample_sst_bands(2, c);
  CHECK(two(1, 0) == 1.0 - two(0, 1));
  CHECK_THROWS_AS(sample_sst_bands(1, c), std::invalid_argument);
}

TEST_CASE("scores") {
  const auto tau = scores(make_noisy_sorting(Permutation::identity(3), 0.4));
  CHECK(tau[0] == doctest::Approx(0.9));
  CHECK(tau[1] == doctest::Approx(0.5));
  CHECK(tau[2] == doctest::Approx(0.1));
  for (double t : scores(ComparisonMatrix(SquareMatrix(5, 0.5)))) CHECK(t == 0.5);

  // Closed form 1/2 + lambda (n - 2i + 1)/(n - 1), 1-based i.
  const std::size_t n = 9;
  const auto tau9 = scores(make_noisy_sorting(Permutation::identity(n), 0.3));
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = 0.5 + 0.3 * (static_cast<double>(n) - 2.0 * (i + 1) + 1.0) / (n - 1.0);
    CHECK(tau9[i] == doctest::Approx(expected));
  }
}

TEST_CASE("sorting noisy sorting scores recovers the permutation") {
  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 2 + uniform_index(rng, 60);
    const auto pi = oracle::random_permutation(n, rng);
    const auto tau = scores(make_noisy_sorting(pi, uniform_real(rng, 0.01, 0.5)));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return tau[a] > tau[b]; });
    for (std::size_t r = 0; r < n; ++r) CHECK(pi[order[r]] == r);
  }
}

TEST_CASE("bivariate isotonic check") {
  CHECK(is_biso(make_noisy_sorting(Permutation::identity(6), 0.3), 0.0).ok);
  const auto rev = is_biso(make_noisy_sorting(Permutation::reversed(4), 0.4), 1e-12);
  CHECK_FALSE(rev.ok);
  CHECK(rev.violation.find("row") != std::string::npos);
  SquareMatrix skewless(2, 0.5);
  skewless(0, 1) = 0.9;
  CHECK_FALSE(is_biso(skewless, 1e-12).ok);
}

TEST_CASE("sst membership via the score ordering") {
  Rng rng(17);
  const auto pi = oracle::random_permutation(12, rng);
  const auto ns = make_noisy_sorting(pi, 0.2);
  CHECK(sst_membership(ns, 1e-12) == SstMembership::member);

  // A cyclic 3-item matrix has tied scores and no consistent ordering.
  SquareMatrix cyclic(3, 0.5);
  cyclic(0, 1) = 0.8, cyclic(1, 0) = 0.2;
  cyclic(1, 2) = 0.8, cyclic(2, 1) = 0.2;
  cyclic(2, 0) = 0.8, cyclic(0, 2) = 0.2;
  CHECK(sst_membership(ComparisonMatrix(cyclic), 1e-12) == SstMembership::inconclusive);

  // Distinct scores but intransitive probabilities.
  SquareMatrix broken(3, 0.5);
  broken(0, 1) = 0.9, broken(1, 0) = 0.1;
  broken(0, 2) = 0.6, broken(2, 0) = 0.4;
  broken(1, 2) = 0.8, broken(2, 1) = 0.2;
  CHECK(sst_membership(ComparisonMatrix(broken), 1e-12) == SstMembership::not_member);
}

TEST_CASE("normalized frobenius error") {
  const auto a = make_noisy_sorting(Permutation::identity(3), 0.4);
  const auto b = make_noisy_sorting(Permutation::reversed(3), 0.4);
  CHECK(frobenius_error(a, a) == 0.0);
  CHECK(frobenius_error(a, b) == doctest::Approx(8.0 * 0.16 * 3.0 / 9.0));
  CHECK(frobenius_error(a, b) == frobenius_error(b, a));
  CHECK_THROWS_AS(frobenius_error(a, make_noisy_sorting(Permutation::identity(4), 0.4)),
                  std::invalid_argument);
}

TEST_CASE("rearrangement inequality oracle") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + uniform_index(rng, 50);
    std::vector<double> up(n);
    std::vector<double> down(n);
    for (auto& v : up) v = uniform_real(rng, 0.01, 10.0);
    for (auto& v : down) v = uniform_real(rng, 0.01, 10.0);
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end(), std::greater<>());
    const double sum_up = std::accumulate(up.begin(), up.end(), 0.0);
    const double sum_down = std::accumulate(down.begin(), down.end(), 0.0);
    const double cross = std::inner_product(up.begin(), up.end(), down.begin(), 0.0);
    CHECK(sum_up * sum_down >= static_cast<double>(n) * cross * (1.0 - 1e-12));
  }
}

TEST_CASE("rank-order conjugation") {
  Rng rng(2);
  const auto pi = oracle::random_permutation(7, rng);
  const auto m = make_noisy_sorting(pi, 0.35);
  const auto z = to_rank_order(m.entries(), pi);
  CHECK(z == make_noisy_sorting(Permutation::identity(7), 0.35).entries());
  CHECK(from_rank_order(z, pi) == m.entries());
}

TEST_CASE("matrix csv") {
  Rng rng(6);
  const auto m = sample_sst_bands(5, rng);
  std::stringstream buf;
  write_matrix_csv(buf, m.entries());
  const auto text = buf.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(read_matrix_csv(buf) == m.entries());

  std::istringstream ragged("0.5,1\n0\n");
  CHECK_THROWS_AS(read_matrix_csv(ragged), std::invalid_argument);
}

TEST_SUITE_END();
