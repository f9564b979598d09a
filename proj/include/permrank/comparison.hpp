#pragma once
// Comparison-probability matrices and the noisy sorting / SST models.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "permrank/permutation.hpp"
#include "permrank/random.hpp"

namespace permrank {

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  SquareMatrix transposed() const;
  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// Sum of squared entrywise differences.
double squared_distance(const SquareMatrix& a, const SquareMatrix& b);

/// Matrix of comparison probabilities: entries in [0, 1], diagonal 1/2 and
/// M + M^T = ee^T. The constructor checks all three to `tol`.
class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(SquareMatrix entries, double tol = 1e-12);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const SquareMatrix& entries() const noexcept { return entries_; }

  bool operator==(const ComparisonMatrix&) const = default;

 private:
  SquareMatrix entries_;
};

// Entry (i, j) is 1/2 + lambda * sgn(rank(j) - rank(i)).
ComparisonMatrix make_noisy_sorting(const Permutation& pi, double lambda);

// SST matrix with independent bands, already in bivariate isotonic form.
// Band k is filled for k = 1..n-1 and, within a band, by increasing row;
// each entry is uniform on [max(left, below), 1].
ComparisonMatrix sample_sst_bands(std::size_t n, Rng& rng);

// tau_i = mean of row i over j != i.
std::vector<double> scores(const ComparisonMatrix& m);

struct BisoCheck {
  bool ok = true;
  std::string violation;  // first violation found, empty when ok
  explicit operator bool() const noexcept { return ok; }
};

// Rows non-decreasing, columns non-increasing and the skew constraint, all
// within tol.
BisoCheck is_biso(const SquareMatrix& m, double tol);
inline BisoCheck is_biso(const ComparisonMatrix& m, double tol) {
  return is_biso(m.entries(), tol);
}

enum class SstMembership { member, not_member, inconclusive };

// Checks only the score-sorted candidate ordering. Tied scores with a failing
// candidate are reported as inconclusive.
SstMembership sst_membership(const ComparisonMatrix& m, double tol);

// (1/n^2) * ||a - b||_F^2.
double frobenius_error(const ComparisonMatrix& a, const ComparisonMatrix& b);

// Reorders rows and columns so index r refers to the item of rank r.
SquareMatrix to_rank_order(const SquareMatrix& m, const Permutation& pi);
// Inverse of to_rank_order.
SquareMatrix from_rank_order(const SquareMatrix& z, const Permutation& pi);

// n rows of n comma-separated values at 17 significant digits.
void write_matrix_csv(std::ostream& out, const SquareMatrix& m);
SquareMatrix read_matrix_csv(std::istream& in);

}  // namespace permrank
