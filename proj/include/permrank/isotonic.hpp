#pragma once
// Isotonic regression: weighted pool-adjacent-violators and the Euclidean
// projection onto bivariate isotonic comparison matrices.

#include <cstddef>
#include <span>
#include <vector>

#include "permrank/comparison.hpp"

namespace permrank {

enum class Monotone { nondecreasing, nonincreasing };

// Weighted least-squares fit of `values` by a monotone sequence.
std::vector<double> pav_isotonic(std::span<const double> values,
                                 std::span<const double> weights, Monotone direction);

struct BisoProjection {
  ComparisonMatrix matrix;
  bool converged = false;
  std::size_t iterations = 0;
  double last_change = 0.0;  // Frobenius norm of the final sweep's update
};

/// Projection of `x` onto matrices in [0,1]^{n x n} with non-decreasing rows
/// and M + M^T = ee^T (hence non-increasing columns).
///
/// Runs Dykstra's alternating projections over the row-monotone cone, the box
/// and the skew affine set, stopping once a full sweep moves the iterate by
/// less than `tol` in Frobenius norm and no row decrease exceeds `tol`. Runs
/// of consecutive indices whose rows and columns coincide are first collapsed
/// into weighted cells; the projection of such a block-constant input is itself block-constant, so the
/// reduced problem has the same solution.
///
/// On hitting `max_iter` the last iterate is returned with converged = false.
BisoProjection project_biso(const SquareMatrix& x, double tol = 1e-8,
                            std::size_t max_iter = 10000);

}  // namespace permrank
