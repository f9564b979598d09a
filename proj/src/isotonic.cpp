#include "permrank/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace permrank {

std::vector<double> pav_isotonic(std::span<const double> values,
                                 std::span<const double> weights, Monotone direction) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("pav_isotonic: " + std::to_string(values.size()) +
                                " values but " + std::to_string(weights.size()) + " weights");
  }
  const std::size_t n = values.size();
  const double sign = direction == Monotone::nondecreasing ? 1.0 : -1.0;

  // Stack of pooled blocks: weighted mean, total weight, length.
  std::vector<double> mean;
  std::vector<double> weight;
  std::vector<std::size_t> length;
  mean.reserve(n);
  weight.reserve(n);
  length.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(weights[k] > 0.0)) {
      throw std::invalid_argument("pav_isotonic: weight " + std::to_string(k) +
                                  " is not positive");
    }
    mean.push_back(sign * values[k]);
    weight.push_back(weights[k]);
    length.push_back(1);
    while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
      const std::size_t top = mean.size() - 1;
      const double w = weight[top - 1] + weight[top];
      mean[top - 1] = (weight[top - 1] * mean[top - 1] + weight[top] * mean[top]) / w;
      weight[top - 1] = w;
      length[top - 1] += length[top];
      mean.pop_back();
      weight.pop_back();
      length.pop_back();
    }
  }
  std::vector<double> fitted;
  fitted.reserve(n);
  for (std::size_t b = 0; b < mean.size(); ++b)
    fitted.insert(fitted.end(), length[b], sign * mean[b]);
  return fitted;
}

namespace {

// Maximal runs of consecutive indices with identical rows and columns.
std::vector<std::size_t> constant_runs(const SquareMatrix& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < n; ++i) {
    bool same = i > 0;
    for (std::size_t j = 0; same && j < n; ++j)
      same = x(i, j) == x(i - 1, j) && x(j, i) == x(j, i - 1);
    if (!same) starts.push_back(i);
  }
  return starts;
}

// Largest row decrease or box excursion; the skew step is exact.
double max_violation(const SquareMatrix& m) {
  const std::size_t k = m.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      worst = std::max({worst, -m(a, b), m(a, b) - 1.0});
      if (b + 1 < k) worst = std::max(worst, m(a, b) - m(a, b + 1));
    }
  }
  return worst;
}

}  // namespace

BisoProjection project_biso(const SquareMatrix& x, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("project_biso: tol must be positive");
  const std::size_t n = x.size();
  for (double v : x.values()) {
    if (!std::isfinite(v)) throw std::invalid_argument("project_biso: non-finite input");
  }

  const auto starts = constant_runs(x);
  const std::size_t k = starts.size();
  std::vector<double> size(k);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t end = a + 1 < k ? starts[a + 1] : n;
    size[a] = static_cast<double>(end - starts[a]);
  }

  SquareMatrix current(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) current(a, b) = x(starts[a], starts[b]);

  // Dykstra increments for the two non-affine sets.
  SquareMatrix row_increment(k, 0.0);
  SquareMatrix box_increment(k, 0.0);
  SquareMatrix previous = current;
  std::vector<double> shifted(k);

  BisoProjection result{ComparisonMatrix(SquareMatrix(0)), false, 0, 0.0};
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    // Row-monotone cone, weighted by cell sizes.
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) shifted[b] = current(a, b) + row_increment(a, b);
      const auto fitted = pav_isotonic(shifted, size, Monotone::nondecreasing);
      for (std::size_t b = 0; b < k; ++b) {
        row_increment(a, b) = shifted[b] - fitted[b];
        current(a, b) = fitted[b];
      }
    }
    // Box [0, 1].
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double y = current(a, b) + box_increment(a, b);
        const double clamped = std::clamp(y, 0.0, 1.0);
        box_increment(a, b) = y - clamped;
        current(a, b) = clamped;
      }
    }
    // Skew affine set; weights are symmetric so the weighted projection is
    // the plain average. Being affine, it needs no Dykstra increment.
    for (std::size_t a = 0; a < k; ++a) {
      current(a, a) = 0.5;
      for (std::size_t b = a + 1; b < k; ++b) {
        const double upper = 0.5 * (current(a, b) + 1.0 - current(b, a));
        current(a, b) = upper;
        current(b, a) = 1.0 - upper;
      }
    }

    double change = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double d = current(a, b) - previous(a, b);
        change += size[a] * size[b] * d * d;
      }
    }
    change = std::sqrt(change);
    previous = current;
    result.iterations = iter;
    result.last_change = change;
    if (change < tol && max_violation(current) <= tol) {
      result.converged = true;
      break;
    }
  }

  SquareMatrix full(n);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t row_end = a + 1 < k ? starts[a + 1] : n;
    for (std::size_t b = 0; b < k; ++b) {
      const std::size_t col_end = b + 1 < k ? starts[b + 1] : n;
      for (std::size_t i = starts[a]; i < row_end; ++i)
        for (std::size_t j = starts[b]; j < col_end; ++j) full(i, j) = current(a, b);
    }
  }
  result.matrix = ComparisonMatrix(std::move(full));
  return result;
}

}  // namespace permrank
