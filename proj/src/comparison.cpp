#include "permrank/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace permrank {

SquareMatrix SquareMatrix::transposed() const {
  SquareMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double squared_distance(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("matrix size mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
  double sum = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    const double d = av[k] - bv[k];
    sum += d * d;
  }
  return sum;
}

ComparisonMatrix::ComparisonMatrix(SquareMatrix entries, double tol)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double a = entries_(i, j);
      const double b = entries_(j, i);
      if (!(a >= -tol && a <= 1.0 + tol) || !(b >= -tol && b <= 1.0 + tol)) {
        throw std::invalid_argument("comparison matrix entry outside [0,1] at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (std::abs(a + b - 1.0) > tol) {
        throw std::invalid_argument("comparison matrix violates M + M^T = 1 at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

ComparisonMatrix make_noisy_sorting(const Permutation& pi, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 0.5)) {
    throw std::invalid_argument("noisy sorting lambda must lie in [0, 1/2]");
  }
  const std::size_t n = pi.size();
  SquareMatrix m(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pi[i] < pi[j]) {
        m(i, j) = 0.5 + lambda;
      } else if (pi[i] > pi[j]) {
        m(i, j) = 0.5 - lambda;
      }
    }
  }
  return ComparisonMatrix(std::move(m));
}

ComparisonMatrix sample_sst_bands(std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_sst_bands needs n >= 2");
  SquareMatrix m(n, 0.5);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      const std::size_t j = i + k;
      const double floor = std::max(m(i, j - 1), m(i + 1, j));
      const double value = uniform_real(rng, floor, 1.0);
      m(i, j) = value;
      m(j, i) = 1.0 - value;
    }
  }
  return ComparisonMatrix(std::move(m));
}

std::vector<double> scores(const ComparisonMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> tau(n, 0.0);
  if (n < 2) return std::vector<double>(n, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += m(i, j);
    tau[i] = sum / static_cast<double>(n - 1);
  }
  return tau;
}

BisoCheck is_biso(const SquareMatrix& m, double tol) {
  const std::size_t n = m.size();
  auto fail = [](std::string what, std::size_t i, std::size_t j, double a, double b) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " at (" << i << ", " << j << "): " << a << " vs " << b;
    return BisoCheck{false, msg.str()};
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) + m(j, i) - 1.0) > tol)
        return fail("skew constraint", i, j, m(i, j), m(j, i));
      if (m(i, j) < -tol || m(i, j) > 1.0 + tol)
        return fail("entry outside [0,1]", i, j, m(i, j), m(i, j));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (m(i, j) > m(i, j + 1) + tol)
        return fail("row decreases", i, j, m(i, j), m(i, j + 1));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (m(i + 1, j) > m(i, j) + tol)
        return fail("column increases", i, j, m(i, j), m(i + 1, j));
  return {};
}

SstMembership sst_membership(const ComparisonMatrix& m, double tol) {
  const auto tau = scores(m);
  std::vector<std::size_t> order(tau.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tau[a] > tau[b]; });
  std::vector<std::size_t> ranks(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r;
  const Permutation candidate(std::move(ranks));
  if (is_biso(to_rank_order(m.entries(), candidate), tol)) return SstMembership::member;
  for (std::size_t r = 0; r + 1 < order.size(); ++r)
    if (std::abs(tau[order[r]] - tau[order[r + 1]]) <= tol) return SstMembership::inconclusive;
  return SstMembership::not_member;
}

double frobenius_error(const ComparisonMatrix& a, const ComparisonMatrix& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("frobenius_error: size mismatch " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  if (a.size() == 0) return 0.0;
  const double n = static_cast<double>(a.size());
  return squared_distance(a.entries(), b.entries()) / (n * n);
}

SquareMatrix to_rank_order(const SquareMatrix& m, const Permutation& pi) {
  if (m.size() != pi.size()) throw std::invalid_argument("to_rank_order: size mismatch");
  const auto items = pi.items_by_rank();
  SquareMatrix z(m.size());
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b) z(a, b) = m(items[a], items[b]);
  return z;
}

SquareMatrix from_rank_order(const SquareMatrix& z, const Permutation& pi) {
  if (z.size() != pi.size()) throw std::invalid_argument("from_rank_order: size mismatch");
  SquareMatrix m(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) m(i, j) = z(pi[i], pi[j]);
  return m;
}

void write_matrix_csv(std::ostream& out, const SquareMatrix& m) {
  char buf[32];
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

SquareMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(field, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix csv: bad value '" + field + "'");
      }
      if (used != field.size()) throw std::invalid_argument("matrix csv: bad value '" + field + "'");
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("matrix csv: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " values, expected " +
                                  std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

}  // namespace permrank
