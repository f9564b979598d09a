#pragma once
// Permutations as rank vectors, Kendall tau distance and inversion tables.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace permrank {

/// Bijection on {0, ..., n-1}. `rank(i)` is the position of item i, with 0
/// the most preferred; item i beats item j in a noisy sorting model iff
/// rank(i) < rank(j).
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `ranks` is a bijection.
  explicit Permutation(std::vector<std::size_t> ranks);

  static Permutation identity(std::size_t n);
  static Permutation reversed(std::size_t n);

  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t rank(std::size_t item) const { return ranks_.at(item); }
  std::size_t operator[](std::size_t item) const { return ranks_[item]; }
  std::span<const std::size_t> ranks() const noexcept { return ranks_; }

  // items_by_rank()[r] is the item holding rank r.
  std::vector<std::size_t> items_by_rank() const;
  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> ranks_;
};

// Number of discordant pairs, O(n log n) by merge-sort inversion counting.
std::uint64_t kt_distance(const Permutation& p, const Permutation& q);

/// Lehmer-style inversion table: entry i counts later positions j > i with
/// rank(j) < rank(i), so entry i lies in {0, ..., n-1-i}.
class InversionTable {
 public:
  explicit InversionTable(std::vector<std::size_t> entries);
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const std::size_t> entries() const noexcept { return entries_; }
  std::uint64_t total() const noexcept;
  bool operator==(const InversionTable&) const = default;

 private:
  std::vector<std::size_t> entries_;
};

InversionTable inversion_table(const Permutation& p);
Permutation table_to_permutation(const InversionTable& table);

// Single comma-separated line of ranks.
void write_permutation(std::ostream& out, const Permutation& p);
Permutation read_permutation(std::istream& in);
Permutation parse_permutation(std::string_view line);

}  // namespace permrank
