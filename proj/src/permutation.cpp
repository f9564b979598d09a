#include "permrank/permutation.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace permrank {

namespace {

// Fenwick tree over {0, ..., n-1} counting inserted values.
class CountTree {
 public:
  explicit CountTree(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t value) {
    for (std::size_t i = value + 1; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }
  // Number of inserted values strictly below `value`.
  std::size_t count_below(std::size_t value) const {
    std::size_t total = 0;
    for (std::size_t i = value; i > 0; i -= i & (~i + 1)) total += tree_[i];
    return total;
  }

 private:
  std::vector<std::size_t> tree_;
};

std::uint64_t count_inversions(std::vector<std::size_t>& seq,
                               std::vector<std::size_t>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = count_inversions(seq, scratch, lo, mid) +
                        count_inversions(seq, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t out = lo;
  while (i < mid && j < hi) {
    if (seq[j] < seq[i]) {
      count += mid - i;
      scratch[out++] = seq[j++];
    } else {
      scratch[out++] = seq[i++];
    }
  }
  while (i < mid) scratch[out++] = seq[i++];
  while (j < hi) scratch[out++] = seq[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            seq.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {
  std::vector<bool> seen(ranks_.size(), false);
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    const std::size_t r = ranks_[i];
    if (r >= ranks_.size() || seen[r]) {
      throw std::invalid_argument("not a permutation: rank " + std::to_string(r) +
                                  " at item " + std::to_string(i));
    }
    seen[r] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  return Permutation(std::move(ranks));
}

Permutation Permutation::reversed(std::size_t n) {
  std::vector<std::size_t> ranks(n);
  for (std::size_t i = 0; i < n; ++i) ranks[i] = n - 1 - i;
  return Permutation(std::move(ranks));
}

std::vector<std::size_t> Permutation::items_by_rank() const {
  std::vector<std::size_t> items(ranks_.size());
  for (std::size_t i = 0; i < ranks_.size(); ++i) items[ranks_[i]] = i;
  return items;
}

Permutation Permutation::inverse() const { return Permutation(items_by_rank()); }

std::uint64_t kt_distance(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kt_distance: permutations of different length " +
                                std::to_string(p.size()) + " and " +
                                std::to_string(q.size()));
  }
  // q-ranks listed in p-rank order; each inversion is a discordant pair.
  const auto items = p.items_by_rank();
  std::vector<std::size_t> seq(items.size());
  for (std::size_t r = 0; r < items.size(); ++r) seq[r] = q[items[r]];
  std::vector<std::size_t> scratch(seq.size());
  return count_inversions(seq, scratch, 0, seq.size());
}

InversionTable::InversionTable(std::vector<std::size_t> entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i] > n - 1 - i) {
      throw std::invalid_argument("inversion table entry " + std::to_string(i) +
                                  " = " + std::to_string(entries_[i]) +
                                  " exceeds " + std::to_string(n - 1 - i));
    }
  }
}

std::uint64_t InversionTable::total() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

InversionTable inversion_table(const Permutation& p) {
  const std::size_t n = p.size();
  std::vector<std::size_t> entries(n);
  CountTree later(n);
  for (std::size_t i = n; i-- > 0;) {
    entries[i] = later.count_below(p[i]);
    later.add(p[i]);
  }
  return InversionTable(std::move(entries));
}

Permutation table_to_permutation(const InversionTable& table) {
  // Position i takes the entries[i]-th smallest rank not yet used.
  const auto entries = table.entries();
  std::vector<std::size_t> unused(entries.size());
  std::iota(unused.begin(), unused.end(), std::size_t{0});
  std::vector<std::size_t> ranks(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto it = unused.begin() + static_cast<std::ptrdiff_t>(entries[i]);
    ranks[i] = *it;
    unused.erase(it);
  }
  return Permutation(std::move(ranks));
}

void write_permutation(std::ostream& out, const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out << ',';
    out << p[i];
  }
  out << '\n';
}

Permutation parse_permutation(std::string_view line) {
  std::vector<std::size_t> ranks;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t comma = std::min(line.find(',', pos), line.size());
    const std::string field(line.substr(pos, comma - pos));
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("permutation: bad rank '" + field + "'");
    }
    if (used != field.size()) {
      throw std::invalid_argument("permutation: bad rank '" + field + "'");
    }
    ranks.push_back(static_cast<std::size_t>(value));
    pos = comma + 1;
  }
  return Permutation(std::move(ranks));
}

Permutation read_permutation(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("permutation: missing line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return parse_permutation(line);
}

}  // namespace permrank
