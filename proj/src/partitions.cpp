#include "coalstab/partitions.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "coalstab/errors.hpp"

namespace coalstab {
namespace {

void check_args(int m, std::optional<int> j) {
  if (m < 1) throw DomainError("partitioned integer must be at least 1, got " + std::to_string(m));
  if (j && (*j < 1 || *j > m)) {
    throw DomainError("part count j = " + std::to_string(*j) + " must lie in [1, " +
                      std::to_string(m) + "]");
  }
}

std::uint64_t saturating_add(std::uint64_t x, std::uint64_t y) {
  return x > std::numeric_limits<std::uint64_t>::max() - y ? std::numeric_limits<std::uint64_t>::max()
                                                             : x + y;
}

}  // namespace

PartitionEnumerator::PartitionEnumerator(int m, std::optional<int> j) : m_(m), j_(j) {
  check_args(m, j);
  if (j_) {
    current_.assign(static_cast<std::size_t>(*j_), 1);
    current_[0] = m_ - (*j_ - 1);
  } else {
    current_ = {m_};
  }
}

void PartitionEnumerator::advance() {
  if (done_) return;
  // Decrement the rightmost part that admits a valid refill of the suffix,
  // then refill the suffix with its lexicographically largest completion.
  int tail = 0;
  for (std::size_t i = current_.size(); i-- > 0;) {
    const int v = current_[i] - 1;
    const int rest = tail + 1;
    tail += current_[i];
    if (v < 1) continue;
    if (j_) {
      const int slots = *j_ - static_cast<int>(i) - 1;
      if (slots == 0 || rest > slots * v) continue;
      current_[i] = v;
      int remaining = rest;
      for (int t = 0; t < slots; ++t) {
        const int part = std::min(v, remaining - (slots - t - 1));
        current_[i + 1 + static_cast<std::size_t>(t)] = part;
        remaining -= part;
      }
    } else {
      current_.resize(i + 1);
      current_[i] = v;
      int remaining = rest;
      while (remaining > 0) {
        const int part = std::min(v, remaining);
        current_.push_back(part);
        remaining -= part;
      }
    }
    return;
  }
  done_ = true;
}

std::uint64_t PartitionSet::count() const { return partition_count(m_, j_); }

PartitionSet enumerate_partitions(int m, std::optional<int> j) {
  check_args(m, j);
  return PartitionSet(m, j);
}

std::uint64_t partition_count(int m, std::optional<int> j) {
  check_args(m, j);
  // exact[k][r]: partitions of r into exactly k parts,
  // p(r, k) = p(r - 1, k - 1) + p(r - k, k).
  const int kmax = j ? *j : m;
  std::vector<std::vector<std::uint64_t>> exact(
      static_cast<std::size_t>(kmax) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(m) + 1, 0));
  exact[0][0] = 1;
  for (int k = 1; k <= kmax; ++k) {
    for (int r = k; r <= m; ++r) {
      exact[k][r] = saturating_add(exact[k - 1][r - 1], exact[k][r - k]);
    }
  }
  if (j) return exact[*j][m];
  std::uint64_t total = 0;
  for (int k = 1; k <= m; ++k) total = saturating_add(total, exact[k][m]);
  return total;
}

ExtremalPartition min_worth_partition(int m, int j) {
  check_args(m, j);
  ExtremalPartition out;
  out.parts.assign(static_cast<std::size_t>(j), m / j);
  const int extra = m % j;
  for (int k = 0; k < extra; ++k) ++out.parts[static_cast<std::size_t>(k)];
  out.extrapolated = extra != 0;
  return out;
}

ExtremalPartition max_worth_partition(int m, int j) {
  check_args(m, j);
  ExtremalPartition out;
  out.parts.assign(static_cast<std::size_t>(j), 1);
  out.parts[0] = m - (j - 1);
  return out;
}

}  // namespace coalstab
