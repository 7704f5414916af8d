#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

namespace coalstab {

using Partition = std::vector<int>;

/// Integer partitions of m (optionally into exactly j parts), generated one
/// at a time in reverse-lexicographic order. Parts are non-increasing.
class PartitionEnumerator {
 public:
  PartitionEnumerator(int m, std::optional<int> j);

  bool done() const { return done_; }
  const Partition& current() const { return current_; }
  void advance();

 private:
  int m_;
  std::optional<int> j_;
  Partition current_;
  bool done_ = false;
};

class PartitionSet {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    explicit iterator(PartitionEnumerator e) : enumerator_(std::move(e)) {}

    reference operator*() const { return enumerator_->current(); }
    pointer operator->() const { return &enumerator_->current(); }
    iterator& operator++() {
      enumerator_->advance();
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return !it.enumerator_ || it.enumerator_->done();
    }

   private:
    std::optional<PartitionEnumerator> enumerator_;
  };

  PartitionSet(int m, std::optional<int> j) : m_(m), j_(j) {}

  int m() const { return m_; }
  std::optional<int> parts() const { return j_; }
  std::uint64_t count() const;

  iterator begin() const { return iterator(PartitionEnumerator(m_, j_)); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int m_;
  std::optional<int> j_;
};

/// Throws DomainError for m < 1 or a fixed j outside [1, m].
PartitionSet enumerate_partitions(int m, std::optional<int> j = std::nullopt);

/// Number of partitions of m into exactly j parts (j = nullopt: any count).
/// Saturates at UINT64_MAX.
std::uint64_t partition_count(int m, std::optional<int> j = std::nullopt);

struct ExtremalPartition {
  Partition parts;
  // The continuous optimum (m/j each) is not integral; parts is the
  // balanced integer split instead.
  bool extrapolated = false;
};

/// Equal split (m/j, ..., m/j), or the balanced split when j does not divide m.
ExtremalPartition min_worth_partition(int m, int j);

/// (m - (j - 1), 1, ..., 1).
ExtremalPartition max_worth_partition(int m, int j);

}  // namespace coalstab
