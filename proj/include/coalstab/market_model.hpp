#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coalstab/errors.hpp"

namespace coalstab {

/// Linear-demand differentiated Cournot environment: agent i faces price
/// P_i = a - q_i - gamma * sum_{l != i} q_l and unit cost c.
struct MarketParams {
  double a = 10.0;
  double c = 1.0;
  double gamma = 1.0;
  int n = 2;

  double margin() const { return a - c; }
};

/// Throws DomainError naming the first violated condition:
/// a > 0, 0 < c < a, gamma in (-1, 1] and non-zero, n >= 2, and
/// gamma > -1/(n-1) (existence of the interior equilibrium).
MarketParams validate_params(double a, double c, double gamma, int n);

/// A deviating coalition of size s facing outsiders grouped by size.
/// Only sizes matter, so outsiders are kept as a non-increasing multiset.
class CoalitionStructure {
 public:
  int n() const { return n_; }
  int s() const { return s_; }
  int j() const { return static_cast<int>(outsiders_.size()); }
  const std::vector<int>& outsider_sizes() const { return outsiders_; }
  bool is_grand() const { return s_ == n_; }

  /// Sizes of all coalitions with S first: (s, s_1, ..., s_j).
  std::vector<int> all_sizes() const;

  friend bool operator==(const CoalitionStructure&,
                         const CoalitionStructure&) = default;

 private:
  friend CoalitionStructure make_structure(int, int, std::span<const int>);
  CoalitionStructure(int n, int s, std::vector<int> outsiders)
      : n_(n), s_(s), outsiders_(std::move(outsiders)) {}

  int n_;
  int s_;
  std::vector<int> outsiders_;
};

CoalitionStructure make_structure(int n, int s, std::span<const int> outsider_sizes);

inline CoalitionStructure make_structure(int n, int s,
                                         std::initializer_list<int> outsider_sizes) {
  return make_structure(n, s, std::span<const int>(outsider_sizes.begin(),
                                                   outsider_sizes.size()));
}

/// "7,7,7" -> {7,7,7}; the empty string yields no sizes.
std::vector<int> parse_size_list(const std::string& text);

std::string format_sizes(std::span<const int> sizes, char sep = ',');

}  // namespace coalstab
