#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coalstab/market_model.hpp"
#include "coalstab/partitions.hpp"

namespace coalstab {

enum class BeliefMode {
  kGivenPartition,
  kFixedJPessimistic,
  kFixedJOptimistic,
  kGlobalPessimistic,
  kGlobalOptimistic,
};

std::string_view to_string(BeliefMode mode);
BeliefMode parse_belief_mode(std::string_view text);

/// Equal-split core test of the grand coalition against one deviation.
struct StabilityVerdict {
  bool stable = false;
  double margin = 0.0;  // v(N)/n - v(S)/s
  double v_s = 0.0;
  double per_agent = 0.0;
  double grand_per_agent = 0.0;
  CoalitionStructure structure;
  BeliefMode belief_mode = BeliefMode::kGivenPartition;
};

// Margins within this fraction of v(N)/n are treated as exact ties.
inline constexpr double kTieTolerance = 1e-12;

/// stable <=> v(N)/n >= v(S)/s; ties count as stable. Requires s < n.
StabilityVerdict core_check(const MarketParams& params, const CoalitionStructure& structure);

struct ThresholdReport {
  double zeta = 0.0;
  int n = 0;
  int s = 0;
  double gamma = 0.0;
  bool feasible = false;  // zeta < n - s
};

/// zeta = 2 (sqrt(nu / sigma) - 1) / (1 + (1 - gamma) / sigma) with
/// sigma = 1 + gamma (s - 1), nu = 1 + gamma (n - 1). Defined for gamma in (0, 1].
ThresholdReport threshold_zeta(int n, int s, double gamma);

/// 2 (sqrt(n / s) - 1), the homogeneous-goods threshold.
double threshold_gamma1(int n, int s);

StabilityVerdict belief_verdict(const MarketParams& params, int s, BeliefMode mode,
                                std::optional<int> j = std::nullopt,
                                std::span<const int> outsiders = {});

struct ScanOptions {
  int max_n = 16;
  std::uint64_t max_partitions = 5'000'000;
  int threads = 1;
};

struct ScanCell {
  int s = 0;
  int j = 0;
  Partition partition;
  double v_s = 0.0;
  double per_agent = 0.0;
  double margin = 0.0;
  bool stable = false;
};

struct PartCountSummary {
  int j = 0;
  std::uint64_t partitions = 0;
  std::uint64_t unstable = 0;
  double min_margin = 0.0;
  bool all_stable() const { return unstable == 0; }
};

struct DeviationSummary {
  int s = 0;
  std::uint64_t partitions = 0;
  std::uint64_t unstable = 0;
  std::vector<PartCountSummary> per_j{};
  // Smallest j such that every j' >= j has all partitions stable.
  std::optional<int> empirical_jstar{};
  // Threshold data, present for gamma in (0, 1].
  std::optional<double> zeta{};
  std::optional<int> zeta_ceil{};
  // True when every integer j > zeta has all partitions stable.
  std::optional<bool> zeta_sufficient{};
};

struct ScanReport {
  MarketParams params;
  std::vector<DeviationSummary> per_s{};
  std::vector<ScanCell> cells{};
  std::uint64_t total_cells = 0;
  std::uint64_t unstable_cells = 0;
};

/// Every s in [1, n-1], every j in [1, n-s], every partition of n - s into j
/// parts. Throws BudgetExceeded when n exceeds options.max_n or the partition
/// count exceeds options.max_partitions. Output does not depend on threads.
ScanReport exhaustive_scan(const MarketParams& params, const ScanOptions& options = {});

/// The same enumeration restricted to a single deviating size s; not bounded
/// by max_n, only by max_partitions.
ScanReport scan_deviation(const MarketParams& params, int s, const ScanOptions& options = {});

}  // namespace coalstab
