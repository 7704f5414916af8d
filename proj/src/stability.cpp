#include "coalstab/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "coalstab/worth.hpp"

namespace coalstab {
namespace {

StabilityVerdict verdict_from(const MarketParams& params, const CoalitionStructure& structure,
                              BeliefMode mode) {
  const WorthReport worth = coalition_worth(params, structure);
  double margin = worth.grand_per_agent - worth.per_agent;
  if (std::abs(margin) <= kTieTolerance * std::abs(worth.grand_per_agent)) margin = 0.0;
  return StabilityVerdict{
      .stable = margin >= 0.0,
      .margin = margin,
      .v_s = worth.v_s,
      .per_agent = worth.per_agent,
      .grand_per_agent = worth.grand_per_agent,
      .structure = structure,
      .belief_mode = mode,
  };
}

void require_deviation(const MarketParams& params, int s) {
  if (s < 1 || s >= params.n) {
    throw DomainError("deviating coalition size must satisfy 1 <= s < n");
  }
}

struct Task {
  int s;
  int j;
};

std::vector<ScanCell> run_task(const MarketParams& params, Task task) {
  std::vector<ScanCell> cells;
  for (const Partition& parts : enumerate_partitions(params.n - task.s, task.j)) {
    const StabilityVerdict v =
        verdict_from(params, make_structure(params.n, task.s, parts), BeliefMode::kGivenPartition);
    cells.push_back(ScanCell{task.s, task.j, parts, v.v_s, v.per_agent, v.margin, v.stable});
  }
  return cells;
}

ScanReport run_scan(const MarketParams& params, const std::vector<int>& deviations,
                    const ScanOptions& options) {
  std::uint64_t budget = 0;
  std::vector<Task> tasks;
  for (int s : deviations) {
    budget += partition_count(params.n - s);
    for (int j = 1; j <= params.n - s; ++j) tasks.push_back({s, j});
  }
  if (budget > options.max_partitions) {
    throw BudgetExceeded("scan needs " + std::to_string(budget) + " partitions, cap is " +
                         std::to_string(options.max_partitions));
  }

  std::vector<std::vector<ScanCell>> results(tasks.size());
  const auto workers = static_cast<std::size_t>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1, tasks.size()));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) results[t] = run_task(params, tasks[t]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
          try {
            results[t] = run_task(params, tasks[t]);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
            return;
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  ScanReport report{.params = params};
  std::size_t t = 0;
  for (int s : deviations) {
    DeviationSummary summary{.s = s};
    for (int j = 1; j <= params.n - s; ++j, ++t) {
      PartCountSummary pj{.j = j, .min_margin = std::numeric_limits<double>::infinity()};
      for (ScanCell& cell : results[t]) {
        ++pj.partitions;
        if (!cell.stable) ++pj.unstable;
        pj.min_margin = std::min(pj.min_margin, cell.margin);
        report.cells.push_back(std::move(cell));
      }
      summary.partitions += pj.partitions;
      summary.unstable += pj.unstable;
      summary.per_j.push_back(pj);
    }
    for (auto it = summary.per_j.rbegin(); it != summary.per_j.rend() && it->all_stable(); ++it) {
      summary.empirical_jstar = it->j;
    }
    if (params.gamma > 0.0) {
      const ThresholdReport th = threshold_zeta(params.n, s, params.gamma);
      summary.zeta = th.zeta;
      summary.zeta_ceil = static_cast<int>(std::ceil(th.zeta));
      bool sufficient = true;
      for (const PartCountSummary& pj : summary.per_j) {
        if (pj.j > th.zeta && !pj.all_stable()) sufficient = false;
      }
      summary.zeta_sufficient = sufficient;
    }
    report.total_cells += summary.partitions;
    report.unstable_cells += summary.unstable;
    report.per_s.push_back(std::move(summary));
  }
  return report;
}

}  // namespace

std::string_view to_string(BeliefMode mode) {
  switch (mode) {
    case BeliefMode::kGivenPartition: return "given-partition";
    case BeliefMode::kFixedJPessimistic: return "fixed-j-pessimistic";
    case BeliefMode::kFixedJOptimistic: return "fixed-j-optimistic";
    case BeliefMode::kGlobalPessimistic: return "global-pessimistic";
    case BeliefMode::kGlobalOptimistic: return "global-optimistic";
  }
  return "given-partition";
}

BeliefMode parse_belief_mode(std::string_view text) {
  for (BeliefMode mode : {BeliefMode::kGivenPartition, BeliefMode::kFixedJPessimistic,
                          BeliefMode::kFixedJOptimistic, BeliefMode::kGlobalPessimistic,
                          BeliefMode::kGlobalOptimistic}) {
    if (to_string(mode) == text) return mode;
  }
  throw DomainError("unknown belief mode '" + std::string(text) + "'");
}

StabilityVerdict core_check(const MarketParams& params, const CoalitionStructure& structure) {
  if (structure.n() != params.n) throw DomainError("structure and params disagree on n");
  require_deviation(params, structure.s());
  return verdict_from(params, structure, BeliefMode::kGivenPartition);
}

ThresholdReport threshold_zeta(int n, int s, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw DomainError("zeta is defined only for gamma in (0, 1]");
  }
  if (s < 1 || s >= n) throw DomainError("threshold needs 1 <= s < n");
  const double sigma = 1.0 + gamma * (s - 1);
  const double nu = 1.0 + gamma * (n - 1);
  const double zeta = 2.0 * (std::sqrt(nu / sigma) - 1.0) / (1.0 + (1.0 - gamma) / sigma);
  return ThresholdReport{zeta, n, s, gamma, zeta < static_cast<double>(n - s)};
}

double threshold_gamma1(int n, int s) {
  if (s < 1 || s >= n) throw DomainError("threshold needs 1 <= s < n");
  return 2.0 * (std::sqrt(static_cast<double>(n) / s) - 1.0);
}

StabilityVerdict belief_verdict(const MarketParams& params, int s, BeliefMode mode,
                                std::optional<int> j, std::span<const int> outsiders) {
  require_deviation(params, s);
  const int m = params.n - s;
  switch (mode) {
    case BeliefMode::kGivenPartition:
      return core_check(params, make_structure(params.n, s, outsiders));
    case BeliefMode::kFixedJPessimistic:
    case BeliefMode::kFixedJOptimistic: {
      if (!j) throw DomainError("fixed-j belief modes need a part count j");
      const ExtremalPartition parts = mode == BeliefMode::kFixedJPessimistic
                                          ? min_worth_partition(m, *j)
                                          : max_worth_partition(m, *j);
      return verdict_from(params, make_structure(params.n, s, parts.parts), mode);
    }
    case BeliefMode::kGlobalPessimistic:
    case BeliefMode::kGlobalOptimistic: {
      const bool pessimistic = mode == BeliefMode::kGlobalPessimistic;
      std::optional<StabilityVerdict> best;
      for (int parts = 1; parts <= m; ++parts) {
        const ExtremalPartition p =
            pessimistic ? min_worth_partition(m, parts) : max_worth_partition(m, parts);
        StabilityVerdict v = verdict_from(params, make_structure(params.n, s, p.parts), mode);
        if (!best || (pessimistic ? v.v_s < best->v_s : v.v_s > best->v_s)) best = std::move(v);
      }
      return *best;
    }
  }
  throw DomainError("unknown belief mode");
}

ScanReport exhaustive_scan(const MarketParams& params, const ScanOptions& options) {
  if (params.n > options.max_n) {
    throw BudgetExceeded("n = " + std::to_string(params.n) + " exceeds the scan bound " +
                         std::to_string(options.max_n));
  }
  std::vector<int> deviations;
  for (int s = 1; s < params.n; ++s) deviations.push_back(s);
  return run_scan(params, deviations, options);
}

ScanReport scan_deviation(const MarketParams& params, int s, const ScanOptions& options) {
  require_deviation(params, s);
  return run_scan(params, {s}, options);
}

}  // namespace coalstab
