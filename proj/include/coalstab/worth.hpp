#pragma once

#include <span>

#include "coalstab/equilibrium.hpp"
#include "coalstab/market_model.hpp"

namespace coalstab {

struct WorthReport {
  double v_s = 0.0;
  double per_agent = 0.0;
  double v_n = 0.0;
  double grand_per_agent = 0.0;
  CoalitionStructure structure;
};

/// v(S) = s (1 + gamma s - gamma) ((a - c) / C_0)^2, with the grand-coalition
/// benchmark attached.
WorthReport coalition_worth(const MarketParams& params, const CoalitionStructure& structure);

/// v(N) = n (a - c)^2 / (4 (1 + gamma (n - 1))).
double grand_worth(const MarketParams& params);

/// Direct profit accounting sum_{i < s} (P_i - c) q_i over agent-level
/// quantities, S occupying the first s slots.
double accounting_worth(const MarketParams& params, int s, std::span<const double> quantities);

}  // namespace coalstab
