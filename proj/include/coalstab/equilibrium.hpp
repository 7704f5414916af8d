#pragma once

#include <vector>

#include "coalstab/market_model.hpp"

namespace coalstab {

/// Symmetric Cournot-Nash quantities, one entry per coalition with the
/// deviating coalition S at index 0 and outsiders following in the
/// structure's canonical order.
struct EquilibriumProfile {
  std::vector<int> sizes;       // s_0 = s, s_1..s_j
  std::vector<double> y;        // per-agent quantity in each coalition
  std::vector<double> lambdas;  // gamma*s_k - 2*gamma + 2 (closed form only)
  std::vector<double> big_a;    // A_i (closed form only)
  double c0 = 0.0;              // denominator of y_0

  // Populated by the full-dimension solve only.
  std::vector<double> agent_quantities;
  double within_spread = 0.0;   // max relative spread of q inside a coalition

  double total_quantity() const;
};

/// y_i = (a-c) / (2[1 + gamma(s_i - 1)] + gamma A_i).
EquilibriumProfile closed_form_equilibrium(const MarketParams& params,
                                           const CoalitionStructure& structure);

/// Builds and solves the n x n first-order system directly, without the
/// symmetry reduction, then collapses agent quantities to coalition means.
/// c0 is reported as (a-c)/y_0; lambdas and big_a stay empty.
EquilibriumProfile solve_foc_system(const MarketParams& params,
                                    const CoalitionStructure& structure);

/// Max |lhs - rhs| over the reduced (j+1)-equation first-order system.
double foc_residual(const MarketParams& params, const std::vector<int>& sizes,
                    const std::vector<double>& y);

/// Equilibrium price faced by an agent of each coalition.
std::vector<double> coalition_prices(const MarketParams& params,
                                     const EquilibriumProfile& profile);

/// max_i |x_i - y_i| / max(|x_i|, |y_i|); 0 for identical inputs.
double max_relative_difference(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace coalstab
