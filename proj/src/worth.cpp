#include "coalstab/worth.hpp"

#include <numeric>

namespace coalstab {

WorthReport coalition_worth(const MarketParams& params, const CoalitionStructure& structure) {
  const EquilibriumProfile profile = closed_form_equilibrium(params, structure);
  const double g = params.gamma;
  const int s = structure.s();
  const double ratio = params.margin() / profile.c0;

  WorthReport report{.structure = structure};
  // per_agent * s reproduces v_s bit-for-bit.
  report.per_agent = (1.0 + g * s - g) * ratio * ratio;
  report.v_s = s * report.per_agent;
  report.v_n = grand_worth(params);
  report.grand_per_agent = report.v_n / params.n;
  return report;
}

double grand_worth(const MarketParams& params) {
  const double margin = params.margin();
  return params.n * margin * margin / (4.0 * (1.0 + params.gamma * (params.n - 1)));
}

double accounting_worth(const MarketParams& params, int s, std::span<const double> quantities) {
  const double total = std::accumulate(quantities.begin(), quantities.end(), 0.0);
  double worth = 0.0;
  for (int i = 0; i < s; ++i) {
    const double q = quantities[static_cast<std::size_t>(i)];
    const double price = params.a - q - params.gamma * (total - q);
    worth += (price - params.c) * q;
  }
  return worth;
}

}  // namespace coalstab
