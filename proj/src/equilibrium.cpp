#include "coalstab/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coalstab/dense_solve.hpp"

namespace coalstab {
namespace {

void require_matching(const MarketParams& params, const CoalitionStructure& structure) {
  if (structure.n() != params.n) {
    std::ostringstream msg;
    msg << "structure has n = " << structure.n() << " but params have n = " << params.n;
    throw DomainError(msg.str());
  }
}

}  // namespace

double EquilibriumProfile::total_quantity() const {
  double total = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) total += sizes[k] * y[k];
  return total;
}

EquilibriumProfile closed_form_equilibrium(const MarketParams& params,
                                           const CoalitionStructure& structure) {
  require_matching(params, structure);
  const double g = params.gamma;
  EquilibriumProfile out;
  out.sizes = structure.all_sizes();
  const std::size_t m = out.sizes.size();

  out.lambdas.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.lambdas[k] = g * out.sizes[k] - 2.0 * g + 2.0;
    if (!(out.lambdas[k] > 0.0)) {
      throw DegenerateSystem("non-positive lambda for coalition of size " +
                             std::to_string(out.sizes[k]));
    }
  }

  out.big_a.resize(m);
  out.y.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double ratio_sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k != i) ratio_sum += out.sizes[k] / out.lambdas[k];
    }
    out.big_a[i] = out.lambdas[i] * ratio_sum;
    const double denom = 2.0 * (1.0 + g * (out.sizes[i] - 1)) + g * out.big_a[i];
    if (!(denom > 0.0)) {
      throw DegenerateSystem("non-positive equilibrium denominator for coalition " +
                             std::to_string(i));
    }
    out.y[i] = params.margin() / denom;
    if (i == 0) out.c0 = denom;
  }
  return out;
}

EquilibriumProfile solve_foc_system(const MarketParams& params,
                                    const CoalitionStructure& structure) {
  require_matching(params, structure);
  const auto n = static_cast<std::size_t>(params.n);
  const double g = params.gamma;

  std::vector<int> label;
  label.reserve(n);
  const std::vector<int> sizes = structure.all_sizes();
  for (std::size_t k = 0; k < sizes.size(); ++k) label.insert(label.end(), sizes[k], static_cast<int>(k));

  DenseMatrix system(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (i == l) {
        system(i, l) = 2.0;
      } else {
        system(i, l) = label[i] == label[l] ? 2.0 * g : g;
      }
    }
  }
  std::vector<double> q = solve_dense(std::move(system), std::vector<double>(n, params.margin()));

  EquilibriumProfile out;
  out.sizes = sizes;
  out.y.assign(sizes.size(), 0.0);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const auto first = q.begin() + static_cast<std::ptrdiff_t>(offset);
    const auto last = first + sizes[k];
    const double mean = std::accumulate(first, last, 0.0) / sizes[k];
    const auto [lo, hi] = std::minmax_element(first, last);
    if (mean != 0.0) out.within_spread = std::max(out.within_spread, (*hi - *lo) / std::abs(mean));
    out.y[k] = mean;
    offset += static_cast<std::size_t>(sizes[k]);
  }
  out.c0 = params.margin() / out.y[0];
  out.agent_quantities = std::move(q);
  return out;
}

double foc_residual(const MarketParams& params, const std::vector<int>& sizes,
                    const std::vector<double>& y) {
  const double g = params.gamma;
  double total = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) total += sizes[k] * y[k];
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double others = total - sizes[i] * y[i];
    const double rhs = params.margin() - 2.0 * g * (sizes[i] - 1) * y[i] - g * others;
    worst = std::max(worst, std::abs(2.0 * y[i] - rhs));
  }
  return worst;
}

std::vector<double> coalition_prices(const MarketParams& params,
                                     const EquilibriumProfile& profile) {
  const double total = profile.total_quantity();
  std::vector<double> prices(profile.y.size());
  for (std::size_t i = 0; i < prices.size(); ++i) {
    prices[i] = params.a - profile.y[i] - params.gamma * (total - profile.y[i]);
  }
  return prices;
}

double max_relative_difference(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double scale = std::max(std::abs(x[i]), std::abs(y[i]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(x[i] - y[i]) / scale);
  }
  return worst;
}

}  // namespace coalstab
