#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coalstab/equilibrium.hpp"
#include "coalstab/stability.hpp"
#include "coalstab/worth.hpp"

namespace coalstab {

using Json = nlohmann::ordered_json;

/// Raw scenario fields as they appear in the exchange document
/// {"a":..., "c":..., "gamma":..., "n":..., "s":..., "outsiders":[...]}.
/// Missing keys stay empty so command-line flags can fill them.
struct ScenarioDoc {
  std::optional<double> a;
  std::optional<double> c;
  std::optional<double> gamma;
  std::optional<int> n;
  std::optional<int> s;
  std::optional<std::vector<int>> outsiders;
};

ScenarioDoc parse_scenario(const std::string& text);
ScenarioDoc load_scenario(const std::string& path);
Json scenario_json(const MarketParams& params, const CoalitionStructure& structure);

/// "%.12g", '.' decimal regardless of locale.
std::string format_number(double value);

Json to_json(const MarketParams& params);
Json to_json(const EquilibriumProfile& profile);
Json to_json(const WorthReport& report);
Json to_json(const StabilityVerdict& verdict);
Json to_json(const ThresholdReport& report);
Json to_json(const ScanReport& report);

inline constexpr const char* kScanCsvHeader = "s,j,partition,v_s,per_agent,margin,stable";

/// One row per cell; partitions are written as space-separated sizes.
std::string scan_csv(const ScanReport& report);

}  // namespace coalstab
