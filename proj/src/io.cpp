#include "coalstab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace coalstab {
namespace {

template <typename T>
std::optional<T> optional_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<T>();
}

Json optional_json(const auto& value) {
  if (value) return Json(*value);
  return Json(nullptr);
}

}  // namespace

ScenarioDoc parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("scenario JSON must be an object");
  ScenarioDoc out;
  try {
    out.a = optional_field<double>(doc, "a");
    out.c = optional_field<double>(doc, "c");
    out.gamma = optional_field<double>(doc, "gamma");
    out.n = optional_field<int>(doc, "n");
    out.s = optional_field<int>(doc, "s");
    out.outsiders = optional_field<std::vector<int>>(doc, "outsiders");
  } catch (const Json::exception& e) {
    throw DomainError(std::string("bad scenario field: ") + e.what());
  }
  return out;
}

ScenarioDoc load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

Json scenario_json(const MarketParams& params, const CoalitionStructure& structure) {
  return Json{{"a", params.a},         {"c", params.c},
              {"gamma", params.gamma}, {"n", params.n},
              {"s", structure.s()},    {"outsiders", structure.outsider_sizes()}};
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string out(buf);
  // snprintf honours LC_NUMERIC; normalise in case a comma locale is active.
  for (char& ch : out) {
    if (ch == ',') ch = '.';
  }
  return out;
}

Json to_json(const MarketParams& params) {
  return Json{{"a", params.a}, {"c", params.c}, {"gamma", params.gamma}, {"n", params.n}};
}

Json to_json(const EquilibriumProfile& profile) {
  Json out{{"sizes", profile.sizes}, {"y", profile.y}, {"c0", profile.c0}};
  if (!profile.lambdas.empty()) out["lambdas"] = profile.lambdas;
  if (!profile.big_a.empty()) out["A"] = profile.big_a;
  return out;
}

Json to_json(const WorthReport& report) {
  return Json{{"s", report.structure.s()},
              {"outsiders", report.structure.outsider_sizes()},
              {"j", report.structure.j()},
              {"v_s", report.v_s},
              {"per_agent", report.per_agent},
              {"v_n", report.v_n},
              {"grand_per_agent", report.grand_per_agent}};
}

Json to_json(const StabilityVerdict& verdict) {
  return Json{{"belief_mode", std::string(to_string(verdict.belief_mode))},
              {"s", verdict.structure.s()},
              {"outsiders", verdict.structure.outsider_sizes()},
              {"j", verdict.structure.j()},
              {"v_s", verdict.v_s},
              {"per_agent", verdict.per_agent},
              {"grand_per_agent", verdict.grand_per_agent},
              {"margin", verdict.margin},
              {"stable", verdict.stable}};
}

Json to_json(const ThresholdReport& report) {
  return Json{{"n", report.n},
              {"s", report.s},
              {"gamma", report.gamma},
              {"zeta", report.zeta},
              {"feasible", report.feasible}};
}

Json to_json(const ScanReport& report) {
  Json per_s = Json::array();
  for (const DeviationSummary& d : report.per_s) {
    Json per_j = Json::array();
    for (const PartCountSummary& pj : d.per_j) {
      per_j.push_back(Json{{"j", pj.j},
                           {"partitions", pj.partitions},
                           {"unstable", pj.unstable},
                           {"all_stable", pj.all_stable()},
                           {"min_margin", pj.min_margin}});
    }
    per_s.push_back(Json{{"s", d.s},
                         {"partitions", d.partitions},
                         {"unstable", d.unstable},
                         {"empirical_jstar", optional_json(d.empirical_jstar)},
                         {"zeta", optional_json(d.zeta)},
                         {"zeta_ceil", optional_json(d.zeta_ceil)},
                         {"zeta_sufficient", optional_json(d.zeta_sufficient)},
                         {"per_j", std::move(per_j)}});
  }
  return Json{{"params", to_json(report.params)},
              {"total_cells", report.total_cells},
              {"unstable_cells", report.unstable_cells},
              {"per_s", std::move(per_s)}};
}

std::string scan_csv(const ScanReport& report) {
  std::string out = kScanCsvHeader;
  out += '\n';
  for (const ScanCell& cell : report.cells) {
    out += std::to_string(cell.s) + ',' + std::to_string(cell.j) + ',' +
           format_sizes(cell.partition, ' ') + ',' + format_number(cell.v_s) + ',' +
           format_number(cell.per_agent) + ',' + format_number(cell.margin) + ',' +
           (cell.stable ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace coalstab
