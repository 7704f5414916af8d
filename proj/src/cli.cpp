#include "coalstab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "coalstab/equilibrium.hpp"
#include "coalstab/io.hpp"
#include "coalstab/partitions.hpp"
#include "coalstab/stability.hpp"
#include "coalstab/worth.hpp"

namespace coalstab {
namespace {

enum class Format { kTable, kJson, kCsv };

struct Flags {
  std::optional<double> a;
  std::optional<double> c;
  std::optional<double> gamma;
  std::optional<int> n;
  std::optional<int> s;
  std::optional<std::string> outsiders;
  std::optional<int> j;
  std::string belief = "given-partition";
  std::string config;
  std::string format;
  std::string output;
  bool check = false;
  int threads = 1;
  std::uint64_t seed = 0;
  int samples = 64;
  int max_n = ScanOptions{}.max_n;
  std::uint64_t max_partitions = ScanOptions{}.max_partitions;
  int which = 0;
};

// Flags override the config document; a and c fall back to 10 and 1.
struct Resolved {
  double a = 10.0;
  double c = 1.0;
  std::optional<double> gamma;
  std::optional<int> n;
  std::optional<int> s;
  std::optional<std::vector<int>> outsiders;
};

Resolved resolve(const Flags& f) {
  ScenarioDoc doc;
  if (!f.config.empty()) doc = load_scenario(f.config);
  Resolved r;
  r.a = f.a.value_or(doc.a.value_or(10.0));
  r.c = f.c.value_or(doc.c.value_or(1.0));
  r.gamma = f.gamma ? f.gamma : doc.gamma;
  r.n = f.n ? f.n : doc.n;
  r.s = f.s ? f.s : doc.s;
  if (f.outsiders) {
    r.outsiders = parse_size_list(*f.outsiders);
  } else {
    r.outsiders = doc.outsiders;
  }
  return r;
}

template <typename T>
T require(const std::optional<T>& value, const char* name) {
  if (!value) throw DomainError(std::string("missing required --") + name);
  return *value;
}

MarketParams params_of(const Resolved& r) {
  return validate_params(r.a, r.c, require(r.gamma, "gamma"), require(r.n, "n"));
}

CoalitionStructure structure_of(const Resolved& r, const MarketParams& params) {
  const int s = require(r.s, "s");
  const std::vector<int> outsiders = r.outsiders.value_or(std::vector<int>{});
  if (!r.outsiders && s != params.n) throw DomainError("missing required --outsiders");
  return make_structure(params.n, s, outsiders);
}

Format format_of(const Flags& f, Format fallback) {
  if (f.format.empty()) return fallback;
  if (f.format == "table") return Format::kTable;
  if (f.format == "json") return Format::kJson;
  if (f.format == "csv") return Format::kCsv;
  throw DomainError("unknown format '" + f.format + "' (expected json, csv or table)");
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_number(values[i]);
  }
  return out;
}

std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

// --- equilibrium -----------------------------------------------------------

std::string cmd_equilibrium(const Flags& f) {
  const Resolved r = resolve(f);
  const MarketParams params = params_of(r);
  const CoalitionStructure structure = structure_of(r, params);
  const EquilibriumProfile profile = closed_form_equilibrium(params, structure);
  const std::vector<double> prices = coalition_prices(params, profile);
  const bool non_positive_price =
      std::any_of(prices.begin(), prices.end(), [](double p) { return p <= 0.0; });
  const double residual = foc_residual(params, profile.sizes, profile.y);

  Json check = nullptr;
  if (f.check) {
    check = Json::object();
    check["foc_residual"] = residual;
    try {
      const EquilibriumProfile oracle = solve_foc_system(params, structure);
      check["oracle"] = "ok";
      check["oracle_relative_difference"] = max_relative_difference(profile.y, oracle.y);
      check["within_coalition_spread"] = oracle.within_spread;
    } catch (const SingularSystem& e) {
      check["oracle"] = "unavailable";
      check["reason"] = std::string("full first-order system is singular: ") + e.what();
    }
  }

  switch (format_of(f, Format::kTable)) {
    case Format::kJson: {
      Json doc{{"scenario", scenario_json(params, structure)},
               {"profile", to_json(profile)},
               {"prices", prices},
               {"non_positive_price", non_positive_price},
               {"foc_residual", residual}};
      if (f.check) doc["check"] = check;
      return render_json(doc);
    }
    case Format::kCsv: {
      std::string out = "coalition,size,y,lambda,A,price\n";
      for (std::size_t k = 0; k < profile.y.size(); ++k) {
        out += std::to_string(k) + ',' + std::to_string(profile.sizes[k]) + ',' +
               format_number(profile.y[k]) + ',' + format_number(profile.lambdas[k]) + ',' +
               format_number(profile.big_a[k]) + ',' + format_number(prices[k]) + '\n';
      }
      return out;
    }
    case Format::kTable: {
      std::ostringstream out;
      out << "n=" << params.n << " s=" << structure.s() << " j=" << structure.j()
          << " gamma=" << format_number(params.gamma) << " a=" << format_number(params.a)
          << " c=" << format_number(params.c) << "\n";
      out << "coalition size y lambda A price\n";
      for (std::size_t k = 0; k < profile.y.size(); ++k) {
        out << (k == 0 ? std::string("S") : std::to_string(k)) << ' ' << profile.sizes[k] << ' '
            << format_number(profile.y[k]) << ' ' << format_number(profile.lambdas[k]) << ' '
            << format_number(profile.big_a[k]) << ' ' << format_number(prices[k]) << "\n";
      }
      out << "C_0 = " << format_number(profile.c0) << "\n";
      out << "foc_residual = " << format_number(residual) << "\n";
      if (non_positive_price) out << "warning: non-positive equilibrium price\n";
      if (f.check) {
        if (check["oracle"] == "ok") {
          out << "check: oracle_relative_difference = "
              << format_number(check["oracle_relative_difference"].get<double>())
              << " within_coalition_spread = "
              << format_number(check["within_coalition_spread"].get<double>()) << "\n";
        } else {
          out << "check: oracle unavailable (" << check["reason"].get<std::string>() << ")\n";
        }
      }
      return out.str();
    }
  }
  return {};
}

// --- worth -----------------------------------------------------------------

std::string cmd_worth(const Flags& f) {
  const Resolved r = resolve(f);
  const MarketParams params = params_of(r);
  const BeliefMode mode = parse_belief_mode(f.belief);

  std::optional<StabilityVerdict> verdict;
  std::optional<CoalitionStructure> structure;
  if (mode == BeliefMode::kGivenPartition) {
    structure = structure_of(r, params);
    if (!structure->is_grand()) verdict = core_check(params, *structure);
  } else {
    verdict = belief_verdict(params, require(r.s, "s"), mode, f.j);
    structure = verdict->structure;
  }
  const WorthReport worth = coalition_worth(params, *structure);

  Json check = nullptr;
  if (f.check) {
    check = Json::object();
    try {
      const EquilibriumProfile oracle = solve_foc_system(params, *structure);
      const double direct = accounting_worth(params, structure->s(), oracle.agent_quantities);
      check["oracle"] = "ok";
      check["accounting_worth"] = direct;
      check["relative_difference"] = std::abs(direct - worth.v_s) / std::abs(worth.v_s);
    } catch (const SingularSystem& e) {
      check["oracle"] = "unavailable";
      check["reason"] = std::string("full first-order system is singular: ") + e.what();
    }
  }

  switch (format_of(f, Format::kTable)) {
    case Format::kJson: {
      Json doc{{"params", to_json(params)}, {"worth", to_json(worth)}};
      doc["verdict"] = verdict ? to_json(*verdict) : Json(nullptr);
      if (f.check) doc["check"] = check;
      return render_json(doc);
    }
    case Format::kCsv: {
      std::string out = "s,j,partition,v_s,per_agent,v_n,grand_per_agent,margin,stable\n";
      out += std::to_string(structure->s()) + ',' + std::to_string(structure->j()) + ',' +
             format_sizes(structure->outsider_sizes(), ' ') + ',' + format_number(worth.v_s) +
             ',' + format_number(worth.per_agent) + ',' + format_number(worth.v_n) + ',' +
             format_number(worth.grand_per_agent) + ',' +
             (verdict ? format_number(verdict->margin) : std::string()) + ',' +
             (verdict ? (verdict->stable ? "true" : "false") : "") + '\n';
      return out;
    }
    case Format::kTable: {
      std::ostringstream out;
      out << "belief = " << to_string(mode) << "\n";
      out << "outsiders = [" << format_sizes(structure->outsider_sizes()) << "] (j="
          << structure->j() << ")\n";
      out << "v_s = " << format_number(worth.v_s) << "\n";
      out << "per_agent = " << format_number(worth.per_agent) << "\n";
      out << "v_n = " << format_number(worth.v_n) << "\n";
      out << "grand_per_agent = " << format_number(worth.grand_per_agent) << "\n";
      if (verdict) {
        out << "margin = " << format_number(verdict->margin) << "\n";
        out << "stable = " << (verdict->stable ? "true" : "false") << "\n";
      }
      if (f.check) {
        if (check["oracle"] == "ok") {
          out << "check: accounting_worth = "
              << format_number(check["accounting_worth"].get<double>())
              << " relative_difference = "
              << format_number(check["relative_difference"].get<double>()) << "\n";
        } else {
          out << "check: oracle unavailable (" << check["reason"].get<std::string>() << ")\n";
        }
      }
      return out.str();
    }
  }
  return {};
}

// --- jstar -----------------------------------------------------------------

std::string cmd_jstar(const Flags& f) {
  const Resolved r = resolve(f);
  const MarketParams params = params_of(r);
  if (params.gamma < 0.0) {
    throw DomainError(
        "zeta is defined only for gamma in (0, 1]; for gamma in (-1/(n-1), 0) the grand "
        "coalition is claimed stable for every belief, check it with `scan`");
  }
  std::vector<int> deviations;
  if (r.s) {
    deviations.push_back(*r.s);
  } else {
    for (int s = 1; s < params.n; ++s) deviations.push_back(s);
  }
  std::vector<ThresholdReport> reports;
  for (int s : deviations) reports.push_back(threshold_zeta(params.n, s, params.gamma));

  switch (format_of(f, Format::kTable)) {
    case Format::kJson: {
      Json rows = Json::array();
      for (const ThresholdReport& t : reports) {
        Json row = to_json(t);
        row["zeta_ceil"] = static_cast<int>(std::ceil(t.zeta));
        if (params.gamma == 1.0) row["gamma1_threshold"] = threshold_gamma1(t.n, t.s);
        rows.push_back(std::move(row));
      }
      return render_json(r.s ? rows.at(0) : rows);
    }
    case Format::kCsv: {
      std::string out = "n,s,gamma,zeta,zeta_ceil,feasible\n";
      for (const ThresholdReport& t : reports) {
        out += std::to_string(t.n) + ',' + std::to_string(t.s) + ',' + format_number(t.gamma) +
               ',' + format_number(t.zeta) + ',' + std::to_string(static_cast<int>(std::ceil(t.zeta))) +
               ',' + (t.feasible ? "true" : "false") + '\n';
      }
      return out;
    }
    case Format::kTable: {
      std::ostringstream out;
      for (const ThresholdReport& t : reports) {
        out << "n=" << t.n << " s=" << t.s << " gamma=" << format_number(t.gamma)
            << " zeta=" << format_number(t.zeta) << " zeta_ceil=" << std::ceil(t.zeta)
            << " feasible=" << (t.feasible ? "true" : "false") << "\n";
      }
      return out.str();
    }
  }
  return {};
}

// --- scan ------------------------------------------------------------------

Json scan_check(const MarketParams& params, const ScanReport& report, std::uint64_t seed,
                int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, report.cells.size() - 1);
  double worst = 0.0;
  int checked = 0;
  int singular = 0;
  for (int k = 0; k < samples; ++k) {
    const ScanCell& cell = report.cells[pick(rng)];
    const CoalitionStructure structure = make_structure(params.n, cell.s, cell.partition);
    try {
      const EquilibriumProfile oracle = solve_foc_system(params, structure);
      const double direct = accounting_worth(params, cell.s, oracle.agent_quantities);
      worst = std::max(worst, std::abs(direct - cell.v_s) / std::abs(cell.v_s));
      ++checked;
    } catch (const SingularSystem&) {
      ++singular;
    }
  }
  return Json{{"seed", seed},
              {"samples", samples},
              {"checked", checked},
              {"singular", singular},
              {"max_relative_difference", worst}};
}

std::string cmd_scan(const Flags& f, std::ostream& err) {
  const Resolved r = resolve(f);
  const MarketParams params = params_of(r);
  const ScanOptions options{f.max_n, f.max_partitions, f.threads};
  const ScanReport report = exhaustive_scan(params, options);
  const Json check = f.check ? scan_check(params, report, f.seed, f.samples) : Json(nullptr);

  switch (format_of(f, Format::kJson)) {
    case Format::kJson: {
      Json doc = to_json(report);
      if (f.check) doc["check"] = check;
      return render_json(doc);
    }
    case Format::kCsv:
      if (f.check) err << "check: " << check.dump() << "\n";
      return scan_csv(report);
    case Format::kTable: {
      std::ostringstream out;
      out << "n=" << params.n << " gamma=" << format_number(params.gamma)
          << " cells=" << report.total_cells << " unstable=" << report.unstable_cells << "\n";
      out << "s partitions unstable empirical_jstar zeta zeta_ceil zeta_sufficient\n";
      for (const DeviationSummary& d : report.per_s) {
        out << d.s << ' ' << d.partitions << ' ' << d.unstable << ' '
            << (d.empirical_jstar ? std::to_string(*d.empirical_jstar) : "-") << ' '
            << (d.zeta ? format_number(*d.zeta) : "-") << ' '
            << (d.zeta_ceil ? std::to_string(*d.zeta_ceil) : "-") << ' '
            << (d.zeta_sufficient ? (*d.zeta_sufficient ? "true" : "false") : "-") << "\n";
      }
      if (f.check) out << "check: " << check.dump() << "\n";
      return out.str();
    }
  }
  return {};
}

// --- figure ----------------------------------------------------------------

Resolved figure_defaults(const Flags& f) {
  Resolved r = resolve(f);
  if (!r.n) r.n = 46;
  if (!r.s) r.s = 4;
  if (!r.gamma) r.gamma = 0.9;
  return r;
}

std::string figure_extremes(const Flags& f) {
  const Resolved r = figure_defaults(f);
  const MarketParams params = params_of(r);
  const int s = *r.s;
  if (s < 1 || s >= params.n) throw DomainError("figure 1 needs 1 <= s < n");
  const int m = params.n - s;
  const int j = f.j.value_or(6);
  const Partition predicted_min = min_worth_partition(m, j).parts;
  const Partition predicted_max = max_worth_partition(m, j).parts;

  struct Row {
    Partition parts;
    WorthReport worth;
  };
  std::vector<Row> rows;
  for (const Partition& parts : enumerate_partitions(m, j)) {
    rows.push_back({parts, coalition_worth(params, make_structure(params.n, s, parts))});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& x, const Row& y) { return x.worth.v_s < y.worth.v_s; });

  auto extreme = [&](std::size_t i) -> std::string {
    if (i == 0) return "min";
    if (i + 1 == rows.size()) return "max";
    return "";
  };
  auto predicted = [&](const Partition& p) -> std::string {
    if (p == predicted_min) return "min";
    if (p == predicted_max) return "max";
    return "";
  };

  if (format_of(f, Format::kCsv) == Format::kJson) {
    Json list = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      list.push_back(Json{{"rank", i + 1},
                          {"partition", rows[i].parts},
                          {"v_s", rows[i].worth.v_s},
                          {"per_agent", rows[i].worth.per_agent},
                          {"extreme", extreme(i)},
                          {"predicted", predicted(rows[i].parts)}});
    }
    return render_json(Json{{"figure", 1},
                            {"params", to_json(params)},
                            {"s", s},
                            {"j", j},
                            {"rows", std::move(list)}});
  }
  std::string out = "rank,partition,v_s,per_agent,extreme,predicted\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_sizes(rows[i].parts, ' ') + ',' +
           format_number(rows[i].worth.v_s) + ',' + format_number(rows[i].worth.per_agent) + ',' +
           extreme(i) + ',' + predicted(rows[i].parts) + '\n';
  }
  return out;
}

std::string figure_frontier(const Flags& f) {
  const Resolved r = figure_defaults(f);
  const MarketParams params = params_of(r);
  const ScanOptions options{f.max_n, f.max_partitions, f.threads};
  const ScanReport report = scan_deviation(params, *r.s, options);
  const DeviationSummary& d = report.per_s.front();

  if (format_of(f, Format::kCsv) == Format::kJson) {
    Json rows = Json::array();
    for (const PartCountSummary& pj : d.per_j) {
      rows.push_back(Json{{"j", pj.j},
                          {"partitions", pj.partitions},
                          {"unstable", pj.unstable},
                          {"all_stable", pj.all_stable()},
                          {"min_margin", pj.min_margin},
                          {"above_zeta", d.zeta ? Json(pj.j > *d.zeta) : Json(nullptr)}});
    }
    return render_json(Json{{"figure", 2},
                            {"params", to_json(params)},
                            {"s", d.s},
                            {"zeta", d.zeta ? Json(*d.zeta) : Json(nullptr)},
                            {"empirical_jstar", d.empirical_jstar ? Json(*d.empirical_jstar) : Json(nullptr)},
                            {"rows", std::move(rows)}});
  }
  std::string out = "j,partitions,unstable,all_stable,min_margin,zeta\n";
  for (const PartCountSummary& pj : d.per_j) {
    out += std::to_string(pj.j) + ',' + std::to_string(pj.partitions) + ',' +
           std::to_string(pj.unstable) + ',' + (pj.all_stable() ? "true" : "false") + ',' +
           format_number(pj.min_margin) + ',' + (d.zeta ? format_number(*d.zeta) : "") + '\n';
  }
  return out;
}

std::string cmd_figure(const Flags& f) {
  if (f.which == 1) return figure_extremes(f);
  if (f.which == 2) return figure_frontier(f);
  throw DomainError("figure must be 1 or 2");
}

void add_shared(CLI::App& cmd, Flags& f) {
  cmd.add_option("--a", f.a, "demand intercept (default 10)");
  cmd.add_option("--c", f.c, "unit cost (default 1)");
  cmd.add_option("--gamma", f.gamma, "differentiation parameter in (-1, 1], non-zero");
  cmd.add_option("--n", f.n, "number of agents");
  cmd.add_option("--s", f.s, "size of the deviating coalition");
  cmd.add_option("--outsiders", f.outsiders, "outsider coalition sizes, comma separated");
  cmd.add_option("--config", f.config, "scenario JSON file");
  cmd.add_option("--format", f.format, "json | csv | table");
  cmd.add_option("--output", f.output, "write to this file instead of stdout");
  cmd.add_flag("--check", f.check, "cross-check against the full-dimension solve");
  cmd.add_option("--threads", f.threads, "worker threads for scans")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "seed for sampled cross-checks");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Coalition stability under differentiated Cournot competition", "coalstab"};
  app.require_subcommand(1);

  CLI::App* equilibrium = app.add_subcommand("equilibrium", "equilibrium quantities per coalition");
  CLI::App* worth = app.add_subcommand("worth", "worth of the deviating coalition");
  CLI::App* jstar = app.add_subcommand("jstar", "belief threshold zeta");
  CLI::App* scan = app.add_subcommand("scan", "exhaustive core scan over s and partitions");
  CLI::App* figure = app.add_subcommand("figure", "plot-ready data for the two reference figures");
  for (CLI::App* cmd : {equilibrium, worth, jstar, scan, figure}) add_shared(*cmd, f);

  worth->add_option("--belief", f.belief,
                    "given-partition | fixed-j-pessimistic | fixed-j-optimistic | "
                    "global-pessimistic | global-optimistic");
  worth->add_option("--j", f.j, "outsider coalition count for fixed-j beliefs");
  scan->add_option("--max-n", f.max_n, "largest n accepted for a full scan");
  scan->add_option("--max-partitions", f.max_partitions, "partition budget");
  scan->add_option("--samples", f.samples, "cells sampled by --check");
  figure->add_option("which", f.which, "1 (worth extremes) or 2 (stability frontier)")->required();
  figure->add_option("--j", f.j, "outsider coalition count for figure 1 (default 6)");
  figure->add_option("--max-partitions", f.max_partitions, "partition budget");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    std::string rendered;
    if (*equilibrium) rendered = cmd_equilibrium(f);
    else if (*worth) rendered = cmd_worth(f);
    else if (*jstar) rendered = cmd_jstar(f);
    else if (*scan) rendered = cmd_scan(f, err);
    else rendered = cmd_figure(f);

    if (f.output.empty()) {
      out << rendered;
    } else {
      std::ofstream file(f.output, std::ios::binary);
      if (!file) throw DomainError("cannot open output file '" + f.output + "'");
      file << rendered;
    }
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace coalstab
