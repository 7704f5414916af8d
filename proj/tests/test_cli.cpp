#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coalstab/cli.hpp"
#include "coalstab/io.hpp"

using namespace coalstab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Run r = run(std::move(args));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return Json::parse(r.out);
}

void check_error_line(const Run& r, int code) {
  CHECK(r.code == code);
  CHECK(r.err.starts_with("error: "));
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  CHECK(r.out.empty());
}

}  // namespace

TEST_CASE("equilibrium: duopoly") {
  const Run r = run({"equilibrium", "--a", "10", "--c", "1", "--gamma", "1", "--n", "2", "--s", "1",
                     "--outsiders", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("S 1 3 ") != std::string::npos);
  CHECK(r.out.find("\n1 1 3 ") != std::string::npos);

  const Json doc = run_json({"equilibrium", "--gamma", "1", "--n", "2", "--s", "1", "--outsiders", "1"});
  CHECK(doc["profile"]["y"][0].get<double>() == doctest::Approx(3.0));
  CHECK(doc["profile"]["y"][1].get<double>() == doctest::Approx(3.0));
  CHECK(doc["non_positive_price"] == false);
}

TEST_CASE("equilibrium: validation errors exit 2") {
  const Run r = run({"equilibrium", "--a", "10", "--c", "1", "--gamma", "0", "--n", "5", "--s", "2",
                     "--outsiders", "3"});
  check_error_line(r, 2);
  CHECK(r.err.find("gamma must be non-zero") != std::string::npos);
  check_error_line(run({"equilibrium", "--gamma", "0.5", "--n", "5", "--s", "2", "--outsiders", "2,2"}), 2);
  check_error_line(run({"equilibrium", "--n", "5", "--s", "2", "--outsiders", "3"}), 2);
  check_error_line(run({"equilibrium", "--gamma", "0.5", "--n", "5", "--s", "2"}), 2);
  check_error_line(run({"bogus"}), 2);
  check_error_line(run({}), 2);
  check_error_line(run({"equilibrium", "--gamma", "abc"}), 2);
  check_error_line(run({"equilibrium", "--gamma", "0.5", "--n", "4", "--s", "4", "--format", "xml"}), 2);
}

TEST_CASE("equilibrium: oracle check on the reference structure") {
  const Json doc = run_json({"equilibrium", "--a", "10", "--c", "1", "--gamma", "0.9", "--n", "46", "--s",
                             "4", "--outsiders", "7,7,7,7,7,7", "--check"});
  CHECK(doc["check"]["oracle"] == "ok");
  CHECK(doc["check"]["oracle_relative_difference"].get<double>() < 1e-9);
  CHECK(doc["check"]["within_coalition_spread"].get<double>() < 1e-10);
  CHECK(doc["check"]["foc_residual"].get<double>() < 1e-9 * 9);

  const Run table = run({"equilibrium", "--gamma", "0.9", "--n", "46", "--s", "4", "--outsiders",
                         "7,7,7,7,7,7", "--check"});
  CHECK(table.out.find("check: oracle_relative_difference = ") != std::string::npos);

  // The full system is singular for homogeneous goods; the check says so.
  const Json singular =
      run_json({"equilibrium", "--gamma", "1", "--n", "4", "--s", "2", "--outsiders", "2", "--check"});
  CHECK(singular["check"]["oracle"] == "unavailable");
}

TEST_CASE("worth: homogeneous goods ignore the outsider split") {
  const Json a = run_json({"worth", "--gamma", "1", "--n", "46", "--s", "4", "--outsiders", "37,1,1,1,1,1"});
  const Json b = run_json({"worth", "--gamma", "1", "--n", "46", "--s", "4", "--outsiders", "7,7,7,7,7,7"});
  CHECK(a["worth"]["v_s"].get<double>() == doctest::Approx(b["worth"]["v_s"].get<double>()).epsilon(1e-12));

  const Json c = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--outsiders", "37,1,1,1,1,1"});
  const Json d = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--outsiders", "7,7,7,7,7,7"});
  CHECK(c["worth"]["v_s"].get<double>() > d["worth"]["v_s"].get<double>());

  const Json grand = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "46", "--outsiders", ""});
  CHECK(grand["worth"]["v_s"].get<double>() == doctest::Approx(grand["worth"]["v_n"].get<double>()).epsilon(1e-12));
  CHECK(grand["verdict"].is_null());
}

TEST_CASE("worth: beliefs and accounting check") {
  const Json pess = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--belief",
                              "fixed-j-pessimistic", "--j", "6"});
  CHECK(pess["worth"]["outsiders"] == Json::array({7, 7, 7, 7, 7, 7}));
  CHECK(pess["verdict"]["belief_mode"] == "fixed-j-pessimistic");
  const Json opt = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--belief",
                             "fixed-j-optimistic", "--j", "6"});
  CHECK(opt["worth"]["outsiders"] == Json::array({37, 1, 1, 1, 1, 1}));
  check_error_line(run({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--belief", "fixed-j-optimistic"}), 2);

  const Json checked = run_json({"worth", "--gamma", "0.5", "--n", "6", "--s", "2", "--outsiders", "2,2", "--check"});
  CHECK(checked["check"]["relative_difference"].get<double>() < 1e-9);
  CHECK(checked["worth"]["v_s"].get<double>() == doctest::Approx(9.72).epsilon(1e-12));
}

TEST_CASE("jstar") {
  const Json fig2 = run_json({"jstar", "--n", "46", "--s", "4", "--gamma", "0.9"});
  CHECK(std::abs(fig2["zeta"].get<double>() - 4.57) <= 0.01);
  CHECK(fig2["zeta_ceil"] == 5);
  const Json homog = run_json({"jstar", "--n", "46", "--s", "4", "--gamma", "1"});
  CHECK(homog["zeta"].get<double>() == doctest::Approx(2 * (std::sqrt(11.5) - 1)).epsilon(1e-14));
  CHECK(homog["gamma1_threshold"].get<double>() == doctest::Approx(2 * (std::sqrt(11.5) - 1)).epsilon(1e-14));

  const Run neg = run({"jstar", "--n", "10", "--s", "3", "--gamma", "-0.05"});
  check_error_line(neg, 2);
  CHECK(neg.err.find("scan") != std::string::npos);

  const Run all = run({"jstar", "--n", "5", "--gamma", "0.5", "--format", "csv"});
  CHECK(all.out.starts_with("n,s,gamma,zeta,zeta_ceil,feasible\n"));
  CHECK(std::count(all.out.begin(), all.out.end(), '\n') == 5);
}

TEST_CASE("scan") {
  const Json neg = run_json({"scan", "--n", "12", "--gamma", "-0.05"});
  // Oracle-verified count; see test_stability.
  CHECK(neg["unstable_cells"] == 7);

  const Json homog = run_json({"scan", "--n", "9", "--gamma", "1"});
  for (const Json& d : homog["per_s"]) {
    const int s = d["s"].get<int>();
    CHECK(d["empirical_jstar"].get<int>() <= static_cast<int>(std::ceil(2 * (std::sqrt(9.0 / s) - 1))));
  }

  const Run csv = run({"scan", "--n", "12", "--gamma", "0.5", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.starts_with("s,j,partition,v_s,per_agent,margin,stable\n"));

  const Run table = run({"scan", "--n", "6", "--gamma", "0.5", "--format", "table"});
  CHECK(table.out.starts_with("n=6 gamma=0.5 cells="));

  const Json checked = run_json({"scan", "--n", "10", "--gamma", "0.4", "--check", "--seed", "17"});
  CHECK(checked["check"]["checked"] == 64);
  CHECK(checked["check"]["max_relative_difference"].get<double>() < 1e-9);

  check_error_line(run({"scan", "--n", "20", "--gamma", "0.5"}), 2);
  CHECK(run({"scan", "--n", "17", "--gamma", "0.5", "--max-n", "17", "--format", "csv"}).code == 0);
}

TEST_CASE("scan output is byte-identical across runs and thread counts") {
  const std::vector<std::string> base{"scan", "--n", "14", "--gamma", "0.7", "--format", "csv"};
  auto with_threads = [&](const char* t) {
    auto args = base;
    args.insert(args.end(), {"--threads", t});
    return run(args).out;
  };
  const std::string one = with_threads("1");
  CHECK(one == with_threads("1"));
  CHECK(one == with_threads("8"));
}

TEST_CASE("figure 1: worth extremes") {
  const Run r = run({"figure", "1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first, row, last;
  std::getline(lines, header);
  std::getline(lines, first);
  while (std::getline(lines, row)) last = row;
  CHECK(header == "rank,partition,v_s,per_agent,extreme,predicted");
  CHECK(first.starts_with("1,7 7 7 7 7 7,"));
  CHECK(first.ends_with(",min,min"));
  CHECK(last.starts_with("2432,37 1 1 1 1 1,"));
  CHECK(last.ends_with(",max,max"));
}

TEST_CASE("figure 2: stability frontier") {
  const Json doc = run_json({"figure", "2"});
  CHECK(std::abs(doc["zeta"].get<double>() - 4.57) <= 0.01);
  const Json& rows = doc["rows"];
  REQUIRE(rows.size() == 42);
  // Frozen from an independent numpy enumeration: 100 of 1342 partitions into
  // five parts are unstable, six or more parts are all stable.
  CHECK(rows[4]["partitions"] == 1342);
  CHECK(rows[4]["unstable"] == 100);
  CHECK(doc["empirical_jstar"] == 6);
  for (int j = 1; j <= 4; ++j) CHECK(rows[j - 1]["unstable"] == rows[j - 1]["partitions"]);

  const Json neg = run_json({"figure", "2", "--gamma", "-0.02"});
  CHECK(neg["zeta"].is_null());
  const std::vector<int> unstable{1, 3, 2, 1};
  for (std::size_t j = 0; j < rows.size(); ++j) {
    CHECK(neg["rows"][j]["unstable"].get<int>() == (j < 4 ? unstable[j] : 0));
  }

  const Run csv = run({"figure", "2"});
  CHECK(csv.out.starts_with("j,partitions,unstable,all_stable,min_margin,zeta\n"));
  check_error_line(run({"figure", "3"}), 2);
  check_error_line(run({"figure", "2", "--gamma", "-0.5"}), 2);
}

TEST_CASE("config file and output file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto config = dir / "coalstab_cli_config.json";
  const auto output = dir / "coalstab_cli_output.json";
  {
    std::ofstream f(config);
    f << R"({"a": 10, "c": 1, "gamma": 0.9, "n": 46, "s": 4, "outsiders": [7,7,7,7,7,7]})";
  }
  const Json from_file = run_json({"worth", "--config", config.string()});
  const Json from_flags = run_json({"worth", "--gamma", "0.9", "--n", "46", "--s", "4", "--outsiders", "7,7,7,7,7,7"});
  CHECK(from_file == from_flags);

  // Flags override the document.
  const Json overridden = run_json({"worth", "--config", config.string(), "--gamma", "1"});
  CHECK(overridden["params"]["gamma"] == 1.0);

  const Run r = run({"worth", "--config", config.string(), "--format", "json", "--output", output.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(output);
  std::stringstream written;
  written << in.rdbuf();
  CHECK(Json::parse(written.str()) == from_flags);

  check_error_line(run({"worth", "--config", (dir / "missing.json").string()}), 2);
  std::filesystem::remove(config);
  std::filesystem::remove(output);
}

TEST_CASE("help exits 0") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("equilibrium") != std::string::npos);
}
