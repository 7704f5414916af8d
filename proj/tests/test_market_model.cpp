#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <random>

#include "coalstab/market_model.hpp"

using namespace coalstab;

TEST_CASE("validate_params accepts the reference scenario") {
  const MarketParams p = validate_params(10, 1, 0.9, 46);
  CHECK(p.a == 10);
  CHECK(p.c == 1);
  CHECK(p.gamma == 0.9);
  CHECK(p.n == 46);
  CHECK(p.margin() == 9);
}

TEST_CASE("validate_params names the violated condition") {
  auto message = [](auto fn) {
    try {
      fn();
    } catch (const DomainError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message([] { validate_params(10, 1, 0, 5); }) == "gamma must be non-zero");
  CHECK(message([] { validate_params(10, 1, -0.5, 4); }).starts_with("condition K violated"));
  CHECK(message([] { validate_params(-1, 1, 0.5, 4); }).find("a must be positive") != std::string::npos);
  CHECK(message([] { validate_params(10, 10, 0.5, 4); }).find("0 < c < a") != std::string::npos);
  CHECK(message([] { validate_params(10, 0, 0.5, 4); }).find("0 < c < a") != std::string::npos);
  CHECK(message([] { validate_params(10, 1, 1.01, 4); }).find("(-1, 1]") != std::string::npos);
  CHECK(message([] { validate_params(10, 1, -1.0, 4); }).find("(-1, 1]") != std::string::npos);
  CHECK(message([] { validate_params(10, 1, 0.5, 1); }).find("at least 2") != std::string::npos);
  CHECK(message([] { validate_params(10, 1, std::nan(""), 4); }).find("finite") != std::string::npos);
}

TEST_CASE("condition K boundary") {
  CHECK_NOTHROW(validate_params(10, 1, -1.0 / 3.0 + 1e-9, 4));
  CHECK_THROWS_AS(validate_params(10, 1, -1.0 / 3.0, 4), DomainError);
  CHECK_NOTHROW(validate_params(10, 1, 1.0, 2));
}

TEST_CASE("validation is total: valid output or DomainError") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> real(-2.0, 12.0);
  std::uniform_real_distribution<double> gam(-1.5, 1.5);
  std::uniform_int_distribution<int> count(-1, 40);
  for (int trial = 0; trial < 5000; ++trial) {
    const double a = real(rng), c = real(rng), g = gam(rng);
    const int n = count(rng);
    try {
      const MarketParams p = validate_params(a, c, g, n);
      CHECK(p.a > 0);
      CHECK(p.c > 0);
      CHECK(p.c < p.a);
      CHECK(p.gamma != 0);
      CHECK(p.gamma > -1);
      CHECK(p.gamma <= 1);
      CHECK(p.n >= 2);
      CHECK(p.gamma > -1.0 / (p.n - 1));
    } catch (const DomainError&) {
    }
  }
}

TEST_CASE("make_structure canonicalizes and validates") {
  const CoalitionStructure fig1 = make_structure(46, 4, {7, 7, 7, 7, 7, 7});
  CHECK(fig1.j() == 6);
  CHECK(fig1.s() == 4);
  CHECK_FALSE(fig1.is_grand());

  const CoalitionStructure grand = make_structure(5, 5, {});
  CHECK(grand.j() == 0);
  CHECK(grand.is_grand());
  CHECK(grand.all_sizes() == std::vector<int>{5});

  CHECK_THROWS_AS(make_structure(5, 2, {2, 2}), DomainError);
  CHECK_THROWS_AS(make_structure(5, 2, {4, 0, -1}), DomainError);
  CHECK_THROWS_AS(make_structure(5, 0, {5}), DomainError);
  CHECK_THROWS_AS(make_structure(5, 6, {}), DomainError);
  CHECK_THROWS_AS(make_structure(1, 1, {}), DomainError);

  const CoalitionStructure st = make_structure(10, 2, {1, 3, 4});
  CHECK(st.outsider_sizes() == std::vector<int>{4, 3, 1});
  CHECK(st.all_sizes() == std::vector<int>{2, 4, 3, 1});
}

TEST_CASE("canonicalization is permutation invariant") {
  std::mt19937 rng(11);
  std::vector<int> sizes{5, 1, 3, 3, 2, 1, 1};
  const CoalitionStructure reference = make_structure(20, 4, sizes);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(sizes.begin(), sizes.end(), rng);
    CHECK(make_structure(20, 4, sizes) == reference);
  }
}

TEST_CASE("size lists") {
  CHECK(parse_size_list("7,7,7") == std::vector<int>{7, 7, 7});
  CHECK(parse_size_list(" 3, 1 ") == std::vector<int>{3, 1});
  CHECK(parse_size_list("").empty());
  CHECK_THROWS_AS(parse_size_list("3,,1"), DomainError);
  CHECK_THROWS_AS(parse_size_list("3,x"), DomainError);
  const std::vector<int> sizes{37, 1, 1};
  CHECK(format_sizes(sizes) == "37,1,1");
  CHECK(format_sizes(sizes, ' ') == "37 1 1");
}
