#include "coalstab/market_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace coalstab {

MarketParams validate_params(double a, double c, double gamma, int n) {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(gamma)) {
    throw DomainError("parameters must be finite");
  }
  if (!(a > 0.0)) throw DomainError("demand intercept a must be positive");
  if (!(c > 0.0 && c < a)) throw DomainError("unit cost c must satisfy 0 < c < a");
  if (gamma == 0.0) throw DomainError("gamma must be non-zero");
  if (!(gamma > -1.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (-1, 1]");
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(gamma > -1.0 / static_cast<double>(n - 1))) {
    std::ostringstream msg;
    msg << "condition K violated: gamma <= -1/(n-1) = " << -1.0 / (n - 1);
    throw DomainError(msg.str());
  }
  return MarketParams{a, c, gamma, n};
}

std::vector<int> CoalitionStructure::all_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(outsiders_.size() + 1);
  sizes.push_back(s_);
  sizes.insert(sizes.end(), outsiders_.begin(), outsiders_.end());
  return sizes;
}

CoalitionStructure make_structure(int n, int s, std::span<const int> outsider_sizes) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (s < 1 || s > n) throw DomainError("coalition size s must satisfy 1 <= s <= n");
  std::vector<int> sizes(outsider_sizes.begin(), outsider_sizes.end());
  for (int size : sizes) {
    if (size < 1) throw DomainError("outsider coalition sizes must be at least 1");
  }
  const long long total = std::accumulate(sizes.begin(), sizes.end(), 0LL);
  if (total != n - s) {
    std::ostringstream msg;
    msg << "outsider sizes sum to " << total << ", expected n - s = " << n - s;
    throw DomainError(msg.str());
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return CoalitionStructure(n, s, std::move(sizes));
}

std::vector<int> parse_size_list(const std::string& text) {
  std::vector<int> sizes;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string token = text.substr(pos, end - pos);
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char ch) { return std::isspace(ch); }),
                token.end());
    if (token.empty()) {
      if (end != text.size() || !sizes.empty()) {
        throw DomainError("empty entry in size list '" + text + "'");
      }
    } else {
      int value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw DomainError("invalid coalition size '" + token + "'");
      }
      sizes.push_back(value);
    }
    pos = end + 1;
  }
  return sizes;
}

std::string format_sizes(std::span<const int> sizes, char sep) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(sizes[i]);
  }
  return out;
}

}  // namespace coalstab
