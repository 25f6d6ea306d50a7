#pragma once

#include <nichols/scalar.hpp>

#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

using ParamMap = std::map<std::string, Scalar>;

class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const Scalar& param(const ParamMap& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw ConstraintError("missing parameter '" + name + "'");
  return it->second;
}

// `k=v,k=v` with rational values.
inline ParamMap parse_params(const std::string& text) {
  ParamMap m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected name=value in '" + item + "'");
    std::string key = trim(item.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("empty parameter name in '" + item + "'");
    if (m.count(key)) throw std::invalid_argument("parameter '" + key + "' given twice");
    m[key] = parse_scalar(trim(item.substr(eq + 1)));
  }
  return m;
}

inline std::string format_params(const ParamMap& m) {
  std::string s;
  for (const auto& [k, v] : m) {
    if (!s.empty()) s += ",";
    s += k + "=" + v.get_str();
  }
  return s;
}

// num/den with num in [-5,5]\{0}, den in [1,5].
inline Scalar draw_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 10), den(1, 5);
  int n = num(rng);
  n = n <= 5 ? n - 6 : n - 5;
  Scalar q(n, den(rng));
  q.canonicalize();
  return q;
}

}  // namespace nichols
