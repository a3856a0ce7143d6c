#pragma once

#include <string>
#include <vector>

#include "ostrowski/alpha.hpp"

namespace suite {

struct Named {
  std::string key;  // matches the frozen-value tables
  ostrowski::AlphaSpec spec;
};

inline ostrowski::AlphaSpec stress_linear() {
  std::vector<ostrowski::Integer> head{0};
  for (int i = 1; i <= 80; ++i) head.emplace_back(i);
  return ostrowski::AlphaSpec::partial_quotients(head);
}

inline ostrowski::AlphaSpec stress_big() {
  return ostrowski::AlphaSpec::partial_quotients({0, 1, 1, 1, 1000000}, {1});
}

inline ostrowski::AlphaSpec cf012() { return ostrowski::AlphaSpec::partial_quotients({0}, {1, 2}); }

/// Bounded partial quotients.
inline std::vector<Named> bounded() {
  using ostrowski::AlphaSpec;
  return {{"phi", AlphaSpec::golden_ratio()},
          {"sqrt2", AlphaSpec::sqrt(2)},
          {"sqrt3", AlphaSpec::sqrt(3)},
          {"cf012", cf012()}};
}

inline std::vector<Named> all() {
  auto v = bounded();
  v.push_back({"stress_i", stress_linear()});
  v.push_back({"stress_big", stress_big()});
  return v;
}

inline ostrowski::AlphaSpec by_key(const std::string& key) {
  for (auto& n : all()) {
    if (n.key == key) return n.spec;
  }
  throw std::runtime_error("unknown suite key " + key);
}

}  // namespace suite
