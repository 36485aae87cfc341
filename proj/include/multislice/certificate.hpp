#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace multislice {

/// Outcome of one checked claim. method names how it was checked
/// ("exact", "float", "modular_upper_bound", ...).
struct Certificate {
  std::string name;
  bool passed = false;
  std::string method;
  std::string detail;
};

inline nlohmann::json to_json(const Certificate& c) {
  return {{"name", c.name},
          {"passed", c.passed},
          {"method", c.method},
          {"detail", c.detail}};
}

inline bool all_passed(const std::vector<Certificate>& cs) {
  for (const auto& c : cs)
    if (!c.passed) return false;
  return true;
}

}  // namespace multislice
