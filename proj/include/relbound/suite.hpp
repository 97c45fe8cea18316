#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace relbound {

struct SuiteConfig {
  std::vector<std::string> families;  // empty = none; "all" expands
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  std::size_t max_n = 32;
  std::string dump_dir;   // failing instances are written here when set
  bool inject_bug = false;  // deliberately mis-shift upper_index (self-test)

  static SuiteConfig from_json(const std::string& text);
  static std::vector<std::string> known_families();
};

struct FamilyResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t passes = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // most negative margin observed
  std::vector<std::string> dump_paths;
  std::string details;  // family-specific JSON object
};

struct SuiteSummary {
  std::vector<FamilyResult> families;
  bool all_passed = true;

  std::string to_json() const;
};

/// Runs every requested property family over seeded random instances.
/// Failures are data, not errors.
SuiteSummary run_suite(const SuiteConfig& config);

}  // namespace relbound
