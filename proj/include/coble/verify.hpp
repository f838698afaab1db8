#pragma once

// Invariant suites run by `coble verify`: deterministic for a given seed.

#include "coble/plane_config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coble {

struct SuiteReport {
  std::string suite;
  bool passed = false;
  /// Named counts in a fixed order, e.g. ("rank", 10).
  std::vector<std::pair<std::string, long long>> counts;
};

/// rank10, spans, group, cubic, beautiful.
const std::vector<std::string>& suite_names();

/// `samples` overrides the suite's default count (200 configurations for
/// rank10, 400 samples for spans, 50 for cubic and beautiful). InvalidInput
/// for an unknown suite.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed, std::optional<int> samples = std::nullopt);

/// The d2 identity: d2 = -(m134 m156 m235 m246 - m135 m146 m234 m256).
bool check_beautiful_relation(const SixPointConfig& c);

}  // namespace coble
