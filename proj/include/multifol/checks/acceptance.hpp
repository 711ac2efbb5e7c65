#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace multifol::checks {

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Named faults to inject; "weil-table" corrupts the algebra table used by
  /// the functoriality criterion.
  std::set<std::string> faults;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool holds = false;       // the property itself
  double seconds = 0;
  double bound_seconds = 0;
  std::string detail;

  bool passed() const { return holds && seconds < bound_seconds; }
};

/// Fault names accepted by SuiteOptions::faults.
const std::vector<std::string>& known_faults();

CriterionResult run_criterion(int id, const SuiteOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts = {});

/// "PASS  [1] name ... 0.123s < 10s  detail"
std::string format_line(const CriterionResult& r);

}  // namespace multifol::checks
