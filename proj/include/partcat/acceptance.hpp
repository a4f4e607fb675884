#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace partcat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  std::uint64_t ms = 0;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> results;

  bool all_pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return !results.empty();
  }
};

// Runs the full release battery. Every criterion is exercised even after a
// failure; when log is nonnull each criterion prints one PASS/FAIL line as it
// completes. The seed steers the randomized probes (sampled tensor pairs,
// switching sequences, Monte-Carlo streams); identical seeds replay the exact
// same battery.
AcceptanceReport run_acceptance(std::uint64_t seed = 42, std::ostream* log = nullptr);

std::string acceptance_to_json(const AcceptanceReport& r);

}  // namespace partcat
