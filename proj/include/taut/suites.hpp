#ifndef TAUT_SUITES_HPP
#define TAUT_SUITES_HPP

#include "taut/rational.hpp"
#include "taut/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taut {

/// Parameters shared by the verification suites. Unset fields fall back
/// to each suite's own defaults.
struct SuiteOptions {
  std::optional<std::pair<int, int>> n_range;
  std::optional<int> samples;
  std::uint64_t seed = 20240501;
  std::optional<std::vector<Rational>> weights; // discrepancy, theorem-nef
  std::optional<std::vector<Rational>> x;       // git-descent
  int jobs = 1;
};

/// "4..8" or "6".
std::pair<int, int> parse_n_range(std::string_view text);

struct SuiteReport {
  std::string suite;
  nlohmann::ordered_json parameters;
  std::vector<IdentityCheck> checks;
  std::vector<std::string> notes;
  nlohmann::ordered_json results; // suite-specific computed values, may be null

  bool ok() const { return all_hold(checks); }
  nlohmann::ordered_json to_json(std::uint64_t seed) const;
};

/// keel, positivity, mumford, replacement, discrepancy, n6-relations,
/// git-descent, theorem-nef.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws UsageError for an unknown name or bad options.
/// Output is identical for identical options regardless of `jobs`.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options);

} // namespace taut

#endif // TAUT_SUITES_HPP
