#pragma once

// Check suites driven by `qneg verify`: filter properties, weak and
// approximate monotonicity under loss, convexity, robustness.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qneg/channels.hpp"
#include "qneg/config.hpp"

namespace qneg {

struct VerifyRow {
  std::string suite;
  std::string check;
  CheckStatus status = CheckStatus::Skip;
  double value = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  int count(CheckStatus s) const;
  bool any_fail() const { return count(CheckStatus::Fail) > 0; }
};

/// "filters", "monotone", "convexity", "robustness" or "all". States and a
/// channel in `config` replace the default monotone matrix; a fixed
/// power-exponential filter sets epsilon.
VerifyReport run_verify(const std::string& suite, const RunConfig& config = {});

std::string render_table(const VerifyReport& report);
nlohmann::json to_json(const VerifyReport& report);
std::string render_csv(const VerifyReport& report, const nlohmann::json& config);

using TwoComponent = std::vector<std::pair<double, StateSpec>>;

/// Reproducible random two-component mixtures over the state catalog.
/// Squeezed vacuum is left out when `allow_squeezed` is false (its s = 1
/// P-function is not representable at the filter widths that converge).
std::vector<TwoComponent> random_mixtures(int count, std::uint64_t seed, bool allow_squeezed);

}  // namespace qneg
