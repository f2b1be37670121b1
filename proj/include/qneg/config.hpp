#pragma once

// Run configuration for the command-line front end.
//
//   state: {type: photon_added_thermal, nbar: 2}     # or states: [..., ...]
//   s: 1                                             # scalar or ascending list
//   filter: auto                                     # auto | none | {type: power_exp, ...}
//   w_schedule: [2, 4, 8, 16, 32]
//   grid: {R: auto, N: auto}
//   channel: {type: loss, eta: 0.7}
//   output: {path: out.json, format: json, log_negativity: false}

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qneg/channels.hpp"
#include "qneg/engine.hpp"
#include "qneg/serialize.hpp"

namespace qneg {

enum class OutputFormat { Csv, Json };
enum class FilterMode { Auto, None, Fixed };

struct OutputSpec {
  std::string path;
  OutputFormat format = OutputFormat::Json;
  bool log_negativity = false;  ///< adds log(N + 1) to sweep tables
};

struct RunConfig {
  std::vector<StateSpec> states;
  std::vector<double> s_values = {1.0};
  FilterMode filter_mode = FilterMode::Auto;
  std::optional<FilterSpec> filter;
  FilterSpec sweep_family = FilterSpec::power_exp(0.21, 1.0);
  std::vector<double> w_schedule = {2, 4, 8, 16, 32};
  GridPolicy grid;
  std::optional<ChannelSpec> channel;
  OutputSpec output;
};

/// Parses and validates; every failure is a ConfigError naming the line.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

OutputFormat parse_format(const std::string& name);

/// Resolved form embedded in every output file.
nlohmann::json to_json(const RunConfig& config);

}  // namespace qneg
