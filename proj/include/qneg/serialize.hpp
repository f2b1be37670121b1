#pragma once

// Structured-text and JSON forms of the domain types.
//
// State:   {type: fock, n: 1} | {type: coherent, alpha0: [re, im]} | {type: thermal, nbar: 1}
//          {type: squeezed_vacuum, r: 0.5} | {type: photon_added_thermal, nbar: 2}
//          {type: mixture, components: [{weight: 0.5, state: {...}}, ...]}
// Filter:  {type: power_exp, epsilon: 0.21, w: 8} | {type: gaussian, w: 1}
// Channel: {type: loss, eta: 0.7, ancilla_nbar: 0} | {type: phase_shift, theta: 0.3}
//          {type: displacement, gamma: [re, im]} | {type: compose, stages: [...]}
//          {type: convex_combine, branches: [{weight: 0.5, channel: {...}}, ...]}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

#include "qneg/channels.hpp"
#include "qneg/engine.hpp"
#include "qneg/error.hpp"

namespace qneg {

/// Malformed structured text. what() starts with "<source>:<line>:<column>: ".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, const YAML::Mark& mark, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Shortest decimal that round-trips to the same double.
std::string format_number(double x);

StateSpec parse_state(const YAML::Node& node, const std::string& source = "<config>");
FilterSpec parse_filter(const YAML::Node& node, const std::string& source = "<config>");
ChannelSpec parse_channel(const YAML::Node& node, const std::string& source = "<config>");

void to_json(nlohmann::json& j, const StateSpec& state);
void to_json(nlohmann::json& j, const FilterSpec& filter);
void to_json(nlohmann::json& j, const ChannelSpec& channel);
void to_json(nlohmann::json& j, const GridSpec& grid);
void to_json(nlohmann::json& j, const Diagnostics& d);
void to_json(nlohmann::json& j, const Verdict& v);
void to_json(nlohmann::json& j, const NegativityResult& r);

/// Header line "# config: <compact json>", then one comma-separated record per row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  /// Cells in column order; numbers go through format_number.
  void add_row(std::vector<std::string> cells);
  std::string render(const nlohmann::json& config) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace qneg
