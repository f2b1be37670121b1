#include "qneg/config.hpp"

#include <algorithm>
#include <functional>
#include <fstream>
#include <sstream>

namespace qneg {
namespace {

std::vector<double> number_list(const YAML::Node& node, const char* key, const std::string& source) {
  std::vector<double> out;
  try {
    if (node.IsSequence()) {
      for (const auto& v : node) out.push_back(v.as<double>());
    } else {
      out.push_back(node.as<double>());
    }
  } catch (const YAML::Exception&) {
    throw ConfigError(source, node.Mark(), std::string("'") + key + "' must be a number or a list of numbers");
  }
  if (out.empty()) throw ConfigError(source, node.Mark(), std::string("'") + key + "' must not be empty");
  return out;
}

bool is_word(const YAML::Node& node, const char* word) {
  return node.IsScalar() && node.Scalar() == word;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ContractError("unknown output format '" + name + "' (expected csv or json)");
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark, e.msg);
  }
  RunConfig cfg;
  if (!root || root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError(source, root.Mark(), "config must be a mapping");

  static const char* const known[] = {"state", "states", "s", "filter", "w_schedule", "grid", "channel", "output"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError(source, kv.first.Mark(), "unknown key '" + key + "'");
  }

  if (root["state"] && root["states"])
    throw ConfigError(source, root["states"].Mark(), "give either 'state' or 'states', not both");
  if (const auto st = root["state"]) cfg.states.push_back(parse_state(st, source));
  if (const auto sts = root["states"]) {
    if (!sts.IsSequence()) throw ConfigError(source, sts.Mark(), "'states' must be a list");
    for (const auto& st : sts) cfg.states.push_back(parse_state(st, source));
  }

  if (const auto s = root["s"]) {
    cfg.s_values = number_list(s, "s", source);
    for (double v : cfg.s_values) {
      try {
        (void)OrderParameter(v);
      } catch (const Error& e) {
        throw ConfigError(source, s.Mark(), e.what());
      }
    }
    if (std::adjacent_find(cfg.s_values.begin(), cfg.s_values.end(), std::greater_equal<>()) != cfg.s_values.end())
      throw ConfigError(source, s.Mark(), "'s' values must be strictly ascending");
  }

  if (const auto f = root["filter"]) {
    if (is_word(f, "auto")) {
      cfg.filter_mode = FilterMode::Auto;
    } else if (is_word(f, "none")) {
      cfg.filter_mode = FilterMode::None;
    } else {
      cfg.filter_mode = FilterMode::Fixed;
      cfg.filter = parse_filter(f, source);
      cfg.sweep_family = cfg.filter->with_width(1.0);
    }
  }

  if (const auto ws = root["w_schedule"]) {
    cfg.w_schedule = number_list(ws, "w_schedule", source);
    for (std::size_t i = 0; i < cfg.w_schedule.size(); ++i)
      if (!(cfg.w_schedule[i] > 0.0) || (i && !(cfg.w_schedule[i] > cfg.w_schedule[i - 1])))
        throw ConfigError(source, ws.Mark(), "'w_schedule' must be positive and increasing");
  }

  if (const auto g = root["grid"]) {
    if (!g.IsMap()) throw ConfigError(source, g.Mark(), "'grid' must be a mapping {R, N}");
    try {
      if (const auto r = g["R"]; r && !is_word(r, "auto")) {
        cfg.grid.half_extent = r.as<double>();
        if (!(*cfg.grid.half_extent > 0.0)) throw ConfigError(source, r.Mark(), "grid R must be > 0");
      }
      if (const auto n = g["N"]; n && !is_word(n, "auto")) {
        cfg.grid.samples = n.as<int>();
        if (*cfg.grid.samples < 16 || (*cfg.grid.samples & (*cfg.grid.samples - 1)))
          throw ConfigError(source, n.Mark(), "grid N must be a power of two >= 16");
      }
      if (const auto a = g["alpha_half_extent"]) cfg.grid.alpha_half_extent = a.as<double>();
      if (const auto m = g["max_samples"]) cfg.grid.max_samples = m.as<int>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(source, e.mark, "grid values must be numbers or 'auto'");
    }
  }

  if (const auto c = root["channel"]) cfg.channel = parse_channel(c, source);

  if (const auto o = root["output"]) {
    if (!o.IsMap()) throw ConfigError(source, o.Mark(), "'output' must be a mapping");
    try {
      if (o["path"]) cfg.output.path = o["path"].as<std::string>();
      if (o["format"]) cfg.output.format = parse_format(o["format"].as<std::string>());
      if (o["log_negativity"]) cfg.output.log_negativity = o["log_negativity"].as<bool>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(source, e.mark, "malformed 'output' entry");
    } catch (const ContractError& e) {
      throw ConfigError(source, o["format"].Mark(), e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

nlohmann::json to_json(const RunConfig& config) {
  nlohmann::json j;
  j["states"] = config.states;
  j["s"] = config.s_values;
  switch (config.filter_mode) {
    case FilterMode::Auto:
      j["filter"] = "auto";
      break;
    case FilterMode::None:
      j["filter"] = "none";
      break;
    case FilterMode::Fixed:
      j["filter"] = *config.filter;
      break;
  }
  j["sweep_family"] = config.sweep_family;
  j["w_schedule"] = config.w_schedule;
  nlohmann::json grid;
  grid["R"] = config.grid.half_extent ? nlohmann::json(*config.grid.half_extent) : nlohmann::json("auto");
  grid["N"] = config.grid.samples ? nlohmann::json(*config.grid.samples) : nlohmann::json("auto");
  grid["alpha_half_extent"] = config.grid.alpha_half_extent;
  grid["max_samples"] = config.grid.max_samples;
  grid["guard"] = config.grid.guard;
  j["grid"] = grid;
  j["channel"] = config.channel ? nlohmann::json(*config.channel) : nlohmann::json(nullptr);
  j["output"] = {{"format", config.output.format == OutputFormat::Csv ? "csv" : "json"},
                 {"log_negativity", config.output.log_negativity}};
  return j;
}

}  // namespace qneg
