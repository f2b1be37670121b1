#include "qneg/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace qneg {
namespace {

std::string anchored(const std::string& source, const YAML::Mark& mark, const std::string& message) {
  if (mark.is_null()) return source + ": " + message;
  return source + ":" + std::to_string(mark.line + 1) + ":" + std::to_string(mark.column + 1) + ": " + message;
}

// Reads node[key] as T, converting yaml-cpp and domain failures into anchored errors.
template <typename T>
T field(const YAML::Node& node, const char* key, const std::string& source) {
  const YAML::Node v = node[key];
  if (!v) throw ConfigError(source, node.Mark(), std::string("missing field '") + key + "'");
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(source, v.Mark(), std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const YAML::Node& node, const char* key, T fallback, const std::string& source) {
  return node[key] ? field<T>(node, key, source) : fallback;
}

Complex complex_field(const YAML::Node& node, const char* key, const std::string& source) {
  const YAML::Node v = node[key];
  if (!v) throw ConfigError(source, node.Mark(), std::string("missing field '") + key + "'");
  try {
    if (v.IsSequence()) {
      if (v.size() != 2) throw ConfigError(source, v.Mark(), std::string("'") + key + "' must be [re, im]");
      return {v[0].as<double>(), v[1].as<double>()};
    }
    return {v.as<double>(), 0.0};
  } catch (const YAML::Exception&) {
    throw ConfigError(source, v.Mark(), std::string("'") + key + "' must be a number or [re, im]");
  }
}

std::string type_of(const YAML::Node& node, const std::string& source, const char* what) {
  if (!node.IsMap()) throw ConfigError(source, node.Mark(), std::string(what) + " must be a mapping with a 'type'");
  return field<std::string>(node, "type", source);
}

// Runs a constructor that validates, re-anchoring domain errors at `node`.
template <typename F>
auto anchored_build(const YAML::Node& node, const std::string& source, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(source, node.Mark(), e.what());
  }
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

ConfigError::ConfigError(const std::string& source, const YAML::Mark& mark, const std::string& message)
    : Error(anchored(source, mark, message)), line_(mark.is_null() ? 0 : mark.line + 1) {}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

StateSpec parse_state(const YAML::Node& node, const std::string& source) {
  const std::string type = type_of(node, source, "state");
  return anchored_build(node, source, [&]() -> StateSpec {
    if (type == "coherent") return Coherent{complex_field(node, "alpha0", source)};
    if (type == "thermal") return Thermal{field<double>(node, "nbar", source)};
    if (type == "fock") return Fock{field<int>(node, "n", source)};
    if (type == "squeezed_vacuum") return SqueezedVacuum{field<double>(node, "r", source)};
    if (type == "photon_added_thermal") return PhotonAddedThermal{field<double>(node, "nbar", source)};
    if (type == "mixture") {
      const YAML::Node comps = node["components"];
      if (!comps || !comps.IsSequence())
        throw ConfigError(source, node.Mark(), "mixture needs a 'components' list");
      Mixture m;
      for (const auto& c : comps) {
        if (!c.IsMap()) throw ConfigError(source, c.Mark(), "mixture component must be {weight, state}");
        const YAML::Node st = c["state"];
        if (!st) throw ConfigError(source, c.Mark(), "missing field 'state'");
        m.components.emplace_back(field<double>(c, "weight", source), parse_state(st, source));
      }
      return m;
    }
    throw ConfigError(source, node["type"].Mark(), "unknown state type '" + type + "'");
  });
}

FilterSpec parse_filter(const YAML::Node& node, const std::string& source) {
  const std::string type = type_of(node, source, "filter");
  return anchored_build(node, source, [&]() -> FilterSpec {
    const double w = field_or<double>(node, "w", 1.0, source);
    if (type == "power_exp") return FilterSpec::power_exp(field_or<double>(node, "epsilon", 0.21, source), w);
    if (type == "gaussian") return FilterSpec::gaussian(w);
    throw ConfigError(source, node["type"].Mark(), "unknown filter type '" + type + "'");
  });
}

ChannelSpec parse_channel(const YAML::Node& node, const std::string& source) {
  const std::string type = type_of(node, source, "channel");
  return anchored_build(node, source, [&]() -> ChannelSpec {
    if (type == "loss")
      return Loss{field<double>(node, "eta", source), field_or<double>(node, "ancilla_nbar", 0.0, source)};
    if (type == "phase_shift") return PhaseShift{field<double>(node, "theta", source)};
    if (type == "displacement") return Displacement{complex_field(node, "gamma", source)};
    if (type == "compose") {
      const YAML::Node stages = node["stages"];
      if (!stages || !stages.IsSequence()) throw ConfigError(source, node.Mark(), "compose needs a 'stages' list");
      Compose c;
      for (const auto& s : stages) c.stages.push_back(parse_channel(s, source));
      return c;
    }
    if (type == "convex_combine") {
      const YAML::Node branches = node["branches"];
      if (!branches || !branches.IsSequence())
        throw ConfigError(source, node.Mark(), "convex_combine needs a 'branches' list");
      ConvexCombine c;
      for (const auto& b : branches) {
        if (!b.IsMap() || !b["channel"]) throw ConfigError(source, b.Mark(), "branch must be {weight, channel}");
        c.branches.emplace_back(field<double>(b, "weight", source), parse_channel(b["channel"], source));
      }
      return c;
    }
    throw ConfigError(source, node["type"].Mark(), "unknown channel type '" + type + "'");
  });
}

void to_json(nlohmann::json& j, const StateSpec& state) {
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          j = {{"type", "coherent"}, {"alpha0", complex_json(s.alpha0)}};
        } else if constexpr (std::is_same_v<T, Thermal>) {
          j = {{"type", "thermal"}, {"nbar", s.nbar}};
        } else if constexpr (std::is_same_v<T, Fock>) {
          j = {{"type", "fock"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          j = {{"type", "squeezed_vacuum"}, {"r", s.r}};
        } else if constexpr (std::is_same_v<T, PhotonAddedThermal>) {
          j = {{"type", "photon_added_thermal"}, {"nbar", s.nbar}};
        } else {
          auto comps = nlohmann::json::array();
          for (const auto& [p, st] : s.components) comps.push_back({{"weight", p}, {"state", st}});
          j = {{"type", "mixture"}, {"components", comps}};
        }
      },
      state.variant());
}

void to_json(nlohmann::json& j, const FilterSpec& filter) {
  if (const auto* pe = std::get_if<PowerExponential>(&filter.family()))
    j = {{"type", "power_exp"}, {"epsilon", pe->epsilon}, {"w", filter.width()}};
  else
    j = {{"type", "gaussian"}, {"w", filter.width()}};
}

void to_json(nlohmann::json& j, const ChannelSpec& channel) {
  std::visit(
      [&j](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Loss>) {
          j = {{"type", "loss"}, {"eta", c.eta}, {"ancilla_nbar", c.ancilla_nbar}};
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          j = {{"type", "phase_shift"}, {"theta", c.theta}};
        } else if constexpr (std::is_same_v<T, Displacement>) {
          j = {{"type", "displacement"}, {"gamma", complex_json(c.gamma)}};
        } else if constexpr (std::is_same_v<T, Compose>) {
          j = {{"type", "compose"}, {"stages", c.stages}};
        } else {
          auto branches = nlohmann::json::array();
          for (const auto& [p, ch] : c.branches) branches.push_back({{"weight", p}, {"channel", ch}});
          j = {{"type", "convex_combine"}, {"branches", branches}};
        }
      },
      channel.variant());
}

void to_json(nlohmann::json& j, const GridSpec& grid) {
  j = {{"R", grid.half_extent()}, {"N", grid.samples()}, {"spacing", grid.spacing()}};
}

void to_json(nlohmann::json& j, const Diagnostics& d) {
  j = {{"imag_residue", d.imag_residue},
       {"boundary_magnitude", d.boundary_magnitude},
       {"total_mass", d.total_mass},
       {"parseval_residual", d.parseval_residual},
       {"min_value", d.min_value}};
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"kind", describe(v)}};
  if (const auto* c = std::get_if<Converged>(&v)) {
    j["limit_estimate"] = c->limit_estimate;
    j["uncertainty"] = c->uncertainty;
  } else if (const auto* d = std::get_if<Diverging>(&v)) {
    j["growth_rate"] = d->growth_rate;
  }
}

void to_json(nlohmann::json& j, const NegativityResult& r) {
  j = {{"state", r.state}, {"s", r.s}, {"value", r.value}, {"grid", r.grid}, {"diagnostics", r.diagnostics}};
  j["filter"] = r.filter ? nlohmann::json(*r.filter) : nlohmann::json(nullptr);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw ContractError("csv: row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const nlohmann::json& config) const {
  auto quote = [](const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string out = "# config: " + config.dump() + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + quote(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace qneg
