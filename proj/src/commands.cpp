#include "qneg/commands.hpp"

#include <cmath>

#include "qneg/grid_io.hpp"

namespace qneg {
namespace {

using nlohmann::json;

const StateSpec& single_state(const RunConfig& config) {
  if (config.states.size() != 1) throw ContractError("this command needs exactly one 'state'");
  return config.states.front();
}

double single_s(const RunConfig& config) {
  if (config.s_values.size() != 1) throw ContractError("this command needs a single 's' value");
  return config.s_values.front();
}

CharacteristicFunction chi_of(const RunConfig& config, const StateSpec& state) {
  auto chi = characteristic(state);
  return config.channel ? apply_channel(*config.channel, std::move(chi)) : chi;
}

LimitPolicy limit_policy(const RunConfig& config) { return {config.sweep_family, config.w_schedule, config.grid}; }

std::string num(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

std::vector<std::string> diagnostic_cells(const std::optional<NegativityResult>& r) {
  if (!r) return {"", "", "", "", "", "", ""};
  const auto& d = r->diagnostics;
  return {r->filter ? format_number(r->filter->width()) : "",
          format_number(r->grid.half_extent()),
          std::to_string(r->grid.samples()),
          format_number(d.imag_residue),
          format_number(d.boundary_magnitude),
          format_number(d.total_mass),
          format_number(d.parseval_residual)};
}

const std::vector<std::string> kDiagnosticColumns = {"w",          "R",          "N", "imag_residue", "boundary_magnitude",
                                                     "total_mass", "parseval_residual"};

std::vector<std::string> columns(std::vector<std::string> head, bool log_column) {
  if (log_column) head.push_back("log_negativity");
  head.push_back("verdict");
  head.insert(head.end(), kDiagnosticColumns.begin(), kDiagnosticColumns.end());
  head.push_back("error");
  return head;
}

std::string log1p_cell(const std::optional<double>& v) { return v ? format_number(std::log1p(*v)) : ""; }

std::string finish(const json& body, const std::optional<CsvTable>& table, const json& config, OutputFormat format) {
  if (format == OutputFormat::Csv) return table->render(config);
  return body.dump(2) + "\n";
}

std::optional<NegativityResult> last_result(const ConvergenceReport& sweep) {
  for (auto it = sweep.entries.rbegin(); it != sweep.entries.rend(); ++it)
    if (it->result) return it->result;
  return std::nullopt;
}

json sweep_json(const ConvergenceReport& sweep, bool log_column) {
  auto entries = json::array();
  for (const auto& e : sweep.entries) {
    json item = {{"w", e.w}};
    if (e.result) {
      item["result"] = *e.result;
      if (log_column) item["log_negativity"] = std::log1p(e.result->value);
    } else {
      item["error"] = e.error;
    }
    entries.push_back(item);
  }
  return {{"state", sweep.state}, {"s", sweep.s}, {"family", sweep.family}, {"verdict", sweep.verdict},
          {"entries", entries}};
}

}  // namespace

SweepAxis parse_axis(const std::string& name) {
  if (name == "w") return SweepAxis::W;
  if (name == "s") return SweepAxis::S;
  throw ContractError("unknown sweep axis '" + name + "' (expected w or s)");
}

std::string run_negativity(const RunConfig& config, OutputFormat format) {
  const auto& state = single_state(config);
  const OrderParameter s(single_s(config));
  const auto chi = chi_of(config, state);

  json record = {{"state", state}, {"label", chi.label()}, {"s", s.value()}};
  CsvTable table(columns({"state", "s", "method", "negativity"}, false));
  std::optional<NegativityResult> result;
  std::optional<double> value;
  Verdict verdict = Inconclusive{};
  std::string method, error;

  if (config.filter_mode == FilterMode::Auto) {
    const auto est = estimate_limit(chi, s, limit_policy(config));
    method = est.method;
    value = est.value;
    verdict = est.verdict;
    error = est.error;
    result = est.result ? est.result : (est.sweep ? last_result(*est.sweep) : std::nullopt);
    if (est.sweep) record["sweep"] = sweep_json(*est.sweep, false);
  } else {
    const auto filter = config.filter_mode == FilterMode::Fixed ? config.filter : std::nullopt;
    result = negativity(chi, s, filter, config.grid);
    method = filter ? "fixed filter" : "unfiltered";
    value = result->value;
    verdict = Converged{result->value, 0.0};
  }
  record["method"] = method;
  record["negativity"] = value ? json(*value) : json(nullptr);
  record["verdict"] = verdict;
  if (result) record["result"] = *result;
  if (!error.empty()) record["error"] = error;

  auto row = std::vector<std::string>{chi.label(), format_number(s.value()), method, num(value), describe(verdict)};
  const auto diag = diagnostic_cells(result);
  row.insert(row.end(), diag.begin(), diag.end());
  row.push_back(error);
  table.add_row(row);

  const json cfg = to_json(config);
  return finish({{"config", cfg}, {"record", record}}, table, cfg, format);
}

std::string run_sweep(const RunConfig& config, SweepAxis axis, OutputFormat format) {
  if (config.states.empty()) throw ContractError("sweep needs 'state' or 'states'");
  const bool log_column = config.output.log_negativity;
  const json cfg = to_json(config);
  auto body = json::array();

  if (axis == SweepAxis::W) {
    if (config.filter_mode == FilterMode::None) throw ContractError("a w-sweep needs a filter family, not 'none'");
    CsvTable table(columns({"state", "s", "w_axis", "negativity"}, log_column));
    for (const auto& state : config.states) {
      const auto chi = chi_of(config, state);
      for (double sv : config.s_values) {
        const auto sweep = sweep_w(chi, OrderParameter(sv), config.sweep_family, config.w_schedule, config.grid);
        body.push_back(sweep_json(sweep, log_column));
        for (const auto& e : sweep.entries) {
          const std::string value = e.result ? format_number(e.result->value) : "";
          std::vector<std::string> row = {chi.label(), format_number(sv), format_number(e.w), value};
          if (log_column) row.push_back(e.result ? format_number(std::log1p(e.result->value)) : "");
          row.push_back(describe(sweep.verdict));
          const auto diag = diagnostic_cells(e.result);
          row.insert(row.end(), diag.begin(), diag.end());
          row.push_back(e.error);
          table.add_row(row);
        }
      }
    }
    return finish({{"config", cfg}, {"axis", "w"}, {"sweeps", body}}, table, cfg, format);
  }

  CsvTable table(columns({"state", "s", "method", "negativity"}, log_column));
  for (const auto& state : config.states) {
    const auto chi = chi_of(config, state);
    std::vector<LimitEstimate> estimates;
    if (config.filter_mode == FilterMode::Auto) {
      estimates = sweep_s(chi, config.s_values, limit_policy(config));
    } else {
      for (std::size_t i = 1; i < config.s_values.size(); ++i)
        if (!(config.s_values[i] > config.s_values[i - 1])) throw ContractError("sweep_s: s values must be ascending");
      for (double sv : config.s_values) {
        LimitEstimate est;
        est.s = sv;
        est.method = config.filter ? "fixed filter" : "unfiltered";
        try {
          est.result = negativity(chi, OrderParameter(sv), config.filter, config.grid);
          est.value = est.result->value;
          est.verdict = Converged{est.result->value, 0.0};
        } catch (const GuardError& e) {
          est.error = e.what();
        }
        estimates.push_back(std::move(est));
      }
    }
    auto points = json::array();
    for (const auto& est : estimates) {
      const auto shown = est.result ? est.result : (est.sweep ? last_result(*est.sweep) : std::nullopt);
      json p = {{"s", est.s}, {"method", est.method}, {"negativity", est.value ? json(*est.value) : json(nullptr)},
                {"verdict", est.verdict}};
      if (log_column && est.value) p["log_negativity"] = std::log1p(*est.value);
      if (shown) p["result"] = *shown;
      if (est.sweep) p["sweep"] = sweep_json(*est.sweep, log_column);
      if (!est.error.empty()) p["error"] = est.error;
      points.push_back(p);

      std::vector<std::string> row = {chi.label(), format_number(est.s), est.method, num(est.value)};
      if (log_column) row.push_back(log1p_cell(est.value));
      row.push_back(describe(est.verdict));
      const auto diag = diagnostic_cells(shown);
      row.insert(row.end(), diag.begin(), diag.end());
      row.push_back(est.error);
      table.add_row(row);
    }
    body.push_back({{"state", chi.label()}, {"points", points}});
  }
  return finish({{"config", cfg}, {"axis", "s"}, {"sweeps", body}}, table, cfg, format);
}

std::string run_export(const RunConfig& config, const std::string& path) {
  const auto& state = single_state(config);
  const OrderParameter s(single_s(config));
  const auto chi = chi_of(config, state);
  if (config.filter_mode == FilterMode::Auto)
    throw ContractError("export needs an explicit filter ('none' or a filter mapping), not 'auto'");
  const auto spec = resolve_grid(chi, s, config.filter, config.grid);
  const auto qp = compute_quasiprob(chi, s, config.filter, spec, config.grid.guard);
  write_grid(path, qp.grid);
  return "wrote " + path + " (" + chi.label() + ", s=" + format_number(s.value()) +
         ", R_alpha=" + format_number(qp.grid.spec().half_extent()) + ", N=" + std::to_string(spec.samples()) + ")";
}

}  // namespace qneg
