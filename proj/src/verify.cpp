#include "qneg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace qneg {
namespace {

double epsilon_of(const RunConfig& config) {
  if (config.filter)
    if (const auto* pe = std::get_if<PowerExponential>(&config.filter->family())) return pe->epsilon;
  return 0.21;
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

void filters_suite(const RunConfig& config, VerifyReport& out) {
  const double eps = epsilon_of(config);
  for (double w : {1.0, 8.0}) {
    const auto report = verify_filter_properties(FilterSpec::power_exp(eps, w));
    for (const auto& c : report.checks)
      out.rows.push_back({"filters", report.filter.describe() + " property (" + c.property + ")",
                          c.pass ? CheckStatus::Pass : CheckStatus::Fail, c.residual, c.detail});
  }

  const auto d = filter_negativity_delta(eps);
  VerifyRow row{"filters", "2 delta for eps=" + fixed(eps), CheckStatus::Pass, 2.0 * d.delta,
                "2 delta = " + fixed(2.0 * d.delta) + " on R=8, N=1024"};
  if (eps == 0.21 && !(2.0 * d.delta >= 0.04 && 2.0 * d.delta <= 0.06)) {
    row.status = CheckStatus::Fail;
    row.detail += " (expected within [0.04, 0.06])";
  }
  out.rows.push_back(row);

  std::vector<double> deltas;
  std::string trail;
  for (double e : {0.4, 0.21, 0.1, 0.05}) {
    deltas.push_back(filter_negativity_delta(e).delta);
    trail += (trail.empty() ? "" : ", ") + fixed(e) + ":" + fixed(deltas.back());
  }
  bool nonincreasing = true;
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] > deltas[i - 1] + 1e-9) nonincreasing = false;
  out.rows.push_back({"filters", "delta nonincreasing as eps decreases",
                      nonincreasing ? CheckStatus::Pass : CheckStatus::Fail, deltas.back(), trail});
}

struct MonotoneCase {
  StateSpec state;
  double s;
};

void monotone_suite(const RunConfig& config, VerifyReport& out) {
  const double eps = epsilon_of(config);
  std::vector<MonotoneCase> cases;
  std::vector<ChannelSpec> channels;
  if (!config.states.empty() && config.channel) {
    for (const auto& st : config.states)
      for (double s : config.s_values) cases.push_back({st, s});
    channels.push_back(*config.channel);
  } else {
    cases = {{Fock{1}, 0.0}, {Fock{2}, 0.0}, {PhotonAddedThermal{2.0}, 1.0}};
    for (double eta : {0.9, 0.6, 0.3}) channels.push_back(Loss{eta});
  }

  EvaluationPolicy policy;
  policy.grid = config.grid;
  policy.w_schedule = config.w_schedule;
  policy.sweep_family = config.sweep_family;
  if (config.filter_mode == FilterMode::Fixed) policy.filter = config.filter;

  for (const auto& c : cases)
    for (const auto& ch : channels) {
      const auto m = check_weak_monotonicity(c.state, ch, OrderParameter(c.s), policy);
      out.rows.push_back({"monotone", "weak " + m.label, m.status, m.margin,
                          m.status == CheckStatus::Skip ? m.detail
                                                        : "N before " + fixed(m.before) + ", after " + fixed(m.after)});
    }

  if (config.states.empty() || !config.channel) {
    for (const auto& c : {MonotoneCase{Fock{2}, 0.0}, MonotoneCase{PhotonAddedThermal{2.0}, 1.0}}) {
      const auto m = check_weak_monotonicity(c.state, PhaseShift{0.7}, OrderParameter(c.s), policy);
      auto status = m.status;
      if (status == CheckStatus::Pass && std::abs(m.margin) > 1e-4) status = CheckStatus::Fail;
      out.rows.push_back({"monotone", "rotation " + m.label, status, m.margin, "margin must vanish within 1e-4"});
    }
  }

  const double delta = filter_negativity_delta(eps).delta;
  for (double w : {4.0, 8.0})
    for (const auto& c : cases)
      for (const auto& ch : channels) {
        const auto r = check_approx_monotonicity(c.state, ch, eps, w, config.grid, delta);
        out.rows.push_back({"monotone", "approx " + r.label, r.status, r.slack,
                            r.status == CheckStatus::Skip
                                ? r.detail
                                : "(1+2d)N+d = " + fixed((1.0 + 2.0 * delta) * r.before + delta) + " vs " +
                                      fixed(r.after)});
      }
}

void convexity_suite(const RunConfig& config, VerifyReport& out) {
  EvaluationPolicy wigner;
  wigner.grid = config.grid;
  for (const auto& mix : random_mixtures(6, 0xC0FFEE, true)) {
    const auto m = check_convexity(mix, OrderParameter(0.0), wigner);
    out.rows.push_back({"convexity", m.label, m.status, m.margin, m.detail});
  }
  EvaluationPolicy filtered;
  filtered.grid = config.grid;
  filtered.filter = FilterSpec::power_exp(epsilon_of(config), 8.0);
  for (const auto& mix : random_mixtures(6, 0xBEEF, false)) {
    const auto m = check_convexity(mix, OrderParameter(1.0), filtered);
    out.rows.push_back({"convexity", m.label, m.status, m.margin, m.detail});
  }
}

void robustness_suite(const RunConfig& config, VerifyReport& out) {
  const StateSpec state = config.states.empty() ? StateSpec(PhotonAddedThermal{2.0}) : config.states.front();
  const auto filter = config.filter_mode == FilterMode::Fixed ? *config.filter
                                                              : FilterSpec::power_exp(epsilon_of(config), 8.0);
  const std::string label = state.describe() + " with " + filter.describe();
  try {
    const auto r = robustness_decomposition(state, OrderParameter(1.0), filter, config.grid);
    out.rows.push_back({"robustness", "r_w " + label, CheckStatus::Pass, r.r_w, "negative volume of P"});
    out.rows.push_back({"robustness", "sigma mass " + label,
                        std::abs(r.sigma_mass - 1.0) <= 1e-9 ? CheckStatus::Pass : CheckStatus::Fail, r.sigma_mass,
                        "sigma = P^- / r_w must carry unit mass"});
    out.rows.push_back({"robustness", "mixture negativity " + label,
                        r.mixture_negativity < 1e-8 ? CheckStatus::Pass : CheckStatus::Fail, r.mixture_negativity,
                        "(P + r_w sigma) / (1 + r_w) must be nonnegative"});
  } catch (const Error& e) {
    out.rows.push_back({"robustness", label, CheckStatus::Skip, 0.0, e.what()});
  }
}

}  // namespace

int VerifyReport::count(CheckStatus s) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [s](const VerifyRow& r) { return r.status == s; }));
}

VerifyReport run_verify(const std::string& suite, const RunConfig& config) {
  VerifyReport out;
  const bool all = suite == "all";
  if (!all && suite != "filters" && suite != "monotone" && suite != "convexity" && suite != "robustness")
    throw ContractError("unknown verify suite '" + suite + "' (filters, monotone, convexity, robustness, all)");
  if (all || suite == "filters") filters_suite(config, out);
  if (all || suite == "monotone") monotone_suite(config, out);
  if (all || suite == "convexity") convexity_suite(config, out);
  if (all || suite == "robustness") robustness_suite(config, out);
  return out;
}

std::string render_table(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& r : report.rows)
    os << std::left << std::setw(5) << to_string(r.status) << std::setw(11) << r.suite << r.check << "  ["
       << fixed(r.value) << "]  " << r.detail << "\n";
  os << report.count(CheckStatus::Pass) << " pass, " << report.count(CheckStatus::Fail) << " fail, "
     << report.count(CheckStatus::Skip) << " skip\n";
  return os.str();
}

nlohmann::json to_json(const VerifyReport& report) {
  auto rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"suite", r.suite},
                    {"check", r.check},
                    {"status", to_string(r.status)},
                    {"value", r.value},
                    {"detail", r.detail}});
  return {{"rows", rows},
          {"pass", report.count(CheckStatus::Pass)},
          {"fail", report.count(CheckStatus::Fail)},
          {"skip", report.count(CheckStatus::Skip)}};
}

std::string render_csv(const VerifyReport& report, const nlohmann::json& config) {
  CsvTable table({"suite", "check", "status", "value", "detail"});
  for (const auto& r : report.rows) table.add_row({r.suite, r.check, to_string(r.status), format_number(r.value), r.detail});
  return table.render(config);
}

std::vector<TwoComponent> random_mixtures(int count, std::uint64_t seed, bool allow_squeezed) {
  std::vector<StateSpec> catalog = {Fock{1},
                                    Fock{2},
                                    Fock{3},
                                    Coherent{{1.0, 0.0}},
                                    Coherent{{0.5, -0.5}},
                                    Thermal{0.5},
                                    Thermal{2.0},
                                    PhotonAddedThermal{1.0},
                                    PhotonAddedThermal{2.0}};
  if (allow_squeezed) catalog.push_back(SqueezedVacuum{0.5});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
  std::uniform_real_distribution<double> weight(0.1, 0.9);
  std::vector<TwoComponent> out;
  while (static_cast<int>(out.size()) < count) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const double p = weight(rng);
    out.push_back({{p, catalog[a]}, {1.0 - p, catalog[b]}});
  }
  return out;
}

}  // namespace qneg
