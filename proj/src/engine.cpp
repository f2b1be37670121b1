#include "qneg/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qneg/error.hpp"

namespace qneg {
namespace {

constexpr int kRays = 72;

std::vector<double> scan_radii(double max_radius) {
  std::vector<double> radii;
  for (int i = 0; i <= 128; ++i) radii.push_back(i / 16.0);
  for (double r = 8.0 * 1.02; r < max_radius * 1.02; r *= 1.02) radii.push_back(std::min(r, max_radius));
  return radii;
}

double filter_log(const std::optional<FilterSpec>& filter, Complex beta) {
  return filter ? log_filter(*filter, beta) : 0.0;
}

std::string label_of(const std::optional<FilterSpec>& filter) { return filter ? filter->describe() : "none"; }

std::mutex observer_mutex;
EvaluationObserver observer;

}  // namespace

std::optional<double> decay_radius(const CharacteristicFunction& chi, OrderParameter s,
                                   const std::optional<FilterSpec>& filter, double rel_threshold,
                                   double max_radius) {
  const auto radii = scan_radii(max_radius);
  const double q = s.damping();
  std::vector<double> profile(radii.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double m = 0.0;
    for (int ray = 0; ray < kRays; ++ray) {
      const double theta = 2.0 * std::numbers::pi * ray / kRays;
      const Complex beta = std::polar(radii[i], theta);
      const double v = std::abs(chi.weighted(beta, q, filter_log(filter, beta)));
      if (!std::isfinite(v)) return std::nullopt;
      m = std::max(m, v);
      if (radii[i] == 0.0) break;
    }
    profile[i] = m;
  }
  const double peak = *std::max_element(profile.begin(), profile.end());
  if (!(peak > 0.0)) return std::nullopt;
  std::size_t last = 0;
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (profile[i] >= rel_threshold * peak) last = i;
  if (last + 1 >= profile.size()) return std::nullopt;
  return radii[last + 1];
}

GridSpec resolve_grid(const CharacteristicFunction& chi, OrderParameter s, const std::optional<FilterSpec>& filter,
                      const GridPolicy& policy) {
  double r = 0.0;
  if (policy.half_extent) {
    r = *policy.half_extent;
  } else {
    const auto decay = decay_radius(chi, s, filter, policy.guard * 0.1);
    if (!decay) {
      std::ostringstream msg;
      msg << "boundary guard: |chi_s * Omega| of " << chi.label() << " at s=" << s.value()
          << " with filter " << label_of(filter)
          << " does not decay inside any representable window; increase R or apply filter";
      throw GuardError(msg.str());
    }
    r = std::max({policy.min_half_extent, filter ? filter->width() : 0.0, *decay});
    r = std::ceil(r * 2.0) / 2.0;
  }
  int n = 0;
  if (policy.samples) {
    n = *policy.samples;
  } else {
    const double wanted = std::ceil(4.0 * r * policy.alpha_half_extent);
    if (wanted > policy.max_samples) {
      std::ostringstream msg;
      msg << "grid policy: window R=" << r << " needs " << wanted << " samples per axis, above the cap of "
          << policy.max_samples << "; reduce w or alpha_half_extent";
      throw GuardError(msg.str());
    }
    n = std::max(64, static_cast<int>(std::bit_ceil(static_cast<unsigned>(wanted))));
  }
  return GridSpec(r, n);
}

Quasiprobability compute_quasiprob(const CharacteristicFunction& chi, OrderParameter s,
                                   const std::optional<FilterSpec>& filter, const GridSpec& spec, double guard) {
  const double q = s.damping();
  const auto sampled = sample_function(
      [&](Complex beta) { return chi.weighted(beta, q, filter_log(filter, beta)); }, spec, Domain::Beta);

  Diagnostics diag;
  const double peak = sampled.max_abs();
  diag.boundary_magnitude = peak > 0.0 ? sampled.boundary_max_abs() / peak : 0.0;
  if (diag.boundary_magnitude > guard) {
    std::ostringstream msg;
    msg << "boundary guard: |chi_s * Omega| at the edge of R=" << spec.half_extent() << " is "
        << diag.boundary_magnitude << " of its maximum (limit " << guard << "); increase R or apply filter";
    throw GuardError(msg.str());
  }
  auto p = fourier_paper(sampled);
  for (Eigen::Index j = 0; j < p.size(); ++j)
    for (Eigen::Index k = 0; k < p.size(); ++k)
      if (!std::isfinite(p(j, k).real()) || !std::isfinite(p(j, k).imag()))
        throw GuardError("filtered_quasiprob: transform produced a non-finite value");
  diag.imag_residue = imag_residue(p);
  diag.parseval_residual = parseval_residual(sampled, p);
  diag.total_mass = integrate(p, Part::Full);
  diag.min_value = p.values().real().minCoeff();
  return {std::move(p), diag};
}

ComplexGrid filtered_quasiprob(const CharacteristicFunction& chi, OrderParameter s,
                               const std::optional<FilterSpec>& filter, const GridSpec& spec) {
  return compute_quasiprob(chi, s, filter, spec).grid;
}

ComplexGrid filtered_quasiprob(const StateSpec& state, OrderParameter s, const std::optional<FilterSpec>& filter,
                               const GridSpec& spec) {
  return filtered_quasiprob(characteristic(state), s, filter, spec);
}

NegativityResult negativity(const CharacteristicFunction& chi, OrderParameter s,
                            const std::optional<FilterSpec>& filter, const GridSpec& spec) {
  const auto qp = compute_quasiprob(chi, s, filter, spec);
  if (std::abs(qp.diagnostics.total_mass - 1.0) > 1e-4) {
    std::ostringstream msg;
    msg << "normalization lost: total mass " << qp.diagnostics.total_mass << " differs from 1 by more than 1e-4";
    throw NumericalError(msg.str());
  }
  NegativityResult out;
  out.value = integrate(qp.grid, Part::NegativeReal);
  out.state = chi.label();
  out.s = s.value();
  out.filter = filter;
  out.grid = spec;
  out.diagnostics = qp.diagnostics;
  {
    std::lock_guard lock(observer_mutex);
    if (observer) observer(chi, out);
  }
  return out;
}

void set_evaluation_observer(EvaluationObserver fn) {
  std::lock_guard lock(observer_mutex);
  observer = std::move(fn);
}

NegativityResult negativity(const CharacteristicFunction& chi, OrderParameter s,
                            const std::optional<FilterSpec>& filter, const GridPolicy& policy) {
  return negativity(chi, s, filter, resolve_grid(chi, s, filter, policy));
}

NegativityResult negativity(const StateSpec& state, OrderParameter s, const std::optional<FilterSpec>& filter,
                            const GridPolicy& policy) {
  return negativity(characteristic(state), s, filter, policy);
}

std::string describe(const Verdict& v) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Converged>)
          os << "converged";
        else if constexpr (std::is_same_v<T, Diverging>)
          os << "diverging";
        else
          os << "inconclusive";
      },
      v);
  return os.str();
}

Verdict classify(std::span<const double> values, const ConvergenceRules& rules) {
  const std::size_t n = values.size();
  if (n >= 3) {
    const double a = values[n - 3], b = values[n - 2], c = values[n - 1];
    auto close = [&](double x, double y) {
      return std::abs(x - y) <= rules.relative_tolerance * std::max(std::abs(x), std::abs(y)) + 1e-12;
    };
    if (close(a, b) && close(b, c) && close(a, c)) {
      const double spread = std::max({std::abs(a - b), std::abs(b - c), std::abs(a - c)});
      return Converged{c, spread};
    }
  }
  if (n >= 4) {
    bool growing = true;
    for (std::size_t i = n - 3; i < n; ++i)
      if (!(values[i] > rules.growth_factor * values[i - 1])) growing = false;
    if (growing && values[n - 1] > rules.divergence_floor) return Diverging{values[n - 1] / values[n - 2]};
  }
  return Inconclusive{};
}

std::vector<double> geometric_schedule(double w0, double ratio, int count) {
  std::vector<double> out;
  double w = w0;
  for (int i = 0; i < count; ++i, w *= ratio) out.push_back(w);
  return out;
}

ConvergenceReport sweep_w(const CharacteristicFunction& chi, OrderParameter s, const FilterSpec& family,
                          const std::vector<double>& w_schedule, const GridPolicy& policy,
                          const ConvergenceRules& rules) {
  if (w_schedule.size() < 4) throw ContractError("sweep_w: schedule needs at least 4 widths");
  for (std::size_t i = 1; i < w_schedule.size(); ++i)
    if (!(w_schedule[i] > w_schedule[i - 1])) throw ContractError("sweep_w: schedule must be increasing");

  ConvergenceReport report;
  report.state = chi.label();
  report.s = s.value();
  report.family = family;
  std::vector<double> values;
  for (double w : w_schedule) {
    SweepEntry entry;
    entry.w = w;
    try {
      entry.result = negativity(chi, s, family.with_width(w), policy);
      values.push_back(entry.result->value);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
  }
  if (values.empty()) {
    std::ostringstream msg;
    msg << "sweep_w: every width failed for " << chi.label() << "; first error: " << report.entries.front().error;
    throw GuardError(msg.str());
  }
  report.verdict = classify(values, rules);
  return report;
}

ConvergenceReport sweep_w(const StateSpec& state, OrderParameter s, const FilterSpec& family,
                          const std::vector<double>& w_schedule, const GridPolicy& policy,
                          const ConvergenceRules& rules) {
  return sweep_w(characteristic(state), s, family, w_schedule, policy, rules);
}

LimitEstimate estimate_limit(const CharacteristicFunction& chi, OrderParameter s, const LimitPolicy& policy) {
  LimitEstimate est;
  est.s = s.value();
  try {
    est.result = negativity(chi, s, std::nullopt, policy.grid);
    est.method = "unfiltered";
    est.value = est.result->value;
    est.verdict = Converged{est.result->value, 0.0};
    return est;
  } catch (const GuardError&) {
    // chi_s does not decay: fall through to the filtered limit.
  } catch (const NumericalError&) {
  }
  est.method = "w-sweep";
  try {
    est.sweep = sweep_w(chi, s, policy.family, policy.w_schedule, policy.grid);
    est.verdict = est.sweep->verdict;
    if (const auto* c = std::get_if<Converged>(&est.verdict)) est.value = c->limit_estimate;
  } catch (const Error& e) {
    est.error = e.what();
  }
  return est;
}

std::vector<LimitEstimate> sweep_s(const CharacteristicFunction& chi, const std::vector<double>& s_list,
                                   const LimitPolicy& policy) {
  for (std::size_t i = 1; i < s_list.size(); ++i)
    if (!(s_list[i] > s_list[i - 1])) throw ContractError("sweep_s: s values must be ascending");
  std::vector<OrderParameter> orders;
  for (double s : s_list) orders.emplace_back(s);  // validates s <= 1 up front
  std::vector<LimitEstimate> out;
  for (const auto& s : orders) out.push_back(estimate_limit(chi, s, policy));
  return out;
}

std::vector<LimitEstimate> sweep_s(const StateSpec& state, const std::vector<double>& s_list,
                                   const LimitPolicy& policy) {
  return sweep_s(characteristic(state), s_list, policy);
}

RobustnessDecomposition robustness_decomposition(const CharacteristicFunction& chi, OrderParameter s,
                                                 const std::optional<FilterSpec>& filter,
                                                 const GridPolicy& policy) {
  const auto spec = resolve_grid(chi, s, filter, policy);
  auto qp = compute_quasiprob(chi, s, filter, spec);
  const double r_w = integrate(qp.grid, Part::NegativeReal);
  if (r_w < 1e-10) throw ContractError("robustness_decomposition: state already classical at this w");

  // Discard the imaginary discretization residue; P is real by construction.
  const ComplexGrid::Values real_p = qp.grid.values().real().cast<Complex>();
  ComplexGrid sigma(qp.grid.spec(), Domain::Alpha, (-real_p.real()).max(0.0).cast<Complex>() / r_w);
  const ComplexGrid mixture(qp.grid.spec(), Domain::Alpha, (real_p + r_w * sigma.values()) / (1.0 + r_w));

  RobustnessDecomposition out{r_w, sigma, integrate(sigma, Part::Full), integrate(mixture, Part::NegativeReal), {}};
  out.source.value = r_w;
  out.source.state = chi.label();
  out.source.s = s.value();
  out.source.filter = filter;
  out.source.grid = spec;
  out.source.diagnostics = qp.diagnostics;
  return out;
}

RobustnessDecomposition robustness_decomposition(const StateSpec& state, OrderParameter s,
                                                 const std::optional<FilterSpec>& filter,
                                                 const GridPolicy& policy) {
  return robustness_decomposition(characteristic(state), s, filter, policy);
}

}  // namespace qneg
