#pragma once

// Filtered quasiprobabilities and their negative volumes.
//
//   P_{s,Omega,w}(alpha) = F[chi_s Omega_w](alpha),   N = \int d^2alpha P^-(alpha)
//
// The w -> infinity limit is estimated by sweeps; states whose chi_s already
// decays inside a finite window are evaluated without any filter.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qneg/filters.hpp"
#include "qneg/grid_fourier.hpp"
#include "qneg/states.hpp"

namespace qneg {

/// Window selection. Unset R/N are resolved automatically:
///   R = max(min_half_extent, w, R_decay), R_decay from a radial scan of |chi_s Omega|
///   N = next power of two >= 4 R alpha_half_extent   (alpha spacing is 1/(2R))
struct GridPolicy {
  std::optional<double> half_extent;
  std::optional<int> samples;
  double min_half_extent = 8.0;
  double alpha_half_extent = 8.0;
  int max_samples = 4096;
  /// Boundary guard: |chi_s Omega| on the window edge must be below guard * max.
  double guard = 1e-10;
};

struct Diagnostics {
  double imag_residue = 0.0;        ///< max |Im P| / max |P|
  double boundary_magnitude = 0.0;  ///< edge max / grid max of the sampled chi_s Omega
  double total_mass = 0.0;
  double parseval_residual = 0.0;
  double min_value = 0.0;           ///< min Re P
};

struct NegativityResult {
  double value = 0.0;
  std::string state;
  double s = 1.0;
  std::optional<FilterSpec> filter;
  GridSpec grid{8.0, 256};
  Diagnostics diagnostics;
};

/// Smallest radius beyond which the scanned |chi_s Omega| stays below
/// rel_threshold times its scanned maximum; nullopt when it never decays
/// within max_radius or a sample is non-finite.
std::optional<double> decay_radius(const CharacteristicFunction& chi, OrderParameter s,
                                   const std::optional<FilterSpec>& filter, double rel_threshold = 1e-11,
                                   double max_radius = 2048.0);

/// Throws GuardError when no window satisfies the policy.
GridSpec resolve_grid(const CharacteristicFunction& chi, OrderParameter s, const std::optional<FilterSpec>& filter,
                      const GridPolicy& policy = {});

struct Quasiprobability {
  ComplexGrid grid;
  Diagnostics diagnostics;
};

/// Samples chi_s Omega on `spec`, enforces the boundary guard and transforms.
Quasiprobability compute_quasiprob(const CharacteristicFunction& chi, OrderParameter s,
                                   const std::optional<FilterSpec>& filter, const GridSpec& spec,
                                   double guard = 1e-10);

ComplexGrid filtered_quasiprob(const CharacteristicFunction& chi, OrderParameter s,
                               const std::optional<FilterSpec>& filter, const GridSpec& spec);
ComplexGrid filtered_quasiprob(const StateSpec& state, OrderParameter s, const std::optional<FilterSpec>& filter,
                               const GridSpec& spec);

NegativityResult negativity(const CharacteristicFunction& chi, OrderParameter s,
                            const std::optional<FilterSpec>& filter, const GridPolicy& policy = {});
NegativityResult negativity(const StateSpec& state, OrderParameter s, const std::optional<FilterSpec>& filter,
                            const GridPolicy& policy = {});
NegativityResult negativity(const CharacteristicFunction& chi, OrderParameter s,
                            const std::optional<FilterSpec>& filter, const GridSpec& spec);

/// Called after every successful negativity evaluation (including those made
/// inside sweeps and checks). Pass an empty function to detach.
using EvaluationObserver = std::function<void(const CharacteristicFunction&, const NegativityResult&)>;
void set_evaluation_observer(EvaluationObserver observer);

// w-sweeps -------------------------------------------------------------------

struct Converged {
  double limit_estimate;
  double uncertainty;
};
struct Diverging {
  double growth_rate;
};
struct Inconclusive {};
using Verdict = std::variant<Converged, Diverging, Inconclusive>;

std::string describe(const Verdict& v);

struct ConvergenceRules {
  double relative_tolerance = 1e-2;
  double growth_factor = 1.1;
  double divergence_floor = 10.0;
};

/// Deterministic verdict over successful sweep values in ascending-w order.
Verdict classify(std::span<const double> values, const ConvergenceRules& rules = {});

struct SweepEntry {
  double w = 0.0;
  std::optional<NegativityResult> result;
  std::string error;
};

struct ConvergenceReport {
  std::string state;
  double s = 1.0;
  FilterSpec family = FilterSpec::power_exp(0.21, 1.0);
  std::vector<SweepEntry> entries;
  Verdict verdict = Inconclusive{};
};

/// w0 * ratio^k for k = 0 .. count-1.
std::vector<double> geometric_schedule(double w0, double ratio, int count);

ConvergenceReport sweep_w(const CharacteristicFunction& chi, OrderParameter s, const FilterSpec& family,
                          const std::vector<double>& w_schedule, const GridPolicy& policy = {},
                          const ConvergenceRules& rules = {});
ConvergenceReport sweep_w(const StateSpec& state, OrderParameter s, const FilterSpec& family,
                          const std::vector<double>& w_schedule, const GridPolicy& policy = {},
                          const ConvergenceRules& rules = {});

// Limit estimates and s-sweeps ----------------------------------------------

struct LimitPolicy {
  FilterSpec family = FilterSpec::power_exp(0.21, 1.0);
  std::vector<double> w_schedule = {2, 4, 8, 16, 32};
  GridPolicy grid;
};

struct LimitEstimate {
  double s = 1.0;
  std::optional<double> value;  ///< set when unfiltered or Converged
  std::string method;           ///< "unfiltered" or "w-sweep"
  Verdict verdict = Inconclusive{};
  std::optional<NegativityResult> result;
  std::optional<ConvergenceReport> sweep;
  std::string error;
};

/// N_s as w -> infinity: direct when chi_s decays inside a window, else a w-sweep.
LimitEstimate estimate_limit(const CharacteristicFunction& chi, OrderParameter s, const LimitPolicy& policy = {});

std::vector<LimitEstimate> sweep_s(const CharacteristicFunction& chi, const std::vector<double>& s_list,
                                   const LimitPolicy& policy = {});
std::vector<LimitEstimate> sweep_s(const StateSpec& state, const std::vector<double>& s_list,
                                   const LimitPolicy& policy = {});

// Robustness ---------------------------------------------------------------

struct RobustnessDecomposition {
  double r_w = 0.0;          ///< negative volume of P
  ComplexGrid sigma_grid;    ///< P^- / r_w, nonnegative, unit mass
  double sigma_mass = 0.0;
  double mixture_negativity = 0.0;  ///< N((P + r_w sigma) / (1 + r_w))
  NegativityResult source;
};

/// Splits P = P^+ - P^- and mixes in sigma = P^- / r_w with weight r_w.
/// Throws ContractError when r_w < 1e-10 (already classical).
RobustnessDecomposition robustness_decomposition(const CharacteristicFunction& chi, OrderParameter s,
                                                 const std::optional<FilterSpec>& filter,
                                                 const GridPolicy& policy = {});
RobustnessDecomposition robustness_decomposition(const StateSpec& state, OrderParameter s,
                                                 const std::optional<FilterSpec>& filter,
                                                 const GridPolicy& policy = {});

}  // namespace qneg
