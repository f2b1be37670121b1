#pragma once

// Single-mode linear optical channels acting on characteristic functions.
// Channels compose evaluators symbolically; nothing is gridded until the
// engine samples the final output.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qneg/engine.hpp"
#include "qneg/filters.hpp"
#include "qneg/states.hpp"

namespace qneg {

class ChannelSpec;

/// Beam splitter of transmissivity eta with a thermal (or vacuum) ancilla traced out.
struct Loss {
  double eta;
  double ancilla_nbar = 0.0;
};
struct PhaseShift {
  double theta;
};
struct Displacement {
  Complex gamma;
};
/// Stages applied first to last.
struct Compose {
  std::vector<ChannelSpec> stages;
};
struct ConvexCombine {
  std::vector<std::pair<double, ChannelSpec>> branches;
};

class ChannelSpec {
 public:
  using Variant = std::variant<Loss, PhaseShift, Displacement, Compose, ConvexCombine>;

  ChannelSpec(Variant v);
  ChannelSpec(Loss l) : ChannelSpec(Variant(l)) {}
  ChannelSpec(PhaseShift p) : ChannelSpec(Variant(p)) {}
  ChannelSpec(Displacement d) : ChannelSpec(Variant(d)) {}
  ChannelSpec(Compose c) : ChannelSpec(Variant(std::move(c))) {}
  ChannelSpec(ConvexCombine c) : ChannelSpec(Variant(std::move(c))) {}

  static ChannelSpec identity() { return Loss{1.0, 0.0}; }

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }
  std::string describe() const;

 private:
  Variant v_;
};

/// Output characteristic function. For Loss:
///   chi'(beta) = chi(sqrt(eta) beta) exp(-(1 - eta) nbar_anc pi^2 |beta|^2).
/// The s-ordered damping is re-expressed as damping of the input evaluated
/// at the scaled argument, so no large intermediate factors appear.
CharacteristicFunction apply_channel(const ChannelSpec& channel, CharacteristicFunction chi);

enum class CheckStatus { Pass, Fail, Skip };
const char* to_string(CheckStatus s);

/// How a measure is estimated for a monotonicity/convexity check.
struct EvaluationPolicy {
  /// Fixed filter: evaluate every side at exactly this filter and width.
  /// Unset: limit estimate (unfiltered when the window allows, else a w-sweep
  /// with `sweep_family`, and Skip unless the sweep converges).
  std::optional<FilterSpec> filter;
  FilterSpec sweep_family = FilterSpec::power_exp(0.21, 1.0);
  std::vector<double> w_schedule = {2, 4, 8, 16, 32};
  GridPolicy grid;
  double tolerance = 1e-3;
};

struct MarginReport {
  std::string label;
  CheckStatus status = CheckStatus::Skip;
  double before = 0.0;  ///< N(rho) or sum p_i N(rho_i)
  double after = 0.0;   ///< N(Phi(rho)) or N(mixture)
  double margin = 0.0;  ///< before - after
  std::string detail;
};

MarginReport check_weak_monotonicity(const StateSpec& state, const ChannelSpec& channel, OrderParameter s,
                                     const EvaluationPolicy& policy = {});

struct ApproxBoundReport {
  std::string label;
  CheckStatus status = CheckStatus::Skip;
  double delta = 0.0;
  double before = 0.0;  ///< N_{Omega,w}(rho)
  double after = 0.0;   ///< N_{Omega,w}(Phi(rho))
  double slack = 0.0;   ///< (1 + 2 delta) before + delta - after
  std::string detail;
};

/// (1 + 2 delta) N_{Omega,w}(rho) + delta >= N_{Omega,w}(Phi(rho)) at one finite w.
/// delta defaults to filter_negativity_delta(epsilon) on the default grid.
ApproxBoundReport check_approx_monotonicity(const StateSpec& state, const ChannelSpec& channel, double epsilon,
                                            double w, const GridPolicy& grid = {},
                                            std::optional<double> delta = std::nullopt, double tolerance = 1e-3);

/// Sum p_i N(rho_i) - N(sum p_i rho_i).
MarginReport check_convexity(const std::vector<std::pair<double, StateSpec>>& components, OrderParameter s,
                             const EvaluationPolicy& policy = {});

}  // namespace qneg
