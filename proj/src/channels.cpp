#include "qneg/channels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qneg/error.hpp"

namespace qneg {
namespace {

constexpr double kPi = std::numbers::pi;

void validate_channel(const ChannelSpec::Variant& v) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Loss>) {
          if (!(c.eta >= 0.0 && c.eta <= 1.0)) throw DomainError("loss: eta must lie in [0, 1]");
          if (!(c.ancilla_nbar >= 0.0) || !std::isfinite(c.ancilla_nbar))
            throw DomainError("loss: ancilla_nbar must be >= 0");
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          if (!std::isfinite(c.theta)) throw DomainError("phase_shift: theta must be finite");
        } else if constexpr (std::is_same_v<T, Displacement>) {
          if (!std::isfinite(c.gamma.real()) || !std::isfinite(c.gamma.imag()))
            throw DomainError("displacement: gamma must be finite");
        } else if constexpr (std::is_same_v<T, Compose>) {
          if (c.stages.empty()) throw DomainError("compose: needs at least one stage");
        } else {
          if (c.branches.empty()) throw DomainError("convex_combine: needs at least one branch");
          double total = 0.0;
          for (const auto& [p, ch] : c.branches) {
            if (!(p > 0.0)) throw DomainError("convex_combine: weights must be > 0");
            total += p;
          }
          if (std::abs(total - 1.0) > 1e-12) throw DomainError("convex_combine: weights must sum to 1");
        }
      },
      v);
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

ChannelSpec::ChannelSpec(Variant v) : v_(std::move(v)) { validate_channel(v_); }

std::string ChannelSpec::describe() const {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Loss>) {
          return "loss(eta=" + fmt(c.eta) + (c.ancilla_nbar > 0.0 ? ", nbar=" + fmt(c.ancilla_nbar) : "") + ")";
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          return "phase(theta=" + fmt(c.theta) + ")";
        } else if constexpr (std::is_same_v<T, Displacement>) {
          return "displace(gamma=" + fmt(c.gamma.real()) + (c.gamma.imag() < 0 ? "" : "+") + fmt(c.gamma.imag()) +
                 "i)";
        } else if constexpr (std::is_same_v<T, Compose>) {
          std::string out = "compose[";
          for (std::size_t i = 0; i < c.stages.size(); ++i) out += (i ? ", " : "") + c.stages[i].describe();
          return out + "]";
        } else {
          std::string out = "convex[";
          for (std::size_t i = 0; i < c.branches.size(); ++i)
            out += (i ? " + " : "") + fmt(c.branches[i].first) + "*" + c.branches[i].second.describe();
          return out + "]";
        }
      },
      v_);
}

CharacteristicFunction apply_channel(const ChannelSpec& channel, CharacteristicFunction chi) {
  const std::string label = channel.describe() + "(" + chi.label() + ")";
  return std::visit(
      [&](const auto& c) -> CharacteristicFunction {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Loss>) {
          const double eta = c.eta;
          const double anc = (1.0 - eta) * c.ancilla_nbar * kPi * kPi;
          if (eta == 0.0) {
            return {[anc](Complex beta, double q, double lw) {
                      return Complex(std::exp(-(q + anc) * std::norm(beta) + lw), 0.0);
                    },
                    label};
          }
          const double root = std::sqrt(eta);
          // Output damping q at beta equals damping (q + anc) / eta at sqrt(eta) beta.
          return {[chi, eta, anc, root](Complex beta, double q, double lw) {
                    return chi.weighted(root * beta, (q + anc) / eta, lw);
                  },
                  label};
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          const Complex rot = std::polar(1.0, c.theta);
          return {[chi, rot](Complex beta, double q, double lw) { return chi.weighted(rot * beta, q, lw); }, label};
        } else if constexpr (std::is_same_v<T, Displacement>) {
          const Complex gamma = c.gamma;
          return {[chi, gamma](Complex beta, double q, double lw) {
                    return chi.weighted(beta, q, lw) * std::polar(1.0, 2.0 * kPi * (beta * gamma).imag());
                  },
                  label};
        } else if constexpr (std::is_same_v<T, Compose>) {
          CharacteristicFunction out = std::move(chi);
          for (const auto& stage : c.stages) out = apply_channel(stage, std::move(out));
          return {[out](Complex beta, double q, double lw) { return out.weighted(beta, q, lw); }, label};
        } else {
          std::vector<std::pair<double, CharacteristicFunction>> parts;
          for (const auto& [p, branch] : c.branches) parts.emplace_back(p, apply_channel(branch, chi));
          return {[parts](Complex beta, double q, double lw) {
                    Complex sum(0.0, 0.0);
                    for (const auto& [p, f] : parts) sum += p * f.weighted(beta, q, lw);
                    return sum;
                  },
                  label};
        }
      },
      channel.variant());
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skip:
      return "SKIP";
  }
  return "?";
}

namespace {

struct Evaluated {
  std::optional<double> value;
  std::string note;
};

Evaluated evaluate(const CharacteristicFunction& chi, OrderParameter s, const EvaluationPolicy& policy) {
  if (policy.filter) {
    try {
      return {negativity(chi, s, policy.filter, policy.grid).value, ""};
    } catch (const Error& e) {
      return {std::nullopt, e.what()};
    }
  }
  LimitPolicy lp{policy.sweep_family, policy.w_schedule, policy.grid};
  const auto est = estimate_limit(chi, s, lp);
  if (est.value) return {est.value, ""};
  return {std::nullopt, est.error.empty() ? "w-sweep " + describe(est.verdict) : est.error};
}

MarginReport margin_report(std::string label, const Evaluated& before, const Evaluated& after, double tol) {
  MarginReport r;
  r.label = std::move(label);
  if (!before.value || !after.value) {
    r.status = CheckStatus::Skip;
    r.detail = "not evaluable: " + (before.value ? after.note : before.note);
    return r;
  }
  r.before = *before.value;
  r.after = *after.value;
  r.margin = r.before - r.after;
  r.status = r.margin >= -tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

}  // namespace

MarginReport check_weak_monotonicity(const StateSpec& state, const ChannelSpec& channel, OrderParameter s,
                                     const EvaluationPolicy& policy) {
  const auto chi = characteristic(state);
  const auto out = apply_channel(channel, chi);
  const auto before = evaluate(chi, s, policy);
  const auto after = before.value ? evaluate(out, s, policy) : Evaluated{};
  std::string label = state.describe() + " -> " + channel.describe() + " at s=" + fmt(s.value());
  if (policy.filter) label += " with " + policy.filter->describe();
  return margin_report(std::move(label), before, after, policy.tolerance);
}

ApproxBoundReport check_approx_monotonicity(const StateSpec& state, const ChannelSpec& channel, double epsilon,
                                            double w, const GridPolicy& grid, std::optional<double> delta,
                                            double tolerance) {
  const auto filter = FilterSpec::power_exp(epsilon, w);
  ApproxBoundReport r;
  r.label = state.describe() + " -> " + channel.describe() + " with " + filter.describe();
  r.delta = delta ? *delta : filter_negativity_delta(epsilon).delta;
  const auto chi = characteristic(state);
  const OrderParameter s1(1.0);
  try {
    r.before = negativity(chi, s1, filter, grid).value;
    r.after = negativity(apply_channel(channel, chi), s1, filter, grid).value;
  } catch (const Error& e) {
    r.status = CheckStatus::Skip;
    r.detail = e.what();
    return r;
  }
  r.slack = (1.0 + 2.0 * r.delta) * r.before + r.delta - r.after;
  r.status = r.slack >= -tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

MarginReport check_convexity(const std::vector<std::pair<double, StateSpec>>& components, OrderParameter s,
                             const EvaluationPolicy& policy) {
  const StateSpec mix = Mixture{components};
  Evaluated before{0.0, ""};
  for (const auto& [p, state] : components) {
    const auto e = evaluate(characteristic(state), s, policy);
    if (!e.value) {
      before = e;
      break;
    }
    *before.value += p * *e.value;
  }
  const auto after = before.value ? evaluate(characteristic(mix), s, policy) : Evaluated{};
  std::string label = "convexity " + mix.describe() + " at s=" + fmt(s.value());
  if (policy.filter) label += " with " + policy.filter->describe();
  return margin_report(std::move(label), before, after, policy.tolerance);
}

}  // namespace qneg
