#include "qneg/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qneg/error.hpp"
#include "qneg/laguerre.hpp"

namespace qneg {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// exp(2 pi i (beta_i Re a + beta_r Im a)) = exp(2 pi i Im(beta a))
Complex displacement_phase(Complex beta, Complex a) {
  const double phase = 2.0 * kPi * (beta.imag() * a.real() + beta.real() * a.imag());
  return {std::cos(phase), std::sin(phase)};
}

int nesting_depth(const StateSpec& s) {
  if (const auto* m = s.get_if<Mixture>()) {
    int depth = 0;
    for (const auto& [w, c] : m->components) depth = std::max(depth, nesting_depth(c));
    return depth + 1;
  }
  return 0;
}

void validate_leaf(const StateSpec::Variant& v) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          if (!std::isfinite(s.alpha0.real()) || !std::isfinite(s.alpha0.imag()))
            throw DomainError("coherent: alpha0 must be finite");
        } else if constexpr (std::is_same_v<T, Thermal>) {
          if (!(s.nbar >= 0.0) || !std::isfinite(s.nbar)) throw DomainError("thermal: nbar must be >= 0");
        } else if constexpr (std::is_same_v<T, Fock>) {
          if (s.n < 0) throw DomainError("fock: n must be >= 0");
          if (s.n > 20) throw DomainError("fock: n must be <= 20");
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          if (!std::isfinite(s.r)) throw DomainError("squeezed: r must be finite");
        } else if constexpr (std::is_same_v<T, PhotonAddedThermal>) {
          if (!(s.nbar > 0.0) || !std::isfinite(s.nbar)) throw DomainError("spat: nbar must be > 0");
        } else {
          if (s.components.empty()) throw DomainError("mixture: components must be non-empty");
          double total = 0.0;
          for (const auto& [w, c] : s.components) {
            if (!(w > 0.0)) throw DomainError("mixture: weights must be > 0");
            total += w;
          }
          if (std::abs(total - 1.0) > 1e-12) {
            std::ostringstream msg;
            msg << "mixture: weights sum to " << total << ", expected 1 within 1e-12";
            throw DomainError(msg.str());
          }
        }
      },
      v);
}

}  // namespace

OrderParameter::OrderParameter(double s) : s_(s) {
  if (!(s <= 1.0)) {
    std::ostringstream msg;
    msg << "order parameter s must satisfy s <= 1, got " << s;
    throw DomainError(msg.str());
  }
}

double OrderParameter::damping() const { return (1.0 - s_) * kPi2 / 2.0; }

StateSpec::StateSpec(Variant v) : v_(std::move(v)) {
  validate_leaf(v_);
  if (nesting_depth(*this) > 4) throw DomainError("mixture: nesting depth exceeds 4");
}

void validate(const StateSpec& state) {
  validate_leaf(state.variant());
  if (nesting_depth(state) > 4) throw DomainError("mixture: nesting depth exceeds 4");
  if (const auto* m = state.get_if<Mixture>())
    for (const auto& [w, c] : m->components) validate(c);
}

std::string StateSpec::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Coherent>) {
          os << "coherent(alpha0=" << s.alpha0.real() << (s.alpha0.imag() < 0 ? "" : "+") << s.alpha0.imag()
             << "i)";
        } else if constexpr (std::is_same_v<T, Thermal>) {
          os << "thermal(nbar=" << s.nbar << ")";
        } else if constexpr (std::is_same_v<T, Fock>) {
          os << "fock(n=" << s.n << ")";
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          os << "squeezed(r=" << s.r << ")";
        } else if constexpr (std::is_same_v<T, PhotonAddedThermal>) {
          os << "spat(nbar=" << s.nbar << ")";
        } else {
          os << "mixture(";
          for (std::size_t i = 0; i < s.components.size(); ++i) {
            if (i) os << ", ";
            os << s.components[i].first << "*" << s.components[i].second.describe();
          }
          os << ")";
        }
      },
      v_);
  return os.str();
}

CharacteristicFunction characteristic(const StateSpec& state) {
  return std::visit(
      [&state](const auto& s) -> CharacteristicFunction {
        using T = std::decay_t<decltype(s)>;
        const std::string label = state.describe();
        if constexpr (std::is_same_v<T, Coherent>) {
          const Complex a = s.alpha0;
          return {[a](Complex beta, double q, double lw) {
                    return displacement_phase(beta, a) * std::exp(-q * std::norm(beta) + lw);
                  },
                  label};
        } else if constexpr (std::is_same_v<T, Thermal>) {
          const double nbar = s.nbar;
          return {[nbar](Complex beta, double q, double lw) {
                    return Complex(std::exp(-(nbar * kPi2 + q) * std::norm(beta) + lw), 0.0);
                  },
                  label};
        } else if constexpr (std::is_same_v<T, Fock>) {
          const int n = s.n;
          return {[n](Complex beta, double q, double lw) {
                    const double b2 = std::norm(beta);
                    return Complex(laguerre(n, kPi2 * b2) * std::exp(-q * b2 + lw), 0.0);
                  },
                  label};
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          const double ax = 1.0 - std::exp(2.0 * s.r);
          const double ay = 1.0 - std::exp(-2.0 * s.r);
          return {[ax, ay](Complex beta, double q, double lw) {
                    const double x2 = beta.real() * beta.real();
                    const double y2 = beta.imag() * beta.imag();
                    return Complex(std::exp(kPi2 / 2.0 * (ax * x2 + ay * y2) - q * (x2 + y2) + lw), 0.0);
                  },
                  label};
        } else if constexpr (std::is_same_v<T, PhotonAddedThermal>) {
          const double nbar = s.nbar;
          return {[nbar](Complex beta, double q, double lw) {
                    const double b2 = std::norm(beta);
                    return Complex((1.0 - kPi2 * (1.0 + nbar) * b2) * std::exp(-(nbar * kPi2 + q) * b2 + lw), 0.0);
                  },
                  label};
        } else {
          std::vector<std::pair<double, CharacteristicFunction>> parts;
          for (const auto& [w, c] : s.components) parts.emplace_back(w, characteristic(c));
          return {[parts = std::move(parts)](Complex beta, double q, double lw) {
                    Complex total = 0.0;
                    for (const auto& [w, chi] : parts) total += w * chi.weighted(beta, q, lw);
                    return total;
                  },
                  label};
        }
      },
      state.variant());
}

Complex char_fn(const StateSpec& state, OrderParameter s, Complex beta) { return characteristic(state)(beta, s); }

std::optional<double> analytic_quasiprob(const StateSpec& state, OrderParameter order, Complex alpha) {
  const double s = order.value();
  return std::visit(
      [&](const auto& st) -> std::optional<double> {
        using T = std::decay_t<decltype(st)>;
        const double a2 = std::norm(alpha);
        if constexpr (std::is_same_v<T, Coherent>) {
          if (s >= 1.0) return std::nullopt;  // delta distribution
          const double v = (1.0 - s) / 2.0;
          return std::exp(-std::norm(alpha - st.alpha0) / v) / (kPi * v);
        } else if constexpr (std::is_same_v<T, Thermal>) {
          const double v = st.nbar + (1.0 - s) / 2.0;
          if (!(v > 0.0)) return std::nullopt;
          return std::exp(-a2 / v) / (kPi * v);
        } else if constexpr (std::is_same_v<T, Fock>) {
          if (!(s > -1.0 && s < 1.0)) return std::nullopt;
          const double ratio = -(1.0 + s) / (1.0 - s);
          return 2.0 / (kPi * (1.0 - s)) * std::pow(ratio, st.n) * std::exp(-2.0 * a2 / (1.0 - s)) *
                 laguerre(st.n, 4.0 * a2 / (1.0 - s * s));
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, PhotonAddedThermal>) {
          if (s != 1.0) return std::nullopt;
          const double n = st.nbar;
          return (1.0 + n) / (kPi * n * n * n) * (a2 - n / (1.0 + n)) * std::exp(-a2 / n);
        } else {
          double total = 0.0;
          for (const auto& [w, c] : st.components) {
            const auto v = analytic_quasiprob(c, order, alpha);
            if (!v) return std::nullopt;
            total += w * *v;
          }
          return total;
        }
      },
      state.variant());
}

BoundReport bound_check(const StateSpec& state, OrderParameter s, std::span<const Complex> betas) {
  const auto chi = characteristic(state);
  BoundReport report;
  for (const Complex& beta : betas) {
    // Fold the bound into the evaluation: chi_s * exp(-s pi^2 |beta|^2 / 2).
    const double lw = -s.value() * kPi2 * std::norm(beta) / 2.0;
    const double ratio = std::abs(chi.weighted(beta, s.damping(), lw));
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.worst_beta = beta;
    }
  }
  report.holds = report.max_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace qneg
