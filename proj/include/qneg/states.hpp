#pragma once

// Catalog of single-mode states with closed-form characteristic functions.
//
// Characteristic functions use the cross-paired convention
//   chi(beta) = \int d^2alpha P(alpha) exp[2 pi i (beta_i alpha_r + beta_r alpha_i)]
// and the s-ordered family chi_s(beta) = chi(beta) exp(-(1 - s) pi^2 |beta|^2 / 2).

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qneg {

using Complex = std::complex<double>;

/// Operator-ordering parameter: s = 1 P-function, s = 0 Wigner, s = -1 Husimi.
class OrderParameter {
 public:
  explicit OrderParameter(double s);
  double value() const { return s_; }
  /// Gaussian damping q with chi_s = chi * exp(-q |beta|^2).
  double damping() const;

 private:
  double s_;
};

class StateSpec;

struct Coherent {
  Complex alpha0;
};
struct Thermal {
  double nbar;
};
struct Fock {
  int n;
};
struct SqueezedVacuum {
  double r;
};
struct PhotonAddedThermal {
  double nbar;
};
struct Mixture {
  std::vector<std::pair<double, StateSpec>> components;
};

class StateSpec {
 public:
  using Variant = std::variant<Coherent, Thermal, Fock, SqueezedVacuum, PhotonAddedThermal, Mixture>;

  StateSpec(Variant v);  // validates
  StateSpec(Coherent c) : StateSpec(Variant(c)) {}
  StateSpec(Thermal t) : StateSpec(Variant(t)) {}
  StateSpec(Fock f) : StateSpec(Variant(f)) {}
  StateSpec(SqueezedVacuum sq) : StateSpec(Variant(sq)) {}
  StateSpec(PhotonAddedThermal p) : StateSpec(Variant(p)) {}
  StateSpec(Mixture m) : StateSpec(Variant(std::move(m))) {}

  static StateSpec vacuum() { return Fock{0}; }

  const Variant& variant() const { return v_; }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// Compact human-readable label, e.g. "fock(n=2)".
  std::string describe() const;

 private:
  Variant v_;
};

/// Throws DomainError when a StateSpec invariant does not hold.
void validate(const StateSpec& state);

/// Evaluable characteristic function. The kernel returns
///   chi(beta) * exp(-damping |beta|^2 + log_weight)
/// with the exponents folded together, so strongly growing states (squeezed
/// vacuum) stay representable when a filter or Gaussian cancels the growth.
class CharacteristicFunction {
 public:
  using Kernel = std::function<Complex(Complex beta, double damping, double log_weight)>;

  CharacteristicFunction(Kernel kernel, std::string label)
      : kernel_(std::move(kernel)), label_(std::move(label)) {}

  Complex weighted(Complex beta, double damping, double log_weight) const {
    return kernel_(beta, damping, log_weight);
  }
  Complex operator()(Complex beta, OrderParameter s) const { return kernel_(beta, s.damping(), 0.0); }
  Complex operator()(Complex beta) const { return kernel_(beta, 0.0, 0.0); }

  const std::string& label() const { return label_; }

 private:
  Kernel kernel_;
  std::string label_;
};

CharacteristicFunction characteristic(const StateSpec& state);

/// chi_s(beta) of a catalog state.
Complex char_fn(const StateSpec& state, OrderParameter s, Complex beta);

/// Closed-form P_s(alpha) where one exists: Fock for -1 < s < 1, SPAT at
/// s = 1, Thermal at s <= 1 (nbar > 0 or s < 1), Coherent for s < 1, and
/// mixtures whose components all have one.
std::optional<double> analytic_quasiprob(const StateSpec& state, OrderParameter s, Complex alpha);

struct BoundReport {
  double max_ratio = 0.0;  ///< max |chi_s| / exp(s pi^2 |beta|^2 / 2)
  Complex worst_beta{};
  bool holds = true;
};

/// Checks the physical growth bound |chi(beta)| <= exp(pi^2 |beta|^2 / 2),
/// specialized to chi_s as |chi_s| <= exp(s pi^2 |beta|^2 / 2).
BoundReport bound_check(const StateSpec& state, OrderParameter s, std::span<const Complex> betas);

}  // namespace qneg
