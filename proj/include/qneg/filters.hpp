#pragma once

// Filter families applied to characteristic functions before the transform:
//   power-exponential  Omega_{w,eps}(beta) = exp(-|beta/w|^(2 + eps))
//   Gaussian           Omega_w(beta)       = exp(-|beta/w|^2)
// The Gaussian with 1/w^2 = (1 - s) pi^2 / 2 turns chi into chi_s.

#include <array>
#include <optional>
#include <string>
#include <variant>

#include "qneg/grid_fourier.hpp"
#include "qneg/states.hpp"

namespace qneg {

struct PowerExponential {
  double epsilon;
};
struct GaussianFamily {};

class FilterSpec {
 public:
  using Family = std::variant<PowerExponential, GaussianFamily>;

  FilterSpec(Family family, double width);

  static FilterSpec power_exp(double epsilon, double width) { return {PowerExponential{epsilon}, width}; }
  static FilterSpec gaussian(double width) { return {GaussianFamily{}, width}; }
  /// Gaussian filter that reproduces the s-ordered damping at s = 1.
  static FilterSpec gaussian_for_order(OrderParameter s);

  const Family& family() const { return family_; }
  double width() const { return width_; }
  bool is_gaussian() const { return std::holds_alternative<GaussianFamily>(family_); }
  /// 2 + eps for the power-exponential family, 2 for the Gaussian.
  double exponent() const;
  FilterSpec with_width(double w) const { return {family_, w}; }
  std::string describe() const;

 private:
  Family family_;
  double width_;
};

double eval_filter(const FilterSpec& filter, Complex beta);
/// log Omega(beta) = -|beta/w|^p.
double log_filter(const FilterSpec& filter, Complex beta);

/// Width t with Omega_w = Omega_{w/r} * Omega_t for 0 < r < 1:
/// t = w / (1 - r^q)^(1/q), q = 2 + eps.
double split_width(double w, double r_mag, double epsilon);

struct FilterDelta {
  double epsilon = 0.0;  ///< 0 for the Gaussian family
  double delta = 0.0;    ///< negative volume of F Omega_{w=1}
  GridSpec grid{8.0, 1024};
  double boundary_magnitude = 0.0;
  double total_mass = 0.0;
  double imag_residue = 0.0;
};

/// delta = N(F Omega_{w=1, eps}), the approximate-monotone error constant.
FilterDelta filter_negativity_delta(double epsilon, const GridSpec& spec = GridSpec(8.0, 1024));
/// Same construction for an arbitrary family at its own width (for scale checks).
FilterDelta filter_negativity_delta(const FilterSpec& filter, const GridSpec& spec);

struct FilterTolerances {
  double identity = 1e-12;
  double integral = 1e-6;
  double tail = 1e-12;
};

struct PropertyCheck {
  char property = '?';
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

struct FilterPropertyReport {
  FilterSpec filter;
  std::array<PropertyCheck, 5> checks;  // (a) .. (e)
  bool all_pass() const;
  const PropertyCheck& operator[](char property) const { return checks.at(property - 'a'); }
};

FilterPropertyReport verify_filter_properties(const FilterSpec& filter, const FilterTolerances& tol = {});

}  // namespace qneg
