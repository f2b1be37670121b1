#pragma once

// Test-only oracles and random generators. Nothing here calls into the
// library's transform or closed forms, so agreement is an independent check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "qneg/states.hpp"

namespace oracle {

using Complex = std::complex<double>;
constexpr double pi = std::numbers::pi;

// Explicit sum L_n(x) = sum_k (-1)^k C(n, k) x^k / k!.
inline double laguerre_sum(int n, double x) {
  double sum = 0.0, binom = 1.0, power = 1.0, fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      power *= x;
      fact *= k;
    }
    sum += (k % 2 ? -1.0 : 1.0) * binom * power / fact;
  }
  return sum;
}

inline double laguerre_term_bound(int n, double x) {
  double sum = 0.0, binom = 1.0, power = 1.0, fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      power *= x;
      fact *= k;
    }
    sum += binom * power / fact;
  }
  return sum;
}

// Fock P_s at |alpha|^2 = r2 for -1 < s < 1, from the Gaussian-smoothed
// Laguerre pair: transform of L_n(pi^2 |b|^2) exp(-(1-s) pi^2 |b|^2 / 2).
inline double fock_ps(int n, double s, double r2) {
  const double a = 1.0 - s, b = 1.0 + s;
  return 2.0 / (pi * a) * std::pow(-b / a, n) * std::exp(-2.0 * r2 / a) * laguerre_sum(n, 4.0 * r2 / (a * b));
}

// Composite Simpson on [0, b], m even.
inline double simpson(const std::function<double(double)>& f, double b, int m) {
  const double h = b / m;
  double sum = f(0.0) + f(b);
  for (int i = 1; i < m; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Negative volume of a radial density p(r^2): int 2 pi r max(-p, 0) dr.
inline double radial_negativity(const std::function<double(double)>& p_of_r2, double r_max, int panels = 400000) {
  return simpson([&](double r) { return 2.0 * pi * r * std::max(-p_of_r2(r * r), 0.0); }, r_max, panels);
}

inline double fock_ns(int n, double s) {
  return radial_negativity([&](double r2) { return fock_ps(n, s, r2); }, 12.0);
}

inline double spat_p(double nbar, double r2) {
  return (1.0 + nbar) / (pi * nbar * nbar * nbar) * (r2 - nbar / (1.0 + nbar)) * std::exp(-r2 / nbar);
}

// Closed form of the negative volume of P_SPAT (negative disk |alpha|^2 < d).
inline double spat_negativity(double nbar) {
  const double d = nbar / (1.0 + nbar);
  return (1.0 + nbar) / (nbar * nbar) * (d - nbar + nbar * std::exp(-d / nbar));
}

inline double thermal_p(double variance, double r2) { return std::exp(-r2 / variance) / (pi * variance); }

// Wigner function of a single photon after loss eta (vacuum ancilla).
inline double lossy_fock1_wigner(double eta, double r2) {
  return 2.0 / pi * std::exp(-2.0 * r2) * (1.0 - 2.0 * eta + 4.0 * eta * r2);
}

inline double lossy_fock1_negativity(double eta) {
  return radial_negativity([&](double r2) { return lossy_fock1_wigner(eta, r2); }, 6.0);
}

// Brute-force midpoint quadrature of P(alpha) = int chi(beta) exp[-2 pi i (a_r b_i + a_i b_r)] d^2 beta.
inline double direct_transform(const std::function<Complex(Complex)>& chi, Complex alpha, double half_extent, int n) {
  const double h = 2.0 * half_extent / n;
  Complex sum(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    const double bi = -half_extent + (j + 0.5) * h;
    for (int k = 0; k < n; ++k) {
      const double br = -half_extent + (k + 0.5) * h;
      const double phase = -2.0 * pi * (alpha.real() * bi + alpha.imag() * br);
      sum += chi(Complex(br, bi)) * std::polar(1.0, phase);
    }
  }
  return (sum * h * h).real();
}

}  // namespace oracle

namespace gen {

using qneg::Complex;

// Hand-rolled generators over a seeded engine.
class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Complex beta(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(0.0, 2.0 * oracle::pi));
  }

  std::vector<Complex> betas(int count, double radius) {
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i) out.push_back(beta(radius));
    return out;
  }

  qneg::StateSpec pure_state() {
    switch (integer(0, 4)) {
      case 0:
        return qneg::Coherent{beta(1.5)};
      case 1:
        return qneg::Thermal{uniform(0.0, 3.0)};
      case 2:
        return qneg::Fock{integer(0, 5)};
      case 3:
        return qneg::SqueezedVacuum{uniform(-1.0, 1.0)};
      default:
        return qneg::PhotonAddedThermal{uniform(0.2, 3.0)};
    }
  }

  qneg::StateSpec state() {
    if (integer(0, 3) > 0) return pure_state();
    const double p = uniform(0.1, 0.9);
    return qneg::Mixture{{{p, pure_state()}, {1.0 - p, pure_state()}}};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
