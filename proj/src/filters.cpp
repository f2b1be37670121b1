#include "qneg/filters.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>

#include "qneg/error.hpp"

namespace qneg {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> random_disk(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Complex> out;
  out.reserve(count);
  while (out.size() < count) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) <= radius) out.push_back(z);
  }
  return out;
}

// Composite Simpson on [0, b] with m (even) panels.
template <typename F>
double simpson(F&& f, double b, int m) {
  const double h = b / m;
  double sum = f(0.0) + f(b);
  for (int i = 1; i < m; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

FilterSpec::FilterSpec(Family family, double width) : family_(family), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("filter: width must be > 0");
  if (const auto* pe = std::get_if<PowerExponential>(&family_))
    if (!(pe->epsilon > 0.0) || !std::isfinite(pe->epsilon)) throw DomainError("filter: epsilon must be > 0");
}

FilterSpec FilterSpec::gaussian_for_order(OrderParameter s) {
  if (!(s.value() < 1.0)) throw DomainError("gaussian_for_order: requires s < 1");
  return gaussian(1.0 / std::sqrt(s.damping()));
}

double FilterSpec::exponent() const {
  if (const auto* pe = std::get_if<PowerExponential>(&family_)) return 2.0 + pe->epsilon;
  return 2.0;
}

std::string FilterSpec::describe() const {
  std::ostringstream os;
  if (const auto* pe = std::get_if<PowerExponential>(&family_))
    os << "power_exp(eps=" << pe->epsilon << ", w=" << width_ << ")";
  else
    os << "gaussian(w=" << width_ << ")";
  return os.str();
}

double log_filter(const FilterSpec& filter, Complex beta) {
  const double x = std::abs(beta) / filter.width();
  if (filter.is_gaussian()) return -x * x;
  return -std::pow(x, filter.exponent());
}

double eval_filter(const FilterSpec& filter, Complex beta) { return std::exp(log_filter(filter, beta)); }

double split_width(double w, double r_mag, double epsilon) {
  if (!(r_mag > 0.0 && r_mag < 1.0)) throw DomainError("split_width: |r| must lie in (0, 1)");
  if (!(w > 0.0)) throw DomainError("split_width: w must be > 0");
  if (!(epsilon >= 0.0)) throw DomainError("split_width: epsilon must be >= 0");
  const double q = 2.0 + epsilon;
  return w / std::pow(1.0 - std::pow(r_mag, q), 1.0 / q);
}

FilterDelta filter_negativity_delta(const FilterSpec& filter, const GridSpec& spec) {
  const auto omega = sample_function([&](Complex b) { return Complex(eval_filter(filter, b), 0.0); }, spec,
                                     Domain::Beta);
  FilterDelta out;
  if (const auto* pe = std::get_if<PowerExponential>(&filter.family())) out.epsilon = pe->epsilon;
  out.grid = spec;
  out.boundary_magnitude = omega.boundary_max_abs();
  if (out.boundary_magnitude > 1e-12) {
    std::ostringstream msg;
    msg << "filter_negativity_delta: filter magnitude " << out.boundary_magnitude
        << " at the window boundary exceeds 1e-12; increase the half-extent R (currently "
        << spec.half_extent() << ")";
    throw GuardError(msg.str());
  }
  const auto p = fourier_paper(omega);
  out.imag_residue = imag_residue(p);
  out.delta = integrate(p, Part::NegativeReal);
  out.total_mass = integrate(p, Part::Full);
  return out;
}

FilterDelta filter_negativity_delta(double epsilon, const GridSpec& spec) {
  if (!(epsilon > 0.0)) throw DomainError("filter_negativity_delta: epsilon must be > 0");
  return filter_negativity_delta(FilterSpec::power_exp(epsilon, 1.0), spec);
}

bool FilterPropertyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

FilterPropertyReport verify_filter_properties(const FilterSpec& filter, const FilterTolerances& tol) {
  const double w = filter.width();
  const double p = filter.exponent();
  FilterPropertyReport report{filter, {}};

  // (a) Omega = (Omega^1/2)^2 with Omega^1/2 square integrable: the radial
  // integral of |Omega^1/2|^2 = Omega converges to 2 pi w^2 Gamma(2/p) / p.
  {
    auto& c = report.checks[0];
    c.property = 'a';
    const double rho_end = w * std::pow(60.0, 1.0 / p);
    const double numeric =
        2.0 * kPi * simpson([&](double r) { return eval_filter(filter, Complex(r, 0.0)) * r; }, rho_end, 20000);
    const double exact = 2.0 * kPi * w * w * std::tgamma(2.0 / p) / p;
    const double tail = eval_filter(filter, Complex(rho_end, 0.0));
    c.residual = std::abs(numeric - exact) / exact;
    c.pass = std::isfinite(numeric) && c.residual <= tol.integral && tail <= tol.tail;
    std::ostringstream os;
    os << "int |Omega^1/2|^2 = " << numeric << " (closed form " << exact << ")";
    c.detail = os.str();
  }

  // (b) Omega^1/2(beta) exp(pi^2 |beta|^2 / 2) decays: log of the integrand
  // at twice the crossover radius must fall below log(tail tolerance).
  {
    auto& c = report.checks[1];
    c.property = 'b';
    auto log_integrand = [&](double r) { return 0.5 * log_filter(filter, Complex(r, 0.0)) + kPi * kPi * r * r / 2.0; };
    double crossover = 0.0;
    bool decays = true;
    if (p > 2.0) {
      crossover = std::pow(kPi * kPi * std::pow(w, p), 1.0 / (p - 2.0));
    } else {
      const double coef = kPi * kPi / 2.0 - 1.0 / (2.0 * w * w);
      if (coef >= 0.0)
        decays = false;
      else
        crossover = std::sqrt(-std::log(tol.tail) / -coef);
    }
    std::ostringstream os;
    if (decays) {
      c.residual = log_integrand(2.0 * crossover);
      c.pass = c.residual < std::log(tol.tail);
      os << "log integrand at 2*crossover (|beta| = " << 2.0 * crossover << ") = " << c.residual;
    } else {
      c.residual = log_integrand(10.0);
      c.pass = false;
      os << "Gaussian width w^2 = " << w * w << " >= 1/pi^2: integrand does not decay";
    }
    c.detail = os.str();
  }

  const auto betas = random_disk(1000, 3.0 * w, 0x51f1e7ULL);

  // (c) Omega(0) = 1 and Omega_w -> 1 as w grows.
  {
    auto& c = report.checks[2];
    c.property = 'c';
    const double at_zero = std::abs(eval_filter(filter, Complex(0.0, 0.0)) - 1.0);
    const auto wide = filter.with_width(1e8 * w);
    double limit = 0.0;
    for (const auto& b : random_disk(200, 10.0, 7)) limit = std::max(limit, std::abs(eval_filter(wide, b) - 1.0));
    c.residual = std::max(at_zero, limit);
    c.pass = at_zero <= tol.identity && limit <= 1e-6;
    std::ostringstream os;
    os << "|Omega(0) - 1| = " << at_zero << ", max |Omega_{1e8 w} - 1| on |beta| <= 10: " << limit;
    c.detail = os.str();
  }

  // (d) Omega_w = Omega_{w/r} Omega_t.
  {
    auto& c = report.checks[3];
    c.property = 'd';
    const double eps = p - 2.0;
    for (double r : {0.3, 0.7, 0.95}) {
      const double t = split_width(w, r, eps);
      const auto outer = filter.with_width(w / r);
      const auto inner = filter.with_width(t);
      for (const auto& b : betas)
        c.residual = std::max(c.residual, std::abs(eval_filter(filter, b) - eval_filter(outer, b) * eval_filter(inner, b)));
    }
    c.pass = c.residual <= tol.identity;
    c.detail = "max |Omega_w - Omega_{w/r} Omega_t| over r in {0.3, 0.7, 0.95}";
  }

  // (e) Omega_w(beta) = Omega_{kw}(k beta).
  {
    auto& c = report.checks[4];
    c.property = 'e';
    for (double k : {0.1, 3.7, 10.0}) {
      const auto scaled = filter.with_width(k * w);
      for (const auto& b : betas)
        c.residual = std::max(c.residual, std::abs(eval_filter(filter, b) - eval_filter(scaled, k * b)));
    }
    c.pass = c.residual <= tol.identity;
    c.detail = "max |Omega_w(beta) - Omega_{kw}(k beta)| over k in {0.1, 3.7, 10}";
  }

  return report;
}

}  // namespace qneg
